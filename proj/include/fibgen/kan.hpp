#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "fibgen/diagram.hpp"

namespace fibgen {

/// Membership of morphisms in a set of arrows; used for representables and
/// their boundaries.
using ArrowSet = std::vector<bool>;

inline ArrowSet all_arrows(const FinCat& c) { return ArrowSet(c.num_morphisms(), true); }

/// D(r, -) as a set of arrows.
inline ArrowSet arrows_from(const FinCat& c, std::size_t r) {
    ArrowSet s(c.num_morphisms(), false);
    for (std::size_t m = 0; m < s.size(); ++m)
        s[m] = c.src(m) == r;
    return s;
}

/// D(-, r) as a set of arrows.
inline ArrowSet arrows_to(const FinCat& c, std::size_t r) {
    ArrowSet s(c.num_morphisms(), false);
    for (std::size_t m = 0; m < s.size(); ++m)
        s[m] = c.tgt(m) == r;
    return s;
}

/// A diagram whose value at each object is a biproduct of summands indexed
/// by arrows. Covariant sums index d by the chosen arrows into d and act by
/// postcomposition; contravariant ones index d by the chosen arrows out of d
/// and act by precomposition.
template <Field F>
struct IndexedSum {
    Diagram<F> object;
    std::vector<Biproduct<F>> at;
    std::vector<std::vector<std::size_t>> index;
    bool covariant = true;

    std::size_t slot(std::size_t d, std::size_t h) const {
        const auto& ix = index.at(d);
        auto it = std::find(ix.begin(), ix.end(), h);
        require_internal(it != ix.end(), "IndexedSum::slot: arrow not in the index");
        return static_cast<std::size_t>(it - ix.begin());
    }
};

namespace detail {

template <Field F>
IndexedSum<F> indexed_sum(const CatPtr& cat, F field, const ArrowSet& chosen, bool covariant,
                          const std::function<ChainComplex<F>(std::size_t)>& value) {
    const auto& C = *cat;
    IndexedSum<F> s;
    s.covariant = covariant;
    s.index.assign(C.num_objects(), {});
    for (std::size_t h = 0; h < C.num_morphisms(); ++h)
        if (chosen.at(h))
            s.index[covariant ? C.tgt(h) : C.src(h)].push_back(h);
    std::vector<ChainComplex<F>> objs;
    for (std::size_t d = 0; d < C.num_objects(); ++d) {
        std::vector<ChainComplex<F>> parts;
        for (auto h : s.index[d])
            parts.push_back(value(h));
        s.at.push_back(biproduct(field, parts));
        objs.push_back(s.at.back().object);
    }
    std::vector<ChainMap<F>> maps;
    for (std::size_t g = 0; g < C.num_morphisms(); ++g) {
        std::size_t d = C.src(g), e = C.tgt(g);
        auto m = ChainMap<F>::zero(objs[d], objs[e]);
        if (covariant) {
            for (std::size_t i = 0; i < s.index[d].size(); ++i) {
                std::size_t gh = C.compose(g, s.index[d][i]);
                if (!chosen[gh])
                    throw ValidationError(ErrorCode::NotASubcategory,
                                          "arrow set not closed under " + C.morphism(g).name);
                m = m + s.at[e].injections[s.slot(e, gh)] * s.at[d].projections[i];
            }
        } else {
            for (std::size_t i = 0; i < s.index[e].size(); ++i) {
                std::size_t hg = C.compose(s.index[e][i], g);
                if (!chosen[hg])
                    throw ValidationError(ErrorCode::NotASubcategory,
                                          "arrow set not closed under " + C.morphism(g).name);
                m = m + s.at[e].injections[i] * s.at[d].projections[s.slot(d, hg)];
            }
        }
        maps.push_back(std::move(m));
    }
    s.object = Diagram<F>::raw(cat, field, std::move(objs), std::move(maps));
    return s;
}

/// Summandwise map between two sums over the same index.
template <Field F>
NatTrans<F> indexed_map(const IndexedSum<F>& s, const IndexedSum<F>& t,
                        const std::function<ChainMap<F>(std::size_t)>& value) {
    require_internal(s.index == t.index, "indexed_map: different indexings");
    std::vector<ChainMap<F>> comps;
    for (std::size_t d = 0; d < s.index.size(); ++d) {
        std::vector<ChainMap<F>> ms;
        for (auto h : s.index[d])
            ms.push_back(value(h));
        comps.push_back(direct_sum_map(s.at[d], t.at[d], ms));
    }
    return NatTrans<F>::raw(s.object, t.object, std::move(comps));
}

template <Field F>
void check_family(const FinCat& c, const std::vector<ChainComplex<F>>& family) {
    if (family.size() != c.num_objects())
        throw ValidationError(ErrorCode::ShapeMismatch, "family does not cover the objects");
}

} // namespace detail

// ---------------------------------------------------------------------------
// Kan extensions along the inclusion of the discrete subcategory

/// lan(A)(d) = sum over arrows f: d' -> d of A(d').
template <Field F>
IndexedSum<F> lan_discrete(const CatPtr& cat, F field, const std::vector<ChainComplex<F>>& family) {
    detail::check_family(*cat, family);
    return detail::indexed_sum<F>(cat, field, all_arrows(*cat), true,
                                  [&](std::size_t h) { return family[cat->src(h)]; });
}

/// ran(B)(d) = product over arrows f: d -> d' of B(d').
template <Field F>
IndexedSum<F> ran_discrete(const CatPtr& cat, F field, const std::vector<ChainComplex<F>>& family) {
    detail::check_family(*cat, family);
    return detail::indexed_sum<F>(cat, field, all_arrows(*cat), false,
                                  [&](std::size_t h) { return family[cat->tgt(h)]; });
}

template <Field F>
NatTrans<F> lan_map(const IndexedSum<F>& s, const IndexedSum<F>& t, const std::vector<ChainMap<F>>& family) {
    const auto& c = *s.object.cat();
    return detail::indexed_map<F>(s, t, [&](std::size_t h) { return family.at(c.src(h)); });
}

template <Field F>
NatTrans<F> ran_map(const IndexedSum<F>& s, const IndexedSum<F>& t, const std::vector<ChainMap<F>>& family) {
    const auto& c = *s.object.cat();
    return detail::indexed_map<F>(s, t, [&](std::size_t h) { return family.at(c.tgt(h)); });
}

/// Family maps h_d: phi(d) -> B(d) to the natural map phi -> ran(B).
template <Field F>
NatTrans<F> ran_transpose(const Diagram<F>& phi, const IndexedSum<F>& ranB, const std::vector<ChainMap<F>>& h) {
    const auto& c = *phi.cat();
    std::vector<ChainMap<F>> comps;
    for (std::size_t d = 0; d < c.num_objects(); ++d) {
        auto m = ChainMap<F>::zero(phi.at(d), ranB.object.at(d));
        for (std::size_t i = 0; i < ranB.index[d].size(); ++i) {
            std::size_t f = ranB.index[d][i];
            m = m + ranB.at[d].injections[i] * h.at(c.tgt(f)) * phi.map(f);
        }
        comps.push_back(std::move(m));
    }
    return NatTrans<F>::raw(phi, ranB.object, std::move(comps));
}

/// Inverse of ran_transpose: the identity coordinate of each component.
template <Field F>
std::vector<ChainMap<F>> ran_untranspose(const NatTrans<F>& theta, const IndexedSum<F>& ranB) {
    const auto& c = *theta.cat();
    std::vector<ChainMap<F>> out;
    for (std::size_t d = 0; d < c.num_objects(); ++d)
        out.push_back(ranB.at[d].projections[ranB.slot(d, c.identity(d))] * theta.at(d));
    return out;
}

/// Unit phi -> ran(phi restricted to objects); the coordinate at f: d -> d'
/// is phi(f).
template <Field F>
NatTrans<F> ran_unit(const Diagram<F>& phi, const IndexedSum<F>& ranPhi) {
    std::vector<ChainMap<F>> ids;
    for (const auto& o : phi.objects())
        ids.push_back(ChainMap<F>::identity(o));
    return ran_transpose(phi, ranPhi, ids);
}

/// Family maps h_d: A(d) -> psi(d) to the natural map lan(A) -> psi.
template <Field F>
NatTrans<F> lan_transpose(const IndexedSum<F>& lanA, const Diagram<F>& psi, const std::vector<ChainMap<F>>& h) {
    const auto& c = *psi.cat();
    std::vector<ChainMap<F>> comps;
    for (std::size_t d = 0; d < c.num_objects(); ++d) {
        auto m = ChainMap<F>::zero(lanA.object.at(d), psi.at(d));
        for (std::size_t i = 0; i < lanA.index[d].size(); ++i) {
            std::size_t f = lanA.index[d][i];
            m = m + psi.map(f) * h.at(c.src(f)) * lanA.at[d].projections[i];
        }
        comps.push_back(std::move(m));
    }
    return NatTrans<F>::raw(lanA.object, psi, std::move(comps));
}

template <Field F>
std::vector<ChainMap<F>> lan_untranspose(const NatTrans<F>& theta, const IndexedSum<F>& lanA) {
    const auto& c = *theta.cat();
    std::vector<ChainMap<F>> out;
    for (std::size_t d = 0; d < c.num_objects(); ++d)
        out.push_back(theta.at(d) * lanA.at[d].injections[lanA.slot(d, c.identity(d))]);
    return out;
}

// ---------------------------------------------------------------------------
// copowers and powers over (sub-)representables

/// A (x) S for a set S of arrows out of one object, closed under
/// postcomposition.
template <Field F>
IndexedSum<F> copower(const CatPtr& cat, const ChainComplex<F>& a, const ArrowSet& s) {
    return detail::indexed_sum<F>(cat, a.field(), s, true, [&](std::size_t) { return a; });
}

/// E ⋔ S for a set S of arrows into one object, closed under precomposition.
template <Field F>
IndexedSum<F> power(const CatPtr& cat, const ChainComplex<F>& e, const ArrowSet& s) {
    return detail::indexed_sum<F>(cat, e.field(), s, false, [&](std::size_t) { return e; });
}

template <Field F>
NatTrans<F> copower_map(const CatPtr& cat, const ChainMap<F>& f, const ArrowSet& s) {
    auto src = copower(cat, f.source(), s);
    auto tgt = copower(cat, f.target(), s);
    return detail::indexed_map<F>(src, tgt, [&](std::size_t) { return f; });
}

template <Field F>
NatTrans<F> power_map(const CatPtr& cat, const ChainMap<F>& p, const ArrowSet& s) {
    auto src = power(cat, p.source(), s);
    auto tgt = power(cat, p.target(), s);
    return detail::indexed_map<F>(src, tgt, [&](std::size_t) { return p; });
}

/// A (x) S -> A (x) T for S inside T: summand h goes to summand h.
template <Field F>
NatTrans<F> copower_inclusion(const IndexedSum<F>& small, const IndexedSum<F>& big) {
    std::vector<ChainMap<F>> comps;
    for (std::size_t d = 0; d < small.index.size(); ++d) {
        auto m = ChainMap<F>::zero(small.object.at(d), big.object.at(d));
        for (std::size_t i = 0; i < small.index[d].size(); ++i)
            m = m + big.at[d].injections[big.slot(d, small.index[d][i])] * small.at[d].projections[i];
        comps.push_back(std::move(m));
    }
    return NatTrans<F>::raw(small.object, big.object, std::move(comps));
}

/// E ⋔ T -> E ⋔ S for S inside T: keep the coordinates in S.
template <Field F>
NatTrans<F> power_restriction(const IndexedSum<F>& big, const IndexedSum<F>& small) {
    std::vector<ChainMap<F>> comps;
    for (std::size_t d = 0; d < small.index.size(); ++d) {
        auto m = ChainMap<F>::zero(big.object.at(d), small.object.at(d));
        for (std::size_t i = 0; i < small.index[d].size(); ++i)
            m = m + small.at[d].injections[i] * big.at[d].projections[big.slot(d, small.index[d][i])];
        comps.push_back(std::move(m));
    }
    return NatTrans<F>::raw(big.object, small.object, std::move(comps));
}

/// f (x) D(d, -): component at d' is the |D(d, d')|-fold sum of f.
template <Field F>
NatTrans<F> tensor_gen(const CatPtr& cat, const ChainMap<F>& f, std::size_t d) {
    return copower_map(cat, f, arrows_from(*cat, d));
}

/// p ⋔ D(-, d): component at d' is the |D(d', d)|-fold product of p.
template <Field F>
NatTrans<F> pitchfork_gen(const CatPtr& cat, const ChainMap<F>& p, std::size_t d) {
    return power_map(cat, p, arrows_to(*cat, d));
}

/// phi -> sum, given the coordinate phi(d) -> value(h) for every indexed h
/// at d.
template <Field F>
NatTrans<F> into_indexed(const Diagram<F>& phi, const IndexedSum<F>& sum,
                         const std::function<ChainMap<F>(std::size_t d, std::size_t h)>& coord) {
    std::vector<ChainMap<F>> comps;
    for (std::size_t d = 0; d < sum.index.size(); ++d) {
        auto m = ChainMap<F>::zero(phi.at(d), sum.object.at(d));
        for (std::size_t i = 0; i < sum.index[d].size(); ++i)
            m = m + sum.at[d].injections[i] * coord(d, sum.index[d][i]);
        comps.push_back(std::move(m));
    }
    return NatTrans<F>::raw(phi, sum.object, std::move(comps));
}

/// sum -> psi, given the summand maps value(h) -> psi(d).
template <Field F>
NatTrans<F> out_of_indexed(const IndexedSum<F>& sum, const Diagram<F>& psi,
                           const std::function<ChainMap<F>(std::size_t d, std::size_t h)>& coord) {
    std::vector<ChainMap<F>> comps;
    for (std::size_t d = 0; d < sum.index.size(); ++d) {
        auto m = ChainMap<F>::zero(sum.object.at(d), psi.at(d));
        for (std::size_t i = 0; i < sum.index[d].size(); ++i)
            m = m + coord(d, sum.index[d][i]) * sum.at[d].projections[i];
        comps.push_back(std::move(m));
    }
    return NatTrans<F>::raw(sum.object, psi, std::move(comps));
}

/// Transpose of a: phi(r) -> E into phi -> E ⋔ S for S inside D(-, r).
template <Field F>
NatTrans<F> into_power(const Diagram<F>& phi, const IndexedSum<F>& pw, const ChainMap<F>& a) {
    return into_indexed<F>(phi, pw, [&](std::size_t, std::size_t h) { return a * phi.map(h); });
}

/// Transpose of a: A -> psi(r) into A (x) S -> psi for S inside D(r, -).
template <Field F>
NatTrans<F> out_of_copower(const IndexedSum<F>& cp, const Diagram<F>& psi, const ChainMap<F>& a) {
    return out_of_indexed<F>(cp, psi, [&](std::size_t, std::size_t h) { return psi.map(h) * a; });
}

} // namespace fibgen
