#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "fibgen/kan.hpp"

namespace fibgen {

/// Finite Reedy category: a FinCat with degrees and the two subcategories
/// of degree-raising (plus) and degree-lowering (minus) arrows.
class ReedyCat {
public:
    ReedyCat() = default;

    static ReedyCat make(CatPtr cat, std::vector<std::size_t> degree, ArrowSet plus, ArrowSet minus) {
        const auto& c = *cat;
        const std::size_t no = c.num_objects(), nm = c.num_morphisms();
        if (degree.size() != no || plus.size() != nm || minus.size() != nm)
            throw ValidationError(ErrorCode::ShapeMismatch, "Reedy data does not cover the category");
        for (std::size_t o = 0; o < no; ++o)
            if (!plus[c.identity(o)] || !minus[c.identity(o)])
                throw ValidationError(ErrorCode::NotASubcategory,
                                      "identity of '" + c.object_name(o) + "' must be plus and minus");
        for (std::size_t m = 0; m < nm; ++m) {
            if (c.is_identity(m))
                continue;
            std::size_t ds = degree[c.src(m)], dt = degree[c.tgt(m)];
            if (plus[m] && !(dt > ds))
                throw ValidationError(ErrorCode::DegreeViolation, "plus arrow '" + c.morphism(m).name + "'");
            if (minus[m] && !(dt < ds))
                throw ValidationError(ErrorCode::DegreeViolation, "minus arrow '" + c.morphism(m).name + "'");
        }
        for (const auto& k : c.composites()) {
            if (plus[k.g] && plus[k.f] && !plus[k.h])
                throw ValidationError(ErrorCode::NotASubcategory, "plus arrows not closed: " + c.morphism(k.h).name);
            if (minus[k.g] && minus[k.f] && !minus[k.h])
                throw ValidationError(ErrorCode::NotASubcategory, "minus arrows not closed: " + c.morphism(k.h).name);
        }
        ReedyCat r;
        r.fact_.assign(nm, {FinCat::npos, FinCat::npos});
        for (std::size_t m = 0; m < nm; ++m) {
            std::vector<std::pair<std::size_t, std::size_t>> found;
            for (std::size_t q = 0; q < nm; ++q) {
                if (!minus[q] || c.src(q) != c.src(m))
                    continue;
                for (std::size_t p = 0; p < nm; ++p)
                    if (plus[p] && c.src(p) == c.tgt(q) && c.tgt(p) == c.tgt(m) && c.compose(p, q) == m)
                        found.emplace_back(p, q);
            }
            if (found.empty())
                throw ValidationError(ErrorCode::FactorizationMissing, c.morphism(m).name);
            if (found.size() > 1)
                throw ValidationError(ErrorCode::FactorizationNotUnique,
                                      c.morphism(m).name + " = " + c.morphism(found[0].first).name + " o " +
                                          c.morphism(found[0].second).name + " = " +
                                          c.morphism(found[1].first).name + " o " + c.morphism(found[1].second).name);
            r.fact_[m] = found[0];
        }
        r.cat_ = std::move(cat);
        r.degree_ = std::move(degree);
        r.plus_ = std::move(plus);
        r.minus_ = std::move(minus);
        return r;
    }

    /// Every arrow plus.
    static ReedyCat direct(CatPtr cat, std::vector<std::size_t> degree) {
        ArrowSet minus(cat->num_morphisms(), false);
        for (std::size_t o = 0; o < cat->num_objects(); ++o)
            minus[cat->identity(o)] = true;
        return make(cat, std::move(degree), all_arrows(*cat), std::move(minus));
    }

    /// Every arrow minus.
    static ReedyCat inverse(CatPtr cat, std::vector<std::size_t> degree) {
        ArrowSet plus(cat->num_morphisms(), false);
        for (std::size_t o = 0; o < cat->num_objects(); ++o)
            plus[cat->identity(o)] = true;
        return make(cat, std::move(degree), std::move(plus), all_arrows(*cat));
    }

    /// Monotone maps among [0..n]: injections plus, surjections minus.
    static ReedyCat simplex(std::size_t n) {
        auto cat = share(FinCat::truncated_simplex(n));
        std::vector<std::size_t> degree;
        for (std::size_t i = 0; i <= n; ++i)
            degree.push_back(i);
        ArrowSet plus(cat->num_morphisms()), minus(cat->num_morphisms());
        for (std::size_t m = 0; m < cat->num_morphisms(); ++m) {
            // name "a>b:v0v1..." lists the values
            const auto& name = cat->morphism(m).name;
            std::string vals = name.substr(name.find(':') + 1);
            std::size_t b = cat->tgt(m);
            bool inj = true;
            for (std::size_t i = 1; i < vals.size(); ++i)
                inj = inj && vals[i] != vals[i - 1];
            std::vector<bool> hit(b + 1, false);
            for (char ch : vals)
                hit[static_cast<std::size_t>(ch - '0')] = true;
            bool surj = std::all_of(hit.begin(), hit.end(), [](bool x) { return x; });
            plus[m] = inj;
            minus[m] = surj;
        }
        return make(cat, std::move(degree), std::move(plus), std::move(minus));
    }

    const CatPtr& cat() const { return cat_; }
    std::size_t degree(std::size_t o) const { return degree_.at(o); }
    const std::vector<std::size_t>& degrees() const { return degree_; }
    bool is_plus(std::size_t m) const { return plus_.at(m); }
    bool is_minus(std::size_t m) const { return minus_.at(m); }
    const ArrowSet& plus() const { return plus_; }
    const ArrowSet& minus() const { return minus_; }
    std::size_t max_degree() const {
        std::size_t d = 0;
        for (auto x : degree_)
            d = std::max(d, x);
        return d;
    }
    /// m = plus_part(m) o minus_part(m).
    std::size_t plus_part(std::size_t m) const { return fact_.at(m).first; }
    std::size_t minus_part(std::size_t m) const { return fact_.at(m).second; }

    /// Opposite category with plus and minus exchanged.
    ReedyCat opposite() const { return make(share(cat_->opposite()), degree_, minus_, plus_); }

private:
    CatPtr cat_;
    std::vector<std::size_t> degree_;
    ArrowSet plus_, minus_;
    std::vector<std::pair<std::size_t, std::size_t>> fact_;
};

// ---------------------------------------------------------------------------
// latching and matching

/// The category of non-identity plus arrows into r (latching) or minus
/// arrows out of r (matching), with plus (resp. minus) arrows as morphisms.
struct Slice {
    CatPtr cat;
    std::vector<std::size_t> arrows;  // slice object -> arrow of R
    std::vector<std::size_t> under;   // slice morphism -> arrow of R
    std::vector<std::size_t> base;    // slice object -> object of R
};

/// With `restricted` false the slice instead takes every arrow into r from
/// lower degree (resp. out of r to lower degree) with all commuting
/// triangles as morphisms.
inline Slice reedy_slice(const ReedyCat& R, std::size_t r, bool latching, bool restricted = true) {
    const auto& c = *R.cat();
    Slice s;
    for (std::size_t h = 0; h < c.num_morphisms(); ++h) {
        if (c.is_identity(h))
            continue;
        if (latching && c.tgt(h) == r && (restricted ? R.is_plus(h) : R.degree(c.src(h)) < R.degree(r))) {
            s.arrows.push_back(h);
            s.base.push_back(c.src(h));
        }
        if (!latching && c.src(h) == r && (restricted ? R.is_minus(h) : R.degree(c.tgt(h)) < R.degree(r))) {
            s.arrows.push_back(h);
            s.base.push_back(c.tgt(h));
        }
    }
    const std::size_t no = s.arrows.size();
    std::vector<std::string> names;
    for (auto h : s.arrows)
        names.push_back(c.morphism(h).name);
    std::vector<FinCat::Morphism> mor;
    std::vector<std::size_t> ids(no, FinCat::npos);
    // (i, j, u): u from the base of i to the base of j over r
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> triple;
    for (std::size_t i = 0; i < no; ++i)
        for (std::size_t j = 0; j < no; ++j)
            for (std::size_t u = 0; u < c.num_morphisms(); ++u) {
                if (c.src(u) != s.base[i] || c.tgt(u) != s.base[j])
                    continue;
                bool kind = !restricted || (latching ? R.is_plus(u) : R.is_minus(u));
                bool ok = kind && (latching ? c.compose(s.arrows[j], u) == s.arrows[i]
                                            : c.compose(u, s.arrows[i]) == s.arrows[j]);
                if (!ok)
                    continue;
                if (i == j && c.is_identity(u))
                    ids[i] = mor.size();
                mor.push_back({c.morphism(u).name + ":" + names[i] + ">" + names[j], i, j});
                triple.emplace_back(i, j, u);
                s.under.push_back(u);
            }
    std::vector<FinCat::Composite> comp;
    for (std::size_t g = 0; g < mor.size(); ++g)
        for (std::size_t f = 0; f < mor.size(); ++f) {
            if (std::get<1>(triple[f]) != std::get<0>(triple[g]))
                continue;
            std::size_t u = c.compose(std::get<2>(triple[g]), std::get<2>(triple[f]));
            for (std::size_t h = 0; h < mor.size(); ++h)
                if (std::get<0>(triple[h]) == std::get<0>(triple[f]) && std::get<1>(triple[h]) == std::get<1>(triple[g]) &&
                    std::get<2>(triple[h]) == u)
                    comp.push_back({g, f, h});
        }
    s.cat = share(FinCat::make(names, mor, ids, comp));
    return s;
}

template <Field F>
Diagram<F> slice_diagram(const Slice& s, const Diagram<F>& phi) {
    std::vector<ChainComplex<F>> objs;
    for (auto b : s.base)
        objs.push_back(phi.at(b));
    std::vector<ChainMap<F>> maps;
    for (auto u : s.under)
        maps.push_back(phi.map(u));
    return Diagram<F>::raw(s.cat, phi.field(), std::move(objs), std::move(maps));
}

template <Field F>
struct Latching {
    Slice slice;
    Cocone<F> colim;
    ChainComplex<F> object;
    ChainMap<F> map;  // L_r phi -> phi(r)
};

template <Field F>
struct Matching {
    Slice slice;
    Cone<F> lim;
    ChainComplex<F> object;
    ChainMap<F> map;  // phi(r) -> M_r phi
};

template <Field F>
Latching<F> latching(const ReedyCat& R, const Diagram<F>& phi, std::size_t r) {
    Latching<F> l;
    l.slice = reedy_slice(R, r, true);
    l.colim = diagram_colimit(slice_diagram(l.slice, phi));
    l.object = l.colim.object;
    std::vector<ChainMap<F>> cocone;
    for (auto h : l.slice.arrows)
        cocone.push_back(phi.map(h));
    l.map = l.colim.cofactor(phi.at(r), cocone);
    return l;
}

template <Field F>
Matching<F> matching(const ReedyCat& R, const Diagram<F>& phi, std::size_t r) {
    Matching<F> m;
    m.slice = reedy_slice(R, r, false);
    m.lim = diagram_limit(slice_diagram(m.slice, phi));
    m.object = m.lim.object;
    std::vector<ChainMap<F>> cone;
    for (auto h : m.slice.arrows)
        cone.push_back(phi.map(h));
    m.map = m.lim.factor(phi.at(r), cone);
    return m;
}

/// Whether the latching (or matching) object of phi at r is the same under
/// the unrestricted slice: the comparison map must be an isomorphism.
template <Field F>
bool slice_conventions_agree(const ReedyCat& R, const Diagram<F>& phi, std::size_t r, bool latching_side) {
    auto wide = reedy_slice(R, r, latching_side, false);
    auto index_in_wide = [&](std::size_t h) {
        auto it = std::find(wide.arrows.begin(), wide.arrows.end(), h);
        require_internal(it != wide.arrows.end(), "restricted slice object missing from the unrestricted one");
        return static_cast<std::size_t>(it - wide.arrows.begin());
    };
    if (latching_side) {
        auto l = latching(R, phi, r);
        auto u = diagram_colimit(slice_diagram(wide, phi));
        std::vector<ChainMap<F>> cocone;
        for (auto h : l.slice.arrows)
            cocone.push_back(u.legs[index_in_wide(h)]);
        return is_isomorphism(l.colim.cofactor(u.object, cocone));
    }
    auto m = matching(R, phi, r);
    auto u = diagram_limit(slice_diagram(wide, phi));
    std::vector<ChainMap<F>> cone;
    for (auto h : m.slice.arrows)
        cone.push_back(u.legs[index_in_wide(h)]);
    return is_isomorphism(m.lim.factor(u.object, cone));
}

/// L_r tau: L_r phi -> L_r psi.
template <Field F>
ChainMap<F> latching_map(const NatTrans<F>& tau, const Latching<F>& lphi, const Latching<F>& lpsi) {
    std::vector<ChainMap<F>> cocone;
    for (std::size_t i = 0; i < lphi.slice.arrows.size(); ++i)
        cocone.push_back(lpsi.colim.legs[i] * tau.at(lphi.slice.base[i]));
    return lphi.colim.cofactor(lpsi.object, cocone);
}

/// M_r tau: M_r phi -> M_r psi.
template <Field F>
ChainMap<F> matching_map(const NatTrans<F>& tau, const Matching<F>& mphi, const Matching<F>& mpsi) {
    std::vector<ChainMap<F>> cone;
    for (std::size_t i = 0; i < mphi.slice.arrows.size(); ++i)
        cone.push_back(tau.at(mphi.slice.base[i]) * mphi.lim.legs[i]);
    return mpsi.lim.factor(mphi.object, cone);
}

/// phi(r) +_{L_r phi} L_r psi -> psi(r).
template <Field F>
struct RelLatching {
    Latching<F> lphi, lpsi;
    Pushout<F> po;  // leg1: phi(r) -> Q, leg2: L_r psi -> Q
    ChainMap<F> map;
};

/// phi(r) -> M_r phi x_{M_r psi} psi(r).
template <Field F>
struct RelMatching {
    Matching<F> mphi, mpsi;
    Pullback<F> pb;  // leg1: P -> M_r phi, leg2: P -> psi(r)
    ChainMap<F> map;
};

template <Field F>
RelLatching<F> rel_latching(const ReedyCat& R, const NatTrans<F>& tau, std::size_t r) {
    RelLatching<F> out;
    out.lphi = latching(R, tau.source(), r);
    out.lpsi = latching(R, tau.target(), r);
    out.po = pushout(out.lphi.map, latching_map(tau, out.lphi, out.lpsi));
    out.map = out.po.cofactor(tau.at(r), out.lpsi.map);
    return out;
}

template <Field F>
RelMatching<F> rel_matching(const ReedyCat& R, const NatTrans<F>& tau, std::size_t r) {
    RelMatching<F> out;
    out.mphi = matching(R, tau.source(), r);
    out.mpsi = matching(R, tau.target(), r);
    out.pb = pullback(matching_map(tau, out.mphi, out.mpsi), out.mpsi.map);
    out.map = out.pb.factor(out.mphi.map, tau.at(r));
    return out;
}

struct ReedyClass {
    bool cofibration = true;
    bool fibration = true;
    bool weak_equivalence = true;
    friend bool operator==(const ReedyClass&, const ReedyClass&) = default;
};

template <Field F>
ReedyClass reedy_classify(const ReedyCat& R, const NatTrans<F>& tau) {
    ReedyClass k;
    for (std::size_t r = 0; r < R.cat()->num_objects(); ++r) {
        k.cofibration = k.cofibration && classify(rel_latching(R, tau, r).map).cofibration;
        k.fibration = k.fibration && classify(rel_matching(R, tau, r).map).fibration;
        k.weak_equivalence = k.weak_equivalence && classify(tau.at(r)).weak_equivalence;
    }
    return k;
}

// ---------------------------------------------------------------------------
// boundaries of representables and the generator constructions

/// Arrows out of r (covariant) or into r that factor through an object of
/// degree below deg(r).
inline ArrowSet boundary_representable(const ReedyCat& R, std::size_t r, bool covariant) {
    const auto& c = *R.cat();
    const std::size_t nm = c.num_morphisms();
    ArrowSet s(nm, false);
    for (std::size_t m = 0; m < nm; ++m) {
        if (covariant ? c.src(m) != r : c.tgt(m) != r)
            continue;
        for (std::size_t a = 0; a < nm && !s[m]; ++a) {
            if (c.src(a) != c.src(m) || R.degree(c.tgt(a)) >= R.degree(r))
                continue;
            for (std::size_t b = 0; b < nm; ++b)
                if (c.src(b) == c.tgt(a) && c.tgt(b) == c.tgt(m) && c.compose(b, a) == m) {
                    s[m] = true;
                    break;
                }
        }
    }
    return s;
}

/// i (x)^ kappa_r: A (x) R(r,-) +_{A (x) bd} B (x) bd -> B (x) R(r,-).
template <Field F>
struct PushoutProduct {
    IndexedSum<F> a_full, a_bd, b_bd, b_full;
    DiagramPushout<F> po;  // leg1 from A (x) R(r,-), leg2 from B (x) bd
    NatTrans<F> map;
};

template <Field F>
PushoutProduct<F> pushout_product_gen(const ReedyCat& R, const ChainMap<F>& i, std::size_t r) {
    const auto& cat = R.cat();
    auto full = arrows_from(*cat, r);
    auto bd = boundary_representable(R, r, true);
    PushoutProduct<F> g;
    g.a_full = copower(cat, i.source(), full);
    g.a_bd = copower(cat, i.source(), bd);
    g.b_bd = copower(cat, i.target(), bd);
    g.b_full = copower(cat, i.target(), full);
    auto i_bd = detail::indexed_map<F>(g.a_bd, g.b_bd, [&](std::size_t) { return i; });
    auto i_full = detail::indexed_map<F>(g.a_full, g.b_full, [&](std::size_t) { return i; });
    g.po = diagram_pushout(copower_inclusion(g.a_bd, g.a_full), i_bd);
    g.map = g.po.cofactor(i_full, copower_inclusion(g.b_bd, g.b_full));
    return g;
}

/// p ⋔^ kappa^r: E ⋔ R(-,r) -> E ⋔ bd x_{B ⋔ bd} B ⋔ R(-,r).
template <Field F>
struct PullbackCotensor {
    IndexedSum<F> e_full, e_bd, b_bd, b_full;
    DiagramPullback<F> pb;  // leg1 to E ⋔ bd, leg2 to B ⋔ R(-,r)
    NatTrans<F> map;
};

template <Field F>
PullbackCotensor<F> pullback_cotensor_gen(const ReedyCat& R, const ChainMap<F>& p, std::size_t r) {
    const auto& cat = R.cat();
    auto full = arrows_to(*cat, r);
    auto bd = boundary_representable(R, r, false);
    PullbackCotensor<F> g;
    g.e_full = power(cat, p.source(), full);
    g.e_bd = power(cat, p.source(), bd);
    g.b_bd = power(cat, p.target(), bd);
    g.b_full = power(cat, p.target(), full);
    auto p_bd = detail::indexed_map<F>(g.e_bd, g.b_bd, [&](std::size_t) { return p; });
    auto p_full = detail::indexed_map<F>(g.e_full, g.b_full, [&](std::size_t) { return p; });
    g.pb = diagram_pullback(p_bd, power_restriction(g.b_full, g.b_bd));
    g.map = g.pb.factor(power_restriction(g.e_full, g.e_bd), p_full);
    return g;
}

// ---------------------------------------------------------------------------
// transposing lifting problems across the generator adjunctions

/// A square (i vs m_r(tau)) becomes a square (i (x)^ kappa_r vs tau).
template <Field F>
DiagramSquare<F> transpose_to_pushout_product(const ReedyCat& R, const PushoutProduct<F>& g, const NatTrans<F>& tau,
                                               const RelMatching<F>& m, const SquareProblem<F>& sq) {
    const auto& phi = tau.source();
    const auto& psi = tau.target();
    auto to_match = m.pb.leg1 * sq.bottom;   // B -> M_r phi
    auto to_psi = m.pb.leg2 * sq.bottom;     // B -> psi(r)
    auto top_full = out_of_copower(g.a_full, phi, sq.top);
    auto top_bd = out_of_indexed<F>(g.b_bd, phi, [&](std::size_t, std::size_t h) {
        std::size_t lo = R.minus_part(h), hi = R.plus_part(h);
        auto it = std::find(m.mphi.slice.arrows.begin(), m.mphi.slice.arrows.end(), lo);
        require_internal(it != m.mphi.slice.arrows.end(), "boundary arrow with identity minus part");
        std::size_t k = static_cast<std::size_t>(it - m.mphi.slice.arrows.begin());
        return phi.map(hi) * m.mphi.lim.legs[k] * to_match;
    });
    auto top = g.po.cofactor(top_full, top_bd);
    auto bottom = out_of_copower(g.b_full, psi, to_psi);
    return DiagramSquare<F>::make(g.map, tau, top, bottom);
}

/// A square (l_r(tau) vs p) becomes a square (tau vs p ⋔^ kappa^r).
template <Field F>
DiagramSquare<F> transpose_to_pullback_cotensor(const ReedyCat& R, const PullbackCotensor<F>& g,
                                                const NatTrans<F>& tau, const RelLatching<F>& l,
                                                const SquareProblem<F>& sq) {
    const auto& phi = tau.source();
    const auto& psi = tau.target();
    auto from_phi = sq.top * l.po.leg1;     // phi(r) -> E
    auto from_latch = sq.top * l.po.leg2;   // L_r psi -> E
    auto top = into_power(phi, g.e_full, from_phi);
    auto to_bd = into_indexed<F>(psi, g.e_bd, [&](std::size_t, std::size_t h) {
        std::size_t lo = R.minus_part(h), hi = R.plus_part(h);
        auto it = std::find(l.lpsi.slice.arrows.begin(), l.lpsi.slice.arrows.end(), hi);
        require_internal(it != l.lpsi.slice.arrows.end(), "boundary arrow with identity plus part");
        std::size_t k = static_cast<std::size_t>(it - l.lpsi.slice.arrows.begin());
        return from_latch * l.lpsi.colim.legs[k] * psi.map(lo);
    });
    auto to_full = into_power(psi, g.b_full, sq.bottom);
    auto bottom = g.pb.factor(to_bd, to_full);
    return DiagramSquare<F>::make(tau, g.map, top, bottom);
}

// ---------------------------------------------------------------------------
// duality: a complex with top <= N read backwards is the linear dual

/// (C*)_n = (C_{N-n})^*, differentials transposed.
template <Field F>
ChainComplex<F> dual_complex(const ChainComplex<F>& c, std::size_t top) {
    require_internal(c.length() <= top + 1, "dual_complex: complex above the chosen top");
    std::vector<std::size_t> dims;
    for (std::size_t n = 0; n <= top; ++n)
        dims.push_back(c.dim(top - n));
    std::vector<Matrix<F>> diff;
    for (std::size_t n = 1; n <= top; ++n)
        diff.push_back(c.d(top - n + 1).transpose());
    return ChainComplex<F>::make(c.field(), std::move(dims), std::move(diff));
}

template <Field F>
ChainMap<F> dual_map(const ChainMap<F>& f, std::size_t top) {
    std::vector<Matrix<F>> comps;
    for (std::size_t n = 0; n <= top; ++n)
        comps.push_back(f.comp(top - n).transpose());
    return ChainMap<F>::make(dual_complex(f.target(), top), dual_complex(f.source(), top), std::move(comps));
}

/// The dual diagram on the opposite category.
template <Field F>
Diagram<F> dual_diagram(const Diagram<F>& phi, const CatPtr& op, std::size_t top) {
    std::vector<ChainComplex<F>> objs;
    for (const auto& o : phi.objects())
        objs.push_back(dual_complex(o, top));
    std::vector<ChainMap<F>> maps;
    for (const auto& m : phi.maps())
        maps.push_back(dual_map(m, top));
    return Diagram<F>::make(op, phi.field(), std::move(objs), std::move(maps));
}

} // namespace fibgen
