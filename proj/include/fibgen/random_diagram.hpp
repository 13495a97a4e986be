#pragma once

#include <random>
#include <vector>

#include "fibgen/diagram_level.hpp"
#include "fibgen/kan.hpp"
#include "fibgen/random.hpp"

namespace fibgen {

template <Field F, class Rng>
std::vector<ChainComplex<F>> random_family(const FinCat& c, F field, Rng& rng, std::size_t top, std::size_t max_dim) {
    std::vector<ChainComplex<F>> out;
    for (std::size_t d = 0; d < c.num_objects(); ++d)
        out.push_back(random_complex(field, rng, top, max_dim));
    return out;
}

/// Random diagram: the image of a random transformation lan(A) -> ran(B)
/// for random families A and B.
template <Field F, class Rng>
Diagram<F> random_diagram(const CatPtr& cat, F field, Rng& rng, std::size_t top, std::size_t max_dim) {
    auto a = random_family(*cat, field, rng, top, max_dim);
    auto b = random_family(*cat, field, rng, top, max_dim);
    auto lanA = lan_discrete(cat, field, a);
    auto ranB = ran_discrete(cat, field, b);
    std::vector<ChainMap<F>> h;
    for (std::size_t d = 0; d < cat->num_objects(); ++d)
        h.push_back(random_chain_map(a[d], ranB.object.at(d), rng));
    auto theta = lan_transpose(lanA, ranB.object, h);
    return diagram_kernel(diagram_cokernel(theta).projection).object;
}

/// Uniform random element of the space of natural transformations.
template <Field F, class Rng>
NatTrans<F> random_nat_trans(const Diagram<F>& s, const Diagram<F>& t, Rng& rng) {
    const auto& cat = *s.cat();
    const F& fld = s.field();
    std::size_t len = std::max(s.length(), t.length());
    const std::size_t no = cat.num_objects();
    LinearSystem<F> sys(fld);
    std::vector<std::vector<std::size_t>> blk(no);
    for (std::size_t o = 0; o < no; ++o)
        for (std::size_t n = 0; n < len; ++n)
            blk[o].push_back(sys.add_block(t.at(o).dim(n), s.at(o).dim(n)));
    using Term = typename LinearSystem<F>::Term;
    std::vector<Matrix<F>> keep;
    keep.reserve(2 * len * (no + cat.num_morphisms()));
    for (std::size_t o = 0; o < no; ++o)
        for (std::size_t n = 1; n < len; ++n) {
            const auto& dt = keep.emplace_back(t.at(o).d(n));
            const auto& ds = keep.emplace_back(s.at(o).d(n));
            sys.add_matrix_equation({Term{blk[o][n], &dt, nullptr}, Term{blk[o][n - 1], nullptr, &ds, true}}, nullptr,
                                    t.at(o).dim(n - 1), s.at(o).dim(n));
        }
    for (std::size_t m = 0; m < cat.num_morphisms(); ++m) {
        if (cat.is_identity(m))
            continue;
        std::size_t a = cat.src(m), b = cat.tgt(m);
        for (std::size_t n = 0; n < len; ++n) {
            const auto& sm = keep.emplace_back(s.map(m).comp(n));
            const auto& tm = keep.emplace_back(t.map(m).comp(n));
            sys.add_matrix_equation({Term{blk[b][n], nullptr, &sm}, Term{blk[a][n], &tm, nullptr, true}}, nullptr,
                                    t.at(b).dim(n), s.at(a).dim(n));
        }
    }
    auto x = sys.solve_random(rng);
    require_internal(x.has_value(), "random_nat_trans: zero is always a solution");
    std::vector<ChainMap<F>> comps;
    for (std::size_t o = 0; o < no; ++o) {
        std::vector<Matrix<F>> cs;
        for (std::size_t n = 0; n < len; ++n)
            cs.push_back(sys.block_value(*x, blk[o][n]));
        comps.push_back(ChainMap<F>::make(s.at(o), t.at(o), std::move(cs)));
    }
    return NatTrans<F>::make(s, t, std::move(comps));
}

/// Random poset on n objects: each pair i < j related with probability 1/2,
/// then closed transitively.
template <class Rng>
FinCat random_poset(std::size_t n, Rng& rng) {
    std::vector<std::pair<std::size_t, std::size_t>> le;
    std::bernoulli_distribution coin(0.5);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (coin(rng))
                le.emplace_back(i, j);
    return FinCat::poset(n, le);
}

/// Random tower over `base` whose stages pull back products of p_n ⋔ D(-,d)
/// (family p) or q_n ⋔ D(-,d) (family q) along random attaching maps.
template <Field F, class Rng>
DiagramCert<F> random_pitchfork_tower(const Diagram<F>& base, GenFamily family, Rng& rng, std::size_t stages,
                                      std::size_t top) {
    const auto& cat = base.cat();
    DiagramLevel<F> L{base.field(), cat, std::nullopt};
    TowerBuilder<DiagramLevel<F>> tb(L, base);
    for (std::size_t s = 0; s < stages; ++s) {
        std::vector<Generator<F>> gens;
        std::size_t k = 1 + rng() % 2;
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t n = rng() % (top + 1);
            std::size_t d = rng() % cat->num_objects();
            auto g = family == GenFamily::p ? Generator<F>::p(n) : Generator<F>::q(n + 1);
            gens.push_back(g.at(GenShape::pitchfork, d));
        }
        auto prod = generator_product(L, gens);
        tb.push(gens, random_nat_trans(tb.current(), prod.target, rng));
    }
    return tb.finish();
}

} // namespace fibgen
