#include <gtest/gtest.h>

#include <random>

#include "fibgen/injective.hpp"
#include "fibgen/random_diagram.hpp"
#include "fibgen/reedy_tower.hpp"

using namespace fibgen;

namespace {

using Cx = ChainComplex<PrimeField>;
using Map = ChainMap<PrimeField>;
using M = Matrix<PrimeField>;
using Dg = Diagram<PrimeField>;
using Nat = NatTrans<PrimeField>;
const PrimeField F{101};

// a -> b with degrees 0, 1
ReedyCat direct_arrow() { return ReedyCat::direct(share(FinCat::arrow()), {0, 1}); }
// a -> b with degrees 1, 0
ReedyCat inverse_arrow() { return ReedyCat::inverse(share(FinCat::arrow()), {1, 0}); }

// chain 0 < 1 < 2 and the diamond, degree = index
ReedyCat direct_chain() { return ReedyCat::direct(share(FinCat::poset(3, {{0, 1}, {1, 2}})), {0, 1, 2}); }
ReedyCat direct_diamond() {
    return ReedyCat::direct(share(FinCat::poset(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}})), {0, 1, 1, 2});
}

std::vector<ReedyCat> reedy_shapes() {
    return {ReedyCat::direct(share(FinCat::discrete(2)), {0, 0}),
            direct_arrow(),
            inverse_arrow(),
            direct_chain(),
            direct_diamond(),
            direct_chain().opposite(),
            ReedyCat::simplex(1)};
}

Dg arrow_diagram(const CatPtr& c, const Map& f) {
    return Dg::make(c, F, {f.source(), f.target()}, {Map::identity(f.source()), Map::identity(f.target()), f});
}

Nat random_trans(const ReedyCat& R, std::mt19937_64& rng, std::size_t top = 2, std::size_t dim = 2) {
    auto s = random_diagram(R.cat(), F, rng, top, dim);
    auto t = random_diagram(R.cat(), F, rng, top, dim);
    return random_nat_trans(s, t, rng);
}

template <class Fn>
void expect_code(ErrorCode code, Fn fn) {
    try {
        fn();
        ADD_FAILURE() << "no error raised";
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

} // namespace

TEST(ReedyValidate, DirectInverseAndSimplex) {
    EXPECT_NO_THROW(direct_arrow());
    EXPECT_NO_THROW(inverse_arrow());
    auto d1 = ReedyCat::simplex(1);
    const auto& c = *d1.cat();
    std::size_t plus = 0, minus = 0;
    for (std::size_t m = 0; m < c.num_morphisms(); ++m) {
        if (c.is_identity(m))
            continue;
        plus += d1.is_plus(m);
        minus += d1.is_minus(m);
        EXPECT_EQ(c.compose(d1.plus_part(m), d1.minus_part(m)), m);
    }
    EXPECT_EQ(plus, 2u);   // two cofaces
    EXPECT_EQ(minus, 1u);  // one codegeneracy
    EXPECT_NO_THROW(ReedyCat::simplex(2));
}

TEST(ReedyValidate, Errors) {
    auto arrow = share(FinCat::arrow());
    expect_code(ErrorCode::DegreeViolation, [&] { ReedyCat::direct(arrow, {1, 0}); });
    expect_code(ErrorCode::DegreeViolation, [&] { ReedyCat::direct(arrow, {0, 0}); });
    // parallel pair a => b, one arrow plus and one neither
    auto pp = share(FinCat::parallel_pair());
    ArrowSet plus(pp->num_morphisms(), true), minus(pp->num_morphisms(), false);
    for (std::size_t o = 0; o < 2; ++o)
        minus[pp->identity(o)] = true;
    std::size_t other = FinCat::npos;
    for (std::size_t m = 0; m < pp->num_morphisms(); ++m)
        if (!pp->is_identity(m))
            other = m;
    plus[other] = false;
    expect_code(ErrorCode::FactorizationMissing, [&] { ReedyCat::make(pp, {0, 1}, plus, minus); });
    // idempotent e on one object cannot raise degree, and as neither plus
    // nor minus it has no factorization
    auto idem = share(FinCat::monoid({{0, 1}, {1, 1}}));
    expect_code(ErrorCode::DegreeViolation, [&] { ReedyCat::direct(idem, {0}); });
    ArrowSet only_id(idem->num_morphisms(), false);
    only_id[idem->identity(0)] = true;
    expect_code(ErrorCode::FactorizationMissing, [&] { ReedyCat::make(idem, {0}, only_id, only_id); });
    ArrowSet no_id(arrow->num_morphisms(), true);
    no_id[arrow->identity(0)] = false;
    expect_code(ErrorCode::NotASubcategory, [&] { ReedyCat::make(arrow, {0, 1}, all_arrows(*arrow), no_id); });
}

TEST(ReedyValidate, NonUniqueFactorization) {
    // diamond a < m1, m2 < c with a, c in degree 1 and m1, m2 in degree 0:
    // a -> c factors through both middle objects
    auto cat = share(FinCat::poset(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
    ArrowSet plus(cat->num_morphisms(), false), minus(cat->num_morphisms(), false);
    for (std::size_t o = 0; o < 4; ++o)
        plus[cat->identity(o)] = minus[cat->identity(o)] = true;
    minus[cat->morphism_index("0<1")] = minus[cat->morphism_index("0<2")] = true;
    plus[cat->morphism_index("1<3")] = plus[cat->morphism_index("2<3")] = true;
    expect_code(ErrorCode::FactorizationNotUnique, [&] { ReedyCat::make(cat, {1, 0, 0, 1}, plus, minus); });
}

TEST(Latching, DirectArrow) {
    auto R = direct_arrow();
    auto f = Map::make(Cx::sphere(F, 0), Cx::disc(F, 1), {M::identity(F, 1), M(F, 1, 0)});
    auto phi = arrow_diagram(R.cat(), f);
    auto l1 = latching(R, phi, 1);
    EXPECT_EQ(l1.object, phi.at(0));
    EXPECT_EQ(l1.map, f.retyped(l1.object, phi.at(1)));
    EXPECT_TRUE(latching(R, phi, 0).object.is_zero());
    EXPECT_TRUE(matching(R, phi, 1).object.is_zero());
    EXPECT_TRUE(matching(R, phi, 0).object.is_zero());
}

TEST(Latching, DiscreteIsZero) {
    std::mt19937_64 rng(1);
    auto R = ReedyCat::direct(share(FinCat::discrete(3)), {0, 0, 0});
    auto phi = random_diagram(R.cat(), F, rng, 2, 2);
    for (std::size_t r = 0; r < 3; ++r) {
        EXPECT_TRUE(latching(R, phi, r).object.is_zero());
        EXPECT_TRUE(matching(R, phi, r).object.is_zero());
    }
}

TEST(Latching, InverseArrowMatching) {
    auto R = inverse_arrow();
    auto f = Map::make(Cx::disc(F, 1), Cx::sphere(F, 1), {M(F, 0, 1), M::identity(F, 1)});
    auto phi = arrow_diagram(R.cat(), f);
    auto m0 = matching(R, phi, 0);
    EXPECT_EQ(m0.object, phi.at(1));
    EXPECT_EQ(m0.map, f.retyped(phi.at(0), m0.object));
}

TEST(RelativeMaps, OnDirectArrow) {
    std::mt19937_64 rng(2);
    auto R = direct_arrow();
    for (int k = 0; k < 10; ++k) {
        auto tau = random_trans(R, rng);
        // m_1 = tau_1 up to the canonical iso P = psi(1)
        auto m1 = rel_matching(R, tau, 1);
        EXPECT_TRUE(is_isomorphism(m1.pb.leg2));
        EXPECT_EQ(m1.pb.leg2 * m1.map, tau.at(1));
        // l_1 restricted along phi(1) is tau_1, along psi(0) is psi(a->b)
        auto l1 = rel_latching(R, tau, 1);
        EXPECT_EQ(l1.map * l1.po.leg1, tau.at(1));
        EXPECT_EQ(l1.map * l1.po.leg2 * l1.lpsi.colim.legs[0], tau.target().map(2));
    }
}

TEST(RelativeMaps, IdentityIsIsoCofibration) {
    std::mt19937_64 rng(3);
    for (const auto& R : reedy_shapes()) {
        auto phi = random_diagram(R.cat(), F, rng, 2, 2);
        auto id = Nat::identity(phi);
        for (std::size_t r = 0; r < R.cat()->num_objects(); ++r) {
            auto k = classify(rel_latching(R, id, r).map);
            EXPECT_TRUE(k.cofibration && k.weak_equivalence);
            EXPECT_TRUE(is_isomorphism(rel_matching(R, id, r).map));
        }
        EXPECT_EQ(reedy_classify(R, id), (ReedyClass{true, true, true}));
    }
}

TEST(ReedyClassify, ObjectwiseMonoButNotReedyCofibration) {
    // phi = (0 -> S^0), psi = (S^0 -> S^0), tau = (0, id): the relative
    // latching map at 1 is the fold S^0 + S^0 -> S^0
    auto R = direct_arrow();
    auto s0 = Cx::sphere(F, 0);
    auto z = Cx::zero(F);
    auto phi = arrow_diagram(R.cat(), Map::zero(z, s0));
    auto psi = arrow_diagram(R.cat(), Map::identity(s0));
    auto tau = Nat::make(phi, psi, {Map::zero(z, s0), Map::identity(s0)});
    EXPECT_TRUE(objectwise_classify(tau).all.cofibration);
    EXPECT_FALSE(reedy_classify(R, tau).cofibration);
}

TEST(ReedyClassify, DegenerateCases) {
    std::mt19937_64 rng(4);
    auto direct = {direct_arrow(), direct_chain(), direct_diamond()};
    for (const auto& R : direct)
        for (int k = 0; k < 8; ++k) {
            auto tau = random_trans(R, rng);
            EXPECT_EQ(reedy_classify(R, tau).fibration, objectwise_classify(tau).all.fibration);
            auto inv = R.opposite();
            auto sig = random_trans(inv, rng);
            EXPECT_EQ(reedy_classify(inv, sig).cofibration, objectwise_classify(sig).all.cofibration);
        }
}

TEST(Boundary, Examples) {
    auto R = direct_arrow();
    EXPECT_EQ(boundary_representable(R, 1, true), ArrowSet(3, false));
    EXPECT_EQ(boundary_representable(R, 0, true), ArrowSet(3, false));
    // contravariant at 1: the arrow a -> b factors through a (degree 0)
    auto bd = boundary_representable(R, 1, false);
    EXPECT_TRUE(bd[2]);
    EXPECT_FALSE(bd[R.cat()->identity(1)]);

    auto d1 = ReedyCat::simplex(1);
    const auto& c = *d1.cat();
    auto b = boundary_representable(d1, 1, false);
    std::size_t at0 = 0, at1 = 0;
    for (std::size_t m = 0; m < c.num_morphisms(); ++m) {
        if (!b[m])
            continue;
        EXPECT_EQ(c.tgt(m), 1u);
        (c.src(m) == 0 ? at0 : at1)++;
    }
    EXPECT_EQ(at0, 2u);  // both cofaces
    EXPECT_EQ(at1, 2u);  // the constant maps, through [0]
    EXPECT_FALSE(b[c.identity(1)]);
}

TEST(Generators, EmptyBoundary) {
    std::mt19937_64 rng(5);
    auto R = direct_arrow();
    auto i = random_map(F, rng, 2, 2);
    auto g = pushout_product_gen(R, i, 1);
    auto p = pullback_cotensor_gen(R.opposite(), i, 1);
    for (std::size_t o = 0; o < 2; ++o) {
        EXPECT_TRUE(is_isomorphism(g.po.leg1.at(o)));
        EXPECT_TRUE(is_isomorphism(p.pb.leg2.at(o)));
    }
}

TEST(Generators, PushoutProductOnArrow) {
    auto R = direct_arrow();
    auto i = Map::zero(Cx::zero(F), Cx::sphere(F, 0));
    auto g = pushout_product_gen(R, i, 1);
    EXPECT_TRUE(g.map.at(0).source().is_zero() && g.map.at(0).target().is_zero());
    EXPECT_TRUE(g.map.at(1).source().is_zero());
    EXPECT_EQ(g.map.at(1).target(), Cx::sphere(F, 0));
}

TEST(Generators, PullbackCotensorOnSimplex) {
    auto d1 = ReedyCat::simplex(1);
    auto p = core_map(F, Generator<PrimeField>::p(1));
    auto g = pullback_cotensor_gen(d1, p, 1);
    // at [0]: E^2 x_{B^2} B^2 = E^2 with E = D^1, hom([0],[1]) has 2 arrows
    EXPECT_EQ(g.map.target().at(0).dim(0), 2u);
    EXPECT_EQ(g.map.target().at(0).dim(1), 2u);
    // at [1]: the two constant maps are in the boundary, the identity and
    // codegeneracy-coface composites are not
    EXPECT_EQ(g.map.source().at(1).dim(1), d1.cat()->hom(1, 1).size());
}

TEST(Adjunction, PushoutProductVersusMatching) {
    std::mt19937_64 rng(6);
    std::size_t agree = 0, lifts = 0, total = 0;
    for (const auto& R : reedy_shapes())
        for (int k = 0; k < 6; ++k) {
            auto tau = random_trans(R, rng);
            std::size_t r = rng() % R.cat()->num_objects();
            auto i = (k % 2) ? random_cofibration(F, rng, 2, 2) : random_map(F, rng, 2, 2);
            auto m = rel_matching(R, tau, r);
            auto sq = random_square(i, m.map, rng);
            auto g = pushout_product_gen(R, i, r);
            auto dsq = transpose_to_pushout_product(R, g, tau, m, sq);
            bool a = solve_lift(sq).has_value();
            bool b = diagram_solve_lift(dsq).has_value();
            agree += a == b;
            lifts += a;
            ++total;
        }
    EXPECT_EQ(agree, total);
    EXPECT_GT(lifts, 0u);
    EXPECT_LT(lifts, total);
}

TEST(Adjunction, PullbackCotensorVersusLatching) {
    std::mt19937_64 rng(7);
    std::size_t agree = 0, lifts = 0, total = 0;
    for (const auto& R : reedy_shapes())
        for (int k = 0; k < 6; ++k) {
            auto tau = random_trans(R, rng);
            std::size_t r = rng() % R.cat()->num_objects();
            auto p = (k % 2) ? random_acyclic_fibration(F, rng, 2, 2) : random_map(F, rng, 2, 2);
            auto l = rel_latching(R, tau, r);
            auto sq = random_square(l.map, p, rng);
            auto g = pullback_cotensor_gen(R, p, r);
            auto dsq = transpose_to_pullback_cotensor(R, g, tau, l, sq);
            bool a = solve_lift(sq).has_value();
            bool b = diagram_solve_lift(dsq).has_value();
            agree += a == b;
            lifts += a;
            ++total;
        }
    EXPECT_EQ(agree, total);
    EXPECT_GT(lifts, 0u);
    EXPECT_LT(lifts, total);
}

TEST(Duality, LatchingIsDualMatching) {
    std::mt19937_64 rng(8);
    const std::size_t top = 2;
    for (const auto& R : reedy_shapes()) {
        auto op = R.opposite();
        for (int k = 0; k < 4; ++k) {
            auto phi = random_diagram(R.cat(), F, rng, top, 2);
            auto dual = dual_diagram(phi, op.cat(), top);
            for (std::size_t r = 0; r < R.cat()->num_objects(); ++r) {
                auto l = latching(R, phi, r);
                auto m = matching(op, dual, r);
                ASSERT_EQ(l.slice.arrows, m.slice.arrows);
                // dual of the colimit cocone is a limit cone
                std::vector<Map> legs;
                for (const auto& leg : l.colim.legs)
                    legs.push_back(dual_map(leg, top));
                auto j = m.lim.factor(dual_complex(l.object, top), legs);
                EXPECT_TRUE(is_isomorphism(j));
                EXPECT_EQ(j * dual_map(l.map, top), m.map);
            }
        }
    }
}

TEST(CanonicalTower, ArrowByHand) {
    auto R = direct_arrow();
    std::mt19937_64 rng(9);
    auto tau = random_trans(R, rng);
    auto cert = reedy_canonical_tower(R, tau);
    DiagramLevel<PrimeField> L{F, R.cat(), R};
    EXPECT_TRUE(verify_postnikov(L, cert).ok);
    ASSERT_EQ(cert.stages.size(), 2u);
    EXPECT_EQ(cert.stages[0].generators.at(0).object, 0u);
    EXPECT_EQ(cert.stages[1].generators.at(0).object, 1u);
    EXPECT_EQ(cert.claimed, tau);
}

TEST(CanonicalTower, DiscreteIsOneStage) {
    std::mt19937_64 rng(10);
    auto R = ReedyCat::direct(share(FinCat::discrete(3)), {0, 0, 0});
    auto tau = random_trans(R, rng);
    auto cert = reedy_canonical_tower(R, tau);
    ASSERT_EQ(cert.stages.size(), 1u);
    EXPECT_EQ(cert.stages[0].generators.size(), 3u);
    for (std::size_t r = 0; r < 3; ++r)
        EXPECT_TRUE(is_isomorphism(rel_matching(R, tau, r).pb.leg2));
}

TEST(CanonicalTower, VerifiesAndComposes) {
    std::mt19937_64 rng(11);
    for (const auto& R : reedy_shapes()) {
        DiagramLevel<PrimeField> L{F, R.cat(), R};
        for (int k = 0; k < 4; ++k) {
            auto tau = random_trans(R, rng);
            auto cert = reedy_canonical_tower(R, tau);
            auto v = verify_postnikov(L, cert);
            EXPECT_TRUE(v.ok) << v.reason;
            EXPECT_EQ(cert.claimed, tau);
            auto cells = reedy_canonical_cells(R, tau);
            auto w = verify_cell(L, cells);
            EXPECT_TRUE(w.ok) << w.reason;
            EXPECT_EQ(cells.claimed, tau);
        }
        auto phi = random_diagram(R.cat(), F, rng, 2, 2);
        auto id = Nat::identity(phi);
        EXPECT_EQ(reedy_canonical_tower(R, id).claimed, id);
        EXPECT_EQ(reedy_canonical_cells(R, id).claimed, id);
    }
}

TEST(CanonicalTower, SimplexTwo) {
    std::mt19937_64 rng(12);
    auto R = ReedyCat::simplex(2);
    DiagramLevel<PrimeField> L{F, R.cat(), R};
    auto tau = random_trans(R, rng, 1, 1);
    auto cert = reedy_canonical_tower(R, tau);
    EXPECT_TRUE(verify_postnikov(L, cert).ok);
    EXPECT_EQ(cert.stages.size(), 3u);
}

TEST(CanonicalTower, TamperedCertFails) {
    std::mt19937_64 rng(13);
    auto R = direct_chain();
    DiagramLevel<PrimeField> L{F, R.cat(), R};
    Nat tau;
    do
        tau = random_trans(R, rng);
    while (tau.source().at(0).is_zero());
    auto cert = reedy_canonical_tower(R, tau);
    cert.claimed = cert.claimed + cert.claimed;
    EXPECT_FALSE(verify_postnikov(L, cert).ok);
}

TEST(InjectiveZ, DiscreteMatchesObjectwise) {
    std::mt19937_64 rng(14);
    auto cat = share(FinCat::discrete(2));
    auto tau = random_nat_trans(random_diagram(cat, F, rng, 2, 2), random_diagram(cat, F, rng, 2, 2), rng);
    auto fz = factor_injective_z(tau);
    DiagramLevel<PrimeField> L{F, cat, std::nullopt};
    EXPECT_TRUE(verify_postnikov(L, fz.cert).ok);
    EXPECT_TRUE(is_objectwise_injective(fz.left));
    for (std::size_t d = 0; d < 2; ++d) {
        auto zf = factor_acyclic_fibration(tau.at(d));
        EXPECT_EQ(fz.left.target().at(d).dims(), zf.left.target().dims());
    }
}

TEST(InjectiveZ, ConstantSphereToZero) {
    auto cat = share(FinCat::arrow());
    auto s1 = Cx::sphere(F, 1);
    auto phi = arrow_diagram(cat, Map::identity(s1));
    auto tau = Nat::zero(phi, Dg::zero(cat, F));
    auto fz = factor_injective_z(tau);
    DiagramLevel<PrimeField> L{F, cat, std::nullopt};
    EXPECT_TRUE(verify_postnikov(L, fz.cert).ok);
    EXPECT_TRUE(is_objectwise_injective(fz.left));
    EXPECT_EQ(fz.cert.claimed * fz.left, tau);
    EXPECT_TRUE(objectwise_classify(fz.cert.claimed).all.fibration);
    EXPECT_TRUE(objectwise_classify(fz.cert.claimed).all.weak_equivalence);
}

TEST(InjectiveZ, IdentityAndRandom) {
    std::mt19937_64 rng(15);
    for (int k = 0; k < 12; ++k) {
        auto cat = share(random_poset(1 + rng() % 4, rng));
        DiagramLevel<PrimeField> L{F, cat, std::nullopt};
        auto s = random_diagram(cat, F, rng, 2, 2);
        auto tau = k % 3 == 0 ? Nat::identity(s) : random_nat_trans(s, random_diagram(cat, F, rng, 2, 2), rng);
        auto fz = factor_injective_z(tau);
        EXPECT_TRUE(verify_postnikov(L, fz.cert).ok);
        EXPECT_TRUE(is_objectwise_injective(fz.left));
        EXPECT_EQ(fz.cert.claimed * fz.left, tau);
        auto k2 = objectwise_classify(fz.cert.claimed).all;
        EXPECT_TRUE(k2.fibration && k2.weak_equivalence);
    }
}

TEST(PitchforkTowers, ObjectwiseFibrations) {
    std::mt19937_64 rng(16);
    for (int k = 0; k < 10; ++k) {
        auto cat = share(random_poset(1 + rng() % 3, rng));
        DiagramLevel<PrimeField> L{F, cat, std::nullopt};
        auto base = random_diagram(cat, F, rng, 2, 2);
        auto x = random_pitchfork_tower(base, GenFamily::p, rng, 3, 2);
        EXPECT_TRUE(verify_postnikov(L, x).ok);
        EXPECT_TRUE(objectwise_classify(x.claimed).all.fibration);
        auto z = random_pitchfork_tower(base, GenFamily::q, rng, 3, 2);
        EXPECT_TRUE(verify_postnikov(L, z).ok);
        auto kz = objectwise_classify(z.claimed).all;
        EXPECT_TRUE(kz.fibration && kz.weak_equivalence);
    }
}

TEST(CanonicalTower, FibrationLayers) {
    std::mt19937_64 rng(17);
    for (const auto& R : reedy_shapes())
        for (int k = 0; k < 3; ++k) {
            std::size_t r = rng() % R.cat()->num_objects();
            auto tau = pullback_cotensor_gen(R, random_acyclic_fibration(F, rng, 2, 2), r).map;
            ASSERT_TRUE(reedy_classify(R, tau).fibration);
            auto cert = reedy_canonical_tower(R, tau);
            for (const auto& st : cert.stages)
                for (const auto& g : st.generators)
                    EXPECT_TRUE(classify(core_map(F, g)).fibration);
        }
}

TEST(SliceConventions, AgreeOnShippedShapes) {
    std::mt19937_64 rng(18);
    auto shapes = reedy_shapes();
    shapes.push_back(ReedyCat::simplex(2));
    for (const auto& R : shapes)
        for (int k = 0; k < 3; ++k) {
            auto phi = random_diagram(R.cat(), F, rng, 2, 2);
            for (std::size_t r = 0; r < R.cat()->num_objects(); ++r) {
                EXPECT_TRUE(slice_conventions_agree(R, phi, r, true));
                EXPECT_TRUE(slice_conventions_agree(R, phi, r, false));
            }
        }
    // in Δ≤2 the constant maps [1] -> [2] come from lower degree but are not plus
    auto d2 = ReedyCat::simplex(2);
    std::size_t top = d2.cat()->object_index("[2]");
    EXPECT_GT(reedy_slice(d2, top, true, false).arrows.size(), reedy_slice(d2, top, true).arrows.size());
}
