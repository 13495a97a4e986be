#pragma once

#include <map>
#include <vector>

#include "fibgen/diagram_level.hpp"

namespace fibgen {

namespace detail {

template <Field F>
ChainMap<F> inverse_map(const ChainMap<F>& f) {
    std::vector<Matrix<F>> comps;
    for (std::size_t n = 0; n < std::max(f.source().length(), f.target().length()); ++n) {
        auto inv = inverse(f.comp(n));
        require_internal(inv.has_value(), "inverse_map: component is not invertible");
        comps.push_back(std::move(*inv));
    }
    return ChainMap<F>::raw(f.target(), f.source(), std::move(comps));
}

inline std::vector<std::size_t> objects_of_degree(const ReedyCat& R, std::size_t n) {
    std::vector<std::size_t> out;
    for (std::size_t o = 0; o < R.cat()->num_objects(); ++o)
        if (R.degree(o) == n)
            out.push_back(o);
    return out;
}

} // namespace detail

/// Canonical tower for tau: phi -> psi over a Reedy category. Stage n (in
/// increasing degree) pulls back the product of m_r(tau) ⋔^ kappa^r over the
/// objects r of degree n. The last stage object is phi itself, so the
/// composite is exactly tau.
template <Field F>
DiagramCert<F> reedy_canonical_tower(const ReedyCat& R, const NatTrans<F>& tau) {
    const F& fld = tau.field();
    const auto& cat = R.cat();
    if (!same_cat(cat, tau.cat()))
        throw ValidationError(ErrorCode::ShapeMismatch, "transformation over a different category");
    const auto& phi = tau.source();
    DiagramLevel<F> L{fld, cat, R};
    TowerBuilder<DiagramLevel<F>> tb(L, tau.target());
    NatTrans<F> left = tau;
    std::vector<std::size_t> degrees;
    for (std::size_t n = 0; n <= R.max_degree(); ++n)
        if (!detail::objects_of_degree(R, n).empty())
            degrees.push_back(n);
    for (std::size_t di = 0; di < degrees.size(); ++di) {
        std::size_t n = degrees[di];
        const auto y = tb.current();
        const auto right = tb.finish().claimed;  // y -> psi
        std::map<std::size_t, ChainMap<F>> linv;  // phi(t) <- y(t) below degree n
        auto back = [&](std::size_t t) -> const ChainMap<F>& {
            require_internal(R.degree(t) < n, "canonical tower: inverse needed at the current degree");
            auto it = linv.find(t);
            if (it == linv.end())
                it = linv.emplace(t, detail::inverse_map(left.at(t))).first;
            return it->second;
        };
        std::vector<Generator<F>> gens;
        std::vector<NatTrans<F>> attach, to_gen;
        for (auto r : detail::objects_of_degree(R, n)) {
            auto rm = rel_matching(R, tau, r);
            auto pc = pullback_cotensor_gen(R, rm.map, r);
            gens.push_back(Generator<F>::of(rm.map).at(GenShape::reedy_cotensor, r));
            auto k_e = into_indexed<F>(y, pc.e_bd, [&](std::size_t, std::size_t h) {
                std::size_t lo = R.minus_part(h), hi = R.plus_part(h);
                return phi.map(hi) * back(cat->tgt(lo)) * y.map(lo);
            });
            std::vector<ChainMap<F>> cone;
            for (auto u : rm.mphi.slice.arrows)
                cone.push_back(back(cat->tgt(u)) * y.map(u));
            auto c_r = rm.pb.factor(rm.mphi.lim.factor(y.at(r), cone), right.at(r));
            auto k_b = into_power(y, pc.b_full, c_r);
            attach.push_back(pc.pb.factor(k_e, k_b));
            to_gen.push_back(into_power(phi, pc.e_full, ChainMap<F>::identity(phi.at(r))));
        }
        std::vector<Diagram<F>> srcs, tgts;
        for (std::size_t i = 0; i < attach.size(); ++i) {
            srcs.push_back(to_gen[i].target());
            tgts.push_back(attach[i].target());
        }
        auto attaching = diagram_tuple(diagram_biproduct(cat, fld, tgts), attach);
        auto into_gen = diagram_tuple(diagram_biproduct(cat, fld, srcs), to_gen);
        if (di + 1 == degrees.size()) {
            tb.push_explicit(PostnikovStage<DiagramLevel<F>>{gens, attaching, phi, left, into_gen});
            left = NatTrans<F>::identity(phi);
        } else {
            const auto* st = tb.push(gens, attaching);
            left = diagram_factor_through(*st, left, into_gen);
            for (std::size_t o = 0; o < cat->num_objects(); ++o)
                if (R.degree(o) <= n && !is_isomorphism(left.at(o)))
                    throw InternalError("canonical tower: stage is not an isomorphism in low degree");
        }
    }
    auto cert = tb.finish();
    require_internal(cert.claimed == tau, "canonical tower composite");
    return cert;
}

/// Canonical cell presentation of tau: phi -> psi: stage n attaches the
/// cells l_r(tau) (x)^ kappa_r for the objects r of degree n. The last stage
/// object is psi itself.
template <Field F>
DiagramCellCert<F> reedy_canonical_cells(const ReedyCat& R, const NatTrans<F>& tau) {
    const F& fld = tau.field();
    const auto& cat = R.cat();
    if (!same_cat(cat, tau.cat()))
        throw ValidationError(ErrorCode::ShapeMismatch, "transformation over a different category");
    const auto& psi = tau.target();
    DiagramLevel<F> L{fld, cat, R};
    CellBuilder<DiagramLevel<F>> cb(L, tau.source());
    NatTrans<F> right = tau;  // current -> psi
    std::vector<std::size_t> degrees;
    for (std::size_t n = 0; n <= R.max_degree(); ++n)
        if (!detail::objects_of_degree(R, n).empty())
            degrees.push_back(n);
    for (std::size_t di = 0; di < degrees.size(); ++di) {
        std::size_t n = degrees[di];
        const auto q = cb.current();
        const auto up = cb.finish().claimed;  // phi -> q
        std::map<std::size_t, ChainMap<F>> rinv;
        auto back = [&](std::size_t t) -> const ChainMap<F>& {
            require_internal(R.degree(t) < n, "canonical cells: inverse needed at the current degree");
            auto it = rinv.find(t);
            if (it == rinv.end())
                it = rinv.emplace(t, detail::inverse_map(right.at(t))).first;
            return it->second;
        };
        std::vector<Generator<F>> gens;
        std::vector<NatTrans<F>> attach, from_gen;
        for (auto r : detail::objects_of_degree(R, n)) {
            auto rl = rel_latching(R, tau, r);
            auto pp = pushout_product_gen(R, rl.map, r);
            gens.push_back(Generator<F>::of(rl.map).at(GenShape::reedy_pushout_product, r));
            std::vector<ChainMap<F>> cocone;
            for (auto h : rl.lpsi.slice.arrows)
                cocone.push_back(q.map(h) * back(cat->src(h)));
            auto a_r = rl.po.cofactor(up.at(r), rl.lpsi.colim.cofactor(q.at(r), cocone));
            auto on_full = out_of_copower(pp.a_full, q, a_r);
            auto on_bd = out_of_indexed<F>(pp.b_bd, q, [&](std::size_t, std::size_t h) {
                std::size_t lo = R.minus_part(h), hi = R.plus_part(h);
                return q.map(hi) * back(cat->tgt(lo)) * psi.map(lo);
            });
            attach.push_back(pp.po.cofactor(on_full, on_bd));
            from_gen.push_back(out_of_copower(pp.b_full, psi, ChainMap<F>::identity(psi.at(r))));
        }
        std::vector<Diagram<F>> srcs, tgts;
        for (std::size_t i = 0; i < attach.size(); ++i) {
            srcs.push_back(attach[i].source());
            tgts.push_back(from_gen[i].source());
        }
        auto attaching = diagram_cotuple(diagram_biproduct(cat, fld, srcs), attach);
        auto out_gen = diagram_cotuple(diagram_biproduct(cat, fld, tgts), from_gen);
        if (di + 1 == degrees.size()) {
            cb.push_explicit(CellStage<DiagramLevel<F>>{gens, attaching, psi, right, out_gen});
            right = NatTrans<F>::identity(psi);
        } else {
            const auto* st = cb.push(gens, attaching);
            right = diagram_cofactor_through(*st, right, out_gen);
            for (std::size_t o = 0; o < cat->num_objects(); ++o)
                if (R.degree(o) <= n && !is_isomorphism(right.at(o)))
                    throw InternalError("canonical cells: stage is not an isomorphism in low degree");
        }
    }
    auto cert = cb.finish();
    require_internal(cert.claimed == tau, "canonical cells composite");
    return cert;
}

} // namespace fibgen
