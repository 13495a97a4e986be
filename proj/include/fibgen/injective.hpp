#pragma once

#include <vector>

#include "fibgen/diagram_level.hpp"
#include "fibgen/postfactor.hpp"

namespace fibgen {

template <Field F>
struct DiagramFactorization {
    NatTrans<F> left;
    DiagramCert<F> cert;
};

/// tau: phi -> psi factors as phi -> ran(phi') x psi -> psi, where
/// phi(d) -> phi'(d) -> 0 is the chain-level Z-factorization at each object.
/// The right factor is a tower of pullbacks of products of q_{n+1} ⋔ D(-,d),
/// one stage per (object, degree) with phi(d)_n != 0; the left factor is
/// (transpose of the evaluations, tau).
template <Field F>
DiagramFactorization<F> factor_injective_z(const NatTrans<F>& tau) {
    const F& fld = tau.field();
    const auto& cat = tau.cat();
    const auto& phi = tau.source();
    DiagramLevel<F> L{fld, cat, std::nullopt};
    TowerBuilder<DiagramLevel<F>> tb(L, tau.target());
    NatTrans<F> left = tau;
    for (std::size_t d = 0; d < cat->num_objects(); ++d) {
        const auto& x = phi.at(d);
        for (std::size_t n = 0; n < x.length(); ++n) {
            std::size_t k = x.dim(n);
            if (k == 0)
                continue;
            std::vector<Generator<F>> gens(k, Generator<F>::q(n + 1).at(GenShape::pitchfork, d));
            auto prod = generator_product(L, gens);
            auto attaching = NatTrans<F>::zero(tb.current(), prod.target);
            const auto* st = tb.push(gens, attaching);
            auto disc = ChainComplex<F>::disc(fld, n + 1);
            auto pw = power(cat, disc, arrows_to(*cat, d));
            std::vector<Diagram<F>> parts(k, pw.object);
            auto sum = diagram_biproduct(cat, fld, parts);
            std::vector<NatTrans<F>> coords;
            for (std::size_t i = 0; i < k; ++i) {
                Matrix<F> row(fld, 1, k);
                row(0, i) = fld.one();
                auto ev = detail::into_discs(x, disc, n, row);
                coords.push_back(into_power(phi, pw, ev));
            }
            left = diagram_factor_through(*st, left, diagram_tuple(sum, coords));
        }
    }
    DiagramFactorization<F> out{left, tb.finish()};
    require_internal(out.cert.claimed * out.left == tau, "injective Z-factorization composite");
    return out;
}

} // namespace fibgen
