#pragma once

#include <vector>

#include "fibgen/certificate.hpp"

namespace fibgen {

enum class Side { z, x };

inline std::string_view side_name(Side s) { return s == Side::z ? "z" : "x"; }

template <Field F>
using ChainCert = PostnikovCert<ChainLevel<F>>;

template <Field F>
struct Factorization {
    ChainMap<F> left;
    ChainCert<F> cert;
    Side side = Side::z;
};

/// The unique map into a pullback stage with the given two legs.
template <Field F>
ChainMap<F> factor_through(const PostnikovStage<ChainLevel<F>>& st, const ChainMap<F>& to_prev,
                           const ChainMap<F>& to_gen) {
    std::size_t len = std::max({to_prev.source().length(), st.object.length(), to_gen.target().length()});
    std::vector<Matrix<F>> comps;
    for (std::size_t n = 0; n < len; ++n) {
        auto x = solve(vstack(st.down.comp(n), st.to_gen.comp(n)), vstack(to_prev.comp(n), to_gen.comp(n)));
        require_internal(x.has_value(), "factor_through: cone does not land in the pullback");
        comps.push_back(std::move(*x));
    }
    return ChainMap<F>::raw(to_prev.source(), st.object, std::move(comps));
}

namespace detail {

/// Map X -> prod of `count` copies of D^{n+1} (a generator-product source)
/// given its degree-n component; degree n+1 is forced to be comp * d_{n+1}.
template <Field F>
ChainMap<F> into_discs(const ChainComplex<F>& x, const ChainComplex<F>& discs, std::size_t n, const Matrix<F>& comp) {
    std::vector<Matrix<F>> comps;
    std::size_t len = std::max(x.length(), discs.length());
    for (std::size_t k = 0; k < len; ++k)
        comps.emplace_back(x.field(), discs.dim(k), x.dim(k));
    comps[n] = comp;
    if (n + 1 < len)
        comps[n + 1] = comp * x.d(n + 1);
    return ChainMap<F>::make(x, discs, std::move(comps));
}

/// Map X -> prod of spheres S^n sitting only in degree n.
template <Field F>
ChainMap<F> into_spheres(const ChainComplex<F>& x, const ChainComplex<F>& spheres, std::size_t n,
                         const Matrix<F>& comp) {
    std::vector<Matrix<F>> comps;
    std::size_t len = std::max(x.length(), spheres.length());
    for (std::size_t k = 0; k < len; ++k)
        comps.emplace_back(x.field(), spheres.dim(k), x.dim(k));
    comps[n] = comp;
    return ChainMap<F>::make(x, spheres, std::move(comps));
}

} // namespace detail

/// f = composite(cert) * left with left degreewise mono and the cert a tower
/// of pullbacks of products of q_{n+1}, one stage per degree n with
/// X_n != 0. Left is (f, ev) where ev sends X into prod D^{n+1}, one disc
/// per basis vector of X_n.
template <Field F>
Factorization<F> factor_acyclic_fibration(const ChainMap<F>& f) {
    const F& fld = f.field();
    const auto& X = f.source();
    ChainLevel<F> L{fld};
    TowerBuilder<ChainLevel<F>> tb(L, f.target());
    ChainMap<F> left = f;
    for (std::size_t n = 0; n < X.length(); ++n) {
        std::size_t k = X.dim(n);
        if (k == 0)
            continue;
        std::vector<Generator<F>> gens(k, Generator<F>::q(n + 1));
        auto zero = ChainMap<F>::zero(tb.current(), ChainComplex<F>::zero(fld));
        const auto* st = tb.push(std::move(gens), zero);
        auto ev = detail::into_discs(X, st->to_gen.target(), n, Matrix<F>::identity(fld, k));
        left = factor_through(*st, left, ev);
    }
    Factorization<F> out{left, tb.finish(), Side::z};
    require_internal(out.cert.claimed * out.left == f, "Z-factorization composite");
    return out;
}

namespace detail {

/// Basis of the classes killed by H_n(f), completed from B_n(X): returns
/// (boundary basis of X_n, complement alpha inside the killed cycles).
template <Field F>
std::pair<Matrix<F>, Matrix<F>> killed_cycles(const ChainMap<F>& f, std::size_t n) {
    const auto& X = f.source();
    const auto& Y = f.target();
    Matrix<F> zx = kernel_basis(X.d(n));
    Matrix<F> bx = image_basis(X.d(n + 1));
    Matrix<F> by = image_basis(Y.d(n + 1));
    Matrix<F> coeff = kernel_basis(hstack(f.comp(n) * zx, by));
    Matrix<F> killed = image_basis(zx * coeff.block(0, 0, zx.cols(), coeff.cols()));
    Matrix<F> alpha = complement_basis(bx, std::optional<Matrix<F>>(killed));
    return {bx, alpha};
}

/// The W-map components J_n (one row per alpha vector), or empty rows.
template <Field F>
std::vector<Matrix<F>> killed_functionals(const ChainMap<F>& f, std::vector<std::size_t>& counts) {
    std::vector<Matrix<F>> out;
    counts.clear();
    for (std::size_t n = 0; n < f.source().length(); ++n) {
        auto [bx, alpha] = killed_cycles(f, n);
        counts.push_back(alpha.cols());
        out.push_back(alpha.cols() ? dual_functionals(bx, alpha) : Matrix<F>(f.field(), 0, f.source().dim(n)));
    }
    return out;
}

template <Field F>
bool jointly_injective(const ChainMap<F>& f, const std::vector<Matrix<F>>& j) {
    for (std::size_t n = 0; n < f.source().length(); ++n)
        if (!is_injective(vstack(f.comp(n), j[n])))
            return false;
    return true;
}

} // namespace detail

/// f = composite(cert) * left with left a degreewise mono quasi-isomorphism
/// and the cert a tower over the p-generators (q_n counts as p_n followed by
/// the pullback of p_n along S^n -> 0, so Z-stages are allowed in front).
template <Field F>
Factorization<F> factor_fibration(const ChainMap<F>& f) {
    const F& fld = f.field();
    const auto& X = f.source();
    ChainLevel<F> L{fld};

    std::vector<std::size_t> counts;
    auto J = detail::killed_functionals(f, counts);

    TowerBuilder<ChainLevel<F>> tb(L, f.target());
    ChainMap<F> left = f;
    if (!detail::jointly_injective(f, J)) {
        auto z = factor_acyclic_fibration(f);
        for (const auto& st : z.cert.stages)
            tb.push_explicit(st);
        left = z.left;
        J = detail::killed_functionals(left, counts);
    }

    // W-stage: one p_{n+1} per killed class in degree n, attached by zero.
    std::vector<Generator<F>> wgens;
    for (std::size_t n = 0; n < counts.size(); ++n)
        for (std::size_t a = 0; a < counts[n]; ++a)
            wgens.push_back(Generator<F>::p(n + 1));
    if (!wgens.empty()) {
        auto zero = ChainMap<F>::zero(tb.current(), generator_product(L, wgens).target);
        const auto* st = tb.push(std::move(wgens), zero);
        const auto& discs = st->to_gen.target();
        std::vector<Matrix<F>> comps;
        std::size_t len = std::max(X.length(), discs.length());
        for (std::size_t k = 0; k < len; ++k)
            comps.emplace_back(fld, discs.dim(k), X.dim(k));
        // disc block for degree n sits after the blocks of lower degrees
        std::vector<std::size_t> row(len + 1, 0);
        for (std::size_t n = 0; n < counts.size(); ++n) {
            if (!counts[n])
                continue;
            comps[n].set_block(row[n], 0, J[n]);
            row[n] += counts[n];
            row[n + 1] += counts[n];
        }
        auto jmap = ChainMap<F>::make(X, discs, std::move(comps));
        left = factor_through(*st, left, jmap);
    }

    // Degree 0: cut W_0 down to B_0 W + j(X_0).
    {
        const auto& W = tb.current();
        Matrix<F> t = image_basis(hstack(W.d(1), left.comp(0)));
        Matrix<F> beta = complement_basis(t);
        if (beta.cols()) {
            std::vector<Generator<F>> gens(beta.cols(), Generator<F>::p(0));
            auto spheres = generator_product(L, gens).target;
            auto g = detail::into_spheres(W, spheres, 0, dual_functionals(t, beta));
            const auto* st = tb.push(std::move(gens), g);
            left = factor_through(*st, left, ChainMap<F>::zero(X, st->to_gen.target()));
        }
    }

    // Degree m: kill the cycles of W_m outside B_m W + j(Z_m X) by coning
    // them off into degree m-1.
    for (std::size_t m = 1; m < tb.current().length(); ++m) {
        const auto& W = tb.current();
        Matrix<F> zw = kernel_basis(W.d(m));
        Matrix<F> hit = image_basis(hstack(W.d(m + 1), left.comp(m) * kernel_basis(X.d(m))));
        Matrix<F> beta = complement_basis(hit, std::optional<Matrix<F>>(zw));
        if (!beta.cols())
            continue;
        Matrix<F> t = image_basis(hstack(W.d(m + 1), left.comp(m)));
        std::vector<Generator<F>> gens(beta.cols(), Generator<F>::p(m));
        auto spheres = generator_product(L, gens).target;
        auto g = detail::into_spheres(W, spheres, m, dual_functionals(t, beta));
        const auto* st = tb.push(std::move(gens), g);
        left = factor_through(*st, left, ChainMap<F>::zero(X, st->to_gen.target()));
    }

    Factorization<F> out{left, tb.finish(), Side::x};
    require_internal(out.cert.claimed * out.left == f, "X-factorization composite");
    return out;
}

} // namespace fibgen
