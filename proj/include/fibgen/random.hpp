#pragma once

#include <random>
#include <vector>

#include "fibgen/postfactor.hpp"

namespace fibgen {

/// Random matrix with roughly one entry in `density` nonzero.
template <Field F, class Rng>
Matrix<F> random_matrix(F field, std::size_t rows, std::size_t cols, Rng& rng, int density = 2) {
    Matrix<F> m(field, rows, cols);
    std::uniform_int_distribution<int> coin(0, density - 1);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (coin(rng) == 0)
                m(i, j) = field.random(rng);
    return m;
}

template <Field F, class Rng>
Matrix<F> random_invertible(F field, std::size_t n, Rng& rng) {
    for (;;) {
        auto m = random_matrix(field, n, n, rng, 1);
        if (rank(m) == n)
            return m;
    }
}

/// Random complex with degrees 0..top and each dim in [0, max_dim]. Each
/// d_n is a random combination of cycles of degree n-1, so d^2 = 0 holds by
/// construction.
template <Field F, class Rng>
ChainComplex<F> random_complex(F field, Rng& rng, std::size_t top, std::size_t max_dim) {
    std::uniform_int_distribution<std::size_t> dd(0, max_dim);
    std::vector<std::size_t> dims;
    for (std::size_t n = 0; n <= top; ++n)
        dims.push_back(dd(rng));
    std::vector<Matrix<F>> diff;
    Matrix<F> prev(field, 0, dims[0]);
    for (std::size_t n = 1; n <= top; ++n) {
        Matrix<F> z = kernel_basis(prev);
        Matrix<F> d = z * random_matrix(field, z.cols(), dims[n], rng);
        diff.push_back(d);
        prev = d;
    }
    return ChainComplex<F>::make(field, std::move(dims), std::move(diff));
}

/// Uniform random element of the space of chain maps X -> Y.
template <Field F, class Rng>
ChainMap<F> random_chain_map(const ChainComplex<F>& x, const ChainComplex<F>& y, Rng& rng) {
    const F& fld = x.field();
    std::size_t len = common_length(x, y);
    LinearSystem<F> sys(fld);
    std::vector<std::size_t> blk;
    for (std::size_t n = 0; n < len; ++n)
        blk.push_back(sys.add_block(y.dim(n), x.dim(n)));
    std::vector<Matrix<F>> keep;
    keep.reserve(2 * len);
    using Term = typename LinearSystem<F>::Term;
    for (std::size_t n = 1; n < len; ++n) {
        const auto& dy = keep.emplace_back(y.d(n));
        const auto& dx = keep.emplace_back(x.d(n));
        sys.add_matrix_equation({Term{blk[n], &dy, nullptr}, Term{blk[n - 1], nullptr, &dx, true}}, nullptr,
                                y.dim(n - 1), x.dim(n));
    }
    auto sol = sys.solve_random(rng);
    require_internal(sol.has_value(), "random_chain_map: homogeneous system infeasible");
    std::vector<Matrix<F>> comps;
    for (std::size_t n = 0; n < len; ++n)
        comps.push_back(sys.block_value(*sol, blk[n]));
    return ChainMap<F>::make(x, y, std::move(comps));
}

template <Field F, class Rng>
ChainMap<F> random_map(F field, Rng& rng, std::size_t top, std::size_t max_dim) {
    auto x = random_complex(field, rng, top, max_dim);
    auto y = random_complex(field, rng, top, max_dim);
    return random_chain_map(x, y, rng);
}

/// Random change of basis out of `c`; the target is the transported complex.
template <Field F, class Rng>
ChainMap<F> random_isomorphism_from(const ChainComplex<F>& c, Rng& rng) {
    const F& fld = c.field();
    std::vector<Matrix<F>> p, pinv;
    for (std::size_t n = 0; n < c.length(); ++n) {
        auto m = random_invertible(fld, c.dim(n), rng);
        pinv.push_back(*inverse(m));
        p.push_back(std::move(m));
    }
    std::vector<Matrix<F>> diff;
    for (std::size_t n = 1; n < c.length(); ++n)
        diff.push_back(p[n - 1] * c.d(n) * pinv[n]);
    auto t = ChainComplex<F>::make(fld, c.dims(), std::move(diff));
    return ChainMap<F>::make(c, t, std::move(p));
}

/// Random acyclic fibration: a projection E -> Y whose kernel is a sum of
/// discs, with E twisted and then transported along a random change of
/// basis.
template <Field F, class Rng>
ChainMap<F> random_acyclic_fibration(F field, Rng& rng, std::size_t top, std::size_t max_dim) {
    auto y = random_complex(field, rng, top, max_dim);
    // acyclic complex: sum of discs
    std::vector<ChainComplex<F>> parts;
    std::uniform_int_distribution<std::size_t> cnt(0, 2);
    for (std::size_t n = 1; n <= top + 1; ++n)
        for (std::size_t k = cnt(rng); k > 0; --k)
            parts.push_back(ChainComplex<F>::disc(field, n));
    auto a = biproduct(field, parts).object;
    std::size_t len = std::max(y.length(), a.length());
    // E = Y + A with d^E = [[dY, 0], [t, dA]], t = dA s - s dY null-homotopic
    std::vector<Matrix<F>> s;
    for (std::size_t n = 0; n < len; ++n)
        s.push_back(random_matrix(field, a.dim(n), y.dim(n), rng));
    std::vector<std::size_t> dims;
    for (std::size_t n = 0; n < len; ++n)
        dims.push_back(y.dim(n) + a.dim(n));
    std::vector<Matrix<F>> diff;
    for (std::size_t n = 1; n < len; ++n) {
        Matrix<F> d(field, dims[n - 1], dims[n]);
        d.set_block(0, 0, y.d(n));
        Matrix<F> t = a.d(n) * s[n] - s[n - 1] * y.d(n);
        d.set_block(y.dim(n - 1), 0, t);
        d.set_block(y.dim(n - 1), y.dim(n), a.d(n));
        diff.push_back(std::move(d));
    }
    auto e = ChainComplex<F>::make(field, dims, std::move(diff));
    std::vector<Matrix<F>> comps;
    for (std::size_t n = 0; n < len; ++n) {
        Matrix<F> pr(field, y.dim(n), dims[n]);
        pr.set_block(0, 0, Matrix<F>::identity(field, y.dim(n)));
        comps.push_back(std::move(pr));
    }
    auto proj = ChainMap<F>::make(e, y, std::move(comps));
    auto iso = random_isomorphism_from(e, rng);
    // proj * iso^{-1}
    std::vector<Matrix<F>> inv;
    for (std::size_t n = 0; n < iso.length(); ++n)
        inv.push_back(*inverse(iso.comp(n)));
    auto back = ChainMap<F>::make(iso.target(), e, std::move(inv));
    return proj * back;
}

/// Random cofibration: left factor of a Z-factorization of a random map.
template <Field F, class Rng>
ChainMap<F> random_cofibration(F field, Rng& rng, std::size_t top, std::size_t max_dim) {
    return factor_acyclic_fibration(random_map(field, rng, top, max_dim)).left;
}

/// Random acyclic cofibration: left factor of an X-factorization.
template <Field F, class Rng>
ChainMap<F> random_acyclic_cofibration(F field, Rng& rng, std::size_t top, std::size_t max_dim) {
    return factor_fibration(random_map(field, rng, top, max_dim)).left;
}

/// Uniformly random commutative square with the given left and right sides.
template <Field F, class Rng>
SquareProblem<F> random_square(const ChainMap<F>& f, const ChainMap<F>& g, Rng& rng) {
    const F& fld = f.field();
    const auto& A = f.source();
    const auto& B = f.target();
    const auto& E = g.source();
    const auto& Y = g.target();
    std::size_t len = std::max({A.length(), B.length(), E.length(), Y.length()});
    // unknowns top: A -> E and bottom: B -> Y, chain maps with g top = bottom f
    LinearSystem<F> sys(fld);
    std::vector<std::size_t> ta, bb;
    for (std::size_t n = 0; n < len; ++n) {
        ta.push_back(sys.add_block(E.dim(n), A.dim(n)));
        bb.push_back(sys.add_block(Y.dim(n), B.dim(n)));
    }
    std::vector<Matrix<F>> keep;
    keep.reserve(6 * len);
    using Term = typename LinearSystem<F>::Term;
    for (std::size_t n = 0; n < len; ++n) {
        const auto& gn = keep.emplace_back(g.comp(n));
        const auto& fn = keep.emplace_back(f.comp(n));
        sys.add_matrix_equation({Term{ta[n], &gn, nullptr}, Term{bb[n], nullptr, &fn, true}}, nullptr, Y.dim(n),
                                A.dim(n));
        if (n >= 1) {
            const auto& dE = keep.emplace_back(E.d(n));
            const auto& dA = keep.emplace_back(A.d(n));
            sys.add_matrix_equation({Term{ta[n], &dE, nullptr}, Term{ta[n - 1], nullptr, &dA, true}}, nullptr,
                                    E.dim(n - 1), A.dim(n));
            const auto& dY = keep.emplace_back(Y.d(n));
            const auto& dB = keep.emplace_back(B.d(n));
            sys.add_matrix_equation({Term{bb[n], &dY, nullptr}, Term{bb[n - 1], nullptr, &dB, true}}, nullptr,
                                    Y.dim(n - 1), B.dim(n));
        }
    }
    auto sol = sys.solve_random(rng);
    require_internal(sol.has_value(), "random_square: homogeneous system infeasible");
    std::vector<Matrix<F>> tc, bc;
    for (std::size_t n = 0; n < len; ++n) {
        tc.push_back(sys.block_value(*sol, ta[n]));
        bc.push_back(sys.block_value(*sol, bb[n]));
    }
    return SquareProblem<F>::make(f, g, ChainMap<F>::make(A, E, std::move(tc)), ChainMap<F>::make(B, Y, std::move(bc)));
}

} // namespace fibgen
