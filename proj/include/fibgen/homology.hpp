#pragma once

#include <vector>

#include "fibgen/chain_complex.hpp"

namespace fibgen {

template <Field F>
struct HomologyDegree {
    Matrix<F> cycles;      // basis of Z_n
    Matrix<F> boundaries;  // basis of B_n
    Matrix<F> reps;        // complement of B_n inside Z_n
    Matrix<F> noncycles;   // complement of Z_n in C_n
    std::size_t rank() const { return reps.cols(); }
};

template <Field F>
struct HomologyData {
    std::vector<HomologyDegree<F>> degrees;

    std::size_t h(std::size_t n) const { return n < degrees.size() ? degrees[n].rank() : 0; }
    std::vector<std::size_t> betti() const {
        std::vector<std::size_t> out;
        for (const auto& d : degrees)
            out.push_back(d.rank());
        return out;
    }
};

template <Field F>
HomologyDegree<F> homology_at(const ChainComplex<F>& c, std::size_t n) {
    HomologyDegree<F> h;
    h.cycles = kernel_basis(c.d(n));
    h.boundaries = image_basis(c.d(n + 1));
    h.reps = complement_basis(h.boundaries, std::optional<Matrix<F>>(h.cycles));
    h.noncycles = complement_basis(h.cycles);
    return h;
}

template <Field F>
HomologyData<F> homology(const ChainComplex<F>& c) {
    HomologyData<F> out;
    for (std::size_t n = 0; n < c.length(); ++n)
        out.degrees.push_back(homology_at(c, n));
    return out;
}

/// Coordinates of the class of each cycle column of `z` in the basis `reps`
/// of H_n, computed against the decomposition [boundaries | reps].
template <Field F>
Matrix<F> homology_coordinates(const HomologyDegree<F>& h, const Matrix<F>& z) {
    Matrix<F> basis = hstack(h.boundaries, h.reps);
    auto x = solve(basis, z);
    require_internal(x.has_value(), "homology_coordinates: vector is not a cycle");
    return x->block(h.boundaries.cols(), 0, h.reps.cols(), z.cols());
}

/// H_n(f) for n < max length, in the representative bases of homology().
template <Field F>
std::vector<Matrix<F>> homology_map(const ChainMap<F>& f) {
    std::size_t len = common_length(f.source(), f.target());
    std::vector<Matrix<F>> out;
    for (std::size_t n = 0; n < len; ++n) {
        auto hs = homology_at(f.source(), n);
        auto ht = homology_at(f.target(), n);
        out.push_back(homology_coordinates(ht, f.comp(n) * hs.reps));
    }
    return out;
}

template <Field F>
bool is_quasi_isomorphism(const ChainMap<F>& f) {
    for (const auto& m : homology_map(f))
        if (m.rows() != m.cols() || rank(m) != m.rows())
            return false;
    return true;
}

template <Field F>
bool is_acyclic(const ChainComplex<F>& c) {
    for (std::size_t n = 0; n < c.length(); ++n)
        if (homology_at(c, n).rank() != 0)
            return false;
    return true;
}

} // namespace fibgen
