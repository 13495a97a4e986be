#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fibgen/homology.hpp"
#include "fibgen/linear_system.hpp"

namespace fibgen {

struct MapClass {
    bool cofibration = false;
    bool fibration = false;
    bool weak_equivalence = false;

    bool acyclic_cofibration() const { return cofibration && weak_equivalence; }
    bool acyclic_fibration() const { return fibration && weak_equivalence; }
    friend bool operator==(const MapClass&, const MapClass&) = default;
};

template <Field F>
bool is_degreewise_injective(const ChainMap<F>& f) {
    for (std::size_t n = 0; n < f.length(); ++n)
        if (!is_injective(f.comp(n)))
            return false;
    return true;
}

template <Field F>
bool is_degreewise_surjective(const ChainMap<F>& f, std::size_t from_degree = 0) {
    for (std::size_t n = from_degree; n < f.length(); ++n)
        if (!is_surjective(f.comp(n)))
            return false;
    return true;
}

template <Field F>
bool is_isomorphism(const ChainMap<F>& f) {
    for (std::size_t n = 0; n < f.length(); ++n) {
        const auto& c = f.comp(n);
        if (c.rows() != c.cols() || rank(c) != c.rows())
            return false;
    }
    return true;
}

/// Cofibrations are degreewise mono, fibrations are onto in degrees >= 1,
/// weak equivalences are quasi-isomorphisms.
template <Field F>
MapClass classify(const ChainMap<F>& f) {
    MapClass c;
    c.cofibration = is_degreewise_injective(f);
    c.fibration = is_degreewise_surjective(f, 1);
    c.weak_equivalence = is_quasi_isomorphism(f);
    return c;
}

/// Commutative square
///     A --top--> E
///     |          |
///   left       right
///     v          v
///     B --bot--> Y
template <Field F>
struct SquareProblem {
    ChainMap<F> left, right, top, bottom;

    static SquareProblem make(ChainMap<F> left, ChainMap<F> right, ChainMap<F> top, ChainMap<F> bottom) {
        if (!(top.source() == left.source()) || !(top.target() == right.source()) ||
            !(bottom.source() == left.target()) || !(bottom.target() == right.target()))
            throw ValidationError(ErrorCode::ShapeMismatch, "square corners do not match");
        if (!(right * top == bottom * left))
            throw ValidationError(ErrorCode::NotASquare, "right * top != bottom * left");
        return SquareProblem{std::move(left), std::move(right), std::move(top), std::move(bottom)};
    }
};

/// A diagonal c: B -> E with c * left = top and right * c = bottom, found as
/// one linear system in all components at once; nullopt means no lift.
template <Field F>
std::optional<ChainMap<F>> solve_lift(const SquareProblem<F>& sq) {
    const F& fld = sq.left.field();
    const auto& B = sq.left.target();
    const auto& E = sq.right.source();
    std::size_t len = std::max({B.length(), E.length(), sq.left.source().length(), sq.right.target().length()});
    LinearSystem<F> sys(fld);
    std::vector<std::size_t> blk;
    for (std::size_t n = 0; n < len; ++n)
        blk.push_back(sys.add_block(E.dim(n), B.dim(n)));
    using Term = typename LinearSystem<F>::Term;
    std::vector<Matrix<F>> keep;
    keep.reserve(6 * len);
    for (std::size_t n = 0; n < len; ++n) {
        const Matrix<F>& fn = keep.emplace_back(sq.left.comp(n));
        const Matrix<F>& an = keep.emplace_back(sq.top.comp(n));
        sys.add_matrix_equation({Term{blk[n], nullptr, &fn}}, &an, E.dim(n), fn.cols());
        const Matrix<F>& gn = keep.emplace_back(sq.right.comp(n));
        const Matrix<F>& bn = keep.emplace_back(sq.bottom.comp(n));
        sys.add_matrix_equation({Term{blk[n], &gn, nullptr}}, &bn, gn.rows(), B.dim(n));
        if (n >= 1) {
            const Matrix<F>& dE = keep.emplace_back(E.d(n));
            const Matrix<F>& dB = keep.emplace_back(B.d(n));
            sys.add_matrix_equation({Term{blk[n], &dE, nullptr}, Term{blk[n - 1], nullptr, &dB, true}},
                                    nullptr, E.dim(n - 1), B.dim(n));
        }
    }
    auto x = sys.solve();
    if (!x)
        return std::nullopt;
    std::vector<Matrix<F>> comps;
    for (std::size_t n = 0; n < len; ++n)
        comps.push_back(sys.block_value(*x, blk[n]));
    auto c = ChainMap<F>::make(B, E, std::move(comps));
    require_internal(c * sq.left == sq.top && sq.right * c == sq.bottom, "solve_lift: lift fails the square");
    return c;
}

/// Batch driver: f lifts in every supplied square, each of which must have f
/// on the left.
template <Field F>
bool llp_against(const ChainMap<F>& f, const std::vector<SquareProblem<F>>& squares) {
    for (const auto& sq : squares) {
        if (!(sq.left == f))
            throw ValidationError(ErrorCode::ShapeMismatch, "square whose left side is not the tested map");
        if (!solve_lift(sq))
            return false;
    }
    return true;
}

/// Dual driver: g on the right of every square.
template <Field F>
bool rlp_against(const ChainMap<F>& g, const std::vector<SquareProblem<F>>& squares) {
    for (const auto& sq : squares) {
        if (!(sq.right == g))
            throw ValidationError(ErrorCode::ShapeMismatch, "square whose right side is not the tested map");
        if (!solve_lift(sq))
            return false;
    }
    return true;
}

} // namespace fibgen
