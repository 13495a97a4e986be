#pragma once

#include <optional>
#include <vector>

#include "fibgen/matrix.hpp"

namespace fibgen {

template <Field F>
struct RrefResult {
    Matrix<F> reduced;
    std::vector<std::size_t> pivots;
    /// Invertible, with transform * input == reduced.
    Matrix<F> transform;

    std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan elimination. Pivot search takes the first nonzero entry
/// below the current row, so the result is deterministic.
template <Field F>
RrefResult<F> rref(const Matrix<F>& m) {
    const F& f = m.field();
    Matrix<F> r = m;
    Matrix<F> t = Matrix<F>::identity(f, m.rows());
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
        std::size_t sel = row;
        while (sel < r.rows() && f.is_zero(r(sel, col)))
            ++sel;
        if (sel == r.rows())
            continue;
        if (sel != row) {
            for (std::size_t j = 0; j < r.cols(); ++j)
                std::swap(r(sel, j), r(row, j));
            for (std::size_t j = 0; j < t.cols(); ++j)
                std::swap(t(sel, j), t(row, j));
        }
        auto inv = f.inv(r(row, col));
        for (std::size_t j = 0; j < r.cols(); ++j)
            r(row, j) = f.mul(r(row, j), inv);
        for (std::size_t j = 0; j < t.cols(); ++j)
            t(row, j) = f.mul(t(row, j), inv);
        for (std::size_t i = 0; i < r.rows(); ++i) {
            if (i == row || f.is_zero(r(i, col)))
                continue;
            auto factor = r(i, col);
            for (std::size_t j = 0; j < r.cols(); ++j)
                if (!f.is_zero(r(row, j)))
                    r(i, j) = f.sub(r(i, j), f.mul(factor, r(row, j)));
            for (std::size_t j = 0; j < t.cols(); ++j)
                if (!f.is_zero(t(row, j)))
                    t(i, j) = f.sub(t(i, j), f.mul(factor, t(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(r), std::move(pivots), std::move(t)};
}

/// Row echelon without the transform; cheaper when only pivots matter.
template <Field F>
std::vector<std::size_t> pivot_columns(const Matrix<F>& m) {
    const F& f = m.field();
    Matrix<F> r = m;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
        std::size_t sel = row;
        while (sel < r.rows() && f.is_zero(r(sel, col)))
            ++sel;
        if (sel == r.rows())
            continue;
        if (sel != row)
            for (std::size_t j = col; j < r.cols(); ++j)
                std::swap(r(sel, j), r(row, j));
        auto inv = f.inv(r(row, col));
        for (std::size_t i = row + 1; i < r.rows(); ++i) {
            if (f.is_zero(r(i, col)))
                continue;
            auto factor = f.mul(r(i, col), inv);
            for (std::size_t j = col; j < r.cols(); ++j)
                if (!f.is_zero(r(row, j)))
                    r(i, j) = f.sub(r(i, j), f.mul(factor, r(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <Field F>
std::size_t rank(const Matrix<F>& m) {
    return pivot_columns(m).size();
}

template <Field F>
bool is_injective(const Matrix<F>& m) {
    return rank(m) == m.cols();
}

template <Field F>
bool is_surjective(const Matrix<F>& m) {
    return rank(m) == m.rows();
}

/// Columns spanning ker A, one per free column of rref(A), in increasing
/// free-column order.
template <Field F>
Matrix<F> kernel_basis(const Matrix<F>& a) {
    const F& f = a.field();
    auto res = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : res.pivots)
        is_pivot[p] = true;
    std::size_t nfree = a.cols() - res.pivots.size();
    Matrix<F> k(f, a.cols(), nfree);
    std::size_t c = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        if (is_pivot[j])
            continue;
        k(j, c) = f.one();
        for (std::size_t i = 0; i < res.pivots.size(); ++i)
            k(res.pivots[i], c) = f.neg(res.reduced(i, j));
        ++c;
    }
    return k;
}

/// Pivot columns of A itself.
template <Field F>
Matrix<F> image_basis(const Matrix<F>& a) {
    auto piv = pivot_columns(a);
    return a.select_columns(piv);
}

/// Deterministic solution of A X = B with free variables set to zero, or
/// nullopt when rank[A] < rank[A|B].
template <Field F>
std::optional<Matrix<F>> solve(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.rows() != b.rows() || !(a.field() == b.field()))
        throw ValidationError(ErrorCode::ShapeMismatch,
                              "solve with A " + a.shape_string() + " and B " + b.shape_string());
    const F& f = a.field();
    auto res = rref(a);
    Matrix<F> tb = res.transform * b;
    for (std::size_t i = res.pivots.size(); i < tb.rows(); ++i)
        for (std::size_t j = 0; j < tb.cols(); ++j)
            if (!f.is_zero(tb(i, j)))
                return std::nullopt;
    Matrix<F> x(f, a.cols(), b.cols());
    for (std::size_t i = 0; i < res.pivots.size(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            x(res.pivots[i], j) = tb(i, j);
    return x;
}

template <Field F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a) {
    if (a.rows() != a.cols())
        return std::nullopt;
    auto res = rref(a);
    if (res.pivots.size() != a.rows())
        return std::nullopt;
    return res.transform;
}

/// Incrementally maintained span of vectors in k^n, kept in reduced echelon
/// form. Used for greedy basis selection.
template <Field F>
class SpanTracker {
public:
    using value_type = typename F::value_type;

    SpanTracker(F field, std::size_t ambient) : field_(field), ambient_(ambient) {}

    std::size_t dim() const { return rows_.size(); }
    std::size_t ambient() const { return ambient_; }

    /// Adds v if it is independent of the current span; reports whether it was.
    bool add(std::vector<value_type> v) {
        reduce(v);
        std::size_t lead = leading(v);
        if (lead == ambient_)
            return false;
        auto inv = field_.inv(v[lead]);
        for (auto& x : v)
            x = field_.mul(x, inv);
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            auto c = rows_[r][lead];
            if (field_.is_zero(c))
                continue;
            for (std::size_t j = 0; j < ambient_; ++j)
                rows_[r][j] = field_.sub(rows_[r][j], field_.mul(c, v[j]));
        }
        rows_.push_back(std::move(v));
        leads_.push_back(lead);
        return true;
    }

    bool contains(std::vector<value_type> v) const {
        reduce(v);
        return leading(v) == ambient_;
    }

private:
    void reduce(std::vector<value_type>& v) const {
        if (v.size() != ambient_)
            throw ValidationError(ErrorCode::ShapeMismatch, "vector length in span tracker");
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            auto c = v[leads_[r]];
            if (field_.is_zero(c))
                continue;
            for (std::size_t j = 0; j < ambient_; ++j)
                if (!field_.is_zero(rows_[r][j]))
                    v[j] = field_.sub(v[j], field_.mul(c, rows_[r][j]));
        }
    }
    std::size_t leading(const std::vector<value_type>& v) const {
        for (std::size_t j = 0; j < ambient_; ++j)
            if (!field_.is_zero(v[j]))
                return j;
        return ambient_;
    }

    F field_;
    std::size_t ambient_;
    std::vector<std::vector<value_type>> rows_;
    std::vector<std::size_t> leads_;
};

/// Columns extending the independent columns of `s` to a basis of the
/// ambient space, or of span(inside) when given. Candidates are tried in
/// order (standard vectors e_0, e_1, ..., or the columns of `inside`) and
/// accepted greedily when independent of everything accepted so far.
template <Field F>
Matrix<F> complement_basis(const Matrix<F>& s, const std::optional<Matrix<F>>& inside = std::nullopt) {
    const F& f = s.field();
    const std::size_t n = s.rows();
    SpanTracker<F> span(f, n);
    for (std::size_t j = 0; j < s.cols(); ++j)
        if (!span.add(s.column(j)))
            throw ValidationError(ErrorCode::DependentInput,
                                  "column " + std::to_string(j) + " of the subspace basis");
    std::vector<std::vector<typename F::value_type>> accepted;
    if (inside) {
        if (inside->rows() != n)
            throw ValidationError(ErrorCode::ShapeMismatch, "complement_basis: inside has wrong ambient");
        SpanTracker<F> outer(f, n);
        for (std::size_t j = 0; j < inside->cols(); ++j)
            outer.add(inside->column(j));
        for (std::size_t j = 0; j < s.cols(); ++j)
            if (!outer.contains(s.column(j)))
                throw ValidationError(ErrorCode::NotASubspace,
                                      "column " + std::to_string(j) + " lies outside the container");
        for (std::size_t j = 0; j < inside->cols() && span.dim() < outer.dim(); ++j) {
            auto v = inside->column(j);
            if (span.add(v))
                accepted.push_back(std::move(v));
        }
    } else {
        for (std::size_t i = 0; i < n && span.dim() < n; ++i) {
            std::vector<typename F::value_type> e(n, f.zero());
            e[i] = f.one();
            if (span.add(e))
                accepted.push_back(std::move(e));
        }
    }
    Matrix<F> out(f, n, accepted.size());
    for (std::size_t c = 0; c < accepted.size(); ++c)
        for (std::size_t i = 0; i < n; ++i)
            out(i, c) = accepted[c][i];
    return out;
}

/// Linear functional block: given independent columns [zero_on | unit_on],
/// returns the |unit_on| x n matrix G with G * zero_on = 0 and
/// G * unit_on = I, vanishing on the greedy complement of both.
template <Field F>
Matrix<F> dual_functionals(const Matrix<F>& zero_on, const Matrix<F>& unit_on) {
    Matrix<F> partial = hstack(zero_on, unit_on);
    Matrix<F> rest = complement_basis(partial);
    Matrix<F> full = hstack(partial, rest);
    auto inv = inverse(full);
    require_internal(inv.has_value(), "dual_functionals: basis not invertible");
    return inv->block(zero_on.cols(), 0, unit_on.cols(), full.rows());
}

} // namespace fibgen
