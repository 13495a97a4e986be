#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "fibgen/matrix.hpp"

namespace fibgen {

/// Sparse linear system whose unknowns are grouped into matrix-shaped
/// blocks (the components of an unknown chain map, say). Equations of the
/// form  sum_k  L_k * X_{b_k} * R_k  =  RHS  are expanded entrywise.
///
/// solve() returns the solution with every non-pivot variable set to zero.
/// Pivots are the leading columns of an echelon basis of the row space,
/// which do not depend on equation order, so the answer equals the one dense
/// rref would give.
template <Field F>
class LinearSystem {
public:
    using value_type = typename F::value_type;
    using SparseRow = std::vector<std::pair<std::size_t, value_type>>;

    struct Block {
        std::size_t offset, rows, cols;
    };

    /// One summand L * X * R; a null pointer stands for the identity.
    struct Term {
        std::size_t block;
        const Matrix<F>* left = nullptr;
        const Matrix<F>* right = nullptr;
        bool negate = false;
    };

    explicit LinearSystem(F field) : field_(field) {}

    const F& field() const { return field_; }
    std::size_t num_vars() const { return num_vars_; }
    std::size_t num_equations() const { return rows_.size(); }

    std::size_t add_block(std::size_t rows, std::size_t cols) {
        blocks_.push_back({num_vars_, rows, cols});
        num_vars_ += rows * cols;
        return blocks_.size() - 1;
    }
    const Block& block(std::size_t b) const { return blocks_[b]; }

    void add_equation(SparseRow row, value_type rhs) {
        normalize(row);
        rows_.push_back(std::move(row));
        rhs_.push_back(std::move(rhs));
    }

    /// Adds sum of terms == rhs (rhs == nullptr means zero). Shapes must agree.
    void add_matrix_equation(const std::vector<Term>& terms, const Matrix<F>* rhs,
                             std::size_t out_rows, std::size_t out_cols) {
        for (const auto& t : terms) {
            const Block& b = blocks_.at(t.block);
            std::size_t lr = t.left ? t.left->rows() : b.rows;
            std::size_t rc = t.right ? t.right->cols() : b.cols;
            bool ok = lr == out_rows && rc == out_cols && (!t.left || t.left->cols() == b.rows) &&
                      (!t.right || t.right->rows() == b.cols);
            if (!ok)
                throw ValidationError(ErrorCode::ShapeMismatch, "matrix equation term shape");
        }
        if (rhs && (rhs->rows() != out_rows || rhs->cols() != out_cols))
            throw ValidationError(ErrorCode::ShapeMismatch, "matrix equation rhs shape");
        const F& f = field_;
        for (std::size_t i = 0; i < out_rows; ++i)
            for (std::size_t k = 0; k < out_cols; ++k) {
                SparseRow row;
                for (const auto& t : terms) {
                    const Block& b = blocks_[t.block];
                    // coefficient of X[j][l] in (L X R)[i][k] is L[i][j] R[l][k]
                    for (std::size_t j = 0; j < b.rows; ++j) {
                        value_type lij = t.left ? (*t.left)(i, j) : (i == j ? f.one() : f.zero());
                        if (f.is_zero(lij))
                            continue;
                        for (std::size_t l = 0; l < b.cols; ++l) {
                            value_type rlk =
                                t.right ? (*t.right)(l, k) : (l == k ? f.one() : f.zero());
                            if (f.is_zero(rlk))
                                continue;
                            value_type c = f.mul(lij, rlk);
                            if (t.negate)
                                c = f.neg(c);
                            row.emplace_back(b.offset + j * b.cols + l, std::move(c));
                        }
                    }
                }
                add_equation(std::move(row), rhs ? (*rhs)(i, k) : f.zero());
            }
    }

    /// Pins a block to a fixed matrix value.
    void fix_block(std::size_t b, const Matrix<F>& value) {
        add_matrix_equation({Term{b}}, &value, blocks_[b].rows, blocks_[b].cols);
    }

    std::optional<std::vector<value_type>> solve() const {
        auto ech = echelon();
        if (!ech)
            return std::nullopt;
        std::vector<value_type> x(num_vars_, field_.zero());
        back_substitute(*ech, x);
        return x;
    }

    /// A uniformly chosen point of the solution space (free variables drawn
    /// from the field's sampler).
    template <class Rng>
    std::optional<std::vector<value_type>> solve_random(Rng& rng) const {
        auto ech = echelon();
        if (!ech)
            return std::nullopt;
        std::vector<value_type> x(num_vars_, field_.zero());
        std::vector<bool> pivot(num_vars_, false);
        for (const auto& [col, idx] : ech->pivot_of)
            pivot[col] = true;
        for (std::size_t v = 0; v < num_vars_; ++v)
            if (!pivot[v])
                x[v] = field_.random(rng);
        back_substitute(*ech, x);
        return x;
    }

    /// Dimension of the solution space (or nullopt when infeasible).
    std::optional<std::size_t> solution_dimension() const {
        auto ech = echelon();
        if (!ech)
            return std::nullopt;
        return num_vars_ - ech->pivot_of.size();
    }

    Matrix<F> block_value(const std::vector<value_type>& x, std::size_t b) const {
        const Block& bl = blocks_.at(b);
        Matrix<F> m(field_, bl.rows, bl.cols);
        for (std::size_t i = 0; i < bl.rows; ++i)
            for (std::size_t j = 0; j < bl.cols; ++j)
                m(i, j) = x[bl.offset + i * bl.cols + j];
        return m;
    }

private:
    struct Echelon {
        std::vector<SparseRow> rows;
        std::vector<value_type> rhs;
        std::map<std::size_t, std::size_t> pivot_of; // leading column -> row
    };

    void normalize(SparseRow& row) const {
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        SparseRow merged;
        merged.reserve(row.size());
        for (auto& [c, v] : row) {
            if (!merged.empty() && merged.back().first == c)
                merged.back().second = field_.add(merged.back().second, v);
            else
                merged.emplace_back(c, std::move(v));
        }
        std::erase_if(merged, [&](const auto& e) { return field_.is_zero(e.second); });
        row = std::move(merged);
    }

    // row <- row - c * other
    void axpy(SparseRow& row, const value_type& c, const SparseRow& other) const {
        SparseRow out;
        out.reserve(row.size() + other.size());
        std::size_t i = 0, j = 0;
        while (i < row.size() || j < other.size()) {
            if (j == other.size() || (i < row.size() && row[i].first < other[j].first)) {
                out.push_back(std::move(row[i++]));
            } else if (i == row.size() || other[j].first < row[i].first) {
                out.emplace_back(other[j].first, field_.neg(field_.mul(c, other[j].second)));
                ++j;
            } else {
                auto v = field_.sub(row[i].second, field_.mul(c, other[j].second));
                if (!field_.is_zero(v))
                    out.emplace_back(row[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
        row = std::move(out);
    }

    std::optional<Echelon> echelon() const {
        Echelon e;
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            SparseRow row = rows_[r];
            value_type rhs = rhs_[r];
            while (!row.empty()) {
                auto it = e.pivot_of.find(row.front().first);
                if (it == e.pivot_of.end())
                    break;
                value_type c = row.front().second;
                rhs = field_.sub(rhs, field_.mul(c, e.rhs[it->second]));
                axpy(row, c, e.rows[it->second]);
            }
            if (row.empty()) {
                if (!field_.is_zero(rhs))
                    return std::nullopt;
                continue;
            }
            value_type inv = field_.inv(row.front().second);
            for (auto& [c, v] : row)
                v = field_.mul(v, inv);
            rhs = field_.mul(rhs, inv);
            e.pivot_of.emplace(row.front().first, e.rows.size());
            e.rows.push_back(std::move(row));
            e.rhs.push_back(std::move(rhs));
        }
        return e;
    }

    void back_substitute(const Echelon& e, std::vector<value_type>& x) const {
        for (auto it = e.pivot_of.rbegin(); it != e.pivot_of.rend(); ++it) {
            const SparseRow& row = e.rows[it->second];
            value_type acc = e.rhs[it->second];
            for (std::size_t k = 1; k < row.size(); ++k)
                acc = field_.sub(acc, field_.mul(row[k].second, x[row[k].first]));
            x[it->first] = std::move(acc);
        }
    }

    F field_;
    std::size_t num_vars_ = 0;
    std::vector<Block> blocks_;
    std::vector<SparseRow> rows_;
    std::vector<value_type> rhs_;
};

} // namespace fibgen
