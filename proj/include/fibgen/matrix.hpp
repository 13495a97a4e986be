#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fibgen/error.hpp"
#include "fibgen/field.hpp"

namespace fibgen {

/// Dense row-major matrix over an exact field.
template <Field F>
class Matrix {
public:
    using value_type = typename F::value_type;

    Matrix() = default;
    Matrix(F field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

    static Matrix zero(F field, std::size_t rows, std::size_t cols) {
        return Matrix(field, rows, cols);
    }
    static Matrix identity(F field, std::size_t n) {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = field.one();
        return m;
    }
    /// Integer entries, reduced into the field. Mostly for tests.
    static Matrix from_ints(F field, std::size_t rows, std::size_t cols,
                            std::initializer_list<std::int64_t> entries) {
        if (entries.size() != rows * cols)
            throw ValidationError(ErrorCode::ShapeMismatch, "from_ints entry count");
        Matrix m(field, rows, cols);
        std::size_t k = 0;
        for (auto v : entries)
            m.data_[k++] = field.from_int(v);
        return m;
    }
    static Matrix from_rows(F field, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
        std::size_t r = rows.size();
        std::size_t c = r == 0 ? 0 : rows.begin()->size();
        Matrix m(field, r, c);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != c)
                throw ValidationError(ErrorCode::ShapeMismatch, "ragged rows");
            std::size_t j = 0;
            for (auto v : row)
                m(i, j++) = field.from_int(v);
            ++i;
        }
        return m;
    }
    /// Column vector.
    static Matrix column_vector(F field, std::span<const value_type> v) {
        Matrix m(field, v.size(), 1);
        for (std::size_t i = 0; i < v.size(); ++i)
            m(i, 0) = v[i];
        return m;
    }

    const F& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const value_type> row(std::size_t i) const {
        return std::span<const value_type>(data_.data() + i * cols_, cols_);
    }
    std::vector<value_type> column(std::size_t j) const {
        std::vector<value_type> out;
        out.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            out.push_back((*this)(i, j));
        return out;
    }

    bool is_zero() const {
        for (const auto& v : data_)
            if (!field_.is_zero(v))
                return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_)
            throw ValidationError(ErrorCode::ShapeMismatch, "block out of range");
        Matrix b(field_, nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j)
                b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
        if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
            throw ValidationError(ErrorCode::ShapeMismatch, "set_block out of range");
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j)
                (*this)(r0 + i, c0 + j) = b(i, j);
    }

    Matrix select_columns(std::span<const std::size_t> idx) const {
        Matrix m(field_, rows_, idx.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < idx.size(); ++k)
                m(i, k) = (*this)(i, idx[k]);
        return m;
    }
    Matrix select_rows(std::span<const std::size_t> idx) const {
        Matrix m(field_, idx.size(), cols_);
        for (std::size_t k = 0; k < idx.size(); ++k)
            for (std::size_t j = 0; j < cols_; ++j)
                m(k, j) = (*this)(idx[k], j);
        return m;
    }

    Matrix scaled(const value_type& s) const {
        Matrix m = *this;
        for (auto& v : m.data_)
            v = field_.mul(v, s);
        return m;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        check_same_shape(a, b, "+");
        Matrix m = a;
        for (std::size_t k = 0; k < m.data_.size(); ++k)
            m.data_[k] = a.field_.add(a.data_[k], b.data_[k]);
        return m;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        check_same_shape(a, b, "-");
        Matrix m = a;
        for (std::size_t k = 0; k < m.data_.size(); ++k)
            m.data_[k] = a.field_.sub(a.data_[k], b.data_[k]);
        return m;
    }
    friend Matrix operator-(const Matrix& a) {
        Matrix m = a;
        for (auto& v : m.data_)
            v = a.field_.neg(v);
        return m;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_ || !(a.field_ == b.field_))
            throw ValidationError(ErrorCode::ShapeMismatch,
                                  "product of " + a.shape_string() + " and " + b.shape_string());
        const F& f = a.field_;
        Matrix m(f, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const auto& aik = a(i, k);
                if (f.is_zero(aik))
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const auto& bkj = b(k, j);
                    if (!f.is_zero(bkj))
                        m(i, j) = f.add(m(i, j), f.mul(aik, bkj));
                }
            }
        return m;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    std::string shape_string() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
        os << '[';
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i ? ", [" : "[");
            for (std::size_t j = 0; j < m.cols_; ++j)
                os << (j ? " " : "") << m.field_.to_string(m(i, j));
            os << ']';
        }
        return os << ']';
    }

private:
    static void check_same_shape(const Matrix& a, const Matrix& b, const char* op) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || !(a.field_ == b.field_))
            throw ValidationError(ErrorCode::ShapeMismatch, std::string("operator") + op + " on " +
                                                                a.shape_string() + " and " +
                                                                b.shape_string());
    }

    F field_{};
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<value_type> data_;
};

/// [a | b]
template <Field F>
Matrix<F> hstack(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.rows() != b.rows())
        throw ValidationError(ErrorCode::ShapeMismatch, "hstack " + a.shape_string() + " " + b.shape_string());
    Matrix<F> m(a.field(), a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

/// [a ; b]
template <Field F>
Matrix<F> vstack(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.cols() != b.cols())
        throw ValidationError(ErrorCode::ShapeMismatch, "vstack " + a.shape_string() + " " + b.shape_string());
    Matrix<F> m(a.field(), a.rows() + b.rows(), a.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    return m;
}

template <Field F>
Matrix<F> block_diagonal(F field, std::span<const Matrix<F>> blocks) {
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        r += b.rows();
        c += b.cols();
    }
    Matrix<F> m(field, r, c);
    r = c = 0;
    for (const auto& b : blocks) {
        m.set_block(r, c, b);
        r += b.rows();
        c += b.cols();
    }
    return m;
}

} // namespace fibgen
