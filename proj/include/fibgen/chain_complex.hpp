#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "fibgen/linalg.hpp"

namespace fibgen {

/// Bounded, non-negatively graded chain complex with finite-dimensional
/// terms. Degrees past the stored range are zero. d(n): C_n -> C_{n-1}.
template <Field F>
class ChainComplex {
public:
    ChainComplex() = default;
    explicit ChainComplex(F field) : field_(field) {}

    /// diff[k] is d_{k+1}, so diff.size() must be dims.size() - 1 (or 0 when
    /// dims is empty).
    static ChainComplex make(F field, std::vector<std::size_t> dims, std::vector<Matrix<F>> diff) {
        std::size_t expect = dims.empty() ? 0 : dims.size() - 1;
        if (diff.size() != expect)
            throw ValidationError(ErrorCode::ShapeMismatch,
                                  "expected " + std::to_string(expect) + " differentials, got " +
                                      std::to_string(diff.size()));
        ChainComplex c(field);
        c.dims_ = std::move(dims);
        c.diff_ = std::move(diff);
        for (std::size_t n = 1; n < c.dims_.size(); ++n) {
            const auto& d = c.diff_[n - 1];
            if (!(d.field() == field) && !(d.rows() == 0 && d.cols() == 0))
                throw ValidationError(ErrorCode::FieldMismatch, "d_" + std::to_string(n));
            if (d.rows() != c.dims_[n - 1] || d.cols() != c.dims_[n])
                throw ValidationError(ErrorCode::ShapeMismatch,
                                      "d_" + std::to_string(n) + " is " + d.shape_string());
            // normalize the field of empty matrices
            if (d.empty())
                c.diff_[n - 1] = Matrix<F>(field, d.rows(), d.cols());
        }
        for (std::size_t n = 2; n < c.dims_.size(); ++n)
            if (!(c.diff_[n - 2] * c.diff_[n - 1]).is_zero())
                throw ValidationError(ErrorCode::NotAComplex, "d_" + std::to_string(n - 1) + " d_" +
                                                                  std::to_string(n) + " != 0");
        return c;
    }

    static ChainComplex zero(F field) { return ChainComplex(field); }

    /// D^n: k in degrees n and n-1, d_n = 1.
    static ChainComplex disc(F field, std::size_t n) {
        if (n == 0)
            throw ValidationError(ErrorCode::BadDegree, "disc(0)");
        std::vector<std::size_t> dims(n + 1, 0);
        dims[n] = dims[n - 1] = 1;
        std::vector<Matrix<F>> diff;
        for (std::size_t k = 1; k <= n; ++k)
            diff.emplace_back(field, dims[k - 1], dims[k]);
        diff[n - 1] = Matrix<F>::identity(field, 1);
        return make(field, std::move(dims), std::move(diff));
    }

    /// S^n: k in degree n.
    static ChainComplex sphere(F field, std::size_t n) {
        std::vector<std::size_t> dims(n + 1, 0);
        dims[n] = 1;
        std::vector<Matrix<F>> diff;
        for (std::size_t k = 1; k <= n; ++k)
            diff.emplace_back(field, dims[k - 1], dims[k]);
        return make(field, std::move(dims), std::move(diff));
    }

    const F& field() const { return field_; }
    /// Number of stored degrees (0 for the zero complex built by zero()).
    std::size_t length() const { return dims_.size(); }
    /// Highest degree with a nonzero term, 0 if none.
    std::size_t top() const {
        for (std::size_t n = dims_.size(); n > 0; --n)
            if (dims_[n - 1] != 0)
                return n - 1;
        return 0;
    }
    std::size_t dim(std::size_t n) const { return n < dims_.size() ? dims_[n] : 0; }
    std::size_t total_dim() const {
        std::size_t s = 0;
        for (auto v : dims_)
            s += v;
        return s;
    }
    bool is_zero() const { return total_dim() == 0; }
    std::vector<std::size_t> dims() const { return dims_; }

    /// d_n as a dim(n-1) x dim(n) matrix; d_0 is 0 x dim(0).
    Matrix<F> d(std::size_t n) const {
        if (n == 0)
            return Matrix<F>(field_, 0, dim(0));
        if (n < dims_.size())
            return diff_[n - 1];
        return Matrix<F>(field_, dim(n - 1), dim(n));
    }

    /// Same complex stored with at least `len` degrees.
    ChainComplex padded(std::size_t len) const {
        if (len <= dims_.size())
            return *this;
        ChainComplex c = *this;
        while (c.dims_.size() < len) {
            std::size_t n = c.dims_.size();
            c.dims_.push_back(0);
            if (n > 0)
                c.diff_.emplace_back(field_, c.dims_[n - 1], 0);
        }
        return c;
    }

    /// Drops trailing zero degrees.
    ChainComplex trimmed() const {
        ChainComplex c = *this;
        while (!c.dims_.empty() && c.dims_.back() == 0) {
            c.dims_.pop_back();
            if (!c.diff_.empty())
                c.diff_.pop_back();
        }
        return c;
    }

    std::int64_t euler_characteristic() const {
        std::int64_t e = 0;
        for (std::size_t n = 0; n < dims_.size(); ++n)
            e += (n % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(dims_[n]);
        return e;
    }

    /// Equal up to trailing zero degrees.
    friend bool operator==(const ChainComplex& a, const ChainComplex& b) {
        if (!(a.field_ == b.field_))
            return false;
        std::size_t len = std::max(a.length(), b.length());
        for (std::size_t n = 0; n < len; ++n)
            if (a.dim(n) != b.dim(n))
                return false;
        for (std::size_t n = 1; n < len; ++n)
            if (!(a.d(n) == b.d(n)))
                return false;
        return true;
    }

private:
    F field_{};
    std::vector<std::size_t> dims_;
    std::vector<Matrix<F>> diff_;
};

/// Chain map. comps[n] : source_n -> target_n; missing degrees are zero.
template <Field F>
class ChainMap {
public:
    ChainMap() = default;

    static ChainMap make(ChainComplex<F> source, ChainComplex<F> target, std::vector<Matrix<F>> comps) {
        if (!(source.field() == target.field()))
            throw ValidationError(ErrorCode::FieldMismatch, "chain map source and target");
        std::size_t len = std::max(source.length(), target.length());
        if (comps.size() > len) {
            for (std::size_t n = len; n < comps.size(); ++n)
                if (comps[n].rows() != 0 || comps[n].cols() != 0)
                    throw ValidationError(ErrorCode::ShapeMismatch,
                                          "component in degree " + std::to_string(n) + " beyond both complexes");
            comps.resize(len);
        }
        ChainMap m;
        m.src_ = std::move(source);
        m.tgt_ = std::move(target);
        const F& f = m.src_.field();
        for (std::size_t n = 0; n < len; ++n) {
            std::size_t r = m.tgt_.dim(n), c = m.src_.dim(n);
            if (n >= comps.size()) {
                comps.emplace_back(f, r, c);
                continue;
            }
            if (comps[n].rows() != r || comps[n].cols() != c)
                throw ValidationError(ErrorCode::ShapeMismatch, "component " + std::to_string(n) + " is " +
                                                                    comps[n].shape_string() + ", want " +
                                                                    std::to_string(r) + "x" + std::to_string(c));
            if (comps[n].empty())
                comps[n] = Matrix<F>(f, r, c);
            else if (!(comps[n].field() == f))
                throw ValidationError(ErrorCode::FieldMismatch, "component " + std::to_string(n));
        }
        m.comps_ = std::move(comps);
        for (std::size_t n = 1; n < len; ++n)
            if (!(m.tgt_.d(n) * m.comps_[n] == m.comps_[n - 1] * m.src_.d(n)))
                throw ValidationError(ErrorCode::NotAChainMap, "square at degree " + std::to_string(n));
        return m;
    }

    static ChainMap identity(const ChainComplex<F>& c) {
        std::vector<Matrix<F>> comps;
        for (std::size_t n = 0; n < c.length(); ++n)
            comps.push_back(Matrix<F>::identity(c.field(), c.dim(n)));
        return make(c, c, std::move(comps));
    }

    static ChainMap zero(const ChainComplex<F>& s, const ChainComplex<F>& t) { return make(s, t, {}); }

    const ChainComplex<F>& source() const { return src_; }
    const ChainComplex<F>& target() const { return tgt_; }
    const F& field() const { return src_.field(); }
    std::size_t length() const { return comps_.size(); }

    Matrix<F> comp(std::size_t n) const {
        if (n < comps_.size())
            return comps_[n];
        return Matrix<F>(field(), tgt_.dim(n), src_.dim(n));
    }
    const std::vector<Matrix<F>>& comps() const { return comps_; }

    bool is_zero() const {
        for (const auto& c : comps_)
            if (!c.is_zero())
                return false;
        return true;
    }

    /// Same map with source and target replaced by equal complexes (used to
    /// re-label, e.g. after padding). Checks equality.
    ChainMap retyped(const ChainComplex<F>& s, const ChainComplex<F>& t) const {
        if (!(s == src_) || !(t == tgt_))
            throw ValidationError(ErrorCode::ShapeMismatch, "retyped to a different complex");
        return make(s, t, comps_);
    }

    friend bool operator==(const ChainMap& a, const ChainMap& b) {
        if (!(a.src_ == b.src_) || !(a.tgt_ == b.tgt_))
            return false;
        std::size_t len = std::max(a.length(), b.length());
        for (std::size_t n = 0; n < len; ++n)
            if (!(a.comp(n) == b.comp(n)))
                return false;
        return true;
    }

    /// g * f, i.e. first f then g.
    friend ChainMap operator*(const ChainMap& g, const ChainMap& f) {
        if (!(f.tgt_ == g.src_))
            throw ValidationError(ErrorCode::ShapeMismatch, "composition of non-composable chain maps");
        std::size_t len = std::max({f.src_.length(), g.tgt_.length(), f.tgt_.length()});
        std::vector<Matrix<F>> comps;
        for (std::size_t n = 0; n < len; ++n)
            comps.push_back(g.comp(n) * f.comp(n));
        return raw(f.src_, g.tgt_, std::move(comps));
    }
    friend ChainMap operator+(const ChainMap& a, const ChainMap& b) {
        check_parallel(a, b);
        std::vector<Matrix<F>> comps;
        for (std::size_t n = 0; n < std::max(a.length(), b.length()); ++n)
            comps.push_back(a.comp(n) + b.comp(n));
        return raw(a.src_, a.tgt_, std::move(comps));
    }
    friend ChainMap operator-(const ChainMap& a, const ChainMap& b) {
        check_parallel(a, b);
        std::vector<Matrix<F>> comps;
        for (std::size_t n = 0; n < std::max(a.length(), b.length()); ++n)
            comps.push_back(a.comp(n) - b.comp(n));
        return raw(a.src_, a.tgt_, std::move(comps));
    }
    friend ChainMap operator-(const ChainMap& a) {
        std::vector<Matrix<F>> comps;
        for (const auto& c : a.comps_)
            comps.push_back(-c);
        return raw(a.src_, a.tgt_, std::move(comps));
    }

    /// Builds a map whose chain-map property holds by construction; shapes
    /// are still checked.
    static ChainMap raw(ChainComplex<F> s, ChainComplex<F> t, std::vector<Matrix<F>> comps) {
        std::size_t len = std::max(s.length(), t.length());
        comps.resize(std::min(comps.size(), len));
        for (std::size_t n = 0; n < len; ++n) {
            if (n >= comps.size())
                comps.emplace_back(s.field(), t.dim(n), s.dim(n));
            else if (comps[n].rows() != t.dim(n) || comps[n].cols() != s.dim(n))
                throw ValidationError(ErrorCode::ShapeMismatch, "component " + std::to_string(n));
        }
        ChainMap m;
        m.src_ = std::move(s);
        m.tgt_ = std::move(t);
        m.comps_ = std::move(comps);
        return m;
    }

private:
    static void check_parallel(const ChainMap& a, const ChainMap& b) {
        if (!(a.src_ == b.src_) || !(a.tgt_ == b.tgt_))
            throw ValidationError(ErrorCode::ShapeMismatch, "sum of non-parallel chain maps");
    }

    ChainComplex<F> src_;
    ChainComplex<F> tgt_;
    std::vector<Matrix<F>> comps_;
};

/// Number of degrees needed to see both complexes.
template <Field F>
std::size_t common_length(const ChainComplex<F>& a, const ChainComplex<F>& b) {
    return std::max(a.length(), b.length());
}

} // namespace fibgen
