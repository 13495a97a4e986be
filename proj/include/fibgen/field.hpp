#pragma once

#include <cstdint>
#include <concepts>
#include <random>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "fibgen/error.hpp"

namespace fibgen {

/// Runtime description of a ground field: F_p or Q.
struct FieldSpec {
    enum class Kind { prime, rational };
    Kind kind = Kind::prime;
    std::uint32_t p = 101;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

    std::string to_string() const {
        return kind == Kind::rational ? std::string("rational") : "prime:" + std::to_string(p);
    }

    /// Accepts "prime:<p>" or "rational".
    static FieldSpec parse(std::string_view text);
};

inline bool is_prime(std::uint64_t n) {
    if (n < 2)
        return false;
    for (std::uint64_t q = 2; q * q <= n; ++q)
        if (n % q == 0)
            return false;
    return true;
}

inline FieldSpec FieldSpec::parse(std::string_view text) {
    if (text == "rational")
        return FieldSpec{Kind::rational, 0};
    constexpr std::string_view prefix = "prime:";
    if (text.substr(0, prefix.size()) != prefix)
        throw ValidationError(ErrorCode::ParseError, "field spec '" + std::string(text) + "'");
    std::uint64_t p = 0;
    auto digits = text.substr(prefix.size());
    if (digits.empty() || digits.size() > 10)
        throw ValidationError(ErrorCode::ParseError, "field spec '" + std::string(text) + "'");
    for (char c : digits) {
        if (c < '0' || c > '9')
            throw ValidationError(ErrorCode::ParseError, "field spec '" + std::string(text) + "'");
        p = p * 10 + static_cast<std::uint64_t>(c - '0');
    }
    if (p >= (std::uint64_t{1} << 31) || !is_prime(p))
        throw ValidationError(ErrorCode::NotPrime, std::to_string(p));
    return FieldSpec{Kind::prime, static_cast<std::uint32_t>(p)};
}

/// Z/p with 2 <= p < 2^31. Residues are kept in [0, p).
class PrimeField {
public:
    using value_type = std::uint32_t;

    PrimeField() = default;
    explicit PrimeField(std::uint32_t p) : p_(p) {
        if (p >= (std::uint32_t{1} << 31) || !is_prime(p))
            throw ValidationError(ErrorCode::NotPrime, std::to_string(p));
    }

    std::uint32_t modulus() const { return p_; }
    FieldSpec spec() const { return FieldSpec{FieldSpec::Kind::prime, p_}; }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(std::int64_t v) const {
        auto r = v % static_cast<std::int64_t>(p_);
        return static_cast<value_type>(r < 0 ? r + p_ : r);
    }
    bool is_zero(value_type a) const { return a == 0; }
    bool equal(value_type a, value_type b) const { return a == b; }

    value_type add(value_type a, value_type b) const {
        std::uint64_t s = std::uint64_t{a} + b;
        return static_cast<value_type>(s >= p_ ? s - p_ : s);
    }
    value_type sub(value_type a, value_type b) const {
        return a >= b ? a - b : static_cast<value_type>(std::uint64_t{a} + p_ - b);
    }
    value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
    value_type mul(value_type a, value_type b) const {
        return static_cast<value_type>((std::uint64_t{a} * b) % p_);
    }
    value_type inv(value_type a) const {
        require_internal(a != 0, "inverse of zero in F_p");
        // extended Euclid on (a, p)
        std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
        while (new_r != 0) {
            std::int64_t q = r / new_r;
            std::int64_t tmp = t - q * new_t;
            t = new_t;
            new_t = tmp;
            tmp = r - q * new_r;
            r = new_r;
            new_r = tmp;
        }
        return from_int(t);
    }

    std::string to_string(value_type a) const { return std::to_string(a); }
    value_type parse(std::string_view text) const {
        bool negative = false;
        std::size_t i = 0;
        if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
            negative = text[0] == '-';
            i = 1;
        }
        if (i >= text.size())
            throw ValidationError(ErrorCode::ParseError, "scalar '" + std::string(text) + "'");
        std::uint64_t acc = 0;
        for (; i < text.size(); ++i) {
            char c = text[i];
            if (c < '0' || c > '9')
                throw ValidationError(ErrorCode::ParseError, "scalar '" + std::string(text) + "'");
            acc = (acc * 10 + static_cast<std::uint64_t>(c - '0')) % p_;
        }
        auto v = static_cast<value_type>(acc);
        return negative ? neg(v) : v;
    }

    template <class Rng>
    value_type random(Rng& rng) const {
        return std::uniform_int_distribution<std::uint32_t>(0, p_ - 1)(rng);
    }

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

private:
    std::uint32_t p_ = 101;
};

/// Q with arbitrary-precision numerators and denominators, always in lowest
/// terms with positive denominator.
class RationalField {
public:
    using value_type = mpq_class;

    FieldSpec spec() const { return FieldSpec{FieldSpec::Kind::rational, 0}; }

    value_type zero() const { return value_type(0); }
    value_type one() const { return value_type(1); }
    value_type from_int(std::int64_t v) const {
        return value_type(mpz_class(std::to_string(v)));
    }
    bool is_zero(const value_type& a) const { return sgn(a) == 0; }
    bool equal(const value_type& a, const value_type& b) const { return a == b; }

    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type inv(const value_type& a) const {
        require_internal(sgn(a) != 0, "inverse of zero in Q");
        return value_type(1) / a;
    }

    std::string to_string(const value_type& a) const { return a.get_str(); }
    value_type parse(std::string_view text) const {
        value_type v;
        std::string s(text);
        if (s.empty() || s.find_first_not_of("+-0123456789/") != std::string::npos ||
            v.set_str(s, 10) != 0)
            throw ValidationError(ErrorCode::ParseError, "scalar '" + s + "'");
        if (v.get_den() == 0)
            throw ValidationError(ErrorCode::ParseError, "zero denominator in '" + s + "'");
        v.canonicalize();
        return v;
    }

    /// Small numerators and denominators keep random instances readable.
    template <class Rng>
    value_type random(Rng& rng) const {
        std::int64_t num = std::uniform_int_distribution<std::int64_t>(-6, 6)(rng);
        std::int64_t den = std::uniform_int_distribution<std::int64_t>(1, 3)(rng);
        value_type v(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
        v.canonicalize();
        return v;
    }

    friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

template <class F>
concept Field = std::regular<F> && requires(const F& f, const typename F::value_type& a,
                                            std::string_view text) {
    { f.zero() } -> std::convertible_to<typename F::value_type>;
    { f.one() } -> std::convertible_to<typename F::value_type>;
    { f.from_int(std::int64_t{}) } -> std::convertible_to<typename F::value_type>;
    { f.add(a, a) } -> std::convertible_to<typename F::value_type>;
    { f.sub(a, a) } -> std::convertible_to<typename F::value_type>;
    { f.mul(a, a) } -> std::convertible_to<typename F::value_type>;
    { f.neg(a) } -> std::convertible_to<typename F::value_type>;
    { f.inv(a) } -> std::convertible_to<typename F::value_type>;
    { f.is_zero(a) } -> std::same_as<bool>;
    { f.to_string(a) } -> std::same_as<std::string>;
    { f.parse(text) } -> std::convertible_to<typename F::value_type>;
    { f.spec() } -> std::same_as<FieldSpec>;
};

static_assert(Field<PrimeField>);
static_assert(Field<RationalField>);

} // namespace fibgen
