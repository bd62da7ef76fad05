#pragma once

/**
 * @file exact_quadratic.hpp
 * @brief Exact arithmetic in Q(sqrt 5).
 *
 * A QuadraticValue stores (a + b*sqrt5)/2 with a and b arbitrary-precision
 * integers of equal parity. This covers every number the Fibonacci analysis
 * touches: the integers, gamma = (3 - sqrt5)/2, phi = (1 + sqrt5)/2 and all
 * integer combinations of them. Comparisons and floors never go through
 * floating point.
 */

#include <rectbal/error.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rectbal {

using BigInt = boost::multiprecision::cpp_int;

class QuadraticValue {
public:
    QuadraticValue() = default;

    // Value (doubled_rational + doubled_surd * sqrt5) / 2.
    QuadraticValue(BigInt doubled_rational, BigInt doubled_surd)
        : a_(std::move(doubled_rational)), b_(std::move(doubled_surd)) {
        if (((a_ - b_) & 1) != 0)
            throw std::invalid_argument("QuadraticValue: coefficients must have equal parity");
    }

    static QuadraticValue integer(const BigInt& n) { return {2 * n, 0}; }
    static QuadraticValue gamma() { return {3, -1}; }
    static QuadraticValue phi() { return {1, 1}; }
    static QuadraticValue sqrt5() { return {0, 2}; }

    const BigInt& doubled_rational() const noexcept { return a_; }
    const BigInt& doubled_surd() const noexcept { return b_; }

    bool is_rational() const noexcept { return b_ == 0; }

    friend QuadraticValue operator+(const QuadraticValue& x, const QuadraticValue& y) {
        return raw(x.a_ + y.a_, x.b_ + y.b_);
    }
    friend QuadraticValue operator-(const QuadraticValue& x, const QuadraticValue& y) {
        return raw(x.a_ - y.a_, x.b_ - y.b_);
    }
    friend QuadraticValue operator-(const QuadraticValue& x) { return raw(-x.a_, -x.b_); }

    friend QuadraticValue operator*(const QuadraticValue& x, const BigInt& k) {
        return raw(x.a_ * k, x.b_ * k);
    }
    friend QuadraticValue operator*(const BigInt& k, const QuadraticValue& x) { return x * k; }

    // The ring of integers of Q(sqrt5) is closed under multiplication, so the
    // halvings below are exact.
    friend QuadraticValue operator*(const QuadraticValue& x, const QuadraticValue& y) {
        return raw((x.a_ * y.a_ + 5 * x.b_ * y.b_) / 2, (x.a_ * y.b_ + x.b_ * y.a_) / 2);
    }

    QuadraticValue& operator+=(const QuadraticValue& y) { return *this = *this + y; }
    QuadraticValue& operator-=(const QuadraticValue& y) { return *this = *this - y; }

    friend bool operator==(const QuadraticValue&, const QuadraticValue&) = default;
    friend std::strong_ordering operator<=>(const QuadraticValue& x, const QuadraticValue& y);

    std::string to_string() const {
        std::string s = "(" + a_.str();
        s += b_ < 0 ? " - " : " + ";
        s += (b_ < 0 ? BigInt(-b_) : b_).str() + "*sqrt5)/2";
        return s;
    }

private:
    static QuadraticValue raw(BigInt a, BigInt b) {
        QuadraticValue v;
        v.a_ = std::move(a);
        v.b_ = std::move(b);
        return v;
    }

    BigInt a_{0};
    BigInt b_{0};
};

// Sign of (a + b*sqrt5)/2. Mixed signs are settled by comparing a^2 with 5b^2.
inline int sign(const QuadraticValue& x) {
    const BigInt& a = x.doubled_rational();
    const BigInt& b = x.doubled_surd();
    const int sa = a.sign();
    const int sb = b.sign();
    if (sa >= 0 && sb >= 0)
        return (sa > 0 || sb > 0) ? 1 : 0;
    if (sa <= 0 && sb <= 0)
        return -1;
    const BigInt lhs = a * a;
    const BigInt rhs = 5 * b * b;
    // a^2 == 5b^2 has no nonzero integer solutions.
    if (sa > 0)
        return lhs > rhs ? 1 : -1;
    return rhs > lhs ? 1 : -1;
}

inline std::strong_ordering operator<=>(const QuadraticValue& x, const QuadraticValue& y) {
    const int s = sign(x - y);
    if (s < 0)
        return std::strong_ordering::less;
    if (s > 0)
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

// Largest integer t with t <= x. |x| <= (|a| + 3|b|)/2 brackets the search;
// every probe is an exact sign test.
inline BigInt floor_value(const QuadraticValue& x) {
    using boost::multiprecision::abs;
    const BigInt bound = (abs(x.doubled_rational()) + 3 * abs(x.doubled_surd())) / 2 + 1;
    BigInt lo = -bound; // lo <= x
    BigInt hi = bound;  // hi > x
    while (hi - lo > 1) {
        BigInt mid = (lo + hi) / 2;
        if (sign(x - QuadraticValue::integer(mid)) >= 0)
            lo = std::move(mid);
        else
            hi = std::move(mid);
    }
    return lo;
}

inline QuadraticValue frac_value(const QuadraticValue& x) {
    return x - QuadraticValue::integer(floor_value(x));
}

/// floor(sqrt(x)) for 128-bit x.
inline std::uint64_t isqrt(unsigned __int128 x) {
    if (x == 0)
        return 0;
    auto r = static_cast<unsigned __int128>(std::sqrt(static_cast<long double>(x)));
    while (r * r > x)
        --r;
    while ((r + 1) * (r + 1) <= x)
        ++r;
    return static_cast<std::uint64_t>(r);
}

/// floor(n * gamma). For n >= 1, n*sqrt5 is irrational, so with q = floor(n*sqrt5)
/// the value (3n - n*sqrt5)/2 lies strictly inside ((3n-q-1)/2, (3n-q)/2).
inline std::uint64_t floor_n_gamma(std::uint64_t n) {
    if (n == 0)
        return 0;
    const auto wide = static_cast<unsigned __int128>(n);
    const std::uint64_t q = isqrt(5 * wide * wide);
    return static_cast<std::uint64_t>((3 * wide - q - 1) / 2);
}

/// floor(n * phi) = floor((n + floor(n*sqrt5)) / 2).
inline std::uint64_t floor_n_phi(std::uint64_t n) {
    const auto wide = static_cast<unsigned __int128>(n);
    const std::uint64_t q = isqrt(5 * wide * wide);
    return static_cast<std::uint64_t>((wide + q) / 2);
}

// frac(n*gamma) as an exact value, using the integer floor.
inline QuadraticValue frac_n_gamma(std::uint64_t n) {
    return QuadraticValue::gamma() * BigInt(n) - QuadraticValue::integer(floor_n_gamma(n));
}

// frac(-n*gamma): zero at n = 0, otherwise 1 - frac(n*gamma).
inline QuadraticValue frac_neg_n_gamma(std::uint64_t n) {
    if (n == 0)
        return {};
    return QuadraticValue::integer(1) - frac_n_gamma(n);
}

} // namespace rectbal
