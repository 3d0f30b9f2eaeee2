#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace padic {

using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                           boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

inline Int num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline int sign(const Rational& q) { return q.sign(); }
inline Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// x^e for integer e, exact.  x must be nonzero when e < 0.
inline Rational pow_int(const Rational& x, long e) {
    if (e == 0) return Rational(1);
    if (x == 0) {
        if (e > 0) return Rational(0);
        throw std::domain_error("pow_int: 0 to a negative power");
    }
    Rational base = e < 0 ? Rational(1) / x : x;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Rational acc(1);
    while (k) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

inline Int pow_int(const Int& x, unsigned long e) {
    Int acc(1), base = x;
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

// Largest y >= 0 with y^k <= x.  Requires x >= 0, k >= 1.
inline Int iroot_floor(const Int& x, unsigned k) {
    if (k == 0) throw std::domain_error("iroot_floor: k = 0");
    if (x < 0) throw std::domain_error("iroot_floor: negative radicand");
    if (x == 0 || x == 1 || k == 1) return x;
    unsigned bits = boost::multiprecision::msb(x) + 1;
    Int y = Int(1) << (bits / k + 1);
    // Newton iteration for floor(x^(1/k)); converges from above.
    while (true) {
        Int yk1 = pow_int(y, k - 1);
        Int next = ((k - 1) * y + x / yk1) / k;
        if (next >= y) break;
        y = next;
    }
    while (pow_int(y, k) > x) --y;
    return y;
}

inline std::optional<Int> exact_kth_root(const Int& x, unsigned k) {
    if (x < 0) return std::nullopt;
    Int r = iroot_floor(x, k);
    if (pow_int(r, k) == x) return r;
    return std::nullopt;
}

// q^(1/k) when q is a perfect k-th power of a rational, else nullopt.
inline std::optional<Rational> exact_kth_root(const Rational& q, unsigned k) {
    if (q < 0) return std::nullopt;
    auto rn = exact_kth_root(num(q), k);
    if (!rn) return std::nullopt;
    auto rd = exact_kth_root(den(q), k);
    if (!rd) return std::nullopt;
    return Rational(*rn, *rd);
}

// p-adic valuation of a nonzero integer.
inline long int_valuation(Int x, const Int& p) {
    if (x == 0) throw std::domain_error("int_valuation: zero");
    long v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

// p-adic valuation of a nonzero rational.
inline long rat_valuation(const Rational& q, const Int& p) {
    if (q == 0) throw std::domain_error("rat_valuation: zero");
    const Int n = num(q);
    if (n % p == 0) return int_valuation(n, p);
    return -int_valuation(den(q), p);
}

// Dyadic outward rounding helpers (denominator 2^bits).
inline Rational dyadic_floor(const Rational& q, unsigned bits) {
    Int scaled = (num(q) << bits) / den(q);
    if (q < 0 && Rational(scaled, Int(1) << bits) != q) --scaled;
    return Rational(scaled, Int(1) << bits);
}

inline Rational dyadic_ceil(const Rational& q, unsigned bits) {
    return -dyadic_floor(-q, bits);
}

inline std::string to_string(const Rational& q) {
    return num(q).str() + "/" + den(q).str();
}

// Parses "num/den" (reduced on construction) or a bare integer.
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int n(s.substr(0, slash));
        Int d(s.substr(slash + 1));
        if (d == 0) throw std::invalid_argument("zero denominator");
        return Rational(n, d);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational: '" + s + "'");
    }
}

}  // namespace padic
