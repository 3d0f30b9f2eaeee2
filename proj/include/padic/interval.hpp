#pragma once

#include "padic/rational.hpp"

#include <algorithm>
#include <stdexcept>

namespace padic {

// Relative precision targets, in bits.  root_bits drives certified root and
// power refinement, bisect_bits the Luxemburg/Orlicz bisections.
struct Precision {
    unsigned root_bits = 60;
    unsigned bisect_bits = 40;

    Precision doubled() const { return {root_bits * 2, bisect_bits * 2}; }
};

enum class Verdict3 { yes, no, unknown };

// Interval with exact rational endpoints; the result type of every quantity
// that is not itself rational.  Invariant: lo <= value <= hi.
struct Interval {
    Rational lo;
    Rational hi;

    Interval() = default;
    explicit Interval(const Rational& v) : lo(v), hi(v) {}
    Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::logic_error("Interval: lo > hi");
    }

    bool is_point() const { return lo == hi; }
    Rational width() const { return hi - lo; }
    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
    bool overlaps(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
    bool operator==(const Interval& o) const = default;
};

inline Interval operator+(const Interval& a, const Interval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}
inline Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }
inline Interval operator-(const Interval& a, const Interval& b) { return a + (-b); }

inline Interval operator*(const Interval& a, const Interval& b) {
    Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

inline Interval operator*(const Rational& c, const Interval& a) {
    return c >= 0 ? Interval{c * a.lo, c * a.hi} : Interval{c * a.hi, c * a.lo};
}

// Requires 0 outside of b.
inline Interval operator/(const Interval& a, const Interval& b) {
    if (b.lo <= 0 && b.hi >= 0) throw std::domain_error("interval division by zero");
    Rational c[4] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
    return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

inline Interval interval_abs(const Interval& a) {
    if (a.lo >= 0) return a;
    if (a.hi <= 0) return -a;
    return {Rational(0), std::max(rat_abs(a.lo), a.hi)};
}

inline Interval interval_max(const Interval& a, const Interval& b) {
    return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
}
inline Interval interval_min(const Interval& a, const Interval& b) {
    return {std::min(a.lo, b.lo), std::min(a.hi, b.hi)};
}

// Sound three-valued comparisons: yes/no only when the brackets separate.
inline Verdict3 leq(const Interval& a, const Interval& b) {
    if (a.hi <= b.lo) return Verdict3::yes;
    if (a.lo > b.hi) return Verdict3::no;
    return Verdict3::unknown;
}
inline Verdict3 lt(const Interval& a, const Interval& b) {
    if (a.hi < b.lo) return Verdict3::yes;
    if (a.lo >= b.hi) return Verdict3::no;
    return Verdict3::unknown;
}

inline Interval outward_round(const Interval& a, unsigned bits) {
    return {dyadic_floor(a.lo, bits), dyadic_ceil(a.hi, bits)};
}

namespace detail {

// Bracket of r^(1/k) with relative width <= 2^-prec.  r >= 0.
inline Interval root_bracket(const Rational& r, unsigned k, unsigned prec) {
    if (r == 0) return Interval(Rational(0));
    if (auto ex = exact_kth_root(r, k)) return Interval(*ex);
    const unsigned s = prec + 1;
    const Int n = num(r), d = den(r);
    Int radicand = n * pow_int(d, k - 1);
    radicand <<= static_cast<unsigned long>(k) * s;
    Int lo = iroot_floor(radicand, k);
    Int scale = d << s;
    return {Rational(lo, scale), Rational(lo + 1, scale)};
}

}  // namespace detail

// x^(1/k), monotone on [0, inf).  Requires x.lo >= 0.
inline Interval root_k(const Interval& x, unsigned k, unsigned prec) {
    if (x.lo < 0) throw std::domain_error("root_k: negative radicand");
    if (k == 1) return x;
    Interval lo = detail::root_bracket(x.lo, k, prec);
    Interval hi = x.is_point() ? lo : detail::root_bracket(x.hi, k, prec);
    return {lo.lo, hi.hi};
}

// x^e for rational e; x >= 0, and x > 0 when e < 0.
inline Interval pow_q(const Interval& x, const Rational& e, unsigned prec) {
    if (x.lo < 0) throw std::domain_error("pow_q: negative base");
    if (e == 0) return Interval(Rational(1));
    const Int ed = den(e);
    const Int en = num(e);
    if (ed > 1u << 20) throw std::domain_error("pow_q: exponent denominator too large");
    unsigned k = static_cast<unsigned>(ed);
    long a = static_cast<long>(en);
    Interval rt = root_k(x, k, prec + 8);
    if (a >= 0) {
        // monotone increasing in the base
        return {pow_int(rt.lo, a), pow_int(rt.hi, a)};
    }
    if (rt.lo <= 0) throw std::domain_error("pow_q: zero base with negative exponent");
    return {pow_int(rt.hi, a), pow_int(rt.lo, a)};
}

inline Interval pow_q(const Rational& x, const Rational& e, unsigned prec) {
    return pow_q(Interval(x), e, prec);
}

// p^t as a certified bracket; exact when t is an integer.
inline Interval pow_p(unsigned p, const Rational& t, unsigned prec) {
    if (den(t) == 1) return Interval(pow_int(Rational(p), static_cast<long>(num(t))));
    return pow_q(Rational(p), t, prec);
}

namespace detail {

// 2*atanh(z) = log((1+z)/(1-z)) by the odd series, |z| < 1/2 in our uses.
inline Interval two_atanh(const Rational& z, unsigned prec) {
    const Rational z2 = z * z;
    Rational term = z;  // z^(2j+1)
    Rational sum = 0;
    unsigned j = 0;
    // Stop when the tail bound term*z2/( (2j+3)(1-z2) ) is below 2^-(prec+2).
    const Rational tol = Rational(1, Int(1) << (prec + 2));
    while (true) {
        sum += term / (2 * j + 1);
        term *= z2;
        Rational tail = rat_abs(term) / ((2 * j + 3) * (1 - z2));
        if (tail < tol) {
            Interval out{2 * (sum - tail), 2 * (sum + tail)};
            return outward_round(out, prec + 4);
        }
        ++j;
    }
}

inline const Interval& ln2(unsigned prec) {
    thread_local unsigned cached_prec = 0;
    thread_local Interval cached;
    if (cached_prec < prec) {
        cached = two_atanh(Rational(1, 3), prec);
        cached_prec = prec;
    }
    return cached;
}

}  // namespace detail

// Natural log of a rational r > 0 with absolute error ~2^-prec.
inline Interval log_rational(const Rational& r, unsigned prec) {
    if (r <= 0) throw std::domain_error("log_rational: nonpositive argument");
    if (r == 1) return Interval(Rational(0));
    // r = 2^m * u with u in [1,2)
    long m = static_cast<long>(boost::multiprecision::msb(num(r))) -
             static_cast<long>(boost::multiprecision::msb(den(r)));
    Rational u = r / pow_int(Rational(2), m);
    if (u >= 2) { u /= 2; ++m; }
    if (u < 1) { u *= 2; --m; }
    Rational z = (u - 1) / (u + 1);  // z in [0, 1/3]
    Interval res = detail::two_atanh(z, prec + 4);
    if (m != 0) res = res + Rational(m) * detail::ln2(prec + 4);
    return outward_round(res, prec);
}

inline Interval log_interval(const Interval& x, unsigned prec) {
    Interval lo = log_rational(x.lo, prec);
    Interval hi = x.is_point() ? lo : log_rational(x.hi, prec);
    return {lo.lo, hi.hi};
}

// log^+ t = max(log t, 0); exact 0 for t <= 1.
inline Interval log_plus(const Interval& x, unsigned prec) {
    if (x.hi <= 1) return Interval(Rational(0));
    Interval l = log_interval({std::max(x.lo, Rational(1)), x.hi}, prec);
    return {std::max(l.lo, Rational(0)), std::max(l.hi, Rational(0))};
}

// e^r for rational r, relative error ~2^-prec.
inline Interval exp_rational(const Rational& r, unsigned prec) {
    if (r == 0) return Interval(Rational(1));
    // scale so |t| <= 1/2, square back m times
    unsigned m = 0;
    Rational t = r;
    while (rat_abs(t) > Rational(1, 2)) { t /= 2; ++m; }
    const unsigned work = prec + 2 * m + 8;
    Rational term(1), sum(1);
    unsigned j = 1;
    const Rational tol = Rational(1, Int(1) << work);
    while (true) {
        term *= t;
        term /= j;
        sum += term;
        Rational tail = 2 * rat_abs(term) * rat_abs(t) / (j + 1);
        if (tail < tol) {
            Interval out{sum - tail, sum + tail};
            for (unsigned i = 0; i < m; ++i) {
                out = out * out;
                out = outward_round(out, work + 8);
            }
            return outward_round(out, prec + 4);
        }
        ++j;
    }
}

inline Interval exp_interval(const Interval& x, unsigned prec) {
    Interval lo = exp_rational(x.lo, prec);
    Interval hi = x.is_point() ? lo : exp_rational(x.hi, prec);
    return {lo.lo, hi.hi};
}

}  // namespace padic
