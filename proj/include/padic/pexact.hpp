#pragma once

#include "padic/field.hpp"
#include "padic/interval.hpp"
#include "padic/rational.hpp"

#include <map>
#include <stdexcept>

namespace padic {

// Exact value c * p^t with rational c, t.  Closed under multiplication,
// division and integer powers; comparisons are decided exactly by raising to
// the common denominator of the exponents.  Canonical form keeps t in [0,1)
// (integer parts of the exponent are folded into the coefficient), so two
// values are equal iff their fields are equal.
struct PExact {
    Rational c;  // coefficient
    Rational t;  // exponent of p, in [0,1) after normalization

    PExact() : c(0), t(0) {}
    explicit PExact(Rational coeff) : c(std::move(coeff)), t(0) {}
    PExact(Rational coeff, Rational expo, std::uint32_t p) : c(std::move(coeff)), t(std::move(expo)) {
        normalize(p);
    }

    bool is_zero() const { return c == 0; }
    bool is_rational() const { return t == 0; }

    bool operator==(const PExact&) const = default;

    void normalize(std::uint32_t p) {
        if (c == 0) { t = 0; return; }
        Int q = num(t) / den(t);
        if (t < 0 && q * den(t) != num(t)) --q;  // floor for negatives
        if (q != 0) {
            c *= pow_int(Rational(p), static_cast<long>(q));
            t -= Rational(q);
        }
    }
};

inline PExact pexact_mul(const PExact& a, const PExact& b, std::uint32_t p) {
    if (a.is_zero() || b.is_zero()) return PExact();
    return PExact(a.c * b.c, a.t + b.t, p);
}

inline PExact pexact_div(const PExact& a, const PExact& b, std::uint32_t p) {
    if (b.is_zero()) throw std::domain_error("pexact_div: zero divisor");
    if (a.is_zero()) return PExact();
    return PExact(a.c / b.c, a.t - b.t, p);
}

inline PExact pexact_abs(const PExact& a) {
    PExact r = a;
    if (r.c < 0) r.c = -r.c;
    return r;
}

// sign(a - b), decided exactly.
inline int pexact_compare(const PExact& a, const PExact& b, std::uint32_t p) {
    int sa = sign(a.c), sb = sign(b.c);
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    // same strict sign: compare |a| vs |b| via m-th powers, m = lcm of
    // exponent denominators (p^(k/m) terms become integer powers of p)
    Int m = boost::multiprecision::lcm(den(a.t), den(b.t));
    long ka = static_cast<long>(num(a.t) * (m / den(a.t)));
    long kb = static_cast<long>(num(b.t) * (m / den(b.t)));
    unsigned long mu = static_cast<unsigned long>(m);
    Rational lhs = pow_int(rat_abs(a.c), static_cast<long>(mu)) * pow_int(Rational(p), ka);
    Rational rhs = pow_int(rat_abs(b.c), static_cast<long>(mu)) * pow_int(Rational(p), kb);
    int mag = lhs == rhs ? 0 : (lhs < rhs ? -1 : 1);
    return sa > 0 ? mag : -mag;
}

inline Interval to_interval(const PExact& a, std::uint32_t p, unsigned prec) {
    if (a.is_zero()) return Interval(Rational(0));
    if (a.t == 0) return Interval(a.c);
    return a.c * pow_p(p, a.t, prec);
}

// Exact finite sum of PExact terms: an element of Q(p^(1/m)).  Terms are
// keyed by their normalized exponent in [0,1); distinct keys are linearly
// independent over Q, so equality is coefficient-wise and a nonzero sum has
// nonzero value (interval refinement of the sign always terminates).
struct PSum {
    std::map<Rational, Rational> terms;

    PSum() = default;
    explicit PSum(const Rational& c) {
        if (c != 0) terms[Rational(0)] = c;
    }
    PSum(const PExact& e, std::uint32_t) {
        if (!e.is_zero()) terms[e.t] = e.c;
    }

    bool is_zero() const { return terms.empty(); }
    bool is_rational() const {
        return terms.empty() || (terms.size() == 1 && terms.begin()->first == 0);
    }
    Rational rational_value() const {
        if (terms.empty()) return Rational(0);
        if (!is_rational()) throw std::logic_error("PSum: not rational");
        return terms.begin()->second;
    }
    // The sum when it is a single term (always true for maximal-function
    // values of rational-celled functions).
    PExact single_term() const {
        if (terms.empty()) return PExact();
        if (terms.size() != 1) throw std::logic_error("PSum: more than one term");
        PExact e;
        e.t = terms.begin()->first;
        e.c = terms.begin()->second;
        return e;
    }

    bool operator==(const PSum&) const = default;

    void add_term(const Rational& t, const Rational& c) {
        if (c == 0) return;
        auto it = terms.find(t);
        if (it == terms.end()) {
            terms.emplace(t, c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }
};

inline PSum operator+(const PSum& a, const PSum& b) {
    PSum r = a;
    for (const auto& [t, c] : b.terms) r.add_term(t, c);
    return r;
}

inline PSum operator-(const PSum& a) {
    PSum r;
    for (const auto& [t, c] : a.terms) r.terms.emplace(t, -c);
    return r;
}

inline PSum operator-(const PSum& a, const PSum& b) { return a + (-b); }

inline PSum operator*(const Rational& s, const PSum& a) {
    PSum r;
    if (s == 0) return r;
    for (const auto& [t, c] : a.terms) r.terms.emplace(t, s * c);
    return r;
}

inline PSum psum_mul(const PSum& a, const PExact& e, std::uint32_t p) {
    PSum r;
    if (e.is_zero()) return r;
    for (const auto& [t, c] : a.terms) {
        PExact shifted(c * e.c, t + e.t, p);
        r.add_term(shifted.t, shifted.c);
    }
    return r;
}

inline PSum psum_mul(const PSum& a, const PSum& b, std::uint32_t p) {
    PSum r;
    for (const auto& [t, c] : b.terms) {
        PExact e;
        e.t = t;
        e.c = c;
        r = r + psum_mul(a, e, p);
    }
    return r;
}

inline Interval to_interval(const PSum& a, std::uint32_t p, unsigned prec) {
    Interval acc(Rational(0));
    unsigned budget = prec + 4;
    for (const auto& [t, c] : a.terms) acc = acc + c * pow_p(p, t, budget);
    return acc;
}

// Exact sign; refines intervals until zero is excluded (a nonzero PSum is a
// nonzero real by linear independence of the p^(k/m)).
inline int psum_sign(const PSum& a, std::uint32_t p) {
    if (a.is_zero()) return 0;
    if (a.is_rational()) return sign(a.rational_value());
    for (unsigned prec = 64;; prec *= 2) {
        Interval iv = to_interval(a, p, prec);
        if (iv.lo > 0) return 1;
        if (iv.hi < 0) return -1;
        if (prec > (1u << 22))
            throw std::logic_error("psum_sign: failed to separate from zero");
    }
}

inline int psum_compare(const PSum& a, const PSum& b, std::uint32_t p) {
    return psum_sign(a - b, p);
}

inline PSum psum_abs(const PSum& a, std::uint32_t p) {
    return psum_sign(a, p) < 0 ? -a : a;
}

// Exact tail sum_{j >= k0} theta^j for theta = coeff * p^t with |theta| < 1:
// theta^k0 * (1 + theta + ... + theta^(m-1)) / (1 - theta^m) where m is the
// exponent denominator, so theta^m is rational and the divisor exact.
inline PSum psum_geometric_tail(const PExact& theta, long k0, std::uint32_t p) {
    if (theta.is_zero()) return PSum();
    if (pexact_compare(pexact_abs(theta), PExact(Rational(1)), p) >= 0)
        throw DivergenceError("geometric tail: ratio not below 1");
    unsigned long m = static_cast<unsigned long>(den(theta.t));
    PExact pw(Rational(1));
    PExact theta_m(Rational(1));
    PSum partial;
    for (unsigned long i = 0; i < m; ++i) {
        partial.add_term(pw.t, pw.c);
        pw = pexact_mul(pw, theta, p);
    }
    theta_m = pw;  // theta^m, rational exponent 0
    if (!theta_m.is_rational()) throw std::logic_error("geometric tail: theta^m not rational");
    Rational denom = 1 - theta_m.c;
    PExact lead(Rational(1));
    // theta^k0 via binary exponentiation (k0 may be negative)
    {
        long e = k0;
        PExact base = theta;
        bool invert = e < 0;
        unsigned long k = invert ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
        PExact acc(Rational(1));
        while (k) {
            if (k & 1) acc = pexact_mul(acc, base, p);
            base = pexact_mul(base, base, p);
            k >>= 1;
        }
        lead = invert ? pexact_div(PExact(Rational(1)), acc, p) : acc;
    }
    return psum_mul((Rational(1) / denom) * partial, lead, p);
}

}  // namespace padic
