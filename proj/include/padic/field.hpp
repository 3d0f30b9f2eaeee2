#pragma once

#include "padic/rational.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace padic {

struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DivergenceError : std::domain_error {
    using std::domain_error::domain_error;
};
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

inline bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (std::uint64_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

// The ground field Q_p^n: a prime p and the dimension n.
struct FieldParams {
    std::uint32_t p = 2;
    std::uint32_t n = 1;

    FieldParams() = default;
    FieldParams(std::uint32_t p_, std::uint32_t n_) : p(p_), n(n_) {
        if (!is_prime(p)) throw ParameterError("p must be prime, got " + std::to_string(p));
        if (n < 1) throw ParameterError("dimension n must be >= 1");
    }

    bool operator==(const FieldParams&) const = default;

    std::string tag() const { return std::to_string(p) + "^" + std::to_string(n); }
};

// Haar measure of a ball of level gamma: p^(n*gamma).
inline Rational ball_measure_at(const FieldParams& fp, int gamma) {
    return pow_int(Rational(fp.p), static_cast<long>(fp.n) * gamma);
}

// Haar measure of a sphere of level gamma: p^(n*gamma) * (1 - p^-n).
inline Rational sphere_measure_at(const FieldParams& fp, int gamma) {
    return ball_measure_at(fp, gamma) * (1 - pow_int(Rational(fp.p), -static_cast<long>(fp.n)));
}

}  // namespace padic
