#pragma once

#include "padic/field.hpp"
#include "padic/rational.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace padic {

// |x|_p of an exact rational: p^-v(x), and 0 for x = 0.
inline Rational padic_abs(const Rational& x, std::uint32_t p) {
    if (!is_prime(p)) throw ParameterError("padic_abs: p must be prime");
    if (x == 0) return Rational(0);
    return pow_int(Rational(p), -rat_valuation(x, Int(p)));
}

// One coordinate of an exact point: digits d_v, d_{v+1}, ... with d_v != 0,
// denoting sum_i digits[i] * p^(v+i).  The zero coordinate has empty digits.
struct PAdicCoord {
    int v = 0;
    std::vector<std::uint32_t> digits;

    bool is_zero() const { return digits.empty(); }
    bool operator==(const PAdicCoord&) const = default;
};

struct PAdicPoint {
    FieldParams params;
    std::vector<PAdicCoord> coords;

    PAdicPoint(FieldParams fp, std::vector<PAdicCoord> cs) : params(fp), coords(std::move(cs)) {
        if (coords.size() != params.n) throw ParameterError("point: wrong coordinate count");
        for (auto& c : coords) normalize(c);
        for (const auto& c : coords)
            for (auto d : c.digits)
                if (d >= params.p) throw ParameterError("point: digit out of range");
    }

    static PAdicPoint zero(FieldParams fp) {
        return PAdicPoint(fp, std::vector<PAdicCoord>(fp.n));
    }

    bool is_zero() const {
        for (const auto& c : coords)
            if (!c.is_zero()) return false;
        return true;
    }

    bool operator==(const PAdicPoint&) const = default;

    // Digit of coordinate j at index k (0 outside the stored window).
    std::uint32_t digit(std::uint32_t j, int k) const {
        const auto& c = coords[j];
        if (c.is_zero()) return 0;
        long i = static_cast<long>(k) - c.v;
        if (i < 0 || i >= static_cast<long>(c.digits.size())) return 0;
        return c.digits[static_cast<size_t>(i)];
    }

    Rational coord_value(std::uint32_t j) const {
        const auto& c = coords[j];
        Rational acc(0), w = pow_int(Rational(params.p), c.v);
        for (auto d : c.digits) {
            acc += d * w;
            w *= params.p;
        }
        return acc;
    }

    // |x|_p = max_j |x_j|_p.
    Rational abs_p() const {
        bool any = false;
        int best = std::numeric_limits<int>::max();
        for (const auto& c : coords)
            if (!c.is_zero()) { any = true; best = std::min(best, c.v); }
        if (!any) return Rational(0);
        return pow_int(Rational(params.p), -best);
    }

    // k with |x|_p = p^k; nullopt for the origin.
    std::optional<int> abs_level() const {
        bool any = false;
        int best = std::numeric_limits<int>::max();
        for (const auto& c : coords)
            if (!c.is_zero()) { any = true; best = std::min(best, c.v); }
        if (!any) return std::nullopt;
        return -best;
    }

  private:
    static void normalize(PAdicCoord& c) {
        while (!c.digits.empty() && c.digits.back() == 0) c.digits.pop_back();
        size_t lead = 0;
        while (lead < c.digits.size() && c.digits[lead] == 0) ++lead;
        if (lead) {
            c.digits.erase(c.digits.begin(), c.digits.begin() + static_cast<long>(lead));
            c.v += static_cast<int>(lead);
        }
        if (c.digits.empty()) c.v = 0;
    }
};

// Builds a coordinate from a rational of the form m * p^v with m a
// nonnegative integer; these are exactly the finitely representable points.
inline PAdicCoord coord_from_rational(const Rational& x, std::uint32_t p) {
    if (x == 0) return {};
    if (x < 0) throw ParameterError("coord_from_rational: negative values have no finite expansion");
    long v = rat_valuation(x, Int(p));
    Rational m = x * pow_int(Rational(p), -v);
    if (den(m) != 1) throw ParameterError("coord_from_rational: " + to_string(x) + " has no finite base-" + std::to_string(p) + " expansion");
    Int mi = num(m);
    PAdicCoord c;
    c.v = static_cast<int>(v);
    while (mi > 0) {
        c.digits.push_back(static_cast<std::uint32_t>(mi % p));
        mi /= p;
    }
    return c;
}

inline PAdicPoint point_from_rationals(FieldParams fp, const std::vector<Rational>& xs) {
    if (xs.size() != fp.n) throw ParameterError("point_from_rationals: wrong arity");
    std::vector<PAdicCoord> cs;
    cs.reserve(xs.size());
    for (const auto& x : xs) cs.push_back(coord_from_rational(x, fp.p));
    return PAdicPoint(fp, std::move(cs));
}

// Text form "p^n:coord|coord|...", each coordinate "d_T,...,d_v@v" with the
// most significant (valuation) digit last; the zero coordinate is empty.
inline std::string to_string(const PAdicPoint& x) {
    std::ostringstream os;
    os << x.params.tag() << ":";
    for (std::uint32_t j = 0; j < x.params.n; ++j) {
        if (j) os << "|";
        const auto& c = x.coords[j];
        for (size_t i = c.digits.size(); i-- > 0;) {
            os << c.digits[i];
            if (i) os << ",";
        }
        if (!c.is_zero()) os << "@" << c.v;
    }
    return os.str();
}

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) { out.push_back(cur); cur.clear(); }
        else cur.push_back(ch);
    }
    out.push_back(cur);
    return out;
}

inline FieldParams parse_params_tag(const std::string& s) {
    auto caret = s.find('^');
    if (caret == std::string::npos) throw ParameterError("expected p^n, got '" + s + "'");
    try {
        return FieldParams(static_cast<std::uint32_t>(std::stoul(s.substr(0, caret))),
                           static_cast<std::uint32_t>(std::stoul(s.substr(caret + 1))));
    } catch (const std::logic_error&) {
        throw ParameterError("malformed field tag '" + s + "'");
    }
}

inline std::vector<std::uint32_t> parse_digit_list(const std::string& s) {
    std::vector<std::uint32_t> out;
    if (s.empty()) return out;
    for (const auto& part : split(s, ',')) {
        try {
            out.push_back(static_cast<std::uint32_t>(std::stoul(part)));
        } catch (const std::logic_error&) {
            throw ParameterError("malformed digits '" + s + "'");
        }
    }
    return out;
}

}  // namespace detail

inline PAdicPoint parse_point(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos) throw ParameterError("point: missing ':' in '" + s + "'");
    FieldParams fp = detail::parse_params_tag(s.substr(0, colon));
    auto parts = detail::split(s.substr(colon + 1), '|');
    if (parts.size() != fp.n) throw ParameterError("point: expected " + std::to_string(fp.n) + " coordinates");
    std::vector<PAdicCoord> cs;
    for (const auto& part : parts) {
        PAdicCoord c;
        if (!part.empty()) {
            auto at = part.find('@');
            if (at == std::string::npos) throw ParameterError("point coordinate missing '@v' in '" + part + "'");
            auto digits = detail::parse_digit_list(part.substr(0, at));
            try {
                c.v = std::stoi(part.substr(at + 1));
            } catch (const std::logic_error&) {
                throw ParameterError("bad valuation in '" + part + "'");
            }
            c.digits.assign(digits.rbegin(), digits.rend());
        }
        cs.push_back(std::move(c));
    }
    return PAdicPoint(fp, std::move(cs));
}

}  // namespace padic
