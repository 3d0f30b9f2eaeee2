#pragma once

#include "padic/field.hpp"
#include "padic/point.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace padic {

// Canonical address of the coset B_level(a) = a + p^(-level) Z_p^n.  Each
// coordinate stores the center digits at indices v..-level-1 (ascending, so
// the entry at the valuation comes first and is nonzero); an empty vector is
// the zero center.  Two addresses are equal iff the fields are identical.
struct BallAddress {
    FieldParams params;
    int level = 0;
    std::vector<std::vector<std::uint32_t>> digits;  // one vector per coordinate

    BallAddress() = default;
    BallAddress(FieldParams fp, int lvl, std::vector<std::vector<std::uint32_t>> dg)
        : params(fp), level(lvl), digits(std::move(dg)) {
        if (digits.size() != params.n) throw ParameterError("ball: wrong coordinate count");
        for (auto& d : digits) canonicalize(d);
        for (const auto& d : digits)
            for (auto x : d)
                if (x >= params.p) throw ParameterError("ball: digit out of range");
    }

    static BallAddress centered_at_zero(FieldParams fp, int level) {
        return BallAddress(fp, level, std::vector<std::vector<std::uint32_t>>(fp.n));
    }

    bool operator==(const BallAddress&) const = default;

    // Valuation of coordinate j's center (index of its first stored digit).
    int coord_valuation(std::uint32_t j) const {
        return -level - static_cast<int>(digits[j].size());
    }

    bool center_is_zero() const {
        for (const auto& d : digits)
            if (!d.empty()) return false;
        return true;
    }

    // Digit of the canonical center at index k for coordinate j.
    std::uint32_t center_digit(std::uint32_t j, int k) const {
        if (k >= -level) return 0;  // truncated away
        long i = static_cast<long>(k) - coord_valuation(j);
        if (i < 0 || i >= static_cast<long>(digits[j].size())) return 0;
        return digits[j][static_cast<size_t>(i)];
    }

    PAdicPoint center() const {
        std::vector<PAdicCoord> cs;
        cs.reserve(params.n);
        for (std::uint32_t j = 0; j < params.n; ++j)
            cs.push_back(PAdicCoord{coord_valuation(j), digits[j]});
        return PAdicPoint(params, std::move(cs));
    }

  private:
    static void canonicalize(std::vector<std::uint32_t>& d) {
        // the stored window is contiguous up to index -level-1, so only
        // leading (valuation-side) zeros are non-canonical
        size_t lead = 0;
        while (lead < d.size() && d[lead] == 0) ++lead;
        if (lead) d.erase(d.begin(), d.begin() + static_cast<long>(lead));
    }
};

inline bool operator<(const BallAddress& a, const BallAddress& b) {
    if (a.level != b.level) return a.level < b.level;
    return a.digits < b.digits;
}

struct SphereAddress {
    BallAddress ball;  // same address data; level gamma means radius exactly p^gamma
};

inline Rational ball_measure(const BallAddress& b) {
    return ball_measure_at(b.params, b.level);
}

inline Rational sphere_measure(const SphereAddress& s) {
    return sphere_measure_at(s.ball.params, s.ball.level);
}

// The unique level-gamma ball containing x: truncates digits to indices < -gamma.
inline BallAddress ball_of_point(const PAdicPoint& x, int gamma) {
    std::vector<std::vector<std::uint32_t>> dg(x.params.n);
    for (std::uint32_t j = 0; j < x.params.n; ++j) {
        const auto& c = x.coords[j];
        if (c.is_zero() || c.v >= -gamma) continue;
        int top = -gamma - 1;  // highest stored index
        dg[j].reserve(static_cast<size_t>(top - c.v + 1));
        for (int k = c.v; k <= top; ++k) {
            long i = static_cast<long>(k) - c.v;
            dg[j].push_back(i < static_cast<long>(c.digits.size()) ? c.digits[static_cast<size_t>(i)] : 0);
        }
    }
    return BallAddress(x.params, gamma, std::move(dg));
}

// The level-gamma' ancestor of b (gamma' >= level(b)).
inline BallAddress truncate_to_level(const BallAddress& b, int gamma) {
    if (gamma < b.level) throw ParameterError("truncate_to_level: target below ball level");
    if (gamma == b.level) return b;
    const int drop = gamma - b.level;
    std::vector<std::vector<std::uint32_t>> dg(b.params.n);
    for (std::uint32_t j = 0; j < b.params.n; ++j) {
        const auto& d = b.digits[j];
        if (static_cast<int>(d.size()) > drop)
            dg[j].assign(d.begin(), d.end() - drop);
    }
    return BallAddress(b.params, gamma, std::move(dg));
}

enum class BallRelation { Disjoint, FirstInsideSecond, SecondInsideFirst, Equal };

inline BallRelation ball_relation(const BallAddress& a, const BallAddress& b) {
    if (a.params != b.params) throw ParameterError("ball_relation: mismatched field parameters");
    if (a.level == b.level) return a == b ? BallRelation::Equal : BallRelation::Disjoint;
    if (a.level < b.level)
        return truncate_to_level(a, b.level) == b ? BallRelation::FirstInsideSecond
                                                  : BallRelation::Disjoint;
    return truncate_to_level(b, a.level) == a ? BallRelation::SecondInsideFirst
                                              : BallRelation::Disjoint;
}

inline bool ball_contains(const BallAddress& outer, const BallAddress& inner) {
    auto r = ball_relation(inner, outer);
    return r == BallRelation::FirstInsideSecond || r == BallRelation::Equal;
}

// The p^n children of b at level-1: one more digit (at index -level) per coordinate.
inline std::vector<BallAddress> children(const BallAddress& b) {
    const std::uint32_t p = b.params.p, n = b.params.n;
    size_t count = 1;
    for (std::uint32_t j = 0; j < n; ++j) count *= p;
    std::vector<BallAddress> out;
    out.reserve(count);
    for (size_t code = 0; code < count; ++code) {
        size_t c = code;
        auto dg = b.digits;
        for (std::uint32_t j = 0; j < n; ++j) {
            std::uint32_t d = static_cast<std::uint32_t>(c % p);
            c /= p;
            if (!dg[j].empty() || d != 0) dg[j].push_back(d);  // digit at index -level
        }
        out.emplace_back(b.params, b.level - 1, std::move(dg));
    }
    return out;
}

inline BallAddress parent(const BallAddress& b) { return truncate_to_level(b, b.level + 1); }

// Valuation of x - center(b): index of the first differing digit, or nullopt
// when they agree below -level (i.e. x lies in b).
inline std::optional<int> first_digit_mismatch(const PAdicPoint& x, const BallAddress& b) {
    int lo = -b.level;  // one past the top stored index
    for (std::uint32_t j = 0; j < x.params.n; ++j) {
        if (!x.coords[j].is_zero()) lo = std::min(lo, x.coords[j].v);
        if (!b.digits[j].empty()) lo = std::min(lo, b.coord_valuation(j));
    }
    for (int k = lo; k < -b.level; ++k)
        for (std::uint32_t j = 0; j < x.params.n; ++j)
            if (x.digit(j, k) != b.center_digit(j, k)) return k;
    return std::nullopt;
}

inline bool point_in_ball(const PAdicPoint& x, const BallAddress& b) {
    if (x.params != b.params) throw ParameterError("point_in_ball: mismatched field parameters");
    return !first_digit_mismatch(x, b).has_value();
}

// Smallest gamma* such that B_gamma*(x) contains b:
// max(level(b), -v(x - center(b))).
inline int min_enclosing_level(const PAdicPoint& x, const BallAddress& b) {
    if (x.params != b.params) throw ParameterError("min_enclosing_level: mismatched field parameters");
    auto k = first_digit_mismatch(x, b);
    if (!k) return b.level;
    return std::max(b.level, -*k);
}

// Text form "p^n:level:coord|coord|..."; digits are printed with the most
// significant (valuation) digit last, i.e. in descending index order.
inline std::string to_string(const BallAddress& b) {
    std::ostringstream os;
    os << b.params.tag() << ":" << b.level << ":";
    for (std::uint32_t j = 0; j < b.params.n; ++j) {
        if (j) os << "|";
        const auto& d = b.digits[j];
        for (size_t i = d.size(); i-- > 0;) {
            os << d[i];
            if (i) os << ",";
        }
    }
    return os.str();
}

inline BallAddress parse_ball(const std::string& s) {
    auto c1 = s.find(':');
    if (c1 == std::string::npos) throw ParameterError("ball: missing level in '" + s + "'");
    auto c2 = s.find(':', c1 + 1);
    if (c2 == std::string::npos) throw ParameterError("ball: missing digits in '" + s + "'");
    FieldParams fp = detail::parse_params_tag(s.substr(0, c1));
    int level = 0;
    try {
        level = std::stoi(s.substr(c1 + 1, c2 - c1 - 1));
    } catch (const std::logic_error&) {
        throw ParameterError("ball: bad level in '" + s + "'");
    }
    auto parts = detail::split(s.substr(c2 + 1), '|');
    if (parts.size() != fp.n) throw ParameterError("ball: expected " + std::to_string(fp.n) + " coordinates");
    std::vector<std::vector<std::uint32_t>> dg;
    for (const auto& part : parts) {
        auto desc = detail::parse_digit_list(part);
        dg.emplace_back(desc.rbegin(), desc.rend());
    }
    return BallAddress(fp, level, std::move(dg));
}

// Enumerates the p^(n*(top_level - level)) balls of a given level inside
// B_top_level(0) in a canonical order.  The order is "level major": index
// digits from the coarsest refinement step down, so the subtree below any
// intermediate ball is a contiguous index range.
class BallEnumerator {
  public:
    BallEnumerator(FieldParams fp, int top_level, int level)
        : fp_(fp), top_(top_level), level_(level) {
        if (level > top_level) throw ParameterError("BallEnumerator: level above top");
        steps_ = static_cast<unsigned>(top_level - level);
        branch_ = 1;
        for (std::uint32_t j = 0; j < fp.n; ++j) branch_ *= fp.p;
        count_ = 1;
        for (unsigned t = 0; t < steps_; ++t) {
            if (count_ > (size_t(1) << 42) / branch_)
                throw ParameterError("BallEnumerator: grid too large");
            count_ *= branch_;
        }
    }

    size_t count() const { return count_; }
    unsigned steps() const { return steps_; }
    size_t branch() const { return branch_; }
    int level() const { return level_; }
    int top_level() const { return top_; }
    const FieldParams& params() const { return fp_; }

    BallAddress address(size_t index) const {
        std::vector<std::vector<std::uint32_t>> dg(fp_.n);
        // step t adds the digit at index -top_ + t
        std::vector<size_t> codes(steps_);
        for (size_t t = steps_; t-- > 0;) {
            codes[t] = index % branch_;
            index /= branch_;
        }
        for (std::uint32_t j = 0; j < fp_.n; ++j) {
            std::uint32_t div = 1;
            for (std::uint32_t jj = 0; jj < j; ++jj) div *= fp_.p;
            auto& d = dg[j];
            for (unsigned t = 0; t < steps_; ++t) {
                std::uint32_t digit = static_cast<std::uint32_t>(codes[t] / div % fp_.p);
                if (!d.empty() || digit != 0) d.push_back(digit);
            }
        }
        return BallAddress(fp_, level_, std::move(dg));
    }

    // Index of a level_ ball lying inside B_top(0).
    size_t index_of(const BallAddress& b) const {
        if (b.level != level_) throw ParameterError("BallEnumerator: wrong level");
        for (std::uint32_t j = 0; j < fp_.n; ++j)
            if (b.coord_valuation(j) < -top_ && !b.digits[j].empty())
                throw ParameterError("BallEnumerator: ball outside the enumerated region");
        size_t index = 0;
        for (unsigned t = 0; t < steps_; ++t) {
            int k = -top_ + static_cast<int>(t);
            size_t code = 0;
            std::uint32_t mul = 1;
            for (std::uint32_t j = 0; j < fp_.n; ++j) {
                code += static_cast<size_t>(b.center_digit(j, k)) * mul;
                mul *= fp_.p;
            }
            index = index * branch_ + code;
        }
        return index;
    }

  private:
    FieldParams fp_;
    int top_;
    int level_;
    unsigned steps_ = 0;
    size_t branch_ = 1;
    size_t count_ = 1;
};

}  // namespace padic
