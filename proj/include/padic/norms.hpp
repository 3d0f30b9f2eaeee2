#pragma once

#include "padic/exponent.hpp"
#include "padic/interval.hpp"
#include "padic/lcfun.hpp"
#include "padic/pexact.hpp"
#include "padic/tailprofile.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace padic {

enum class YoungKind { LlogL, ExpL };

struct MorreyParams {
    Rational q;
    Rational lambda;

    MorreyParams(Rational q_, Rational lambda_, const FieldParams& fp)
        : q(std::move(q_)), lambda(std::move(lambda_)) {
        if (q < 1) throw ParameterError("Morrey exponent q must be >= 1");
        if (lambda < 0 || lambda > fp.n)
            throw ParameterError("Morrey lambda outside [0, n]: the space degenerates");
        if (lambda == fp.n)
            throw ParameterError("Morrey lambda = n is the essential-sup space; use a sup of |values| instead");
    }
};

struct NormResult {
    Interval value;
    std::optional<BallAddress> witness;
};

namespace detail {

// |v|^q as a certified interval; exact whenever possible.
inline Interval abs_pow(const Interval& v, const Rational& q, unsigned prec) {
    Interval a = interval_abs(v);
    if (a.is_point()) {
        if (a.lo == 0) return Interval(Rational(0));
        if (a.lo == 1) return Interval(Rational(1));
        if (den(q) == 1) return Interval(pow_int(a.lo, static_cast<long>(num(q))));
    }
    return pow_q(a, q, prec);
}

inline Interval abs_pow(const PSum& v, const Rational& q, std::uint32_t p, unsigned prec) {
    if (v.is_rational()) return abs_pow(Interval(v.rational_value()), q, prec);
    return abs_pow(to_interval(v, p, prec + 8), q, prec);
}

}  // namespace detail

// Int_B |f|^q for exponents q > 0 (exact rational for integer q).
inline Interval power_integral_on_ball(const LCFunction& f, const Rational& q,
                                       const BallAddress& B, unsigned prec = 60) {
    if (q <= 0) throw ParameterError("power_integral_on_ball: q must be positive");
    const auto S = f.grid.structure_ball();
    auto rel = ball_relation(B, S);
    const Rational cm = f.grid.cell_measure();
    Interval acc(Rational(0));
    if (rel == BallRelation::Disjoint)
        return ball_measure(B) * detail::abs_pow(Interval(f.c_inf), q, prec);
    if (rel == BallRelation::SecondInsideFirst) {
        for (const auto& v : f.cells) acc = acc + cm * detail::abs_pow(Interval(v), q, prec);
        acc = acc + (ball_measure(B) - ball_measure(S)) * detail::abs_pow(Interval(f.c_inf), q, prec);
        return acc;
    }
    if (B.level < f.grid.gamma_res) {
        auto cell = truncate_to_level(B, f.grid.gamma_res);
        return ball_measure(B) *
               detail::abs_pow(Interval(f.cells[f.grid.enumerator().index_of(cell)]), q, prec);
    }
    BallEnumerator at_level(f.params(), f.grid.gamma_struct, B.level);
    size_t stride = 1;
    for (int t = 0; t < B.level - f.grid.gamma_res; ++t) stride *= at_level.branch();
    size_t start = at_level.index_of(B) * stride;
    for (size_t i = 0; i < stride; ++i)
        acc = acc + cm * detail::abs_pow(Interval(f.cells[start + i]), q, prec);
    return acc;
}

// ||f||_{L^q(B)} = (Int_B |f|^q)^(1/q); a quasi-norm for 0 < q < 1.
inline Interval lq_norm_on_ball(const LCFunction& f, const Rational& q, const BallAddress& B,
                                unsigned prec = 60) {
    return pow_q(power_integral_on_ball(f, q, B, prec), Rational(1) / q, prec);
}

// Global L^q norm of a TailProfile (or embedded LCFunction): cell sum plus
// the closed-form sphere series sum_{k>G} (c p^(ke))^q p^(kn) (1 - p^-n),
// which requires q*e + n < 0.
inline Interval lq_norm(const TailProfile& f, const Rational& q, unsigned prec = 60) {
    if (q < 1) throw ParameterError("lq_norm: q must be >= 1");
    const auto& fp = f.params();
    const long n = fp.n;
    const Rational cm = f.grid.cell_measure();
    Interval acc(Rational(0));
    for (const auto& v : f.cells) acc = acc + cm * detail::abs_pow(v, q, fp.p, prec);
    if (f.has_tail()) {
        Rational s = q * f.tail_e + n;
        if (s >= 0) throw DivergenceError("lq_norm: sphere series diverges (q*e + n >= 0)");
        Interval cq = detail::abs_pow(Interval(f.tail_c), q, prec);
        Interval ratio = pow_p(fp.p, s, prec + 8);
        Interval first = pow_p(fp.p, s * (f.grid.gamma_struct + 1), prec + 8);
        Interval series = first / (Interval(Rational(1)) - ratio);
        acc = acc + (1 - pow_int(Rational(fp.p), -n)) * (cq * series);
    }
    return pow_q(acc, Rational(1) / q, prec);
}

inline Interval lq_norm(const LCFunction& f, const Rational& q, unsigned prec = 60) {
    if (f.c_inf != 0) throw DivergenceError("lq_norm: nonzero tail value diverges");
    return lq_norm(from_lc(f), q, prec);
}

// Distinct |value| levels of f within B with the measures of {|f| >= v}.
namespace detail {
struct LevelPiece {
    Rational value;    // distinct |f| value, descending
    Rational measure;  // measure of {|f| >= value} within B
};

inline std::vector<std::pair<Rational, Rational>> value_pieces(const LCFunction& f,
                                                               const BallAddress& B) {
    // raw (|value|, measure) pieces covering B
    std::vector<std::pair<Rational, Rational>> pieces;
    const auto S = f.grid.structure_ball();
    auto rel = ball_relation(B, S);
    const Rational cm = f.grid.cell_measure();
    if (rel == BallRelation::Disjoint) {
        pieces.emplace_back(rat_abs(f.c_inf), ball_measure(B));
        return pieces;
    }
    if (rel == BallRelation::SecondInsideFirst) {
        for (const auto& v : f.cells) pieces.emplace_back(rat_abs(v), cm);
        Rational ring = ball_measure(B) - ball_measure(S);
        if (ring > 0) pieces.emplace_back(rat_abs(f.c_inf), ring);
        return pieces;
    }
    if (B.level < f.grid.gamma_res) {
        auto cell = truncate_to_level(B, f.grid.gamma_res);
        pieces.emplace_back(rat_abs(f.cells[f.grid.enumerator().index_of(cell)]), ball_measure(B));
        return pieces;
    }
    BallEnumerator at_level(f.params(), f.grid.gamma_struct, B.level);
    size_t stride = 1;
    for (int t = 0; t < B.level - f.grid.gamma_res; ++t) stride *= at_level.branch();
    size_t start = at_level.index_of(B) * stride;
    for (size_t i = 0; i < stride; ++i) pieces.emplace_back(rat_abs(f.cells[start + i]), cm);
    return pieces;
}

inline std::vector<LevelPiece> descending_level_sets(const LCFunction& f, const BallAddress& B) {
    auto pieces = value_pieces(f, B);
    std::sort(pieces.begin(), pieces.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<LevelPiece> out;
    Rational cum(0);
    for (const auto& [v, m] : pieces) {
        cum += m;
        if (!out.empty() && out.back().value == v)
            out.back().measure = cum;
        else
            out.push_back({v, cum});
    }
    return out;
}
}  // namespace detail

// ||f||_{L^{q,inf}(B)} = sup_t t |{y in B : |f(y)| > t}|^(1/q).  For an LC
// function the supremum is attained in the limit t -> v^- over the finitely
// many distinct |values| v, so it is max_v v * |{|f| >= v}|^(1/q); the
// maximizer is selected exactly by comparing v^a m^b for q = a/b.
inline Interval weak_lq_norm(const LCFunction& f, const Rational& q, const BallAddress& B,
                             unsigned prec = 60) {
    if (q <= 0) throw ParameterError("weak_lq_norm: q must be positive");
    auto levels = detail::descending_level_sets(f, B);
    const long a = static_cast<long>(num(q));
    const long b = static_cast<long>(den(q));
    Rational best(0);  // best candidate^a = v^a * m^b
    for (const auto& piece : levels) {
        if (piece.value == 0) continue;
        Rational cand = pow_int(piece.value, a) * pow_int(piece.measure, b);
        best = std::max(best, cand);
    }
    if (best == 0) return Interval(Rational(0));
    return pow_q(Interval(best), Rational(1, a), prec);
}

namespace detail {

// Shared supremum-over-balls walk for Morrey-type quantities on a
// TailProfile.  Computes sup over *all* balls of
//     weight(level) * Int_B |f|^q
// where weight(level) = p^(-level*lambda); enumeration covers the grid balls,
// the concentric chain above the structure ball (certified decay) and the
// maximal ball inside each far sphere (certified geometric decay).
struct ScaledSupremum {
    Interval pow_q_value;  // sup of weight * integral (pre-1/q-root)
    std::optional<BallAddress> witness;
};

inline ScaledSupremum morrey_supremum(const TailProfile& f, const Rational& q,
                                      const Rational& lambda, unsigned prec) {
    const auto& fp = f.params();
    const auto p = fp.p;
    const long n = fp.n;
    const auto& g = f.grid;
    if (f.has_tail()) {
        if (q * f.tail_e + n >= 0)
            throw DivergenceError("morrey: sphere series diverges (q*e + n >= 0)");
    }
    // per-cell |v|^q, then per-level subtree sums (units: cell values)
    const size_t branch = g.enumerator().branch();
    const int m = g.gamma_struct - g.gamma_res;
    std::vector<std::vector<Interval>> sums(static_cast<size_t>(m) + 1);
    sums[0].reserve(f.cells.size());
    for (const auto& v : f.cells) sums[0].push_back(abs_pow(v, q, p, prec));
    for (int s = 1; s <= m; ++s) {
        const auto& prev = sums[static_cast<size_t>(s - 1)];
        auto& cur = sums[static_cast<size_t>(s)];
        cur.assign(prev.size() / branch, Interval(Rational(0)));
        for (size_t i = 0; i < prev.size(); ++i) cur[i / branch] = cur[i / branch] + prev[i];
    }
    const Rational cm = g.cell_measure();
    Interval best(Rational(0));
    std::optional<BallAddress> witness;
    auto consider = [&](const Interval& cand, const std::function<BallAddress()>& addr) {
        if (!witness || cand.hi > best.hi) {
            if (!witness || cand.lo > best.lo)
                best = cand;
            else
                best = Interval{best.lo, cand.hi};
            witness = addr();
        } else if (cand.lo > best.lo) {
            best = Interval{cand.lo, best.hi};
        }
    };
    // grid balls
    for (int s = 0; s <= m; ++s) {
        const int lvl = g.gamma_res + s;
        Interval weight = pow_p(p, -lambda * lvl, prec);
        const auto& level_sums = sums[static_cast<size_t>(s)];
        for (size_t i = 0; i < level_sums.size(); ++i) {
            Interval cand = weight * (cm * level_sums[i]);
            consider(cand, [&, lvl, i] { return BallEnumerator(fp, g.gamma_struct, lvl).address(i); });
        }
    }
    // the full integral: exact limit of the concentric chain when lambda = 0
    Interval total = cm * sums[static_cast<size_t>(m)][0];
    Interval total_inf = total;
    Rational s_exp = q * f.tail_e + n;
    if (f.has_tail()) {
        Interval cq = abs_pow(Interval(f.tail_c), q, prec);
        Interval ratio = pow_p(p, s_exp, prec + 8);
        Interval first = pow_p(p, s_exp * (g.gamma_struct + 1), prec + 8);
        Interval series = first / (Interval(Rational(1)) - ratio);
        total_inf = total + (1 - pow_int(Rational(p), -n)) * (cq * series);
    }
    if (lambda == 0) {
        consider(total_inf, [&] { return BallAddress::centered_at_zero(fp, g.gamma_struct); });
    } else {
        // concentric chain: quantity = p^(-gamma*lambda) * T(gamma), with the
        // envelope p^(-gamma*lambda) * T_inf decreasing
        Interval T = total;
        int gamma = g.gamma_struct;
        while (true) {
            ++gamma;
            if (f.has_tail()) {
                Interval mass = abs_pow(Interval(f.tail_c), q, prec) *
                                pow_p(p, f.tail_e * q * gamma, prec + 8) *
                                Interval(sphere_measure_at(fp, gamma));
                T = T + mass;
            }
            Interval weight = pow_p(p, -lambda * gamma, prec);
            consider(weight * T, [&, gamma] { return BallAddress::centered_at_zero(fp, gamma); });
            Interval env = pow_p(p, -lambda * (gamma + 1), prec) * total_inf;
            if (env.hi <= best.lo || (best.lo == 0 && env.hi == 0)) break;
        }
    }
    // far spheres: the best ball inside S_k is the maximal one (level k-1);
    // candidates decay geometrically with ratio p^(q e + n - lambda) < 1
    if (f.has_tail()) {
        int k = g.gamma_struct;
        while (true) {
            ++k;
            Interval cand = abs_pow(Interval(f.tail_c), q, prec) *
                            pow_p(p, f.tail_e * q * k, prec + 8) *
                            pow_p(p, (n - lambda) * (k - 1), prec + 8);
            consider(cand, [&, k] {
                std::vector<PAdicCoord> cs(fp.n);
                cs[0] = PAdicCoord{-k, {1}};
                return ball_of_point(PAdicPoint(fp, std::move(cs)), k - 1);
            });
            if (cand.hi <= best.lo || cand.hi == 0) break;
        }
    }
    return {best, witness};
}

}  // namespace detail

// ||f||_{L^{q,lambda}}: sup over all balls of
// (|B|^(-lambda/n) Int_B |f|^q)^(1/q), with the supremum witness.
inline NormResult morrey_norm(const TailProfile& f, const MorreyParams& mp, unsigned prec = 60) {
    auto sup = detail::morrey_supremum(f, mp.q, mp.lambda, prec);
    return {pow_q(sup.pow_q_value, Rational(1) / mp.q, prec), sup.witness};
}

inline NormResult morrey_norm(const LCFunction& f, const MorreyParams& mp, unsigned prec = 60) {
    if (f.c_inf != 0) throw DivergenceError("morrey_norm: nonzero tail value diverges");
    return morrey_norm(from_lc(f), mp, prec);
}

// BMO seminorm of an LC symbol, exact: the supremum of mean oscillations is
// attained among the grid balls and the concentric chain, whose oscillation
// is certified below 2 p^(-gamma n) Int_{B_G} |b - c_inf|.
struct BmoResult {
    Rational value;
    BallAddress witness;
};

inline BmoResult bmo_norm_exact(const LCFunction& b) {
    const auto& fp = b.params();
    const auto& g = b.grid;
    const long n = fp.n;
    const Rational cm = g.cell_measure();
    Rational best(0);
    BallAddress witness = g.structure_ball();
    const size_t branch = g.enumerator().branch();
    const int m = g.gamma_struct - g.gamma_res;
    // value sums per level for means
    std::vector<std::vector<Rational>> sums(static_cast<size_t>(m) + 1);
    sums[0] = b.cells;
    for (int s = 1; s <= m; ++s) {
        const auto& prev = sums[static_cast<size_t>(s - 1)];
        auto& cur = sums[static_cast<size_t>(s)];
        cur.assign(prev.size() / branch, Rational(0));
        for (size_t i = 0; i < prev.size(); ++i) cur[i / branch] += prev[i];
    }
    for (int s = 0; s <= m; ++s) {
        const int lvl = g.gamma_res + s;
        size_t stride = 1;
        for (int t = 0; t < s; ++t) stride *= branch;
        const Rational bm = ball_measure_at(fp, lvl);
        const auto& level_sums = sums[static_cast<size_t>(s)];
        for (size_t i = 0; i < level_sums.size(); ++i) {
            Rational mean = level_sums[i] * cm / bm;
            Rational osc(0);
            for (size_t j = i * stride; j < (i + 1) * stride; ++j)
                osc += rat_abs(b.cells[j] - mean);
            osc = osc * cm / bm;
            if (osc > best) {
                best = osc;
                witness = BallEnumerator(fp, g.gamma_struct, lvl).address(i);
            }
        }
    }
    // concentric chain
    Rational total = sums[static_cast<size_t>(m)][0] * cm;
    Rational dev(0);  // Int_{B_G} |b - c_inf|
    for (const auto& v : b.cells) dev += rat_abs(v - b.c_inf);
    dev *= cm;
    const Rational struct_measure = ball_measure_at(fp, g.gamma_struct);
    int gamma = g.gamma_struct;
    while (true) {
        ++gamma;
        Rational bound = 2 * pow_int(Rational(fp.p), -n * gamma) * dev;
        if (bound <= best) break;
        const Rational bm = ball_measure_at(fp, gamma);
        Rational mean = (total + b.c_inf * (bm - struct_measure)) / bm;
        Rational osc(0);
        for (const auto& v : b.cells) osc += rat_abs(v - mean);
        osc = osc * cm + rat_abs(b.c_inf - mean) * (bm - struct_measure);
        osc /= bm;
        if (osc > best) {
            best = osc;
            witness = BallAddress::centered_at_zero(fp, gamma);
        }
    }
    return {best, witness};
}

inline Interval bmo_norm(const LCFunction& b) { return Interval(bmo_norm_exact(b).value); }

// BMO_q seminorm: sup over balls of ((1/|B|) Int_B |b - b_B|^q)^(1/q).
// For integer q the pre-root supremum is an exact rational (reported for
// cross-checks); otherwise candidates are certified intervals.
struct BmoQResult {
    Interval value;
    BallAddress witness;
    std::optional<Rational> pre_power_exact;
};

inline BmoQResult bmo_q_norm(const LCFunction& b, const Rational& q, unsigned prec = 60) {
    if (q <= 0) throw ParameterError("bmo_q_norm: q must be positive");
    const auto& fp = b.params();
    const auto& g = b.grid;
    const long n = fp.n;
    const bool exact = den(q) == 1;
    const Rational cm = g.cell_measure();
    const size_t branch = g.enumerator().branch();
    const int m = g.gamma_struct - g.gamma_res;
    std::vector<std::vector<Rational>> sums(static_cast<size_t>(m) + 1);
    sums[0] = b.cells;
    for (int s = 1; s <= m; ++s) {
        const auto& prev = sums[static_cast<size_t>(s - 1)];
        auto& cur = sums[static_cast<size_t>(s)];
        cur.assign(prev.size() / branch, Rational(0));
        for (size_t i = 0; i < prev.size(); ++i) cur[i / branch] += prev[i];
    }
    Interval best(Rational(0));
    std::optional<Rational> best_exact;
    if (exact) best_exact = Rational(0);
    BallAddress witness = g.structure_ball();
    auto osc_q = [&](const std::function<Rational(size_t)>& cell_of, size_t count,
                     const Rational& mean, const Rational& ring_measure,
                     const Rational& bm) -> Interval {
        Interval acc(Rational(0));
        for (size_t j = 0; j < count; ++j)
            acc = acc + cm * detail::abs_pow(Interval(cell_of(j) - mean), q, prec);
        if (ring_measure > 0)
            acc = acc + ring_measure * detail::abs_pow(Interval(b.c_inf - mean), q, prec);
        return (Rational(1) / bm) * acc;
    };
    auto consider = [&](const Interval& cand, const std::function<BallAddress()>& addr) {
        if (cand.hi > best.hi) {
            witness = addr();
            best = (cand.lo >= best.lo) ? cand : Interval{best.lo, cand.hi};
            if (exact) best_exact = cand.lo;  // exact candidates are points
        } else if (cand.lo > best.lo) {
            best = Interval{cand.lo, best.hi};
            if (exact) best_exact = cand.lo;
        }
    };
    for (int s = 0; s <= m; ++s) {
        const int lvl = g.gamma_res + s;
        size_t stride = 1;
        for (int t = 0; t < s; ++t) stride *= branch;
        const Rational bm = ball_measure_at(fp, lvl);
        const auto& level_sums = sums[static_cast<size_t>(s)];
        for (size_t i = 0; i < level_sums.size(); ++i) {
            Rational mean = level_sums[i] * cm / bm;
            size_t base = i * stride;
            Interval cand = osc_q([&](size_t j) { return b.cells[base + j]; }, stride, mean,
                                  Rational(0), bm);
            consider(cand, [&, lvl, i] { return BallEnumerator(fp, g.gamma_struct, lvl).address(i); });
        }
    }
    // concentric chain with certified decay:
    // osc_q(gamma)^q <= p^(-gamma n) 2^q Int|b-c|^q
    //                   + 2^q p^(Gn) |D|^q p^(-gamma n (q+1))
    //                   + |D|^q p^(-gamma n q)
    Rational total = sums[static_cast<size_t>(m)][0] * cm;
    const Rational struct_measure = ball_measure_at(fp, g.gamma_struct);
    Rational D = total - b.c_inf * struct_measure;
    Interval dev_q(Rational(0));
    for (const auto& v : b.cells)
        dev_q = dev_q + cm * detail::abs_pow(Interval(v - b.c_inf), q, prec);
    Interval two_q = detail::abs_pow(Interval(Rational(2)), q, prec);
    Interval Dq = detail::abs_pow(Interval(D), q, prec);
    int gamma = g.gamma_struct;
    while (true) {
        ++gamma;
        Interval bound =
            pow_int(Rational(fp.p), -n * gamma) * (two_q * dev_q) +
            pow_int(Rational(fp.p), -n * gamma) * pow_q(pow_int(Rational(fp.p), -n * gamma),
                                                        q, prec) *
                (two_q * (struct_measure * Dq)) +
            pow_q(pow_int(Rational(fp.p), -n * gamma), q, prec) * Dq;
        if (bound.hi <= best.lo || bound.hi == 0) break;
        const Rational bm = ball_measure_at(fp, gamma);
        Rational mean = (total + b.c_inf * (bm - struct_measure)) / bm;
        Interval cand = osc_q([&](size_t j) { return b.cells[j]; }, b.cells.size(), mean,
                              bm - struct_measure, bm);
        consider(cand, [&, gamma] { return BallAddress::centered_at_zero(fp, gamma); });
    }
    return {pow_q(best, Rational(1) / q, prec), witness,
            exact ? best_exact : std::optional<Rational>{}};
}

namespace detail {

// Pieces (|value|, measure) of f over B, for modular evaluations.
inline std::vector<std::pair<Rational, Rational>> modular_pieces(const LCFunction& f,
                                                                 const BallAddress& B) {
    return value_pieces(f, B);
}

struct ModularProbe {
    Interval value;
    bool exact;  // the interval is a degenerate exact rational
};

// Generic decreasing-modular bisection.  modular(nu, prec) must be strictly
// decreasing in nu; returns a bracket of the unique root of modular = 1 with
// relative width below 2^-bits.  An exact probe hitting 1 returns a point.
inline Interval luxemburg_bisect(
    const std::function<ModularProbe(const Rational&, unsigned)>& modular, Rational lo,
    Rational hi, unsigned bits, unsigned base_prec) {
    // certify m(hi) <= 1, doubling as needed
    unsigned prec = base_prec;
    for (;;) {
        auto mp = modular(hi, prec);
        if (mp.exact && mp.value.lo == 1) return Interval(hi);
        if (mp.value.hi <= 1) break;
        if (mp.value.lo > 1) { lo = hi; hi *= 2; continue; }
        prec *= 2;
        if (prec > (1u << 18)) throw std::logic_error("luxemburg: cannot certify upper bracket");
    }
    // certify m(lo) > 1, halving as needed
    prec = base_prec;
    for (;;) {
        auto mp = modular(lo, prec);
        if (mp.exact && mp.value.lo == 1) return Interval(lo);
        if (mp.value.lo > 1) break;
        if (mp.value.hi <= 1) {
            hi = lo;
            lo /= 2;
            continue;
        }
        prec *= 2;
        if (prec > (1u << 18)) throw std::logic_error("luxemburg: cannot certify lower bracket");
    }
    const Rational tol = Rational(1, Int(1) << bits);
    while (hi - lo > hi * tol) {
        Rational mid = (lo + hi) / 2;
        unsigned p2 = base_prec;
        bool placed = false;
        for (int attempt = 0; attempt < 3 && !placed; ++attempt) {
            auto mp = modular(mid, p2);
            if (mp.exact && mp.value.lo == 1) return Interval(mid);
            if (mp.value.lo > 1) { lo = mid; placed = true; }
            else if (mp.value.hi <= 1) { hi = mid; placed = true; }
            else p2 *= 2;
        }
        if (!placed) {
            // the root may sit exactly at mid; retry off-center
            mid = lo + (hi - lo) * Rational(2, 3);
            auto mp = modular(mid, p2);
            if (mp.exact && mp.value.lo == 1) return Interval(mid);
            if (mp.value.lo > 1) lo = mid;
            else if (mp.value.hi <= 1) hi = mid;
            else throw std::logic_error("luxemburg: modular straddles 1 at two probes");
        }
    }
    return {lo, hi};
}

}  // namespace detail

// Luxemburg average ||f||_{Phi, B} = inf{nu > 0 : (1/|B|) Int_B Phi(|f|/nu) <= 1}
// for Phi(t) = t(1+log^+ t) (LlogL) or e^t - 1 (ExpL).
inline Interval orlicz_average(const LCFunction& f, const BallAddress& B, YoungKind kind,
                               const Precision& px = {}) {
    auto pieces = detail::modular_pieces(f, B);
    Rational maxv(0), mass(0);
    const Rational mB = ball_measure(B);
    for (const auto& [v, m] : pieces) {
        maxv = std::max(maxv, v);
        mass += v * m;
    }
    if (maxv == 0) return Interval(Rational(0));
    const Rational mean = mass / mB;

    auto modular = [&](const Rational& nu, unsigned prec) -> detail::ModularProbe {
        if (kind == YoungKind::LlogL) {
            // exact path while every ratio stays <= 1
            bool all_small = true;
            for (const auto& [v, m] : pieces)
                if (v > nu) { all_small = false; break; }
            if (all_small) {
                Rational exact = mass / (nu * mB);
                return {Interval(exact), true};
            }
            Interval acc(Rational(0));
            for (const auto& [v, m] : pieces) {
                if (v == 0) continue;
                Rational t = v / nu;
                Interval phi = t * (Interval(Rational(1)) + log_plus(Interval(t), prec));
                acc = acc + m * phi;
            }
            return {(Rational(1) / mB) * acc, acc.is_point()};
        }
        Interval acc(Rational(0));
        for (const auto& [v, m] : pieces) {
            if (v == 0) continue;
            Interval psi = exp_rational(v / nu, prec) - Interval(Rational(1));
            acc = acc + m * psi;
        }
        return {(Rational(1) / mB) * acc, false};
    };

    Rational hi = (kind == YoungKind::LlogL) ? maxv : maxv * Rational(14427, 10000);
    Rational lo = std::min(mean, hi / 2);
    return detail::luxemburg_bisect(modular, lo, hi, px.bisect_bits, px.root_bits);
}

namespace detail {

// One constant piece of a variable-exponent modular: value (as a certified
// interval, exact endpoints when v_exact), exponent and measure.
struct VPiece {
    Interval v;
    bool v_exact = true;
    Rational q;
    Rational m;
};

// inf{eta : sum_i m_i (|v_i|/eta)^{q_i} + extra(eta) <= 1} by certified
// bisection; extra (may be null) must be decreasing in eta.
inline Interval luxvar_pieces(
    const std::vector<VPiece>& pieces,
    const std::function<std::pair<Interval, bool>(const Rational&, unsigned)>& extra,
    const Precision& px) {
    Rational max_hi(0);
    bool any = false;
    for (const auto& pc : pieces) {
        if (pc.v.hi == 0) continue;
        any = true;
        max_hi = std::max(max_hi, pc.v.hi);
    }
    if (extra) any = true;
    if (!any) return Interval(Rational(0));
    auto modular = [&](const Rational& eta, unsigned prec) -> ModularProbe {
        Interval acc(Rational(0));
        bool exact = true;
        for (const auto& pc : pieces) {
            if (pc.v.hi == 0) continue;
            Interval base = pc.v * Interval(Rational(1) / eta);
            Interval term;
            if (pc.v_exact && (base.lo == 0 || base.lo == 1))
                term = base;  // 0^q = 0, 1^q = 1
            else if (pc.v_exact && den(pc.q) == 1)
                term = Interval(pow_int(base.lo, static_cast<long>(num(pc.q))));
            else
                term = pow_q(base, pc.q, prec);
            exact = exact && term.is_point();
            acc = acc + pc.m * term;
        }
        if (extra) {
            auto [t, tex] = extra(eta, prec);
            acc = acc + t;
            exact = exact && tex;
        }
        return {acc, exact && acc.is_point()};
    };
    Rational hi = std::max(Rational(1), max_hi);
    unsigned prec = px.root_bits;
    for (;;) {
        auto mp = modular(hi, prec);
        if (mp.value.hi <= 1 || (mp.exact && mp.value.lo == 1)) break;
        if (mp.value.lo > 1) { hi *= 2; continue; }
        prec *= 2;
        if (prec > (1u << 18)) throw std::logic_error("luxvar_pieces: bracket failure");
    }
    return luxemburg_bisect(modular, hi / 2, hi, px.bisect_bits, px.root_bits);
}

}  // namespace detail

// Luxemburg norm in the variable-exponent space:
// inf{eta > 0 : Int (|f|/eta)^{q(x)} dx <= 1}.  The far-sphere part uses the
// constant exponent q_inf; for a TailProfile it is a closed-form geometric
// series requiring q_inf * e + n < 0.
inline Interval luxemburg_variable_norm(const TailProfile& f0, const ExponentFunction& qfun,
                                        const Precision& px = {}) {
    if (f0.params() != qfun.params())
        throw ParameterError("luxemburg_variable_norm: mismatched field parameters");
    const auto& fp = f0.params();
    const auto p = fp.p;
    const long n = fp.n;
    int gr = std::min(f0.grid.gamma_res, qfun.shape.grid.gamma_res);
    int gs = std::max(f0.grid.gamma_struct, qfun.shape.grid.gamma_struct);
    TailProfile f = tp_refine(f0, gr, gs);
    LCFunction qs = refine(qfun.shape, gr, gs);
    const Rational cm = f.grid.cell_measure();
    const Rational q_inf = qfun.q_inf();
    if (f.has_tail()) {
        if (f.tail_is_constant())
            throw DivergenceError("luxemburg_variable_norm: nonzero constant tail diverges");
        if (q_inf * f.tail_e + n >= 0)
            throw DivergenceError("luxemburg_variable_norm: sphere modular diverges");
    }
    std::vector<detail::VPiece> pieces;
    for (size_t i = 0; i < f.cells.size(); ++i) {
        const auto& cell = f.cells[i];
        if (cell.is_zero()) continue;
        detail::VPiece pc;
        if (cell.is_rational()) {
            pc.v = Interval(rat_abs(cell.rational_value()));
            pc.v_exact = true;
        } else {
            pc.v = interval_abs(to_interval(cell, p, px.root_bits + 16));
            pc.v_exact = false;
        }
        pc.q = qs.cells[i];
        pc.m = cm;
        pieces.push_back(pc);
    }
    std::function<std::pair<Interval, bool>(const Rational&, unsigned)> extra;
    if (f.has_tail()) {
        Rational tail_c = f.tail_c, tail_e = f.tail_e;
        int gs2 = f.grid.gamma_struct;
        extra = [=](const Rational& eta, unsigned prec) {
            Rational s = q_inf * tail_e + n;
            Interval cq = pow_q(Interval(rat_abs(tail_c) / eta), q_inf, prec);
            Interval ratio = pow_p(p, s, prec + 8);
            Interval first = pow_p(p, s * (gs2 + 1), prec + 8);
            Interval series = first / (Interval(Rational(1)) - ratio);
            Interval t = (1 - pow_int(Rational(p), -n)) * (cq * series);
            return std::pair{t, t.is_point()};
        };
    }
    return detail::luxvar_pieces(pieces, extra, px);
}

inline Interval luxemburg_variable_norm(const LCFunction& f, const ExponentFunction& qfun,
                                        const Precision& px = {}) {
    if (f.c_inf != 0)
        throw DivergenceError("luxemburg_variable_norm: nonzero tail value diverges");
    return luxemburg_variable_norm(from_lc(f), qfun, px);
}

}  // namespace padic
