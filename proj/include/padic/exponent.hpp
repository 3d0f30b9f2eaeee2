#pragma once

#include "padic/interval.hpp"
#include "padic/lcfun.hpp"

#include <algorithm>

namespace padic {

// Variable exponent q(.): an LCFunction shape with rational cell values and
// the constant tail value q_inf = shape.c_inf.  Valid exponents satisfy
// 1 < q_- <= q(x) <= q_+ < infinity everywhere.
struct ExponentFunction {
    LCFunction shape;

    explicit ExponentFunction(LCFunction s) : shape(std::move(s)) {
        for (const auto& v : shape.cells)
            if (v <= 1) throw ParameterError("exponent function must exceed 1 everywhere");
        if (shape.c_inf <= 1) throw ParameterError("exponent tail must exceed 1");
    }

    static ExponentFunction constant(FieldParams fp, const Rational& q) {
        return ExponentFunction(LCFunction::constant(fp, q));
    }

    const FieldParams& params() const { return shape.params(); }
    Rational q_inf() const { return shape.c_inf; }

    Rational q_minus() const {
        Rational m = shape.c_inf;
        for (const auto& v : shape.cells) m = std::min(m, v);
        return m;
    }
    Rational q_plus() const {
        Rational m = shape.c_inf;
        for (const auto& v : shape.cells) m = std::max(m, v);
        return m;
    }

    Rational at(const PAdicPoint& x) const { return shape.value_at(x); }

    // q(x, gamma): q(x) for gamma < 0 and q(inf) for gamma >= 0.
    Rational at_scale(const PAdicPoint& x, int gamma) const {
        return gamma < 0 ? at(x) : q_inf();
    }

    // essential inf / sup of q over a ball.
    std::pair<Rational, Rational> range_on_ball(const BallAddress& B) const {
        const auto S = shape.grid.structure_ball();
        auto rel = ball_relation(B, S);
        if (rel == BallRelation::Disjoint) return {shape.c_inf, shape.c_inf};
        Rational lo, hi;
        bool first = true;
        auto feed = [&](const Rational& v) {
            if (first) { lo = hi = v; first = false; }
            else { lo = std::min(lo, v); hi = std::max(hi, v); }
        };
        if (rel == BallRelation::SecondInsideFirst) {
            for (const auto& v : shape.cells) feed(v);
            if (B.level > S.level) feed(shape.c_inf);
            return {lo, hi};
        }
        if (B.level < shape.grid.gamma_res) {
            Rational v = shape.cells[shape.grid.enumerator().index_of(
                truncate_to_level(B, shape.grid.gamma_res))];
            return {v, v};
        }
        BallEnumerator at_level(params(), shape.grid.gamma_struct, B.level);
        size_t stride = 1;
        for (int t = 0; t < B.level - shape.grid.gamma_res; ++t) stride *= at_level.branch();
        size_t start = at_level.index_of(B) * stride;
        for (size_t i = 0; i < stride; ++i) feed(shape.cells[start + i]);
        return {lo, hi};
    }
};

// q'(x) = q(x)/(q(x)-1), cellwise exact.
inline ExponentFunction conjugate_exponent(const ExponentFunction& q) {
    auto conj = [](const Rational& v) { return v / (v - 1); };
    return ExponentFunction(map_values(q.shape, conj));
}

struct LogHolderConstants {
    // sup of gamma*(q_-(B) - q_+(B)) as written, and of |gamma|*(q_+ - q_-)
    // under the conventional reading; both are reported.
    Rational c0_verbatim;
    Rational c0_conventional;
    Interval c_inf;  // sup |q(x)-q(y)| * log_p(p + min(|x|,|y|))
};

// Best (smallest admissible) constants of the local and decay conditions.
// Finite enumeration: the exponent is locally constant with a constant tail,
// so only balls meeting the structure region and one far representative can
// contribute, and factors are maximized per cell pair.
inline LogHolderConstants log_holder_constants(const ExponentFunction& q, unsigned prec = 60) {
    const auto& fp = q.params();
    const auto& g = q.shape.grid;
    LogHolderConstants out{Rational(0), Rational(0), Interval(Rational(0))};

    // Since q_-(B) - q_+(B) <= 0, the written expression is positive only on
    // balls of level <= 0; balls below the resolution or away from the
    // structure ball see a constant q and contribute 0.  The enumeration is
    // therefore the grid balls plus the concentric chain up to level 0.
    // c0_conventional is the small-ball reading sup |level| (q_+ - q_-) over
    // the same levels (over all levels it would diverge).
    auto feed_ball = [&](int lvl, const BallAddress& B) {
        auto [qlo, qhi] = q.range_on_ball(B);
        out.c0_verbatim = std::max(out.c0_verbatim, Rational(lvl) * (qlo - qhi));
        if (lvl <= 0)
            out.c0_conventional =
                std::max(out.c0_conventional, rat_abs(Rational(lvl)) * (qhi - qlo));
    };
    for (int lvl = g.gamma_res; lvl <= g.gamma_struct; ++lvl) {
        BallEnumerator balls(fp, g.gamma_struct, lvl);
        for (size_t i = 0; i < balls.count(); ++i) feed_ball(lvl, balls.address(i));
    }
    for (int lvl = g.gamma_struct + 1; lvl <= 0; ++lvl)
        feed_ball(lvl, BallAddress::centered_at_zero(fp, lvl));

    // C_inf: among points of two cells, |q| difference is fixed and the
    // factor log_p(p + min(|x|,|y|)) grows with min(|x|,|y|); the largest
    // |x| inside a cell is |center| for off-origin cells and the cell radius
    // for the cell at 0.  Pairs with both points far out have equal q.
    struct Piece { Rational qv; Rational max_abs; };
    std::vector<Piece> pieces;
    BallEnumerator cells(fp, g.gamma_struct, g.gamma_res);
    for (size_t i = 0; i < cells.count(); ++i) {
        auto cell = cells.address(i);
        Rational radius = pow_int(Rational(fp.p), g.gamma_res);
        Rational ma = radius;
        if (!cell.center_is_zero()) {
            int v = g.gamma_struct;  // min coordinate valuation
            for (std::uint32_t j = 0; j < fp.n; ++j)
                if (!cell.digits[j].empty()) v = std::min(v, cell.coord_valuation(j));
            ma = std::max(ma, pow_int(Rational(fp.p), -v));
        }
        pieces.push_back({q.shape.cells[i], ma});
    }
    Interval logp = log_rational(Rational(fp.p), prec + 8);
    auto factor = [&](const Rational& m) {
        return log_interval(Interval(Rational(fp.p) + m), prec + 8) / logp;
    };
    Interval best(Rational(0));
    for (size_t i = 0; i < pieces.size(); ++i) {
        for (size_t j = i + 1; j < pieces.size(); ++j) {
            Rational dq = rat_abs(pieces[i].qv - pieces[j].qv);
            if (dq == 0) continue;
            best = interval_max(best, dq * factor(std::min(pieces[i].max_abs, pieces[j].max_abs)));
        }
        // pair against the tail: min(|x|,|y|) is maximized by the cell side
        Rational dq = rat_abs(pieces[i].qv - q.q_inf());
        if (dq != 0) best = interval_max(best, dq * factor(pieces[i].max_abs));
    }
    out.c_inf = best;
    return out;
}

}  // namespace padic
