#pragma once

#include "padic/ball.hpp"
#include "padic/field.hpp"
#include "padic/point.hpp"
#include "padic/rational.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace padic {

// The complete partition of B_gamma_struct(0) into balls of level gamma_res,
// in the canonical (level-major) enumeration order.
struct CellGrid {
    FieldParams params;
    int gamma_struct = 0;
    int gamma_res = 0;

    CellGrid() = default;
    CellGrid(FieldParams fp, int gs, int gr) : params(fp), gamma_struct(gs), gamma_res(gr) {
        if (gr > gs) throw ParameterError("CellGrid: resolution above structure level");
        if (enumerator().count() > (size_t(1) << 24))
            throw ParameterError("CellGrid: too many cells");
    }

    BallEnumerator enumerator() const { return BallEnumerator(params, gamma_struct, gamma_res); }
    size_t cell_count() const { return enumerator().count(); }
    Rational cell_measure() const { return ball_measure_at(params, gamma_res); }
    BallAddress structure_ball() const { return BallAddress::centered_at_zero(params, gamma_struct); }

    bool operator==(const CellGrid&) const = default;
};

enum class CombineOp { add, sub, mul, max };

// Locally constant function with a constant tail: cell values on the grid
// partition of B_gamma_struct(0) and the value c_inf outside.
struct LCFunction {
    CellGrid grid;
    std::vector<Rational> cells;
    Rational c_inf;

    LCFunction() = default;
    LCFunction(CellGrid g, std::vector<Rational> vals, Rational tail)
        : grid(std::move(g)), cells(std::move(vals)), c_inf(std::move(tail)) {
        if (cells.size() != grid.cell_count())
            throw ParameterError("LCFunction: cell count does not match the grid");
    }

    const FieldParams& params() const { return grid.params; }

    static LCFunction constant(FieldParams fp, const Rational& c) {
        CellGrid g(fp, 0, 0);
        return LCFunction(g, std::vector<Rational>(g.cell_count(), c), c);
    }

    // Index of the level-gamma_res cell containing x, or nullopt if x lies
    // outside the structure ball.
    std::optional<size_t> cell_index_of(const PAdicPoint& x) const {
        auto lvl = x.abs_level();
        if (lvl && *lvl > grid.gamma_struct) return std::nullopt;
        return grid.enumerator().index_of(ball_of_point(x, grid.gamma_res));
    }

    Rational value_at(const PAdicPoint& x) const {
        auto i = cell_index_of(x);
        return i ? cells[*i] : c_inf;
    }

    Rational max_abs() const {
        Rational m = rat_abs(c_inf);
        for (const auto& v : cells) m = std::max(m, rat_abs(v));
        return m;
    }

    bool is_constant() const {
        for (const auto& v : cells)
            if (v != c_inf) return false;
        return true;
    }
};

// Same function on a finer grid: gamma_res' <= gamma_res, gamma_struct' >=
// gamma_struct; the ring between the old and new structure balls is c_inf.
inline LCFunction refine(const LCFunction& f, int gamma_res2, int gamma_struct2) {
    if (gamma_res2 > f.grid.gamma_res || gamma_struct2 < f.grid.gamma_struct)
        throw ParameterError("refine: target grid must refine the source grid");
    if (gamma_res2 == f.grid.gamma_res && gamma_struct2 == f.grid.gamma_struct) return f;
    CellGrid g2(f.params(), gamma_struct2, gamma_res2);
    const size_t branch = g2.enumerator().branch();
    size_t mid = 1, suffix = 1;
    for (int t = 0; t < f.grid.gamma_struct - f.grid.gamma_res; ++t) mid *= branch;
    for (int t = 0; t < f.grid.gamma_res - gamma_res2; ++t) suffix *= branch;
    std::vector<Rational> cells;
    cells.reserve(g2.cell_count());
    const size_t prefixes = g2.cell_count() / (mid * suffix);
    for (size_t pfx = 0; pfx < prefixes; ++pfx)
        for (size_t m = 0; m < mid; ++m) {
            const Rational& v = (pfx == 0) ? f.cells[m] : f.c_inf;
            for (size_t s = 0; s < suffix; ++s) cells.push_back(v);
        }
    return LCFunction(std::move(g2), std::move(cells), f.c_inf);
}

inline std::pair<LCFunction, LCFunction> to_common_grid(const LCFunction& f, const LCFunction& g) {
    if (f.params() != g.params()) throw ParameterError("combine: mismatched field parameters");
    int gr = std::min(f.grid.gamma_res, g.grid.gamma_res);
    int gs = std::max(f.grid.gamma_struct, g.grid.gamma_struct);
    return {refine(f, gr, gs), refine(g, gr, gs)};
}

inline LCFunction pointwise_combine(const LCFunction& f, const LCFunction& g, CombineOp op) {
    auto [a, b] = to_common_grid(f, g);
    auto apply = [op](const Rational& x, const Rational& y) -> Rational {
        switch (op) {
            case CombineOp::add: return x + y;
            case CombineOp::sub: return x - y;
            case CombineOp::mul: return x * y;
            case CombineOp::max: return std::max(x, y);
        }
        throw std::logic_error("unreachable");
    };
    std::vector<Rational> cells(a.cells.size());
    for (size_t i = 0; i < cells.size(); ++i) cells[i] = apply(a.cells[i], b.cells[i]);
    return LCFunction(a.grid, std::move(cells), apply(a.c_inf, b.c_inf));
}

inline LCFunction map_values(const LCFunction& f, const std::function<Rational(const Rational&)>& fn) {
    std::vector<Rational> cells(f.cells.size());
    for (size_t i = 0; i < cells.size(); ++i) cells[i] = fn(f.cells[i]);
    return LCFunction(f.grid, std::move(cells), fn(f.c_inf));
}

inline LCFunction lc_abs(const LCFunction& f) {
    return map_values(f, [](const Rational& v) { return rat_abs(v); });
}
// b^-(x) = -min(b, 0)
inline LCFunction neg_part(const LCFunction& f) {
    return map_values(f, [](const Rational& v) { return v < 0 ? Rational(-v) : Rational(0); });
}
// b^+(x) = |b| - b^-
inline LCFunction pos_part(const LCFunction& f) {
    return map_values(f, [](const Rational& v) { return v > 0 ? v : Rational(0); });
}
inline LCFunction lc_scale(const LCFunction& f, const Rational& c) {
    return map_values(f, [&c](const Rational& v) { return c * v; });
}
inline LCFunction lc_shift(const LCFunction& f, const Rational& c) {
    return map_values(f, [&c](const Rational& v) { return v - c; });
}

// Characteristic function of a ball: 1 on B, 0 elsewhere.
inline LCFunction char_fn(const BallAddress& B) {
    int gs = std::max(min_enclosing_level(PAdicPoint::zero(B.params), B), 0);
    CellGrid g(B.params, gs, B.level);
    std::vector<Rational> cells(g.cell_count(), Rational(0));
    cells[g.enumerator().index_of(B)] = 1;
    return LCFunction(std::move(g), std::move(cells), Rational(0));
}

// Exact Haar integral of f over the ball B.
inline Rational integrate(const LCFunction& f, const BallAddress& B) {
    if (f.params() != B.params) throw ParameterError("integrate: mismatched field parameters");
    const auto S = f.grid.structure_ball();
    const Rational mB = ball_measure(B);
    auto rel = ball_relation(B, S);
    if (rel == BallRelation::Disjoint) return f.c_inf * mB;
    if (rel == BallRelation::SecondInsideFirst) {
        Rational total(0);
        const Rational mc = f.grid.cell_measure();
        for (const auto& v : f.cells) total += v;
        return total * mc + f.c_inf * (mB - ball_measure(S));
    }
    // B inside (or equal to) the structure ball
    if (B.level < f.grid.gamma_res) {
        auto cell = truncate_to_level(B, f.grid.gamma_res);
        return f.cells[f.grid.enumerator().index_of(cell)] * mB;
    }
    BallEnumerator at_level(f.params(), f.grid.gamma_struct, B.level);
    size_t stride = 1;
    for (int t = 0; t < B.level - f.grid.gamma_res; ++t) stride *= at_level.branch();
    size_t start = at_level.index_of(B) * stride;
    Rational total(0);
    for (size_t i = 0; i < stride; ++i) total += f.cells[start + i];
    return total * f.grid.cell_measure();
}

// Exact integral over all of Q_p^n; requires a vanishing tail.
inline Rational integrate_global(const LCFunction& f) {
    if (f.c_inf != 0)
        throw DivergenceError("integrate_global: nonzero tail value, the integral diverges");
    Rational total(0);
    for (const auto& v : f.cells) total += v;
    return total * f.grid.cell_measure();
}

inline Rational ball_mean(const LCFunction& f, const BallAddress& B) {
    return integrate(f, B) / ball_measure(B);
}

}  // namespace padic
