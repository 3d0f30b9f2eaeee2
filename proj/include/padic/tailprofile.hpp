#pragma once

#include "padic/lcfun.hpp"
#include "padic/pexact.hpp"

#include <vector>

namespace padic {

// A function that is locally constant inside the core ball B_gamma_struct(0)
// (cell values are exact PSum elements) and radially lawful outside: on the
// sphere S_k(0), k > gamma_struct, it equals tail_c * p^(k * tail_e).
// This class is closed under the maximal operators acting on compactly
// supported LCFunctions (tail_e = alpha - n) and embeds every LCFunction
// (tail_e = 0, tail_c = c_inf).
struct TailProfile {
    CellGrid grid;
    std::vector<PSum> cells;
    Rational tail_c;
    Rational tail_e;

    TailProfile() = default;
    TailProfile(CellGrid g, std::vector<PSum> vals, Rational c, Rational e)
        : grid(std::move(g)), cells(std::move(vals)), tail_c(std::move(c)), tail_e(std::move(e)) {
        if (cells.size() != grid.cell_count())
            throw ParameterError("TailProfile: cell count does not match the grid");
        if (tail_c == 0) tail_e = 0;
    }

    const FieldParams& params() const { return grid.params; }
    bool has_tail() const { return tail_c != 0; }
    bool tail_is_constant() const { return tail_e == 0; }

    // Value on the sphere S_k(0), valid for k > gamma_struct.
    PExact sphere_value(int k) const {
        if (tail_c == 0) return PExact();
        return PExact(tail_c, tail_e * k, params().p);
    }

    PSum value_at(const PAdicPoint& x) const {
        auto lvl = x.abs_level();
        if (!lvl || *lvl <= grid.gamma_struct)
            return cells[grid.enumerator().index_of(ball_of_point(x, grid.gamma_res))];
        return PSum(sphere_value(*lvl), params().p);
    }
};

inline TailProfile from_lc(const LCFunction& f) {
    std::vector<PSum> cells;
    cells.reserve(f.cells.size());
    for (const auto& v : f.cells) cells.emplace_back(v);
    return TailProfile(f.grid, std::move(cells), f.c_inf, Rational(0));
}

inline TailProfile tp_abs(const TailProfile& f) {
    const auto p = f.params().p;
    std::vector<PSum> cells;
    cells.reserve(f.cells.size());
    for (const auto& v : f.cells) cells.push_back(psum_abs(v, p));
    return TailProfile(f.grid, std::move(cells), rat_abs(f.tail_c), f.tail_e);
}

// Same function on a finer/larger grid; ring cells between the old and new
// structure balls are materialized from the sphere law.
inline TailProfile tp_refine(const TailProfile& f, int gamma_res2, int gamma_struct2) {
    if (gamma_res2 > f.grid.gamma_res || gamma_struct2 < f.grid.gamma_struct)
        throw ParameterError("tp_refine: target grid must refine the source grid");
    if (gamma_res2 == f.grid.gamma_res && gamma_struct2 == f.grid.gamma_struct) return f;
    CellGrid g2(f.params(), gamma_struct2, gamma_res2);
    const auto p = f.params().p;
    const size_t branch = g2.enumerator().branch();
    size_t mid = 1, suffix = 1;
    for (int t = 0; t < f.grid.gamma_struct - f.grid.gamma_res; ++t) mid *= branch;
    for (int t = 0; t < f.grid.gamma_res - gamma_res2; ++t) suffix *= branch;
    const size_t prefixes = g2.cell_count() / (mid * suffix);
    const int prefix_steps = gamma_struct2 - f.grid.gamma_struct;
    std::vector<PSum> cells;
    cells.reserve(g2.cell_count());
    for (size_t pfx = 0; pfx < prefixes; ++pfx) {
        PSum ring_value;
        if (pfx != 0) {
            // sphere index of a cell whose first nonzero refinement digit is
            // at step t0 (digit index -gamma_struct2 + t0): k = gamma_struct2 - t0
            size_t rest = pfx;
            int t0 = 0;
            for (int t = prefix_steps; t-- > 0;) {
                size_t digit = rest % branch;
                rest /= branch;
                if (digit != 0) t0 = t;
            }
            ring_value = PSum(f.sphere_value(gamma_struct2 - t0), p);
        }
        for (size_t m = 0; m < mid; ++m) {
            const PSum& v = (pfx == 0) ? f.cells[m] : ring_value;
            for (size_t s = 0; s < suffix; ++s) cells.push_back(v);
        }
    }
    return TailProfile(std::move(g2), std::move(cells), f.tail_c, f.tail_e);
}

inline std::pair<TailProfile, TailProfile> tp_common_grid(const TailProfile& a, const TailProfile& b) {
    if (a.params() != b.params()) throw ParameterError("tp_common_grid: mismatched field parameters");
    int gr = std::min(a.grid.gamma_res, b.grid.gamma_res);
    int gs = std::max(a.grid.gamma_struct, b.grid.gamma_struct);
    return {tp_refine(a, gr, gs), tp_refine(b, gr, gs)};
}

// a - b; the sphere laws must share an exponent (or vanish).
inline TailProfile tp_sub(const TailProfile& a0, const TailProfile& b0) {
    auto [a, b] = tp_common_grid(a0, b0);
    std::vector<PSum> cells(a.cells.size());
    for (size_t i = 0; i < cells.size(); ++i) cells[i] = a.cells[i] - b.cells[i];
    Rational e;
    if (a.tail_c == 0) e = b.tail_e;
    else if (b.tail_c == 0 || a.tail_e == b.tail_e) e = a.tail_e;
    else throw ParameterError("tp_sub: incompatible sphere laws");
    return TailProfile(a.grid, std::move(cells), a.tail_c - b.tail_c, e);
}

// Pointwise product with an LCFunction (exact; the law picks up lc.c_inf).
inline TailProfile tp_mul_lc(const TailProfile& a0, const LCFunction& g0) {
    auto g = from_lc(g0);
    int gr = std::min(a0.grid.gamma_res, g.grid.gamma_res);
    int gs = std::max(a0.grid.gamma_struct, g.grid.gamma_struct);
    auto a = tp_refine(a0, gr, gs);
    auto b = tp_refine(g, gr, gs);
    const auto p = a.params().p;
    std::vector<PSum> cells(a.cells.size());
    for (size_t i = 0; i < cells.size(); ++i) cells[i] = psum_mul(a.cells[i], b.cells[i], p);
    return TailProfile(a.grid, std::move(cells), a.tail_c * g0.c_inf, a.tail_e);
}

// Exact Haar integral of f over the ball B.
inline PSum tp_integrate(const TailProfile& f, const BallAddress& B) {
    if (f.params() != B.params) throw ParameterError("tp_integrate: mismatched field parameters");
    const auto p = f.params().p;
    const auto S = f.grid.structure_ball();
    auto rel = ball_relation(B, S);
    if (rel == BallRelation::Disjoint) {
        // B sits inside a single far sphere S_k(0)
        int k = min_enclosing_level(PAdicPoint::zero(B.params), B);
        PExact v = f.sphere_value(k);
        return PSum(pexact_mul(v, PExact(ball_measure(B)), p), p);
    }
    if (rel == BallRelation::SecondInsideFirst) {
        PSum total;
        for (const auto& v : f.cells) total = total + v;
        total = f.grid.cell_measure() * total;
        for (int k = f.grid.gamma_struct + 1; k <= B.level; ++k) {
            PExact mass = pexact_mul(f.sphere_value(k), PExact(sphere_measure_at(f.params(), k)), p);
            total.add_term(mass.t, mass.c);
        }
        return total;
    }
    if (B.level < f.grid.gamma_res) {
        auto cell = truncate_to_level(B, f.grid.gamma_res);
        return psum_mul(f.cells[f.grid.enumerator().index_of(cell)], PExact(ball_measure(B)), p);
    }
    BallEnumerator at_level(f.params(), f.grid.gamma_struct, B.level);
    size_t stride = 1;
    for (int t = 0; t < B.level - f.grid.gamma_res; ++t) stride *= at_level.branch();
    size_t start = at_level.index_of(B) * stride;
    PSum total;
    for (size_t i = 0; i < stride; ++i) total = total + f.cells[start + i];
    return f.grid.cell_measure() * total;
}

// Exact integral over all of Q_p^n; requires tail_e + n < 0 (or no tail).
inline PSum tp_integrate_global(const TailProfile& f) {
    const auto p = f.params().p;
    const long n = f.params().n;
    PSum total;
    for (const auto& v : f.cells) total = total + v;
    total = f.grid.cell_measure() * total;
    if (f.tail_c == 0) return total;
    if (f.tail_e + n >= 0)
        throw DivergenceError("tp_integrate_global: sphere series diverges");
    PExact theta(Rational(1), f.tail_e + n, p);
    PSum series = psum_geometric_tail(theta, f.grid.gamma_struct + 1, p);
    Rational scale = f.tail_c * (1 - pow_int(Rational(p), -n));
    return total + scale * series;
}

}  // namespace padic
