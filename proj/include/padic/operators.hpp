#pragma once

#include "padic/lcfun.hpp"
#include "padic/norms.hpp"
#include "padic/pexact.hpp"
#include "padic/tailprofile.hpp"

#include <vector>

namespace padic {

// Fractional order 0 <= alpha < n.
struct Alpha {
    Rational value;

    Alpha() : value(0) {}
    Alpha(Rational v, const FieldParams& fp) : value(std::move(v)) {
        if (value < 0 || value >= fp.n)
            throw ParameterError("alpha must lie in [0, n)");
    }
};

namespace detail {

// gamma* = max(gamma_struct, |x| level): the level from which B_gamma(x)
// contains the structure ball (and hence the whole support).
inline int enclosing_level(const PAdicPoint& x, const CellGrid& grid) {
    auto k = x.abs_level();
    return std::max(grid.gamma_struct, k ? *k : grid.gamma_struct);
}

}  // namespace detail

// sup over gamma of p^(gamma(alpha-n)) * Int_{B_gamma(x)} g for a
// nonnegative LC g.  The enumeration runs over gamma in [gamma_res, gamma*]:
// below gamma_res the integrand is constant on B_gamma(x) so those
// candidates are dominated by the gamma_res one (alpha >= 0); above gamma*
// the integral is frozen at its global value and the prefactor strictly
// decays (alpha < n).  With a nonzero constant tail (alpha = 0 only) the
// far-ball means converge monotonically to |c_inf|, so that single extra
// candidate completes the supremum.
inline PExact sup_scaled_means(const LCFunction& g, const Rational& alpha, const PAdicPoint& x) {
    const auto& fp = g.params();
    const long n = fp.n;
    if (g.c_inf != 0 && alpha != 0)
        throw DivergenceError("maximal function diverges: alpha > 0 with a nonzero tail value");
    const int g_star = detail::enclosing_level(x, g.grid);
    PExact best;  // zero
    for (int gamma = g.grid.gamma_res; gamma <= g_star; ++gamma) {
        Rational t = integrate(g, ball_of_point(x, gamma));
        PExact cand(t, (alpha - n) * gamma, fp.p);
        if (pexact_compare(cand, best, fp.p) > 0) best = cand;
    }
    if (g.c_inf != 0) {
        PExact cand(g.c_inf);
        if (pexact_compare(cand, best, fp.p) > 0) best = cand;
    }
    return best;
}

// M_alpha^p(f)(x): exact value as coeff * p^t.
inline PExact frac_maximal_at_exact(const LCFunction& f, const Alpha& alpha, const PAdicPoint& x) {
    return sup_scaled_means(lc_abs(f), alpha.value, x);
}

inline Interval frac_maximal_at(const LCFunction& f, const Alpha& alpha, const PAdicPoint& x,
                                unsigned prec = 60) {
    return to_interval(frac_maximal_at_exact(f, alpha, x), f.params().p, prec);
}

// M_alpha^p(f) on all of Q_p^n.  The output is constant on the input cells
// (ball nesting: for gamma >= gamma_res the ball around any point of a cell
// depends only on the cell, and below gamma_res the candidates are dominated
// cellwise), so it lives on the input grid; on the far sphere S_k the value
// is integral * p^(k(alpha-n)).
inline TailProfile frac_maximal_field(const LCFunction& f, const Alpha& alpha) {
    if (f.c_inf != 0)
        throw DivergenceError("frac_maximal_field requires compact support (c_inf = 0)");
    const auto& fp = f.params();
    const long n = fp.n;
    const LCFunction g = lc_abs(f);
    const size_t cells = g.cells.size();
    const size_t branch = g.grid.enumerator().branch();
    const int m = g.grid.gamma_struct - g.grid.gamma_res;
    // value sums per level: sums[s][i] = sum of g over the i-th level
    // (gamma_res+s) ball, in units of cell values
    std::vector<std::vector<Rational>> sums(static_cast<size_t>(m) + 1);
    sums[0] = g.cells;
    for (int s = 1; s <= m; ++s) {
        const auto& prev = sums[static_cast<size_t>(s - 1)];
        auto& cur = sums[static_cast<size_t>(s)];
        cur.assign(prev.size() / branch, Rational(0));
        for (size_t i = 0; i < prev.size(); ++i) cur[i / branch] += prev[i];
    }
    const Rational cm = g.grid.cell_measure();
    std::vector<PSum> out(cells);
    for (size_t i = 0; i < cells; ++i) {
        PExact best;
        size_t idx = i;
        for (int s = 0; s <= m; ++s) {
            const int gamma = g.grid.gamma_res + s;
            PExact cand(sums[static_cast<size_t>(s)][idx] * cm, (alpha.value - n) * gamma, fp.p);
            if (pexact_compare(cand, best, fp.p) > 0) best = cand;
            idx /= branch;
        }
        out[i] = PSum(best, fp.p);
    }
    Rational total = sums[static_cast<size_t>(m)][0] * cm;
    return TailProfile(g.grid, std::move(out), total, alpha.value - n);
}

// M_{alpha,B*}^p(b)(y): sup over the chain B_gamma(y) inside B*.
inline PExact restricted_frac_maximal_exact(const LCFunction& b, const Alpha& alpha,
                                            const BallAddress& Bstar, const PAdicPoint& y) {
    if (!point_in_ball(y, Bstar))
        throw DomainError("restricted maximal function: point outside the reference ball");
    const auto& fp = b.params();
    const long n = fp.n;
    const LCFunction g = lc_abs(b);
    PExact best;
    int lo = std::min(g.grid.gamma_res, Bstar.level);
    for (int gamma = lo; gamma <= Bstar.level; ++gamma) {
        Rational t = integrate(g, ball_of_point(y, gamma));
        PExact cand(t, (alpha.value - n) * gamma, fp.p);
        if (pexact_compare(cand, best, fp.p) > 0) best = cand;
    }
    return best;
}

inline Interval restricted_frac_maximal(const LCFunction& b, const Alpha& alpha,
                                        const BallAddress& Bstar, const PAdicPoint& y,
                                        unsigned prec = 60) {
    return to_interval(restricted_frac_maximal_exact(b, alpha, Bstar, y), b.params().p, prec);
}

// M_{alpha,b}^p(f)(x) = sup p^(gamma(alpha-n)) Int |b(x)-b(y)| |f(y)| dy.
inline PExact maximal_commutator_exact(const LCFunction& b, const LCFunction& f,
                                       const Alpha& alpha, const PAdicPoint& x) {
    if (f.c_inf != 0)
        throw DivergenceError("maximal commutator requires compactly supported f");
    Rational bx = b.value_at(x);
    LCFunction g = pointwise_combine(lc_abs(lc_shift(b, bx)), lc_abs(f), CombineOp::mul);
    return sup_scaled_means(g, alpha.value, x);
}

inline Interval maximal_commutator(const LCFunction& b, const LCFunction& f, const Alpha& alpha,
                                   const PAdicPoint& x, unsigned prec = 60) {
    return to_interval(maximal_commutator_exact(b, f, alpha, x), b.params().p, prec);
}

// [b, M_alpha^p](f)(x) = b(x) M_alpha^p(f)(x) - M_alpha^p(bf)(x); signed.
inline PSum nonlinear_commutator_exact(const LCFunction& b, const LCFunction& f,
                                       const Alpha& alpha, const PAdicPoint& x) {
    LCFunction bf = pointwise_combine(b, f, CombineOp::mul);
    if (bf.c_inf != 0)
        throw DivergenceError("nonlinear commutator requires compactly supported b*f");
    const auto p = b.params().p;
    PExact mf = frac_maximal_at_exact(f, alpha, x);
    PExact mbf = frac_maximal_at_exact(bf, alpha, x);
    PSum out(pexact_mul(PExact(b.value_at(x)), mf, p), p);
    out.add_term(mbf.t, -mbf.c);
    return out;
}

inline Interval nonlinear_commutator(const LCFunction& b, const LCFunction& f, const Alpha& alpha,
                                     const PAdicPoint& x, unsigned prec = 60) {
    return to_interval(nonlinear_commutator_exact(b, f, alpha, x), b.params().p, prec);
}

// M_eps^p(f)(x) = [M^p(|f|^eps)(x)]^(1/eps).  |f|^eps is bracketed cellwise
// by rational functions; the maximal operator is monotone, so evaluating it
// on the two brackets brackets the true value.
inline Interval power_maximal(const LCFunction& f, const Rational& eps, const PAdicPoint& x,
                              unsigned prec = 60) {
    if (eps <= 0) throw ParameterError("power_maximal: eps must be positive");
    const auto& fp = f.params();
    LCFunction g = lc_abs(f);
    LCFunction lo = g, hi = g;
    for (size_t i = 0; i <= g.cells.size(); ++i) {
        Rational& vl = (i < g.cells.size()) ? lo.cells[i] : lo.c_inf;
        Rational& vh = (i < g.cells.size()) ? hi.cells[i] : hi.c_inf;
        Interval pw = pow_q(Interval(vl), eps, prec + 8);
        vl = pw.lo;
        vh = pw.hi;
    }
    PExact mlo = sup_scaled_means(lo, Rational(0), x);
    PExact mhi = sup_scaled_means(hi, Rational(0), x);
    Interval lo_iv = to_interval(mlo, fp.p, prec + 8);
    Interval hi_iv = to_interval(mhi, fp.p, prec + 8);
    Interval mo{lo_iv.lo, hi_iv.hi};
    return pow_q(mo, Rational(1) / eps, prec);
}

// M_{alpha,L(log L)}^p(f)(x) = sup |B_gamma(x)|^(alpha/n) ||f||_{L(log L), B_gamma(x)}.
// Truncation: once the ball swallows the support, the Luxemburg average
// admits the certified upper bound nu_g = I p^(-gn) (1 + L_g) with
// L_g = log^+(W p^(gn) / I), W = max|f|, I = Int|f| (the modular at nu_g is
// at most 1).  The tail envelope h(g) = p^(g alpha) nu_g then dominates all
// later candidates as soon as 1 + L_g >= n/(n - alpha), since
// s -> p^(s(alpha-n)) (A + s n log p) is decreasing once A >= n/(n-alpha).
inline Interval llogl_maximal(const LCFunction& f, const Alpha& alpha, const PAdicPoint& x,
                              const Precision& px = {}) {
    if (f.c_inf != 0)
        throw DivergenceError("llogl maximal requires compact support (c_inf = 0)");
    const auto& fp = f.params();
    const long n = fp.n;
    const unsigned prec = px.root_bits;
    const LCFunction g = lc_abs(f);
    const Rational W = g.max_abs();
    if (W == 0) return Interval(Rational(0));
    const Rational I = integrate_global(g);
    const int g_star = detail::enclosing_level(x, g.grid);
    Interval best(Rational(0));
    for (int gamma = g.grid.gamma_res; gamma <= g_star; ++gamma) {
        auto B = ball_of_point(x, gamma);
        Interval avg = orlicz_average(g, B, YoungKind::LlogL, px);
        Interval cand = pow_p(fp.p, alpha.value * gamma, prec) * avg;
        best = interval_max(best, cand);
    }
    const Rational a_gap = Rational(n) / (Rational(n) - alpha.value);  // n/(n-alpha)
    int gamma = g_star;
    while (true) {
        ++gamma;
        // L_g = log^+(W p^(gn) / I) as an interval
        Interval arg = Interval(W / I) * pow_p(fp.p, Rational(n) * gamma, prec + 8);
        Interval L = log_plus(arg, prec + 8);
        Interval nu = Interval(I) * pow_p(fp.p, Rational(-n) * gamma, prec + 8) *
                      (Interval(Rational(1)) + L);
        Interval h = pow_p(fp.p, alpha.value * gamma, prec) * nu;
        bool monotone = (Interval(Rational(1)) + L).lo >= a_gap;
        if (monotone && h.hi <= best.lo) break;
        best = interval_max(best, Interval{Rational(0), h.hi});
        if (gamma > g_star + 4096)
            throw std::logic_error("llogl_maximal: tail certification failed to converge");
    }
    return best;
}

// sup over gamma of p^(gamma*(alpha-n)) * Int_{B_gamma(x)} f for a
// nonnegative TailProfile f; powers the composed operators M(M_alpha f),
// M_alpha(M f).  Requires a summable candidate family: alpha + tail_e < 0,
// or a constant tail with alpha = 0, or no tail.
inline PSum tp_sup_scaled_means(const TailProfile& f, const Rational& alpha, const PAdicPoint& x) {
    const auto& fp = f.params();
    const auto p = fp.p;
    const long n = fp.n;
    const int top = f.grid.gamma_struct;
    if (f.has_tail() && !f.tail_is_constant() && alpha + f.tail_e >= 0)
        throw DivergenceError("tp maximal: candidates do not decay (alpha + e >= 0)");
    if (f.has_tail() && f.tail_is_constant() && alpha != 0)
        throw DivergenceError("tp maximal: alpha > 0 with a nonzero constant tail");
    const int g_star = detail::enclosing_level(x, f.grid);
    PSum best;
    auto consider = [&](const PSum& cand) {
        if (psum_compare(cand, best, p) > 0) best = cand;
    };
    for (int gamma = f.grid.gamma_res; gamma <= g_star; ++gamma) {
        PSum t = tp_integrate(f, ball_of_point(x, gamma));
        consider(psum_mul(t, PExact(Rational(1), (alpha - n) * gamma, p), p));
    }
    if (!f.has_tail()) return best;
    if (f.tail_is_constant()) {
        consider(PSum(rat_abs(f.tail_c)));  // limit of far-ball means
        return best;
    }
    // beyond gamma*: candidates p^(gamma(alpha-n)) * T(gamma), where T grows
    // by one sphere mass per level; stop once a certified envelope for the
    // remaining supremum drops below the current best
    const Rational s = f.tail_e + n;  // sphere-mass exponent
    const Rational side = rat_abs(f.tail_c) * (1 - pow_int(Rational(p), -n));
    PSum T = tp_integrate(f, BallAddress::centered_at_zero(fp, std::max(g_star, top)));
    // T is the integral over B_max(g*,top); for gamma beyond that each level
    // adds side * p^(gamma*s)
    int gamma = std::max(g_star, top);
    std::optional<PSum> t_inf;
    if (s < 0) {
        PSum series = psum_geometric_tail(PExact(Rational(1), s, p), gamma + 1, p);
        t_inf = T + side * series;
    }
    Rational ratio_up;  // upper rational bound of p^s/(p^s - 1) when s > 0
    if (s > 0) {
        Interval th = pow_p(p, s, 80);
        ratio_up = (th.hi / (th.lo - 1));
    }
    while (true) {
        ++gamma;
        PExact sphere_mass(side, f.tail_e * gamma + n * gamma, p);
        T.add_term(sphere_mass.t, sphere_mass.c);
        PSum cand = psum_mul(T, PExact(Rational(1), (alpha - n) * gamma, p), p);
        consider(cand);
        // envelope valid for every gamma' > gamma
        PSum env;
        if (s < 0) {
            env = psum_mul(*t_inf, PExact(Rational(1), (alpha - n) * (gamma + 1), p), p);
        } else if (s > 0) {
            PSum core = psum_mul(T, PExact(Rational(1), (alpha - n) * (gamma + 1), p), p);
            PExact growth(side * ratio_up, (alpha + f.tail_e) * (gamma + 1), p);
            env = core + PSum(growth, p);
        } else {
            // T(gamma') = T(gamma) + side*(gamma'-gamma): the envelope at
            // gamma+1 decays from there iff p^(n-alpha) bounds the additive
            // growth ratio; both are exact comparisons
            PSum next = T;
            next.add_term(Rational(0), side);
            PSum grown = next;
            grown.add_term(Rational(0), side);
            PExact shrink(Rational(1), n - alpha, p);
            bool decreasing =
                psum_compare(psum_mul(PSum(shrink, p), next, p), grown, p) >= 0;
            if (!decreasing) continue;
            env = psum_mul(next, PExact(Rational(1), (alpha - n) * (gamma + 1), p), p);
        }
        if (psum_compare(env, best, p) <= 0) return best;
    }
}

}  // namespace padic
