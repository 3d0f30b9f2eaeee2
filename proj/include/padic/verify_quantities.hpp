#pragma once

// Theorem-quantity evaluators and the space-norm checks.  Included from
// verify.hpp; relies on ProbeConfig / CheckRecord defined there.

namespace padic {

namespace detail {

// Lower bound for the Luxemburg norm of chi_{B_gamma(0)}: the modular of
// chi_B/eta is at least |B| eta^(-q_+) for eta >= 1 and |B| eta^(-q_-) for
// eta <= 1, so the norm is at least p^(gamma n / q_+) (gamma >= 0) resp.
// p^(gamma n / q_-) (gamma < 0).
inline Rational luxvar_char_lower(const ExponentFunction& qf, int gamma, unsigned prec) {
    const Rational n(qf.params().n);
    Rational qq = gamma >= 0 ? qf.q_plus() : qf.q_minus();
    return pow_p(qf.params().p, Rational(gamma) * n / qq, prec).lo;
}

struct QuantityResult {
    Interval value;
    std::optional<BallAddress> witness;
    std::optional<Rational> pre_power_exact;  // constant integer exponent only
    bool cross_check_ok = true;
};

}  // namespace detail

// sup over balls of ||(b - b_B) chi_B||_X / ||chi_B||_X, where X is L^q
// (constant exponent) or L^{q(.)}.  Enumeration: grid balls plus the
// concentric chain, whose ratio is certified below
//   (K0 + |D| p^(-gamma n)) ||chi_{B_G}|| / ||chi_{B_gamma}|| + |D| p^(-gamma n),
// a decreasing envelope (K0 = max |b - c_inf|, D the excess mass of b).
inline detail::QuantityResult theorem_quantity_maximal(const LCFunction& b, const Rational& q,
                                                       const Precision& px) {
    const auto& fp = b.params();
    const auto& g = b.grid;
    const long n = fp.n;
    const bool exact = den(q) == 1;
    detail::QuantityResult out;
    out.value = Interval(Rational(0));
    Interval best(Rational(0));
    std::optional<BallAddress> witness;
    std::optional<Rational> best_exact;
    if (exact) best_exact = Rational(0);
    auto consider = [&](const Interval& pre, const BallAddress& B) {
        // pre = (1/|B|) Int_B |b - b_B|^q
        if (!witness || pre.hi > best.hi) {
            best = (!witness || pre.lo >= best.lo) ? pre : Interval{best.lo, pre.hi};
            witness = B;
            if (exact) best_exact = pre.lo;
        } else if (pre.lo > best.lo) {
            best = Interval{pre.lo, best.hi};
            if (exact) best_exact = pre.lo;
        }
    };
    for (int lvl = g.gamma_res; lvl <= g.gamma_struct; ++lvl) {
        BallEnumerator balls(fp, g.gamma_struct, lvl);
        for (size_t i = 0; i < balls.count(); ++i) {
            auto B = balls.address(i);
            Rational mean = ball_mean(b, B);
            Interval pre = (Rational(1) / ball_measure(B)) *
                           power_integral_on_ball(lc_shift(b, mean), q, B, px.root_bits);
            consider(pre, B);
        }
    }
    // concentric chain with the bmo_q-style certified decay
    Rational total = integrate(b, g.structure_ball());
    Rational D = total - b.c_inf * ball_measure_at(fp, g.gamma_struct);
    Interval dev_q(Rational(0));
    for (const auto& v : b.cells)
        dev_q = dev_q + g.cell_measure() * detail::abs_pow(Interval(v - b.c_inf), q, px.root_bits);
    Interval two_q = detail::abs_pow(Interval(Rational(2)), q, px.root_bits);
    Interval Dq = detail::abs_pow(Interval(D), q, px.root_bits);
    const Rational struct_measure = ball_measure_at(fp, g.gamma_struct);
    int gamma = g.gamma_struct;
    while (true) {
        ++gamma;
        Interval bound =
            pow_int(Rational(fp.p), -n * gamma) * (two_q * dev_q) +
            pow_int(Rational(fp.p), -n * gamma) *
                pow_q(pow_int(Rational(fp.p), -n * gamma), q, px.root_bits) *
                (two_q * (struct_measure * Dq)) +
            pow_q(pow_int(Rational(fp.p), -n * gamma), q, px.root_bits) * Dq;
        if (bound.hi <= best.lo || bound.hi == 0) break;
        auto B = BallAddress::centered_at_zero(fp, gamma);
        Rational mean = ball_mean(b, B);
        Interval pre = (Rational(1) / ball_measure(B)) *
                       power_integral_on_ball(lc_shift(b, mean), q, B, px.root_bits);
        consider(pre, B);
    }
    out.value = pow_q(best, Rational(1) / q, px.root_bits);
    out.witness = witness;
    out.pre_power_exact = best_exact;
    return out;
}

// Variable-exponent version: the ratio of Luxemburg norms per ball.
inline detail::QuantityResult theorem_quantity_maximal_var(const LCFunction& b,
                                                           const ExponentFunction& qf,
                                                           const Precision& px) {
    if (b.params() != qf.params())
        throw ParameterError("theorem quantity: mismatched field parameters");
    // common grid keeps every sphere beyond it constant for both b and q
    int gr = std::min(b.grid.gamma_res, qf.shape.grid.gamma_res);
    int gs = std::max(b.grid.gamma_struct, qf.shape.grid.gamma_struct);
    LCFunction bb = refine(b, gr, gs);
    LCFunction qs = refine(qf.shape, gr, gs);
    const auto& fp = b.params();
    const long n = fp.n;
    const Rational cm = bb.grid.cell_measure();
    detail::QuantityResult out;
    Interval best(Rational(0));
    std::optional<BallAddress> witness;
    auto consider = [&](const Interval& ratio, const BallAddress& B) {
        if (!witness || ratio.hi > best.hi) {
            best = (!witness || ratio.lo >= best.lo) ? ratio : Interval{best.lo, ratio.hi};
            witness = B;
        } else if (ratio.lo > best.lo) {
            best = Interval{ratio.lo, best.hi};
        }
    };
    BallEnumerator cells(fp, gs, gr);
    auto cell_range = [&](const BallAddress& B) {
        BallEnumerator at_level(fp, gs, B.level);
        size_t stride = 1;
        for (int t = 0; t < B.level - gr; ++t) stride *= at_level.branch();
        return std::pair{at_level.index_of(B) * stride, stride};
    };
    auto ratio_on_grid_ball = [&](const BallAddress& B) {
        Rational mean = ball_mean(bb, B);
        auto [start, stride] = cell_range(B);
        std::vector<detail::VPiece> num, den;
        for (size_t j = 0; j < stride; ++j) {
            num.push_back({Interval(rat_abs(bb.cells[start + j] - mean)), true,
                           qs.cells[start + j], cm});
            den.push_back({Interval(Rational(1)), true, qs.cells[start + j], cm});
        }
        Interval nn = detail::luxvar_pieces(num, nullptr, px);
        Interval dd = detail::luxvar_pieces(den, nullptr, px);
        return nn / dd;
    };
    for (int lvl = gr; lvl <= gs; ++lvl) {
        BallEnumerator balls(fp, gs, lvl);
        for (size_t i = 0; i < balls.count(); ++i) {
            auto B = balls.address(i);
            consider(ratio_on_grid_ball(B), B);
        }
    }
    // concentric chain
    Rational total = integrate(bb, bb.grid.structure_ball());
    Rational D = total - bb.c_inf * ball_measure_at(fp, gs);
    Rational K0(0);
    for (const auto& v : bb.cells) K0 = std::max(K0, rat_abs(v - bb.c_inf));
    std::vector<detail::VPiece> char_core;
    for (size_t j = 0; j < bb.cells.size(); ++j)
        char_core.push_back({Interval(Rational(1)), true, qs.cells[j], cm});
    Interval char_struct = detail::luxvar_pieces(char_core, nullptr, px);
    int gamma = gs;
    while (true) {
        ++gamma;
        Rational shrink = pow_int(Rational(fp.p), -n * gamma);
        Rational bound_num = (K0 + rat_abs(D) * shrink);
        Rational lower = detail::luxvar_char_lower(qf, gamma, px.root_bits);
        Rational bound = bound_num * char_struct.hi / lower + rat_abs(D) * shrink;
        if (bound <= best.lo || (K0 == 0 && D == 0)) break;
        auto B = BallAddress::centered_at_zero(fp, gamma);
        Rational mean = ball_mean(bb, B);
        Rational ring = ball_measure(B) - ball_measure_at(fp, gs);
        std::vector<detail::VPiece> num = {
            {Interval(rat_abs(bb.c_inf - mean)), true, qf.q_inf(), ring}};
        std::vector<detail::VPiece> den = {{Interval(Rational(1)), true, qf.q_inf(), ring}};
        for (size_t j = 0; j < bb.cells.size(); ++j) {
            num.push_back({Interval(rat_abs(bb.cells[j] - mean)), true, qs.cells[j], cm});
            den.push_back({Interval(Rational(1)), true, qs.cells[j], cm});
        }
        Interval nn = detail::luxvar_pieces(num, nullptr, px);
        Interval dd = detail::luxvar_pieces(den, nullptr, px);
        consider(nn / dd, B);
        if (gamma > gs + 64)
            throw std::logic_error("theorem_quantity_maximal_var: truncation failed");
    }
    out.value = best;
    out.witness = witness;
    return out;
}

namespace detail {

// Sphere value of p^(-gamma a) M_{a, B_gamma(0)}(b)(y) for y in S_k,
// G < k <= gamma, for compactly supported b: the only contributing balls are
// the concentric ones, so the scaled value is p^(-gamma a) p^(k(a-n)) I.
inline PExact nonlinear_sphere_value(const Rational& alpha, long n, int gamma, int k,
                                     const Rational& I, std::uint32_t p) {
    return PExact(I, -alpha * gamma + (alpha - Rational(n)) * k, p);
}

}  // namespace detail

// sup over balls of ||(b - |B|^(-a/n) M_{a,B} b) chi_B||_X / ||chi_B||_X with
// the cell-level cross-check against |B|^(-a/n) [b, M_a](chi_B).  Requires a
// compactly supported symbol (c_inf = 0), which the generators provide; see
// the certified envelopes in the implementation notes.
inline detail::QuantityResult theorem_quantity_nonlinear(const LCFunction& b,
                                                         const Rational& alpha, const Rational& q,
                                                         const ExponentFunction* qf,
                                                         const Precision& px) {
    if (b.c_inf != 0)
        throw ParameterError("theorem_quantity_nonlinear requires a compactly supported symbol");
    const auto& fp = b.params();
    const auto p = fp.p;
    const long n = fp.n;
    Alpha av(alpha, fp);
    LCFunction bb = b;
    LCFunction qshape = qf ? qf->shape : LCFunction::constant(fp, q);
    {
        int gr = std::min(bb.grid.gamma_res, qshape.grid.gamma_res);
        int gs = std::max(bb.grid.gamma_struct, qshape.grid.gamma_struct);
        bb = refine(bb, gr, gs);
        qshape = refine(qshape, gr, gs);
    }
    const auto& g = bb.grid;
    const Rational cm = g.cell_measure();
    const Rational I = integrate_global(lc_abs(bb));
    Rational maxb = bb.max_abs();
    detail::QuantityResult out;
    Interval best(Rational(0));
    std::optional<BallAddress> witness;
    auto consider = [&](const Interval& ratio, const BallAddress& B) {
        if (!witness || ratio.hi > best.hi) {
            best = (!witness || ratio.lo >= best.lo) ? ratio : Interval{best.lo, ratio.hi};
            witness = B;
        } else if (ratio.lo > best.lo) {
            best = Interval{ratio.lo, best.hi};
        }
    };
    BallEnumerator cells(fp, g.gamma_struct, g.gamma_res);
    auto cell_range = [&](const BallAddress& B) {
        BallEnumerator at_level(fp, g.gamma_struct, B.level);
        size_t stride = 1;
        for (int t = 0; t < B.level - g.gamma_res; ++t) stride *= at_level.branch();
        return std::pair{at_level.index_of(B) * stride, stride};
    };

    // h cells on a ball (grid or concentric): PSum values per cell in B
    auto h_cells = [&](const BallAddress& B) {
        std::vector<PSum> hs;
        auto [start, stride] = cell_range(B.level <= g.gamma_struct ? B : g.structure_ball());
        PExact scale(Rational(1), -alpha * B.level, p);
        for (size_t j = 0; j < stride; ++j) {
            size_t idx = start + j;
            auto y = cells.address(idx).center();
            PSum h(bb.cells[idx]);
            PExact rm = restricted_frac_maximal_exact(bb, av, B, y);
            PExact scaled = pexact_mul(scale, rm, p);
            h.add_term(scaled.t, -scaled.c);
            hs.push_back(std::move(h));
        }
        return std::pair{hs, start};
    };

    auto cross_check = [&](const BallAddress& B, const std::vector<PSum>& hs, size_t start) {
        // identity against the commutator route at every covered cell
        auto chiB = char_fn(B);
        PExact scale(Rational(1), -alpha * B.level, p);
        for (size_t j = 0; j < hs.size(); ++j) {
            auto y = cells.address(start + j).center();
            PSum rhs = psum_mul(nonlinear_commutator_exact(bb, chiB, av, y), scale, p);
            if (!(hs[j] == rhs)) return false;
        }
        return true;
    };

    for (int lvl = g.gamma_res; lvl <= g.gamma_struct; ++lvl) {
        BallEnumerator balls(fp, g.gamma_struct, lvl);
        for (size_t i = 0; i < balls.count(); ++i) {
            auto B = balls.address(i);
            auto [hs, start] = h_cells(B);
            if (!cross_check(B, hs, start)) {
                out.cross_check_ok = false;
                out.witness = B;
                return out;
            }
            Interval ratio;
            if (!qf) {
                Interval acc(Rational(0));
                for (const auto& h : hs)
                    acc = acc + cm * detail::abs_pow(h, q, p, px.root_bits);
                Interval nn = pow_q(acc, Rational(1) / q, px.root_bits);
                Interval dd = pow_p(p, Rational(n) * B.level / q, px.root_bits);
                ratio = nn / dd;
            } else {
                std::vector<detail::VPiece> num, den;
                for (size_t j = 0; j < hs.size(); ++j) {
                    num.push_back({interval_abs(to_interval(hs[j], p, px.root_bits + 16)),
                                   hs[j].is_rational(), qshape.cells[start + j], cm});
                    den.push_back({Interval(Rational(1)), true, qshape.cells[start + j], cm});
                }
                Interval nn = detail::luxvar_pieces(num, nullptr, px);
                Interval dd = detail::luxvar_pieces(den, nullptr, px);
                ratio = nn / dd;
            }
            consider(ratio, B);
        }
    }

    // concentric chain: cells plus one piece per ring sphere, with the
    // certified envelope K p^(Gn/q) p^(-gamma n/q) + p^(-gamma alpha) C
    Interval Cser(Rational(0));
    {
        Rational s = (alpha - n) * q + n;  // sphere-series exponent, < 0 here
        if (s >= 0) throw ParameterError("theorem_quantity_nonlinear: series exponent must be negative");
        Interval iq = detail::abs_pow(Interval(I), q, px.root_bits);
        Interval ratio_iv = pow_p(p, s, px.root_bits + 8);
        Interval first = pow_p(p, s * (g.gamma_struct + 1), px.root_bits + 8);
        Cser = (1 - pow_int(Rational(p), -n)) * (iq * (first / (Interval(Rational(1)) - ratio_iv)));
    }
    const Rational K = 2 * maxb;
    int gamma = g.gamma_struct;
    while (true) {
        ++gamma;
        Interval bound;
        if (!qf) {
            Interval t1 = Interval(K) * pow_p(p, Rational(n) * g.gamma_struct / q, px.root_bits);
            Interval t2 = pow_p(p, -alpha * gamma, px.root_bits) *
                          pow_q(Cser, Rational(1) / q, px.root_bits);
            bound = (t1 + t2) * pow_p(p, -Rational(n) * gamma / q, px.root_bits);
        } else {
            std::vector<detail::VPiece> chi_core;
            for (size_t j = 0; j < bb.cells.size(); ++j)
                chi_core.push_back({Interval(Rational(1)), true, qshape.cells[j], cm});
            Interval char_struct = detail::luxvar_pieces(chi_core, nullptr, px);
            Rational lower = detail::luxvar_char_lower(*qf, gamma, px.root_bits);
            Interval ringmax = pow_p(p, -alpha * gamma + (alpha - n) * (g.gamma_struct + 1),
                                     px.root_bits) * Interval(I);
            bound = Interval(K) * char_struct * Interval(Rational(1) / lower) + ringmax;
        }
        if (bound.hi <= best.lo || maxb == 0) break;
        auto B = BallAddress::centered_at_zero(fp, gamma);
        auto [hs, start] = h_cells(B);
        if (!cross_check(B, hs, start)) {
            out.cross_check_ok = false;
            out.witness = B;
            return out;
        }
        // sphere representatives: verify the closed-form value against the
        // commutator route once per ring sphere
        PExact scale(Rational(1), -alpha * gamma, p);
        auto chiB = char_fn(B);
        for (int k = g.gamma_struct + 1; k <= gamma; ++k) {
            std::vector<PAdicCoord> cs(fp.n);
            cs[0] = PAdicCoord{-k, {1}};
            PAdicPoint y(fp, std::move(cs));
            PExact hval = detail::nonlinear_sphere_value(alpha, n, gamma, k, I, p);
            PSum lhs;
            lhs.add_term(hval.t, -hval.c);  // b(y) = 0 - scaled maximal
            PSum rhs = psum_mul(nonlinear_commutator_exact(bb, chiB, av, y), scale, p);
            if (!(lhs == rhs)) {
                out.cross_check_ok = false;
                out.witness = B;
                return out;
            }
        }
        Interval ratio;
        if (!qf) {
            Interval acc(Rational(0));
            for (const auto& h : hs) acc = acc + cm * detail::abs_pow(h, q, p, px.root_bits);
            for (int k = g.gamma_struct + 1; k <= gamma; ++k) {
                PExact hv = detail::nonlinear_sphere_value(alpha, n, gamma, k, I, p);
                acc = acc + sphere_measure_at(fp, k) *
                                detail::abs_pow(PSum(hv, p), q, p, px.root_bits);
            }
            Interval nn = pow_q(acc, Rational(1) / q, px.root_bits);
            Interval dd = pow_p(p, Rational(n) * gamma / q, px.root_bits);
            ratio = nn / dd;
        } else {
            std::vector<detail::VPiece> num, den;
            for (size_t j = 0; j < hs.size(); ++j) {
                num.push_back({interval_abs(to_interval(hs[j], p, px.root_bits + 16)),
                               hs[j].is_rational(), qshape.cells[j], cm});
                den.push_back({Interval(Rational(1)), true, qshape.cells[j], cm});
            }
            for (int k = g.gamma_struct + 1; k <= gamma; ++k) {
                PExact hv = detail::nonlinear_sphere_value(alpha, n, gamma, k, I, p);
                num.push_back({interval_abs(to_interval(hv, p, px.root_bits + 8)), false,
                               qf->q_inf(), sphere_measure_at(fp, k)});
                den.push_back({Interval(Rational(1)), true, qf->q_inf(), sphere_measure_at(fp, k)});
            }
            Interval nn = detail::luxvar_pieces(num, nullptr, px);
            Interval dd = detail::luxvar_pieces(den, nullptr, px);
            ratio = nn / dd;
        }
        consider(ratio, B);
        if (gamma > g.gamma_struct + 64)
            throw std::logic_error("theorem_quantity_nonlinear: truncation failed");
    }
    out.value = best;
    out.witness = witness;
    return out;
}

// ---------------------------------------------------------------------------
// Checks built on the quantities above.
// ---------------------------------------------------------------------------

inline CheckRecord check_theorem_quantity_maximal(const ProbeConfig& cfg) {
    SplitMix64 rng(cfg.seed * 0x9E3779B97F4A7C15ull + 70);
    ProbeConfig small = cfg;
    small.family_size = std::min<size_t>(cfg.family_size, 8);
    auto fam = detail::make_family(small, rng, false, false);
    CheckRecord rec{"theorem-quantity-maximal",
                    "sup_B ||(b - b_B) chi_B|| / ||chi_B|| is finite and, at a constant integer "
                    "exponent, its pre-root supremum agrees exactly with the BMO_q route",
                    Verdict::pass, Json::object(), std::nullopt};
    Interval maxq(Rational(0));
    const Rational q = cfg.q();
    size_t instances = 0;
    for (size_t i = 0; i < fam.symbols.size(); ++i) {
        const auto& b = fam.symbols[i];
        ++instances;
        auto direct = theorem_quantity_maximal(b, q, cfg.prec);
        maxq = interval_max(maxq, direct.value);
        auto viaq = bmo_q_norm(b, q, cfg.prec.root_bits);
        if (den(q) == 1) {
            if (!direct.pre_power_exact || !viaq.pre_power_exact ||
                *direct.pre_power_exact != *viaq.pre_power_exact) {
                rec.verdict = Verdict::fail;
                rec.witness = Json{{"instance", i},
                                   {"lhs", rational_json(direct.pre_power_exact.value_or(Rational(-1)))},
                                   {"rhs", rational_json(viaq.pre_power_exact.value_or(Rational(-1)))},
                                   {"b", to_text(b)}};
                return rec;
            }
        } else if (!direct.value.overlaps(viaq.value)) {
            rec.verdict = Verdict::fail;
            rec.witness = Json{{"instance", i}, {"lhs", interval_json(direct.value)},
                               {"rhs", interval_json(viaq.value)}};
            return rec;
        }
        // constant symbol sanity: quantity vanishes
        if (b.is_constant() && direct.value.hi != 0) {
            rec.verdict = Verdict::fail;
            rec.witness = Json{{"instance", i}, {"note", "nonzero quantity for a constant symbol"}};
            return rec;
        }
    }
    // variable-exponent sample (the universal quantifier is untestable; one
    // configured exponent function is probed and recorded)
    if (!cfg.exponent_pairs.empty() && !fam.symbols.empty()) {
        const auto& [qi, qo] = cfg.exponent_pairs.front();
        ExponentFunction qf(LCFunction(CellGrid(cfg.fp, std::max(cfg.gamma_struct, 0), 0),
                                       std::vector<Rational>(
                                           CellGrid(cfg.fp, std::max(cfg.gamma_struct, 0), 0).cell_count(), qi),
                                       qo));
        auto var = theorem_quantity_maximal_var(fam.symbols.front(), qf, cfg.prec);
        rec.witness["variable_sample"] = interval_json(var.value);
        rec.witness["exponent_sample_note"] =
            "quantified over one sampled exponent pair; universal quantification over all "
            "admissible exponents is not finitely testable";
    }
    rec.witness["instances"] = instances;
    rec.constant = maxq;
    return rec;
}

inline CheckRecord check_theorem_quantity_nonlinear(const ProbeConfig& cfg) {
    SplitMix64 rng(cfg.seed * 0x9E3779B97F4A7C15ull + 80);
    ProbeConfig small = cfg;
    small.family_size = std::min<size_t>(cfg.family_size, 6);
    auto fam = detail::make_family(small, rng, true, true);  // nonneg, compact symbols
    CheckRecord rec{"theorem-quantity-nonlinear",
                    "sup_B ||(b - |B|^(-a/n) M_{a,B} b) chi_B|| / ||chi_B|| is finite and each "
                    "ball's cells agree exactly with the commutator route",
                    Verdict::pass, Json::object(), std::nullopt};
    Interval maxq(Rational(0));
    const Rational q = cfg.q();
    size_t instances = 0;
    for (size_t i = 0; i < fam.symbols.size(); ++i) {
        const auto& b = fam.symbols[i];
        ++instances;
        auto direct = theorem_quantity_nonlinear(b, cfg.alpha, q, nullptr, cfg.prec);
        if (!direct.cross_check_ok) {
            rec.verdict = Verdict::fail;
            rec.witness = Json{{"instance", i},
                               {"ball", direct.witness ? Json(to_string(*direct.witness)) : Json()},
                               {"note", "two evaluation routes disagree"},
                               {"b", to_text(b)}};
            return rec;
        }
        maxq = interval_max(maxq, direct.value);
        if (b.is_constant() && b.c_inf == b.cells[0]) {
            // constant compactly supported symbol means b == 0
            if (direct.value.hi != 0) {
                rec.verdict = Verdict::fail;
                rec.witness = Json{{"instance", i}, {"note", "nonzero quantity for zero symbol"}};
                return rec;
            }
        }
    }
    if (!cfg.exponent_pairs.empty() && !fam.symbols.empty()) {
        const auto& [qi, qo] = cfg.exponent_pairs.front();
        ExponentFunction qf(LCFunction(CellGrid(cfg.fp, std::max(cfg.gamma_struct, 0), 0),
                                       std::vector<Rational>(
                                           CellGrid(cfg.fp, std::max(cfg.gamma_struct, 0), 0).cell_count(), qi),
                                       qo));
        auto var = theorem_quantity_nonlinear(fam.symbols.front(), cfg.alpha, q, &qf, cfg.prec);
        if (!var.cross_check_ok) {
            rec.verdict = Verdict::fail;
            rec.witness = Json{{"note", "variable-exponent route identity mismatch"}};
            return rec;
        }
        rec.witness["variable_sample"] = interval_json(var.value);
        rec.witness["exponent_sample_note"] =
            "quantified over one sampled exponent pair; universal quantification over all "
            "admissible exponents is not finitely testable";
    }
    rec.witness["instances"] = instances;
    rec.constant = maxq;
    return rec;
}

// Lemma-style characteristic-norm facts: the constant-exponent identity is
// exact at the interval level, and the variable-exponent bounds report their
// empirical constants over an enumerated family of balls.
inline std::vector<CheckRecord> check_char_norms(const ProbeConfig& cfg) {
    std::vector<CheckRecord> out;
    const auto& fp = cfg.fp;
    const Rational n(fp.n);
    // enumerate balls: deepen below gamma_res until at least 100 inside, plus
    // the concentric chain and one ball inside each of two far spheres
    std::vector<BallAddress> balls;
    int depth = cfg.gamma_res;
    while (true) {
        balls.clear();
        for (int lvl = depth; lvl <= cfg.gamma_struct; ++lvl) {
            BallEnumerator e(fp, cfg.gamma_struct, lvl);
            for (size_t i = 0; i < e.count(); ++i) balls.push_back(e.address(i));
        }
        if (balls.size() >= 100 || depth <= cfg.gamma_res - 8) break;
        --depth;
    }
    for (int k = cfg.gamma_struct + 1; k <= cfg.gamma_struct + 2; ++k) {
        balls.push_back(BallAddress::centered_at_zero(fp, k));
        std::vector<PAdicCoord> cs(fp.n);
        cs[0] = PAdicCoord{-k, {1}};
        balls.push_back(ball_of_point(PAdicPoint(fp, std::move(cs)), k - 1));
    }

    CheckRecord ident{"char-norm-identity",
                      "||chi_B||_{L^q} = |B|^{1/q} exactly at the interval level", Verdict::pass,
                      Json::object(), std::nullopt};
    for (const auto& B : balls) {
        for (const Rational& q : {Rational(1), Rational(2), Rational(3, 2)}) {
            Interval lhs = lq_norm(char_fn(B), q, cfg.prec.root_bits);
            Interval rhs = pow_q(ball_measure(B), Rational(1) / q, cfg.prec.root_bits);
            if (!(lhs == rhs)) {
                ident.verdict = Verdict::fail;
                ident.witness = Json{{"ball", detail::ball_json(B)}, {"q", to_string(q)},
                                     {"lhs", interval_json(lhs)}, {"rhs", interval_json(rhs)}};
                break;
            }
        }
        if (ident.verdict != Verdict::pass) break;
    }
    if (ident.verdict == Verdict::pass) ident.witness = Json{{"balls", balls.size()}};
    out.push_back(std::move(ident));

    CheckRecord var{"char-norm-variable",
                    "variable-exponent characteristic bounds: ||chi_B|| <= C p^(n gamma / q(x,gamma)), "
                    "the conjugate product below C, and the fractional comparison; empirical "
                    "constants reported over the enumerated balls",
                    Verdict::pass, Json::object(), std::nullopt};
    Interval cmax(Rational(0));
    Json per_pair = Json::array();
    for (const auto& [qi, qo] : cfg.exponent_pairs) {
        ExponentFunction qf(LCFunction(CellGrid(fp, std::max(cfg.gamma_struct, 0), 0),
                                       std::vector<Rational>(
                                           CellGrid(fp, std::max(cfg.gamma_struct, 0), 0).cell_count(), qi),
                                       qo));
        auto qconj = conjugate_exponent(qf);
        Rational rplus = qf.q_plus();
        Rational alpha4 = n / (2 * rplus);
        auto q4shape = map_values(qf.shape, [&](const Rational& rv) {
            return n * rv / (n - alpha4 * rv);
        });
        ExponentFunction q4(q4shape);
        Interval c2(Rational(0)), c3(Rational(0)), c4(Rational(0));
        for (const auto& B : balls) {
            auto chi = char_fn(B);
            Interval nq = luxemburg_variable_norm(chi, qf, cfg.prec);
            Interval nqc = luxemburg_variable_norm(chi, qconj, cfg.prec);
            Interval n4 = luxemburg_variable_norm(chi, q4, cfg.prec);
            Rational qxg = qf.at_scale(B.center(), B.level);
            Interval denom2 = pow_p(fp.p, n * B.level / qxg, cfg.prec.root_bits);
            c2 = interval_max(c2, nq / denom2);
            c3 = interval_max(c3, (Rational(1) / ball_measure(B)) * (nq * nqc));
            Interval denom4 = pow_p(fp.p, alpha4 * B.level, cfg.prec.root_bits) * n4;
            c4 = interval_max(c4, nq / denom4);
        }
        per_pair.push_back(Json{{"pair", Json::array({to_string(qi), to_string(qo)})},
                                {"scale_bound_constant", interval_json(c2)},
                                {"conjugate_product_constant", interval_json(c3)},
                                {"fractional_constant", interval_json(c4)},
                                {"alpha_for_fractional", to_string(alpha4)}});
        cmax = interval_max(cmax, interval_max(c2, interval_max(c3, c4)));
    }
    var.witness = Json{{"balls", balls.size()}, {"per_pair", per_pair}};
    var.constant = cmax;
    out.push_back(std::move(var));
    return out;
}

// (1/|B|) Int |b - b_B| |f| <= C ||b||_BMO ||f||_{L log L, B}: the empirical
// constant over the family is reported.
inline CheckRecord check_holder_bmo_orlicz(const ProbeConfig& cfg) {
    SplitMix64 rng(cfg.seed * 0x9E3779B97F4A7C15ull + 90);
    ProbeConfig small = cfg;
    small.family_size = std::min<size_t>(cfg.family_size, 8);
    auto fam = detail::make_family(small, rng, false, false);
    CheckRecord rec{"holder-bmo-orlicz",
                    "oscillation pairing bounded by BMO times the L log L average; empirical "
                    "constant reported",
                    Verdict::pass, Json::object(), std::nullopt};
    Interval cmax(Rational(0));
    size_t instances = 0;
    for (size_t i = 0; i < fam.symbols.size(); ++i) {
        const auto& b = fam.symbols[i];
        const auto& f = fam.inputs[i];
        Rational bstar = bmo_norm_exact(b).value;
        if (bstar == 0) continue;
        for (int lvl = cfg.gamma_res; lvl <= cfg.gamma_struct; ++lvl) {
            BallEnumerator balls(cfg.fp, cfg.gamma_struct, lvl);
            for (size_t bi = 0; bi < balls.count(); ++bi) {
                auto B = balls.address(bi);
                Rational mean = ball_mean(b, B);
                auto prod = pointwise_combine(lc_abs(lc_shift(b, mean)), lc_abs(f), CombineOp::mul);
                Rational lhs = integrate(prod, B) / ball_measure(B);
                if (lhs == 0) continue;
                Interval avg = orlicz_average(f, B, YoungKind::LlogL, cfg.prec);
                Interval rhs = Interval(bstar) * avg;
                if (rhs.lo <= 0) continue;
                cmax = interval_max(cmax, Interval(lhs) / rhs);
                ++instances;
            }
        }
    }
    rec.constant = cmax;
    rec.witness = Json{{"instances", instances}};
    return rec;
}

// M_alpha(f)(x) <= M_{alpha, L log L}(f)(x) pointwise (unit constant).
inline CheckRecord check_llogl_domination(const ProbeConfig& cfg) {
    SplitMix64 rng(cfg.seed * 0x9E3779B97F4A7C15ull + 95);
    ProbeConfig small = cfg;
    small.family_size = std::min<size_t>(cfg.family_size, 8);
    auto fam = detail::make_family(small, rng, false, true);
    Alpha alpha(cfg.alpha, cfg.fp);
    CheckRecord rec{"llogl-domination",
                    "the fractional maximal function is dominated by its L log L variant "
                    "(unit constant); largest ratio reported",
                    Verdict::pass, Json::object(), std::nullopt};
    auto points = detail::grid_points(cfg.fp, cfg.gamma_struct, cfg.gamma_res);
    Interval cmax(Rational(0));
    size_t instances = 0, unknowns = 0;
    for (size_t i = 0; i < fam.inputs.size(); ++i) {
        const auto& f = fam.inputs[i];
        for (const auto& x : points) {
            ++instances;
            auto eval = [&](Precision px) {
                Interval lhs = to_interval(frac_maximal_at_exact(f, alpha, x), cfg.fp.p,
                                           px.root_bits);
                Interval rhs = llogl_maximal(f, alpha, x, px);
                return std::pair{lhs, rhs};
            };
            auto [lhs, rhs] = eval(cfg.prec);
            Verdict3 v = leq(lhs, rhs);
            if (v == Verdict3::unknown) {
                auto [l2, r2] = eval(cfg.prec.doubled());
                lhs = l2; rhs = r2;
                v = leq(lhs, rhs);
            }
            if (v == Verdict3::no) {
                rec.verdict = Verdict::fail;
                rec.witness = Json{{"instance", i}, {"point", to_string(x)},
                                   {"lhs", interval_json(lhs)}, {"rhs", interval_json(rhs)}};
                return rec;
            }
            if (v == Verdict3::unknown) ++unknowns;
            if (rhs.lo > 0) cmax = interval_max(cmax, lhs / rhs);
        }
    }
    if (unknowns) rec.verdict = Verdict::inconclusive;
    rec.constant = cmax;
    rec.witness = Json{{"instances", instances}, {"unseparated", unknowns}};
    return rec;
}

// Morrey-space probe: ratios ||[b,M_a]f|| / ||f|| and ||M_{a,b}f|| / ||f||
// between the configured Morrey spaces stay finite over the family, and the
// characteristic-function step ||chi_B||_{L^{r,lambda}} = |B|^((1-lambda/n)/r)
// holds with the supremum attained at B.
inline CheckRecord check_morrey_boundedness(const ProbeConfig& cfg) {
    const auto& fp = cfg.fp;
    SplitMix64 rng(cfg.seed * 0x9E3779B97F4A7C15ull + 85);
    ProbeConfig small = cfg;
    small.family_size = std::min<size_t>(cfg.family_size, 6);
    auto fam = detail::make_family(small, rng, false, false);
    Alpha alpha(cfg.alpha, fp);
    CheckRecord rec{"morrey-boundedness",
                    "commutator Morrey ratios finite across the family under both admissible "
                    "target-space parameterizations; characteristic norms attain "
                    "|B|^((1-lambda/n)/r) at B",
                    Verdict::pass, Json::object(), std::nullopt};
    MorreyParams src(cfg.r, cfg.lambda, fp);
    MorreyParams shift(cfg.q_shift(), cfg.lambda, fp);
    MorreyParams scaled(cfg.q(), cfg.mu(), fp);
    // characteristic step
    SplitMix64 brng(cfg.seed * 0x9E3779B97F4A7C15ull + 86);
    for (int t = 0; t < 6; ++t) {
        auto B = gen_ball(fp, cfg.gamma_res, cfg.gamma_struct, cfg.gamma_struct, brng);
        auto res = morrey_norm(char_fn(B), src, cfg.prec.root_bits);
        Interval expect = pow_q(ball_measure(B), (1 - cfg.lambda / fp.n) / cfg.r,
                                cfg.prec.root_bits);
        if (!res.value.overlaps(expect) || !res.witness || !(*res.witness == B)) {
            rec.verdict = Verdict::fail;
            rec.witness = Json{{"ball", detail::ball_json(B)},
                               {"lhs", interval_json(res.value)},
                               {"rhs", interval_json(expect)}};
            return rec;
        }
    }
    Interval cmax(Rational(0));
    size_t instances = 0;
    for (size_t i = 0; i < fam.symbols.size(); ++i) {
        const auto& b = fam.symbols[i];
        const auto& f = fam.inputs[i];
        Interval fnorm = morrey_norm(f, src, cfg.prec.root_bits).value;
        if (!(fnorm.lo > 0)) continue;
        ++instances;
        // nonlinear commutator as a tail profile
        auto Mf = frac_maximal_field(f, alpha);
        auto Mbf = frac_maximal_field(pointwise_combine(b, f, CombineOp::mul), alpha);
        auto com = tp_sub(tp_mul_lc(Mf, b), Mbf);
        // maximal commutator as a tail profile on the common grid
        auto [bc, fc] = to_common_grid(b, f);
        std::vector<PSum> mb_cells(bc.grid.cell_count());
        BallEnumerator cells(fp, bc.grid.gamma_struct, bc.grid.gamma_res);
        for (size_t j = 0; j < mb_cells.size(); ++j)
            mb_cells[j] = PSum(
                maximal_commutator_exact(bc, fc, alpha, cells.address(j).center()), fp.p);
        Rational mb_tail = integrate_global(
            pointwise_combine(lc_abs(lc_shift(bc, bc.c_inf)), lc_abs(fc), CombineOp::mul));
        TailProfile mb(bc.grid, std::move(mb_cells), mb_tail, cfg.alpha - fp.n);
        for (const MorreyParams& target : {shift, scaled}) {
            Interval r1 = morrey_norm(com, target, cfg.prec.root_bits).value / fnorm;
            Interval r2 = morrey_norm(mb, target, cfg.prec.root_bits).value / fnorm;
            cmax = interval_max(cmax, interval_max(r1, r2));
        }
    }
    rec.constant = cmax;
    rec.witness = Json{{"instances", instances},
                       {"source", Json{{"r", to_string(cfg.r)}, {"lambda", to_string(cfg.lambda)}}},
                       {"targets", Json::array({Json{{"q", to_string(cfg.q_shift())}, {"lambda", to_string(cfg.lambda)}},
                                                Json{{"q", to_string(cfg.q())}, {"mu", to_string(cfg.mu())}}})}};
    return rec;
}

}  // namespace padic
