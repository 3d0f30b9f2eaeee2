#include "padic/exponent.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace padic;

namespace {
const FieldParams q2(2, 1);
}

TEST_CASE("exponent function validation and basics") {
    CHECK_THROWS_AS(ExponentFunction::constant(q2, Rational(1)), ParameterError);
    CHECK_THROWS_AS(ExponentFunction(LCFunction(CellGrid(q2, 0, 0), {Rational(2)}, Rational(1))),
                    ParameterError);
    auto q = ExponentFunction(LCFunction(CellGrid(q2, 0, 0), {Rational(2)}, Rational(3)));
    CHECK(q.q_minus() == 2);
    CHECK(q.q_plus() == 3);
    CHECK(q.q_inf() == 3);
    auto x0 = point_from_rationals(q2, {Rational(0)});
    CHECK(q.at(x0) == 2);
    CHECK(q.at(point_from_rationals(q2, {Rational(1, 2)})) == 3);
    // q(x, gamma) case split
    CHECK(q.at_scale(x0, -1) == 2);
    CHECK(q.at_scale(x0, 0) == 3);
    CHECK(q.at_scale(x0, 2) == 3);
}

TEST_CASE("conjugate exponent") {
    auto q = ExponentFunction::constant(q2, Rational(2));
    auto qc = conjugate_exponent(q);
    CHECK(qc.q_minus() == 2);
    CHECK(qc.q_plus() == 2);

    auto two3 = ExponentFunction(LCFunction(CellGrid(q2, 0, 0), {Rational(2)}, Rational(3)));
    auto conj = conjugate_exponent(two3);
    CHECK(conj.at(point_from_rationals(q2, {Rational(0)})) == 2);
    CHECK(conj.q_inf() == Rational(3, 2));
    // q'_+ = q_- / (q_- - 1)
    CHECK(conj.q_plus() == two3.q_minus() / (two3.q_minus() - 1));
    CHECK(conj.q_minus() == two3.q_plus() / (two3.q_plus() - 1));
}

TEST_CASE("log-Holder constants: constant exponent gives zeros") {
    auto q = ExponentFunction::constant(q2, Rational(2));
    auto c = log_holder_constants(q);
    CHECK(c.c0_verbatim == 0);
    CHECK(c.c0_conventional == 0);
    CHECK(c.c_inf.hi == 0);
}

TEST_CASE("log-Holder constants: two-valued exponent matches hand enumeration") {
    // q = 2 on Z_2, 3 outside
    auto q = ExponentFunction(LCFunction(CellGrid(q2, 0, 0), {Rational(2)}, Rational(3)));
    auto c = log_holder_constants(q, 70);
    // every ball of level <= 0 sees a constant exponent
    CHECK(c.c0_verbatim == 0);
    CHECK(c.c0_conventional == 0);
    // the cell/tail pair: |2-3| * log_2(2 + 1) = log2(3) = 1.58496...
    CHECK(static_cast<double>(c.c_inf.lo) <= 1.5849625007211564);
    CHECK(static_cast<double>(c.c_inf.hi) >= 1.5849625007211560);

    // a finer two-valued exponent: 2 on B_{-1}(0), 5/2 elsewhere inside B_1, 3 tail
    std::vector<Rational> vals = {Rational(2), Rational(5, 2), Rational(5, 2), Rational(5, 2)};
    auto qf = ExponentFunction(LCFunction(CellGrid(q2, 1, -1), vals, Rational(3)));
    auto cf = log_holder_constants(qf, 70);
    // verbatim: balls of level 0 and below inside the structure ball; the
    // level-0 ball B_0(0) sees {2, 5/2}: product 0; level -1..: constant.
    // concentric level 0 = B_0(0) again.  So verbatim comes out 0, while the
    // conventional reading is also 0 (only level-0 balls mix values).
    CHECK(cf.c0_verbatim == 0);
    CHECK(cf.c0_conventional == 0);
    // C_inf pairs: |2 - 5/2| log_2(2 + 1/2) vs |2-3| log_2(2+1/2) vs |5/2-3| log_2(2+2)
    // best = max(0.5*1.3219, 1*1.3219, 0.5*2) = 1.3219...
    CHECK(static_cast<double>(cf.c_inf.lo) <= 1.3219280948873624);
    CHECK(static_cast<double>(cf.c_inf.hi) >= 1.3219280948873621);
}

TEST_CASE("range on ball") {
    std::vector<Rational> vals = {Rational(2), Rational(5, 2), Rational(4), Rational(3)};
    auto qf = ExponentFunction(LCFunction(CellGrid(q2, 1, -1), vals, Rational(7, 2)));
    auto [lo0, hi0] = qf.range_on_ball(BallAddress::centered_at_zero(q2, 0));
    CHECK(lo0 == 2);
    CHECK(hi0 == Rational(5, 2));
    auto [lo1, hi1] = qf.range_on_ball(BallAddress::centered_at_zero(q2, 1));
    CHECK(lo1 == 2);
    CHECK(hi1 == 4);
    auto [lo2, hi2] = qf.range_on_ball(BallAddress::centered_at_zero(q2, 3));
    CHECK(lo2 == 2);
    CHECK(hi2 == 4);  // includes the tail? tail = 7/2 < 4
    auto far = ball_of_point(point_from_rationals(q2, {Rational(1, 4)}), -1);
    auto [lo3, hi3] = qf.range_on_ball(far);
    CHECK(lo3 == Rational(7, 2));
    CHECK(hi3 == Rational(7, 2));
}
