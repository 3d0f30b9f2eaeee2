#include "padic/lcfun.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace padic;

namespace {
const FieldParams q2(2, 1);
PAdicPoint pt(FieldParams fp, const Rational& x) { return point_from_rationals(fp, {x}); }
LCFunction chi_z2() { return char_fn(BallAddress::centered_at_zero(q2, 0)); }
}

TEST_CASE("char_fn basics") {
    auto f = chi_z2();
    CHECK(f.value_at(pt(q2, Rational(0))) == 1);
    CHECK(f.value_at(pt(q2, Rational(1))) == 1);
    CHECK(f.value_at(pt(q2, Rational(1, 2))) == 0);  // |x|_2 = 2
    CHECK(integrate(f, BallAddress::centered_at_zero(q2, 0)) == 1);
    CHECK(integrate(f, BallAddress::centered_at_zero(q2, 5)) == 1);

    // off-center ball forces a larger structure ball
    auto B = ball_of_point(pt(q2, Rational(1, 4)), -1);
    auto g = char_fn(B);
    CHECK(g.grid.gamma_struct == 2);
    CHECK(g.value_at(pt(q2, Rational(1, 4))) == 1);
    CHECK(g.value_at(pt(q2, Rational(0))) == 0);
    CHECK(integrate_global(g) == ball_measure(B));
}

TEST_CASE("refine preserves the function") {
    auto f = chi_z2();
    auto g = refine(f, -1, 1);
    REQUIRE(g.cells.size() == 4);
    CHECK(g.cells[0] == 1);
    CHECK(g.cells[1] == 1);
    CHECK(g.cells[2] == 0);
    CHECK(g.cells[3] == 0);
    CHECK(integrate(g, BallAddress::centered_at_zero(q2, 1)) ==
          integrate(f, BallAddress::centered_at_zero(q2, 1)));
    // refine of refine equals one refine
    auto h1 = refine(refine(f, -1, 1), -2, 2);
    auto h2 = refine(f, -2, 2);
    CHECK(h1.cells == h2.cells);
    CHECK_THROWS_AS(refine(f, 1, 0), ParameterError);
}

TEST_CASE("pointwise_combine and sign decompositions") {
    auto f = chi_z2();
    auto one = LCFunction::constant(q2, Rational(1));
    auto fm1 = pointwise_combine(f, one, CombineOp::sub);  // chi - 1
    auto np = neg_part(fm1);
    auto expect = pointwise_combine(one, f, CombineOp::sub);  // 1 - chi
    auto [a, b] = to_common_grid(np, expect);
    CHECK(a.cells == b.cells);
    CHECK(a.c_inf == b.c_inf);

    // b = b^+ - b^-
    std::vector<Rational> vals = {Rational(3), Rational(-2), Rational(0), Rational(7, 2)};
    LCFunction g(CellGrid(q2, 1, -1), vals, Rational(-1));
    auto recomposed = pointwise_combine(pos_part(g), neg_part(g), CombineOp::sub);
    CHECK(recomposed.cells == g.cells);
    CHECK(recomposed.c_inf == g.c_inf);
    auto absg = lc_abs(g);
    CHECK(absg.cells[1] == 2);
    auto negchi = lc_scale(f, Rational(-1));
    auto back = lc_abs(negchi);
    CHECK(back.cells == f.cells);
}

TEST_CASE("integration: additivity, means, global") {
    std::vector<Rational> vals = {Rational(1), Rational(2), Rational(3), Rational(4)};
    LCFunction f(CellGrid(q2, 1, -1), vals, Rational(0));
    auto B = BallAddress::centered_at_zero(q2, 1);
    Rational total = integrate(f, B);
    Rational acc(0);
    for (const auto& k : children(B)) acc += integrate(f, k);
    CHECK(acc == total);
    CHECK(integrate_global(f) == total);
    CHECK(ball_mean(f, B) == total / 2);

    // integral against a ball beyond the structure ball picks up the tail
    LCFunction g(CellGrid(q2, 0, 0), {Rational(5)}, Rational(5));
    CHECK(integrate(g, BallAddress::centered_at_zero(q2, 2)) == 5 * 4);
    CHECK_THROWS_AS(integrate_global(g), DivergenceError);

    // disjoint ball sees only the tail
    auto far = ball_of_point(pt(q2, Rational(1, 4)), -2);
    LCFunction h(CellGrid(q2, 0, 0), {Rational(9)}, Rational(1, 3));
    CHECK(integrate(h, far) == Rational(1, 3) * ball_measure(far));
}

TEST_CASE("integrate(chi_Z2) examples") {
    auto f = chi_z2();
    CHECK(integrate(f, BallAddress::centered_at_zero(q2, 1)) == 1);
    CHECK(ball_mean(f, BallAddress::centered_at_zero(q2, 1)) == Rational(1, 2));
    for (int g = 0; g <= 3; ++g)
        CHECK(ball_mean(f, BallAddress::centered_at_zero(q2, g)) ==
              pow_int(Rational(2), -g));
    // 2*chi_B1 - chi_B0 integrates to 3 over Q_2
    auto b1 = char_fn(BallAddress::centered_at_zero(q2, 1));
    auto comb = pointwise_combine(lc_scale(b1, Rational(2)), f, CombineOp::sub);
    CHECK(integrate_global(comb) == 3);
}

TEST_CASE("finite-scale Lebesgue differentiation") {
    std::vector<Rational> vals = {Rational(1), Rational(-5, 3), Rational(0), Rational(4),
                                  Rational(2), Rational(2), Rational(-1), Rational(7),
                                  Rational(1, 2)};
    FieldParams q3(3, 1);
    LCFunction f(CellGrid(q3, 1, -1), vals, Rational(2));
    BallEnumerator cells(q3, 1, -1);
    for (size_t i = 0; i < cells.count(); ++i) {
        auto x = cells.address(i).center();
        for (int g = -3; g <= f.grid.gamma_res; ++g)
            CHECK(ball_mean(f, ball_of_point(x, g)) == f.value_at(x));
    }
}

TEST_CASE("oscillation split identity") {
    // with E = {b <= b_B} and F = B \ E, the two oscillation halves agree
    std::vector<Rational> vals = {Rational(1), Rational(-5, 3), Rational(0), Rational(4)};
    LCFunction b(CellGrid(q2, 1, -1), vals, Rational(0));
    for (int lvl : {-1, 0, 1}) {
        BallEnumerator balls(q2, 1, lvl);
        for (size_t i = 0; i < balls.count(); ++i) {
            auto B = balls.address(i);
            Rational mean = ball_mean(b, B);
            Rational intE(0), intF(0);
            BallEnumerator sub(q2, 1, b.grid.gamma_res);
            for (size_t j = 0; j < sub.count(); ++j) {
                auto cell = sub.address(j);
                if (ball_relation(cell, B) == BallRelation::Disjoint) continue;
                Rational v = b.cells[j];
                if (v <= mean)
                    intE += (mean - v) * b.grid.cell_measure();
                else
                    intF += (v - mean) * b.grid.cell_measure();
            }
            CHECK(intE == intF);
        }
    }
}
