#include "padic/ball.hpp"
#include "padic/field.hpp"
#include "padic/point.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace padic;

namespace {
PAdicPoint pt(FieldParams fp, const Rational& x) { return point_from_rationals(fp, {x}); }
}

TEST_CASE("padic_abs matches the defining display") {
    CHECK(padic_abs(Rational(0), 2) == 0);
    CHECK(padic_abs(Rational(12), 2) == Rational(1, 4));
    CHECK(padic_abs(Rational(3, 2), 2) == 2);
    CHECK(padic_abs(Rational(9, 5), 3) == Rational(1, 9));
}

TEST_CASE("padic_abs is multiplicative and ultrametric on rationals") {
    std::vector<Rational> xs = {Rational(1), Rational(-3, 4), Rational(12), Rational(5, 6),
                                Rational(7, 8), Rational(-2, 9), Rational(100, 3)};
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (const auto& x : xs)
            for (const auto& y : xs) {
                CHECK(padic_abs(x * y, p) == padic_abs(x, p) * padic_abs(y, p));
                if (x + y != 0) {
                    auto lhs = padic_abs(x + y, p);
                    auto mx = std::max(padic_abs(x, p), padic_abs(y, p));
                    CHECK(lhs <= mx);
                    if (padic_abs(x, p) != padic_abs(y, p)) CHECK(lhs == mx);
                }
            }
    }
}

TEST_CASE("field parameters validate") {
    CHECK_THROWS_AS(FieldParams(4, 1), ParameterError);
    CHECK_THROWS_AS(FieldParams(2, 0), ParameterError);
    CHECK_NOTHROW(FieldParams(101, 3));
}

TEST_CASE("ball and sphere measures") {
    CHECK(ball_measure(BallAddress::centered_at_zero(FieldParams(2, 1), 0)) == 1);
    CHECK(ball_measure(BallAddress::centered_at_zero(FieldParams(3, 2), 2)) == 81);
    CHECK(ball_measure(BallAddress::centered_at_zero(FieldParams(2, 1), -3)) == Rational(1, 8));
    CHECK(sphere_measure({BallAddress::centered_at_zero(FieldParams(2, 1), 0)}) == Rational(1, 2));
    CHECK(sphere_measure({BallAddress::centered_at_zero(FieldParams(3, 1), 1)}) == 2);
    CHECK(sphere_measure({BallAddress::centered_at_zero(FieldParams(2, 2), 0)}) == Rational(3, 4));
}

TEST_CASE("sphere partial sums telescope") {
    for (std::uint32_t p : {2u, 3u}) {
        for (std::uint32_t n : {1u, 2u}) {
            FieldParams fp(p, n);
            for (int g = -3; g <= 3; ++g)
                for (int K = 1; K <= 6; ++K) {
                    Rational sum(0);
                    for (int k = g - K + 1; k <= g; ++k) sum += sphere_measure_at(fp, k);
                    CHECK(sum == ball_measure_at(fp, g) - ball_measure_at(fp, g - K));
                }
        }
    }
}

TEST_CASE("ball_of_point canonicalizes") {
    FieldParams q2(2, 1);
    auto b0 = ball_of_point(pt(q2, Rational(0)), 2);
    CHECK(b0.level == 2);
    CHECK(b0.center_is_zero());

    // digit 1 at index 0 is truncated away at level 0
    auto b1 = ball_of_point(pt(q2, Rational(1)), 0);
    CHECK(b1 == BallAddress::centered_at_zero(q2, 0));

    auto bh = ball_of_point(pt(q2, Rational(1, 2)), 0);
    CHECK(bh.level == 0);
    REQUIRE(bh.digits[0].size() == 1);
    CHECK(bh.digits[0][0] == 1);
    CHECK(to_string(bh) == "2^1:0:1");
    CHECK(parse_ball("2^1:0:1") == bh);
}

TEST_CASE("ball relation dichotomy on the documented cases") {
    FieldParams q2(2, 1);
    auto B0 = ball_of_point(pt(q2, Rational(0)), 0);
    auto B1 = ball_of_point(pt(q2, Rational(0)), 1);
    CHECK(ball_relation(B0, B1) == BallRelation::FirstInsideSecond);
    CHECK(ball_relation(B1, B0) == BallRelation::SecondInsideFirst);
    CHECK(ball_relation(B0, ball_of_point(pt(q2, Rational(1)), 0)) == BallRelation::Equal);
    CHECK(ball_relation(ball_of_point(pt(q2, Rational(0)), -1),
                        ball_of_point(pt(q2, Rational(1)), -1)) == BallRelation::Disjoint);
    FieldParams q3(3, 1);
    CHECK_THROWS_AS(ball_relation(B0, BallAddress::centered_at_zero(q3, 0)), ParameterError);
}

TEST_CASE("children partition the parent") {
    for (std::uint32_t p : {2u, 3u}) {
        for (std::uint32_t n : {1u, 2u}) {
            FieldParams fp(p, n);
            auto B = ball_of_point(point_from_rationals(fp, std::vector<Rational>(n, Rational(1, p))), 0);
            auto kids = children(B);
            size_t expect = 1;
            for (std::uint32_t j = 0; j < n; ++j) expect *= p;
            REQUIRE(kids.size() == expect);
            Rational msum(0);
            for (const auto& k : kids) {
                CHECK(ball_relation(k, B) == BallRelation::FirstInsideSecond);
                CHECK(parent(k) == B);
                msum += ball_measure(k);
            }
            CHECK(msum == ball_measure(B));
            for (size_t i = 0; i < kids.size(); ++i)
                for (size_t j = i + 1; j < kids.size(); ++j)
                    CHECK(ball_relation(kids[i], kids[j]) == BallRelation::Disjoint);
        }
    }
}

TEST_CASE("children of the unit ball in Q_2") {
    FieldParams q2(2, 1);
    auto B = BallAddress::centered_at_zero(q2, 0);
    auto kids = children(B);
    REQUIRE(kids.size() == 2);
    CHECK(kids[0] == ball_of_point(pt(q2, Rational(0)), -1));
    CHECK(kids[1] == ball_of_point(pt(q2, Rational(1)), -1));
    CHECK(parent(kids[1]) == B);
}

TEST_CASE("min_enclosing_level") {
    FieldParams q2(2, 1);
    auto B = BallAddress::centered_at_zero(q2, 0);
    CHECK(min_enclosing_level(pt(q2, Rational(1, 2)), B) == 1);  // |1/2|_2 = 2
    CHECK(min_enclosing_level(pt(q2, Rational(1, 4)), B) == 2);  // |x|_2 = 4
    CHECK(min_enclosing_level(pt(q2, Rational(2)), B) == 0);     // |x|_2 = 1/2, inside
    CHECK(min_enclosing_level(pt(q2, Rational(0)), B) == 0);
}

TEST_CASE("point membership and text forms") {
    FieldParams q2(2, 1);
    auto x = pt(q2, Rational(5, 4));
    CHECK(x.abs_p() == 4);
    CHECK(to_string(x) == "2^1:1,0,1@-2");
    CHECK(parse_point("2^1:1,0,1@-2") == x);
    CHECK(parse_point(to_string(PAdicPoint::zero(q2))) == PAdicPoint::zero(q2));
    CHECK(point_in_ball(x, BallAddress::centered_at_zero(q2, 2)));
    CHECK_FALSE(point_in_ball(x, BallAddress::centered_at_zero(q2, 1)));

    FieldParams q32(3, 2);
    auto y = point_from_rationals(q32, {Rational(2, 3), Rational(0)});
    CHECK(y.abs_p() == 3);
    CHECK(parse_point(to_string(y)) == y);
}

TEST_CASE("min_enclosing_level against |x - c| on rationals") {
    FieldParams q3(3, 1);
    for (int xi = 0; xi < 30; ++xi) {
        Rational x(xi, 9);
        auto xp = pt(q3, x);
        for (int ci = 0; ci < 10; ++ci) {
            Rational c(ci, 3);
            for (int lvl = -1; lvl <= 2; ++lvl) {
                auto B = ball_of_point(pt(q3, c), lvl);
                Rational diff = x - B.center().coord_value(0);
                int expect = B.level;
                if (diff != 0)
                    expect = std::max<long>(B.level, -rat_valuation(diff, Int(3)));
                CHECK(min_enclosing_level(xp, B) == expect);
            }
        }
    }
}

TEST_CASE("ball enumerator round-trips indices") {
    FieldParams fp(3, 2);
    BallEnumerator e(fp, 1, -1);
    REQUIRE(e.count() == 81 * 9 / 9);  // 3^(2*2) = 81
    for (size_t i = 0; i < e.count(); ++i) {
        auto b = e.address(i);
        CHECK(b.level == -1);
        CHECK(e.index_of(b) == i);
    }
}
