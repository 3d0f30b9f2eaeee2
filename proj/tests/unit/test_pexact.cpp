#include "padic/pexact.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace padic;

TEST_CASE("PExact normalizes exponents into [0,1)") {
    PExact a(Rational(3), Rational(5, 2), 2);  // 3 * 2^(5/2) = 12 * 2^(1/2)
    CHECK(a.c == 12);
    CHECK(a.t == Rational(1, 2));
    PExact b(Rational(1), Rational(-1, 2), 2);  // 2^(-1/2) = (1/2) * 2^(1/2)
    CHECK(b.c == Rational(1, 2));
    CHECK(b.t == Rational(1, 2));
    PExact z(Rational(0), Rational(7, 3), 2);
    CHECK(z.is_zero());
    CHECK(z.t == 0);
}

TEST_CASE("PExact comparison is exact across exponent classes") {
    std::uint32_t p = 2;
    PExact two(Rational(2));
    PExact rt8(Rational(1), Rational(3, 2), p);  // 2^(3/2) ~ 2.828
    CHECK(pexact_compare(two, rt8, p) < 0);
    CHECK(pexact_compare(rt8, two, p) > 0);
    CHECK(pexact_compare(rt8, rt8, p) == 0);
    // 3 * 2^(1/3) ~ 3.78 vs 2 * 2^(2/3) ~ 3.17
    PExact a(Rational(3), Rational(1, 3), p), b(Rational(2), Rational(2, 3), p);
    CHECK(pexact_compare(a, b, p) > 0);
    // negatives reverse
    PExact na(Rational(-3), Rational(1, 3), p), nb(Rational(-2), Rational(2, 3), p);
    CHECK(pexact_compare(na, nb, p) < 0);
    CHECK(pexact_compare(na, two, p) < 0);
}

TEST_CASE("PSum addition cancels exactly") {
    std::uint32_t p = 3;
    PSum s;
    s.add_term(Rational(1, 2), Rational(2));
    s.add_term(Rational(0), Rational(-1));
    s.add_term(Rational(1, 2), Rational(-2));
    CHECK(s.terms.size() == 1);
    CHECK(s.is_rational());
    CHECK(s.rational_value() == -1);
    CHECK(psum_sign(s, p) == -1);
}

TEST_CASE("PSum sign by interval refinement") {
    std::uint32_t p = 2;
    // 2^(1/2) + 2^(1/3) = 2.6741... vs 2.6
    PSum s;
    s.add_term(Rational(1, 2), Rational(1));
    s.add_term(Rational(1, 3), Rational(1));
    s.add_term(Rational(0), Rational(-13, 5));
    CHECK(psum_sign(s, p) == 1);
    // 2^(1/2) - 1.41421357 < 0 vs sqrt2 = 1.41421356...
    PSum t;
    t.add_term(Rational(1, 2), Rational(1));
    t.add_term(Rational(0), Rational(-141421357, 100000000));
    CHECK(psum_sign(t, p) == -1);
}

TEST_CASE("PSum multiplication folds exponent carries") {
    std::uint32_t p = 2;
    PSum a{PExact(Rational(1), Rational(1, 2), p), p};  // sqrt2
    PSum sq = psum_mul(a, a, p);
    CHECK(sq.is_rational());
    CHECK(sq.rational_value() == 2);
    PSum b = a + PSum(Rational(1));  // 1 + sqrt2
    PSum prod = psum_mul(b, b, p);   // 3 + 2 sqrt2
    CHECK(prod.terms.at(Rational(0)) == 3);
    CHECK(prod.terms.at(Rational(1, 2)) == 2);
}

TEST_CASE("geometric tail matches a long partial sum") {
    std::uint32_t p = 2;
    // theta = 2^(-3/2), tail from k0=1: sum_{j>=1} theta^j
    PExact theta(Rational(1), Rational(-3, 2), p);
    PSum tail = psum_geometric_tail(theta, 1, p);
    PSum partial;
    PExact pw = theta;
    for (int j = 1; j <= 400; ++j) {
        partial.add_term(pw.t, pw.c);
        pw = pexact_mul(pw, theta, p);
    }
    // difference is the remainder past j=400, far below 2^-500
    Interval diff = to_interval(tail - partial, p, 64);
    CHECK(diff.lo >= 0);
    CHECK(diff.hi < Rational(1, Int(1) << 500));

    // rational ratio gives the classical closed form
    PSum g = psum_geometric_tail(PExact(Rational(1, 2)), 0, p);
    CHECK(g.is_rational());
    CHECK(g.rational_value() == 2);

    CHECK_THROWS_AS(psum_geometric_tail(PExact(Rational(3, 2)), 0, p), DivergenceError);
}

TEST_CASE("to_interval brackets PExact values") {
    std::uint32_t p = 5;
    PExact a(Rational(2), Rational(1, 2), p);  // 2*sqrt5 ~ 4.4721
    auto iv = to_interval(a, p, 60);
    CHECK(iv.lo < Rational(44722, 10000));
    CHECK(iv.hi > Rational(44720, 10000));
    CHECK(iv.width() / iv.lo < Rational(1, Int(1) << 55));
}
