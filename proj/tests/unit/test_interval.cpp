#include "padic/interval.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace padic;

namespace {
Rational tol_bits(unsigned b) { return Rational(1, Int(1) << b); }
}

TEST_CASE("interval arithmetic basics") {
    Interval a{Rational(1), Rational(2)};
    Interval b{Rational(-1), Rational(3)};
    auto s = a + b;
    CHECK(s.lo == 0);
    CHECK(s.hi == 5);
    auto m = a * b;
    CHECK(m.lo == -2);
    CHECK(m.hi == 6);
    CHECK(interval_abs(Interval{Rational(-3), Rational(1)}).hi == 3);
    CHECK_THROWS(a / b);
    auto d = a / Interval{Rational(2), Rational(4)};
    CHECK(d.lo == Rational(1, 4));
    CHECK(d.hi == 1);
}

TEST_CASE("three-valued comparison is interval-sound") {
    Interval a{Rational(1), Rational(2)};
    Interval b{Rational(2), Rational(3)};
    CHECK(leq(a, b) == Verdict3::yes);
    CHECK(leq(b, a) == Verdict3::unknown);  // overlapping endpoints must not pass
    CHECK(lt(a, b) == Verdict3::unknown);
    CHECK(leq(Interval{Rational(4), Rational(5)}, a) == Verdict3::no);
}

TEST_CASE("root_k brackets and detects perfect roots") {
    auto r = root_k(Interval(Rational(2)), 2, 60);
    CHECK(r.lo * r.lo <= 2);
    CHECK(r.hi * r.hi >= 2);
    CHECK(r.width() / r.lo < tol_bits(59));

    auto exact = root_k(Interval(Rational(9, 16)), 2, 60);
    CHECK(exact.is_point());
    CHECK(exact.lo == Rational(3, 4));
}

TEST_CASE("pow_q on rational exponents") {
    auto x = pow_q(Rational(4), Rational(3, 2), 60);
    CHECK(x.is_point());
    CHECK(x.lo == 8);
    auto y = pow_q(Rational(2), Rational(-1, 2), 60);
    CHECK(y.lo * y.lo * 2 <= 1);
    CHECK(y.hi * y.hi * 2 >= 1);
    auto z = pow_p(3, Rational(2), 60);
    CHECK(z.is_point());
    CHECK(z.lo == 9);
}

TEST_CASE("log brackets ln(2) and ln(1)") {
    auto l1 = log_rational(Rational(1), 80);
    CHECK(l1.is_point());
    CHECK(l1.lo == 0);

    auto l2 = log_rational(Rational(2), 80);
    // 0.693147180559945 to 15 digits
    CHECK(l2.lo < Rational(6931471805599454, 10000000000000000));
    CHECK(l2.hi > Rational(6931471805599452, 10000000000000000));
    CHECK(l2.width() < tol_bits(78));

    auto l10 = log_rational(Rational(10), 80);
    CHECK(l10.lo < Rational(23025850929940457, 10000000000000000));
    CHECK(l10.hi > Rational(23025850929940455, 10000000000000000));
}

TEST_CASE("log_plus vanishes exactly below 1") {
    CHECK(log_plus(Interval(Rational(1, 2)), 60).is_point());
    CHECK(log_plus(Interval(Rational(1)), 60).lo == 0);
    auto l = log_plus(Interval(Rational(3)), 60);
    CHECK(l.lo > 1);
    CHECK(l.hi < Rational(11, 10));
}

TEST_CASE("exp brackets e and scales") {
    auto e1 = exp_rational(Rational(1), 80);
    CHECK(e1.lo < Rational(27182818284590453, 10000000000000000));
    CHECK(e1.hi > Rational(27182818284590452, 10000000000000000));

    auto e4 = exp_rational(Rational(4), 60);
    // e^4 = 54.5981500331442390781...
    CHECK(e4.lo < Rational(545981500331442391, 10000000000000000));
    CHECK(e4.hi > Rational(545981500331442390, 10000000000000000));

    auto em = exp_rational(Rational(-3, 2), 60);
    // e^-1.5 = 0.2231301601484298289...
    CHECK(em.lo < Rational(2231301601484299, 10000000000000000));
    CHECK(em.hi > Rational(2231301601484298, 10000000000000000));
}
