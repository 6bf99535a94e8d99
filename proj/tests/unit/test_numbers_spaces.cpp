#include "support.hpp"

#include <doctest.h>

using namespace ndsys;
using ndtest::q;

TEST_CASE("rationals parse and print in lowest terms") {
  CHECK(format_rational(q("6/8")) == "3/4");
  CHECK(format_rational(q("-2")) == "-2");
  CHECK(q(" 1/3 ") == Rational(1, 3));
  CHECK_THROWS_AS(parse_rational("0.5"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK(dyadic(3) == Rational(1, 8));
  CHECK(floor_rational(q("-1/2")) == -1);
}

TEST_CASE("alpha field arithmetic is exact") {
  const Real a = Real::alpha_multiple(1);
  // alpha^2 + alpha = 1, so alpha lies in (0.6, 0.7).
  CHECK(Real(q("3/5")) < a);
  CHECK(a < Real(q("7/10")));
  CHECK((a + a - a) == a);
  CHECK((Real(q("3/2"), 1)).floor() == 2);
  CHECK((Real(0, -1)).frac() == Real(1, -1));
  CHECK(parse_real("1/3+2*a") == Real(q("1/3"), 2));
}

TEST_CASE("points round-trip through their text form") {
  const SpaceSpec I = SpaceSpec::interval(), C = SpaceSpec::circle(), S = SpaceSpec::shift();
  const SpaceSpec F = SpaceSpec::finite(3, 1);
  for (const char* t : {"0", "1", "3/7"}) CHECK(format_point(I, parse_point(I, t)) == t);
  CHECK(format_point(C, parse_point(C, "1/3+a")) == "1/3+a");
  CHECK(std::get<FinitePoint>(parse_point(F, "2")).index == 1);
  CHECK(format_point(F, FinitePoint{2}) == "3");
  CHECK_THROWS_AS(parse_point(F, "4"), Error);
  CHECK_THROWS_AS(parse_point(I, "3/2"), Error);
  const SeqPoint x = SeqPoint::parse("<0>1.01<1>");
  CHECK(x.at(-1) == 1);
  CHECK(x.at(0) == 0);
  CHECK(x.at(1) == 1);
  CHECK(x.at(5) == 1);
  CHECK(x.at(-9) == 0);
  CHECK(SeqPoint::parse(x.to_string()) == x);
  CHECK(format_point(S, parse_point(S, x.to_string())) == x.to_string());
}

TEST_CASE("metrics") {
  const SpaceSpec C = SpaceSpec::circle();
  CHECK(distance(C, CirclePoint(Real(q("1/10"))), CirclePoint(Real(q("9/10")))) == Real(q("1/5")));
  CHECK(distance(SpaceSpec::interval(), IntervalPoint{q("1/4")}, IntervalPoint{1}) == Real(q("3/4")));
  const SpaceSpec S = SpaceSpec::shift();
  const SeqPoint zero = SeqPoint::constant(0);
  CHECK(distance(S, zero, zero.with(0, 1)) == Real(1));
  CHECK(distance(S, zero, zero.with(-2, 1)) == Real(q("1/4")));
  CHECK(distance(S, zero, zero) == Real(0));
  CHECK(distance(SpaceSpec::finite(4), FinitePoint{0}, FinitePoint{3}) == Real(1));
  CHECK(SpaceSpec::finite(2).has_isolated_points());
  CHECK_FALSE(S.has_isolated_points());
}

TEST_CASE("shifted sequences move coordinates left") {
  const SeqPoint x = SeqPoint::constant(0).with(1, 1);
  CHECK(x.shifted(1).at(0) == 1);
  CHECK(x.shifted(-1).at(2) == 1);
}
