#include "support.hpp"

#include <doctest.h>

using namespace ndsys;
using ndtest::q;

namespace {

RegionSet R(const SpaceSpec& s, const char* text) { return parse_region(s, text); }

}  // namespace

TEST_CASE("interval sets are canonical") {
  const SpaceSpec I = SpaceSpec::interval();
  CHECK(unite(R(I, "[0, 1/2)"), R(I, "[1/2, 1]")) == RegionSet::full(I));
  CHECK(unite(R(I, "(0, 1/2)"), R(I, "(1/2, 1)")) == R(I, "(0, 1/2) U (1/2, 1)"));
  CHECK(intersect(R(I, "[0, 1/2]"), R(I, "[1/2, 1]")) == R(I, "{1/2}"));
  CHECK(intersect(R(I, "[0, 1/2)"), R(I, "(1/2, 1]")).empty());
  CHECK(intersects(R(I, "[0, 1/2]"), R(I, "[1/2, 1]")));
  CHECK_FALSE(intersects(R(I, "[0, 1/2)"), R(I, "[1/2, 1]")));
  CHECK(format_region(I, R(I, "(1/4,1/2) U [1/2, 3/4]")) == "(1/4, 3/4]");
  CHECK(diam(I, R(I, "[0, 1/8) U (3/4, 1]")) == Real(1));
  CHECK(gap(I, R(I, "[0, 1/8)"), R(I, "(3/4, 1]")) == Real(q("5/8")));
  CHECK(contains(I, R(I, "(0, 1/2)"), IntervalPoint{q("1/4")}));
  CHECK_FALSE(contains(I, R(I, "(0, 1/2)"), IntervalPoint{q("1/2")}));
  CHECK_THROWS_AS(R(I, "[1/2, 0]x"), Error);
}

TEST_CASE("circle arcs wrap around 0") {
  const SpaceSpec C = SpaceSpec::circle();
  const IntervalSet arc(SpaceKind::Circle, {Interval::open(Real(q("7/8")), Real(q("9/8")))});
  const RegionSet r = arc;
  CHECK(contains(C, r, CirclePoint(Real(0))));
  CHECK(contains(C, r, CirclePoint(Real(q("15/16")))));
  CHECK_FALSE(contains(C, r, CirclePoint(Real(q("1/2")))));
  CHECK(diam(C, r) == Real(q("1/4")));
  CHECK(diam(C, RegionSet::full(C)) == Real(q("1/2")));
  const RegionSet turned = arc.rotated(Real::alpha_multiple(1));
  CHECK(contains(C, turned, CirclePoint(Real(0, 1))));
}

TEST_CASE("index sets") {
  const SpaceSpec F = SpaceSpec::finite(5);
  CHECK(unite(R(F, "{0,1}"), R(F, "{3}")) == R(F, "{0,1,3}"));
  CHECK(diam(F, R(F, "{2}")) == Real(0));
  CHECK(diam(F, R(F, "{2,4}")) == Real(1));
  CHECK(RegionSet::full(F) == R(F, "{0,1,2,3,4}"));
  CHECK_THROWS_AS(R(F, "{7}"), Error);
}

TEST_CASE("cylinder sets: algebra, diameter, shift") {
  const SpaceSpec S = SpaceSpec::shift();
  const RegionSet c0 = CylinderSet::single({{0, 1}});
  const RegionSet c1 = CylinderSet::single({{0, 0}});
  CHECK(unite(c0, c1) == RegionSet::full(S));
  CHECK(intersect(c0, c1).empty());
  CHECK(diam(S, c0) == Real(q("1/2")));
  CHECK(diam(S, CylinderSet::single({{-1, 0}, {0, 0}, {1, 0}})) == Real(q("1/4")));
  CHECK(diam(S, CylinderSet::single({{1, 1}})) == Real(1));
  CHECK(gap(S, c0, c1) == Real(1));
  // sigma moves the fixed coordinate 0 to -1.
  CHECK(image(S, c0, ShiftMap{1}) == RegionSet(CylinderSet::single({{-1, 1}})));
  CHECK(format_region(S, R(S, format_region(S, c0).c_str())) == format_region(S, c0));
  const RegionSet b = ball(S, SeqPoint::constant(0), q("1/2"));
  CHECK(b == RegionSet(CylinderSet::single({{-1, 0}, {0, 0}, {1, 0}})));
}

TEST_CASE("interval balls are relatively open") {
  const SpaceSpec I = SpaceSpec::interval();
  CHECK(ball(I, IntervalPoint{0}, q("1/4")) == R(I, "[0, 1/4)"));
  CHECK(ball(I, IntervalPoint{q("1/2")}, q("1/4")) == R(I, "(1/4, 3/4)"));
}
