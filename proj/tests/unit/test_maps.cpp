#include "support.hpp"

#include <doctest.h>

using namespace ndsys;
using ndtest::q;

namespace {

Rational at(const MapSpec& m, const char* x) { return std::get<IntervalPoint>(eval(m, IntervalPoint{q(x)})).value; }

}  // namespace

TEST_CASE("piecewise linear evaluation follows the half-open convention") {
  CHECK(at(halving_map(), "1") == q("1/2"));
  CHECK(at(fold_map(), "1/4") == q("1/2"));
  CHECK(at(fold_map(), "3/4") == 1);
  CHECK(at(doubling_map(), "1/4") == q("1/2"));
  // Right piece owns the breakpoint: 2(1/2) - 1 = 0.
  CHECK(at(doubling_map(), "1/2") == 0);
  CHECK(at(doubling_map(), "1") == 1);
}

TEST_CASE("surjectivity and openness flags") {
  const MapFlags g1 = analyze(halving_map());
  CHECK_FALSE(g1.surjective);
  CHECK(g1.injective);
  CHECK(g1.feeble_open);
  const MapFlags g2 = analyze(fold_map());
  CHECK(g2.surjective);
  CHECK_FALSE(g2.feeble_open);
  CHECK(g2.continuous);
  const MapFlags g3 = analyze(doubling_map());
  CHECK(g3.surjective);
  CHECK_FALSE(g3.continuous);
  CHECK_FALSE(g3.injective);
  CHECK(analyze(alpha_rotation(1)).isometry);
  // 2^-min|i| is not shift invariant.
  CHECK_FALSE(analyze(ShiftMap{1}).isometry);
  CHECK(analyze(ShiftMap{0}).isometry);
  CHECK_FALSE(analyze(ShiftMap{2}).isometry);
  CHECK_FALSE(analyze(doubling_map()).isometry);
  const SpaceSpec F4 = SpaceSpec::finite(4);
  CHECK(analyze(cycle_map(4, 1), &F4).surjective);
  CHECK_FALSE(analyze(constant_map(4, 0), &F4).surjective);
}

TEST_CASE("composition agrees with pointwise evaluation") {
  const MapSpec g = compose(doubling_map(), compose(fold_map(), halving_map()));
  for (const char* x : {"0", "1/7", "1/3", "1/2", "5/8", "1"}) {
    const Point p = IntervalPoint{q(x)};
    CHECK(eval(g, p) == eval(doubling_map(), eval(fold_map(), eval(halving_map(), p))));
  }
  CHECK(normalize(compose(alpha_rotation(1), alpha_rotation(-1))) == MapSpec(Rotation{0, 0}));
  const MapSpec back = normalize(compose(ShiftMap{1}, ShiftMap{-1}));
  CHECK((back.is_identity() || back == MapSpec(ShiftMap{0})));
  CHECK(normalize(compose(cycle_map(4, -1), cycle_map(4, 3))) == cycle_map(4, 2));
}

TEST_CASE("images and preimages of interval sets") {
  const SpaceSpec I = SpaceSpec::interval();
  CHECK(image(I, parse_region(I, "(0, 1/8)"), doubling_map()) == parse_region(I, "(0, 1/4)"));
  CHECK(image(I, parse_region(I, "(3/8, 5/8)"), doubling_map()) == parse_region(I, "[0, 1/4) U (3/4, 1)"));
  CHECK(image(I, parse_region(I, "(1/4, 3/4)"), fold_map()) == parse_region(I, "(1/2, 1]"));
  CHECK(preimage(I, parse_region(I, "(0, 1/4)"), doubling_map()) == parse_region(I, "(0, 1/8) U (1/2, 5/8)"));
  CHECK(preimage(I, parse_region(I, "{1}"), fold_map()) == parse_region(I, "[1/2, 1]"));
  CHECK(image(I, RegionSet::full(I), halving_map()) == parse_region(I, "[0, 1/2]"));
}

TEST_CASE("inverses") {
  const MapSpec flip = PLMap({0, 1}, {Affine{-1, 1}});
  const MapSpec inv = invert(flip);
  CHECK_THROWS_AS(invert(halving_map()), Error);
  CHECK_THROWS_AS(invert(fold_map()), Error);
  CHECK(non_invertible_reason(doubling_map()).has_value());
  CHECK(normalize(invert(alpha_rotation(2))) == MapSpec(alpha_rotation(-2)));
  CHECK(normalize(invert(cycle_map(4, 1))) == cycle_map(4, 3));
  CHECK(at(compose(inv, flip), "1/3") == q("1/3"));
}

TEST_CASE("commutation") {
  CHECK(commutes(alpha_rotation(1), alpha_rotation(-3)).verdict == Verdict::Holds);
  CHECK(commutes(ShiftMap{1}, ShiftMap{-1}).verdict == Verdict::Holds);
  const CommuteResult r = commutes(halving_map(), doubling_map());
  CHECK(r.verdict == Verdict::Fails);
  REQUIRE(r.witness.has_value());
  const Point x = *r.witness;
  CHECK_FALSE(eval(halving_map(), eval(doubling_map(), x)) == eval(doubling_map(), eval(halving_map(), x)));
}

TEST_CASE("maps must act on the space") {
  CHECK_THROWS_AS(require_acts_on(SpaceSpec::circle(), halving_map()), Error);
  CHECK_THROWS_AS(require_acts_on(SpaceSpec::finite(3), cycle_map(4, 1)), Error);
  CHECK_NOTHROW(require_acts_on(SpaceSpec::shift(), ShiftMap{-1}));
}
