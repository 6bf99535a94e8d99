#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace ndsys;
using ndtest::fixture;
using ndtest::q;

TEST_CASE("hitting sets on the isolated-point system are {1}") {
  const System& s = fixture("finite-hitting-isolated");
  for (std::size_t i = 0; i < 5; ++i) {
    const IndexSample h = hitting_set(s.space, s.schedule, IndexSet(5, {i}), IndexSet(5, {4}), 20);
    CHECK(h.members == std::vector<std::uint64_t>{1});
    REQUIRE(h.cycle.has_value());
  }
  const IndexSample h = hitting_set(s.space, s.schedule, IndexSet(5, {0}), IndexSet(5, {4}), 20);
  const ClassVerdict v = classify(h, SetClass::Syndetic);
  CHECK(v.verdict == Verdict::Fails);
  CHECK(v.basis == "exhaustive");
}

TEST_CASE("cycles extend samples past the horizon") {
  const System& s = fixture("k-transfer-counterexample");
  const IndexSample h = hitting_set(s.space, s.schedule, IndexSet(4, {0}), IndexSet(4, {1}), 10);
  REQUIRE(h.cycle.has_value());
  // Both maps are i -> i-1, so 0 reaches 1 at n = 3 mod 4.
  CHECK(h.contains(3));
  CHECK(h.contains(1003));
  CHECK_FALSE(h.contains(1002));
  CHECK(h.members == std::vector<std::uint64_t>{3, 7});
}

TEST_CASE("sensitivity hits count diameters strictly above delta") {
  const System& s = fixture("weak-but-not");
  // f_1^n is sigma for odd n and the identity for even n.
  const RegionSet u = CylinderSet::single({{0, 1}});
  const IndexSample h = sensitivity_hits(s.space, s.schedule, u, q("1/2"), 20);
  CHECK(h.members == std::vector<std::uint64_t>{1, 3, 5, 7, 9, 11, 13, 15, 17, 19});
  CHECK(sensitivity_hits(s.space, s.schedule, u, 1, 20).members.empty());
  CHECK_THROWS_AS(sensitivity_hits(s.space, s.schedule, RegionSet::empty_in(s.space), q("1/2"), 20), Error);
}

TEST_CASE("return times") {
  const System& s = fixture("triangular-3pt");
  const PointTrace t(s.space, s.schedule, FinitePoint{0}, 12);
  CHECK(return_times(s.space, t, q("1/2")).members == std::vector<std::uint64_t>{6, 7, 8, 9});
}

TEST_CASE("classifiers on hand-made samples") {
  SUBCASE("cofinite tail") {
    const IndexSample s = make_sample(40, {2, 5, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23, 24, 25, 26, 27, 28,
                                           29, 30, 31, 32, 33, 34, 35, 36, 37, 38, 39, 40});
    CHECK(classify(s, SetClass::Cofinite).verdict == Verdict::Holds);
    CHECK(classify(s, SetClass::Syndetic).verdict == Verdict::Holds);
    CHECK(classify(s, SetClass::Thick).verdict == Verdict::Holds);
    CHECK(classify(s, SetClass::UpperDensity).verdict == Verdict::Holds);
  }
  SUBCASE("even numbers: syndetic, not thick") {
    std::vector<std::uint64_t> m;
    for (std::uint64_t n = 2; n <= 100; n += 2) m.push_back(n);
    const IndexSample s = make_sample(100, m);
    CHECK(classify(s, SetClass::Syndetic).verdict == Verdict::Holds);
    CHECK(classify(s, SetClass::Thick).verdict == Verdict::Fails);
    CHECK(classify(s, SetClass::Cofinite).verdict == Verdict::Fails);
    ClassifyOptions opts;
    opts.theta = Rational(1, 2);
    CHECK(classify(s, SetClass::UpperDensity, opts).verdict == Verdict::Holds);
    opts.theta = Rational(3, 5);
    CHECK(classify(s, SetClass::UpperDensity, opts).verdict == Verdict::Fails);
  }
  SUBCASE("squares: gaps keep growing") {
    std::vector<std::uint64_t> m;
    for (std::uint64_t j = 1; j * j <= 400; ++j) m.push_back(j * j);
    const ClassVerdict v = classify(make_sample(400, m), SetClass::Syndetic);
    CHECK(v.verdict == Verdict::Fails);
    CHECK(v.basis == "trend");
    CHECK(v.max_gap > v.max_gap_sub);
  }
  SUBCASE("empty horizon") { CHECK_THROWS_AS(classify(make_sample(0, {}), SetClass::Syndetic), Error); }
}

TEST_CASE("max gap counts the stretch before the first member and after the last") {
  CHECK(max_gap(make_sample(10, {4, 5})).first == 6);
  CHECK(max_gap(make_sample(10, {})).first == 11);
  CHECK(max_gap(make_sample(10, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10})).first == 1);
}

TEST_CASE("intersection of samples keeps cycles") {
  const System& s = fixture("k-transfer-counterexample");
  const IndexSample a = hitting_set(s.space, s.schedule, IndexSet(4, {0}), IndexSet(4, {1}), 10);
  const IndexSample b = hitting_set(s.space, s.schedule, IndexSet(4, {0}), IndexSet(4, {1, 3}), 10);
  const IndexSample c = intersect(a, b);
  CHECK(c.members == a.members);
  CHECK(c.cycle.has_value());
}

TEST_CASE("classifier algebra on random samples with planted tails") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint64_t T = 40 + rng() % 200;
    const std::uint64_t tail = 1 + rng() % (T / 2);
    std::vector<std::uint64_t> m;
    for (std::uint64_t n = 1; n <= T; ++n) {
      if (n >= tail || rng() % 3 == 0) m.push_back(n);
    }
    const IndexSample s = make_sample(T, m);
    ClassifyOptions opts;
    opts.k = 1 + rng() % 5;
    CHECK(classify(s, SetClass::Cofinite, opts).verdict == Verdict::Holds);
    CHECK(classify(s, SetClass::ThicklySyndetic, opts).verdict == Verdict::Holds);
    CHECK(classify(s, SetClass::Syndetic, opts).verdict == Verdict::Holds);
    CHECK(classify(s, SetClass::Thick, opts).verdict == Verdict::Holds);
    CHECK(classify(s, SetClass::UpperDensity, opts).verdict == Verdict::Holds);
  }
}
