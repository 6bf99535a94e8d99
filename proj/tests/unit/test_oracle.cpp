// Compares library results with the values frozen from the brute-force
// reimplementation in tests/oracles.

#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

using namespace ndsys;
using ndtest::fixture;
using ndtest::frozen;
using ndtest::params;
using ndtest::q;

namespace {

std::vector<std::uint64_t> members(const json& j) { return j.get<std::vector<std::uint64_t>>(); }

}  // namespace

TEST_CASE("growing blocks") {
  const json& o = frozen().at("growing_blocks");
  const System& s = fixture("shift-growing-blocks");
  const IndexSample h = sensitivity_hits(s.space, s.schedule, CylinderSet::single({{0, 1}}), q("1/2"), 300);
  CHECK(h.members == members(o.at("hits")));
  CHECK(h.members.size() == o.at("count").get<std::size_t>());
  const ClassVerdict v = classify(h, SetClass::Syndetic);
  CHECK(v.max_gap == o.at("max_gap_300"));
  CHECK(v.max_gap_sub == o.at("max_gap_75"));
  CHECK(v.longest_run == o.at("longest_run_300"));
  CHECK(v.longest_run_sub == o.at("longest_run_75"));
}

TEST_CASE("triangular") {
  const json& o = frozen().at("triangular");
  const System& s = fixture("triangular-3pt");
  const PointTrace t(s.space, s.schedule, FinitePoint{0}, 300);
  std::vector<std::uint64_t> orbit;
  for (std::uint64_t n = 1; n <= 10; ++n) orbit.push_back(std::stoull(format_point(s.space, t.at(n))));
  CHECK(orbit == members(o.at("orbit_1_to_10")));
  const IndexSample r = return_times(s.space, t, q("1/2"));
  CHECK(max_gap(r.prefix(60)).first == o.at("return_gap_60"));
  CHECK(max_gap(r).first == o.at("return_gap_300"));
  const PropertyReport m1 = check_minimality(s, MinimalityMode::M1, params(30, "1"));
  CHECK(m1.witnesses.at("subsets_checked") == o.at("m1_subsets_checked"));
}

TEST_CASE("minimal2 orbit of 1") {
  const System& s = fixture("minimal2-blocks");
  const PointTrace t(s.space, s.schedule, IntervalPoint{1}, 100);
  std::set<Rational> pts;
  for (std::uint64_t n = 0; n <= 100; ++n) pts.insert(std::get<IntervalPoint>(t.at(n)).value);
  std::vector<std::string> text;
  for (const auto& x : pts) text.push_back(format_rational(x));
  CHECK(text == frozen().at("minimal2").at("orbit_of_1").get<std::vector<std::string>>());
}

TEST_CASE("fixed points agree with the rational grid") {
  const json& o = frozen().at("fixed_points");
  const SpaceSpec I = SpaceSpec::interval();
  const RegionSet common = *fixed_points(fixture("nonsurjective-transitive")).region;
  const System g3 = periodic_system("g3", I, {{"g3", doubling_map()}});
  const RegionSet only = *fixed_points(g3).region;
  std::vector<std::string> a, b;
  for (std::uint64_t d = 1; d <= 64; ++d) {
    for (std::uint64_t n = 0; n <= d; ++n) {
      if (std::gcd(n, d) != 1) continue;
      const Rational x(static_cast<long>(n), static_cast<long>(d));
      if (contains(I, common, IntervalPoint{x})) a.push_back(format_rational(x));
      if (contains(I, only, IntervalPoint{x})) b.push_back(format_rational(x));
    }
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  CHECK(a == o.at("common_fixed_grid64").get<std::vector<std::string>>());
  CHECK(b == o.at("doubling_fixed_grid64").get<std::vector<std::string>>());
}

TEST_CASE("4-cycle first hits") {
  const json& o = frozen().at("cycle4");
  const System& s = fixture("k-transfer-counterexample");
  for (std::size_t u = 0; u < 4; ++u) {
    for (std::size_t v = 0; v < 4; ++v) {
      const IndexSample h = hitting_set(s.space, s.schedule, IndexSet(4, {u}), IndexSet(4, {v}), 20);
      const json& want = o.at("nds_first_hits").at(std::to_string(u) + "->" + std::to_string(v));
      REQUIRE_FALSE(h.members.empty());
      CHECK(h.members.front() == want);
    }
  }
  const PropertyReport g = check_transitive(period_system(s), TransitivityKind::Transitive, params(20, "1"));
  const auto pair = o.at("g_failing_pair").get<std::vector<std::size_t>>();
  CHECK(g.witnesses.at("failing").at("u") == pair[0]);
  CHECK(g.witnesses.at("failing").at("v") == pair[1]);
}

TEST_CASE("isolated point hitting times") {
  const json& o = frozen().at("finite_hitting").at("hits_to_a");
  const System& s = fixture("finite-hitting-isolated");
  for (std::size_t u = 0; u < 5; ++u) {
    const IndexSample h = hitting_set(s.space, s.schedule, IndexSet(5, {u}), IndexSet(5, {4}), 20);
    CHECK(h.members == members(o.at(std::to_string(u))));
  }
}

TEST_CASE("sampled first hits bound the exact ones") {
  const json& o = frozen().at("nonsurjective");
  const PropertyReport r =
      check_transitive(fixture("nonsurjective-transitive"), TransitivityKind::Transitive, params(60, "1/8"));
  REQUIRE(r.verdict == Verdict::Holds);
  CHECK(r.witnesses.at("max_first_hit").get<std::uint64_t>() <= o.at("max_first_hit_upper_bound").get<std::uint64_t>());
  for (const auto& pj : r.witnesses.at("pairs")) {
    const std::string key = std::to_string(pj.at("u").get<int>()) + "->" + std::to_string(pj.at("v").get<int>());
    CHECK_MESSAGE(pj.at("first_hit").get<std::uint64_t>() <= o.at("first_hit_upper_bounds").at(key).get<std::uint64_t>(), key);
  }
}

TEST_CASE("doubling spread: exact hits contain the sampled ones") {
  const json& o = frozen().at("doubling_spread");
  const System g3g3 = periodic_system("g3g3", SpaceSpec::interval(), {{"a", doubling_map()}, {"b", doubling_map()}});
  const System g = period_system(g3g3);
  const CoverSpec cover = make_cover(g3g3.space, q("1/8"));
  for (std::size_t i = 0; i < cover.cells.size(); ++i) {
    const IndexSample nds = sensitivity_hits(g3g3.space, g3g3.schedule, cover.cells[i], q("1/4"), 30);
    const IndexSample red = sensitivity_hits(g.space, g.schedule, cover.cells[i], q("1/4"), 30);
    for (auto n : members(o.at("nds").at(i))) CHECK(nds.contains(n));
    for (auto n : members(o.at("reduced").at(i))) CHECK(red.contains(n));
    // Sampling only misses hits where the image is nearly a quarter wide.
    CHECK(nds.members.front() == members(o.at("nds").at(i)).front());
    CHECK(red.members.front() == members(o.at("reduced").at(i)).front());
  }
}

TEST_CASE("weak but not sensitive") {
  const json& o = frozen().at("weak_but_not");
  const System& s = fixture("weak-but-not");
  const CoverSpec cover = make_cover(s.space, q("1/4"));
  REQUIRE(cover.cells.size() == 8);
  for (std::size_t i = 0; i < 8; ++i) {
    const IndexSample h = sensitivity_hits(s.space, s.schedule, cover.cells[i], q("1/2"), 100);
    CHECK(h.members == members(o.at("strong_hits").at(i)));
  }
  CheckParams p = params(100, "1/4");
  p.delta = q("1/2");
  p.word_length = 8;
  const PropertyReport r = weak_scan(s, WeakKind::Sensitive, p);
  REQUIRE(r.verdict == Verdict::Holds);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(r.witnesses.at("cells").at(i).at("word").size() == o.at("shortest_weak_words").at(i).at(0).get<std::size_t>());
  }
}
