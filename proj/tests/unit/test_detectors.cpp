#include "support.hpp"

#include <doctest.h>

using namespace ndsys;
using ndtest::fixture;
using ndtest::params;
using ndtest::q;

TEST_CASE("covers") {
  const CoverSpec i = make_cover(SpaceSpec::interval(), q("1/8"));
  CHECK(i.cells.size() == 8);
  CHECK(format_region(i.space, i.cells.front()) == "[0, 1/8)");
  CHECK(format_region(i.space, i.cells.back()) == "(7/8, 1]");
  CHECK(make_cover(SpaceSpec::interval(), q("1/5")).cells.size() == 8);
  CHECK(make_cover(SpaceSpec::finite(4), 1).cells.size() == 4);
  // Cylinders fix |i| <= 1 once 2^-2 <= w.
  CHECK(make_cover(SpaceSpec::shift(), q("1/4")).cells.size() == 8);
  CHECK(make_cover(SpaceSpec::shift(), 1).cells.size() == 2);
  CHECK(make_cover(SpaceSpec::circle(), q("1/4")).cells.size() == 4);
}

TEST_CASE("rotations are not sensitive and the report says why") {
  CheckParams p = params(100, "1/8");
  p.delta = q("1/10");
  const PropertyReport r = check_sensitive(fixture("circle-alternating"), SensitivityKind::Plain, p);
  CHECK(r.verdict == Verdict::Fails);
  CHECK(r.basis == "exhaustive");
  CHECK(r.witnesses.at("isometries") == true);
  CHECK(r.witnesses.at("cover_width") == "1/10");
  CHECK_FALSE(replay(fixture("circle-alternating"), r).has_value());
}

TEST_CASE("isometries are never sensitive, whatever delta") {
  for (const char* name : {"circle-alternating", "k-transfer-counterexample"}) {
    for (const char* d : {"1/2", "1/10", "1/100"}) {
      CheckParams p = params(40, "1/4");
      p.delta = q(d);
      const PropertyReport r = check_sensitive(fixture(name), SensitivityKind::Plain, p);
      CHECK_MESSAGE(r.verdict == Verdict::Fails, name, " ", d);
      CHECK(r.basis == "exhaustive");
    }
  }
}

TEST_CASE("the shift is not an isometry: fine cylinders spread") {
  CheckParams p = params(40, "1/4");
  p.delta = q("1/10");
  CHECK(check_sensitive(fixture("weak-but-not"), SensitivityKind::Plain, p).verdict == Verdict::Holds);
  p.delta = q("1/100");
  CHECK_THROWS_AS(check_sensitive(fixture("weak-but-not"), SensitivityKind::Plain, p), Error);
}

TEST_CASE("doubling spreads every small interval") {
  const System g3 = periodic_system("g3", SpaceSpec::interval(), {{"g3", doubling_map()}});
  for (auto kind : {SensitivityKind::Plain, SensitivityKind::Cofinite, SensitivityKind::Syndetic,
                    SensitivityKind::ThicklySyndetic, SensitivityKind::Thick}) {
    const PropertyReport r = check_sensitive(g3, kind, params(30, "1/8"));
    CHECK_MESSAGE(r.verdict == Verdict::Holds, sensitivity_property_name(kind));
  }
}

TEST_CASE("multi-sensitivity with m = 1 matches plain sensitivity") {
  for (const auto& name : list_fixtures()) {
    const System& s = fixture(name.c_str());
    if (s.space.kind == SpaceKind::Finite) continue;
    CheckParams p = system_params(s);
    p.horizon = 40;
    p.width = q("1/4");
    p.m = 1;
    const auto a = check_sensitive(s, SensitivityKind::Plain, p);
    const auto b = check_sensitive(s, SensitivityKind::Multi, p);
    CHECK_MESSAGE(a.verdict == b.verdict, name);
  }
}

TEST_CASE("transitivity family") {
  const System& k = fixture("k-transfer-counterexample");
  CHECK(check_transitive(k, TransitivityKind::Transitive, params(20, "1")).verdict == Verdict::Holds);
  const PropertyReport g = check_transitive(period_system(k), TransitivityKind::Transitive, params(20, "1"));
  CHECK(g.verdict == Verdict::Fails);
  CHECK(g.basis == "exhaustive");
  CHECK_FALSE(replay(period_system(k), g).has_value());
  // The 4-cycle is never mixing: hits to a cell are a residue class.
  CHECK(check_transitive(k, TransitivityKind::Mixing, params(20, "1")).verdict == Verdict::Fails);
}

TEST_CASE("point checks") {
  const System& tri = fixture("triangular-3pt");
  CheckParams p = params(60, "1");
  p.epsilon = q("1/2");
  CHECK(check_recurrent(tri, FinitePoint{0}, p).verdict == Verdict::Holds);
  const System& c = fixture("circle-alternating");
  CheckParams pc = params(50, "1/8");
  pc.k = 2;
  CHECK(check_periodic(c, CirclePoint(Real(q("1/3"))), pc).verdict == Verdict::Holds);
  pc.k = 1;
  CHECK(check_periodic(c, CirclePoint(Real(q("1/3"))), pc).verdict == Verdict::Fails);
  CHECK(check_equicontinuity(c, CirclePoint(Real(0)), pc).verdict == Verdict::Holds);
}

TEST_CASE("fixed points") {
  CHECK(format_region(SpaceSpec::interval(), *fixed_points(fixture("nonsurjective-transitive")).region) == "{0}");
  const System g3 = periodic_system("g3", SpaceSpec::interval(), {{"g3", doubling_map()}});
  CHECK(format_region(g3.space, *fixed_points(g3).region) == "{0} U {1}");
  CHECK(fixed_points(fixture("k-transfer-counterexample")).empty());
}

TEST_CASE("minimality") {
  const PropertyReport m2 = check_minimality(fixture("minimal2-blocks"), MinimalityMode::M2, params(50, "1/8"));
  CHECK(m2.verdict == Verdict::Fails);
  CHECK(m2.witnesses.at("failing_count").get<std::uint64_t>() >= 1);
  const PropertyReport m1 = check_minimality(fixture("triangular-3pt"), MinimalityMode::M1, params(30, "1"));
  CHECK(m1.verdict == Verdict::Holds);
  CHECK(m1.witnesses.at("subsets_checked") == 7);
}

TEST_CASE("doubling: Kato holds and the implication chain is clean") {
  const System g3 = periodic_system("g3", SpaceSpec::interval(), {{"g3", doubling_map()}});
  CheckParams p = params(30, "1/8");
  p.delta = q("1/4");
  p.epsilon = q("1/16");
  CHECK(check_kato(g3, p).verdict == Verdict::Holds);
  const ChainReplay c = implication_chain(g3, p);
  CHECK(c.violations.empty());
  CHECK_FALSE(c.verdicts.empty());
}

TEST_CASE("implication chain on every fixture") {
  for (const auto& name : list_fixtures()) {
    const System& s = fixture(name.c_str());
    CheckParams p = system_params(s);
    p.horizon = 40;
    const ChainReplay c = implication_chain(s, p);
    CHECK_MESSAGE(c.violations.empty(), name);
  }
}

TEST_CASE("every Fails report replays") {
  for (const auto& name : list_fixtures()) {
    const System& s = fixture(name.c_str());
    CheckParams p = system_params(s);
    p.horizon = 30;
    for (const auto& prop : property_names()) {
      if (property_needs_point(prop)) continue;
      PropertyReport r;
      try {
        r = run_check(s, prop, p);
      } catch (const Error&) {
        continue;
      }
      if (r.verdict != Verdict::Fails) continue;
      const auto why = replay(s, r);
      CHECK_MESSAGE(!why.has_value(), name, " ", prop, " ", why.value_or(""));
    }
  }
}

TEST_CASE("tampered witnesses are rejected") {
  const System& k = fixture("k-transfer-counterexample");
  const System g = period_system(k);
  PropertyReport r = check_transitive(g, TransitivityKind::Transitive, params(20, "1"));
  REQUIRE(r.verdict == Verdict::Fails);
  r.witnesses["failing"]["v_region"] = "{2}";
  r.witnesses["failing"]["v"] = 2;
  CHECK(replay(g, r).has_value());
}

TEST_CASE("detector arguments are validated") {
  const System& s = fixture("circle-alternating");
  CheckParams p = params(0, "1/8");
  CHECK_THROWS_AS(check_sensitive(s, SensitivityKind::Plain, p), Error);
  p = params(10, "1/8");
  p.delta = 0;
  CHECK_THROWS_AS(check_sensitive(s, SensitivityKind::Plain, p), Error);
  CHECK_THROWS_AS(run_check(s, "no_such_property", params(10, "1/8")), Error);
  CHECK_THROWS_AS(run_check(s, "recurrent", params(10, "1/8")), Error);
}

TEST_CASE("results do not depend on the worker count") {
  const System& s = fixture("nonsurjective-transitive");
  CheckParams a = params(40, "1/8");
  CheckParams b = a;
  b.workers = 4;
  CHECK(report_hash(check_transitive(s, TransitivityKind::Transitive, a)) ==
        report_hash(check_transitive(s, TransitivityKind::Transitive, b)));
  CHECK(report_hash(check_sensitive(s, SensitivityKind::Syndetic, a)) ==
        report_hash(check_sensitive(s, SensitivityKind::Syndetic, b)));
}
