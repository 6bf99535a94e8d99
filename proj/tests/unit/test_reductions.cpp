#include "support.hpp"

#include <doctest.h>

using namespace ndsys;
using ndtest::fixture;
using ndtest::params;
using ndtest::q;

namespace {

System g3g3() {
  return periodic_system("g3g3", SpaceSpec::interval(), {{"a", doubling_map()}, {"b", doubling_map()}});
}

}  // namespace

TEST_CASE("period map is the composed window") {
  CHECK(normalize(compile_period_map(fixture("nonsurjective-transitive").schedule)) == doubling_map());
  CHECK(normalize(compile_period_map(fixture("k-transfer-counterexample").schedule)) == cycle_map(4, 2));
  CHECK_THROWS_AS(compile_period_map(fixture("triangular-3pt").schedule), Error);
  CHECK_THROWS_AS(period_system(fixture("shift-growing-blocks")), Error);
}

TEST_CASE("sensitivity hits of g are the k-multiples of the NDS hits") {
  // Windows are compared directly here, so the period is taken from the word
  // length rather than the least period.
  struct Case {
    System sys;
    std::uint64_t k;
  };
  const std::vector<Case> cases = {
      {fixture("nonsurjective-transitive"), 3},
      {fixture("circle-alternating"), 2},
      {g3g3(), 2},
      {fixture("weak-but-not"), 2},
  };
  for (const auto& c : cases) {
    const System g = periodic_system("g", c.sys.space, {{"g", compile_window(c.sys.schedule, 1, c.k)}});
    const CoverSpec cover = make_cover(c.sys.space, q("1/4"));
    const Rational delta = c.sys.space.kind == SpaceKind::Shift ? q("1/2") : q("1/10");
    const std::uint64_t T = 12;
    for (const auto& u : cover.cells) {
      const IndexSample f = sensitivity_hits(c.sys.space, c.sys.schedule, u, delta, T * c.k);
      const IndexSample h = sensitivity_hits(g.space, g.schedule, u, delta, T);
      for (std::uint64_t n = 1; n <= T; ++n) CHECK_MESSAGE(h.contains(n) == f.contains(c.k * n), c.sys.name, " n=", n);
    }
  }
}

TEST_CASE("cofinite sensitivity transfers on the doubled map") {
  CheckParams p = params(30, "1/8");
  const TransferCase c = transfer_compare(g3g3(), "cofinitely_sensitive", p);
  CHECK(c.consistency == Consistency::Consistent);
  CHECK(c.nds_report.verdict == Verdict::Holds);
  CHECK(c.reduced_report.verdict == Verdict::Holds);
  CHECK(c.index == 2);
  const json j = transfer_case_to_json(c);
  CHECK(j.at("consistency") == "Consistent");
}

TEST_CASE("transitivity does not pass from the NDS to g") {
  const TransferCase c = transfer_compare(fixture("k-transfer-counterexample"), "transitive", params(20, "1"));
  CHECK(c.nds_report.verdict == Verdict::Holds);
  CHECK(c.reduced_report.verdict == Verdict::Fails);
  CHECK(c.consistency != Consistency::Violation);
  CHECK_THROWS_AS(transfer_compare(fixture("triangular-3pt"), "transitive", params(20, "1")), Error);
  CHECK_THROWS_AS(transfer_compare(g3g3(), "kato", params(20, "1/8")), Error);
}

TEST_CASE("shift compare") {
  const TransferCase c = shift_compare(fixture("nonsurjective-transitive"), 2, "sensitive", params(60, "1/8"));
  CHECK(c.mode == "shift");
  CHECK(c.index == 2);
  REQUIRE(c.directions.size() == 2);
  CHECK(c.directions[1].status == Consistency::NotApplicable);
  CHECK_FALSE(c.directions[1].reason.empty());
  CHECK(c.consistency != Consistency::Violation);
  CHECK_THROWS_AS(shift_compare(fixture("nonsurjective-transitive"), 1, "sensitive", params(20, "1/8")), Error);
}

TEST_CASE("theorem harness lists a fixture or a gap for each entry") {
  const auto& h = theorem_harness();
  CHECK(h.size() >= 5);
  for (const auto& e : h) {
    CHECK_FALSE(e.tag.empty());
    CHECK_FALSE(e.statement.empty());
    if (e.fixture != "needs-fixture") CHECK_NOTHROW(get_fixture(e.fixture));
  }
}
