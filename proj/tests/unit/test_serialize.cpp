#include "support.hpp"

#include <doctest.h>

using namespace ndsys;
using ndtest::fixture;
using ndtest::params;
using ndtest::q;

namespace {

std::string error_of(const json& j) {
  try {
    system_from_json(j);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

json doubling_doc() {
  return json::parse(R"({
    "schema_version": 1,
    "name": "g3",
    "space": {"kind": "interval"},
    "generators": [{"name": "g3", "map": {"kind": "pl", "breakpoints": ["0", "1/2", "1"],
                    "pieces": [["2", "0"], ["2", "-1"]]}}],
    "schedule": {"kind": "periodic", "word": ["g3"]}
  })");
}

}  // namespace

TEST_CASE("every fixture round-trips through JSON") {
  for (const auto& name : list_fixtures()) {
    const System& s = fixture(name.c_str());
    const json j = system_to_json(s);
    const System back = system_from_json(j);
    CHECK_MESSAGE(system_to_json(back) == j, name);
    CHECK(system_digest(back) == system_digest(s));
    for (std::uint64_t n = 1; n <= 40; ++n) CHECK(back.schedule.map_at(n) == s.schedule.map_at(n));
  }
}

TEST_CASE("a hand-written document loads") {
  const System s = system_from_json(doubling_doc());
  CHECK(s.schedule.map_at(7) == doubling_map());
  CHECK(system_digest(s).size() == 16);
}

TEST_CASE("schema errors name the failing path") {
  json j = doubling_doc();
  j["generators"][0]["map"]["pieces"][1][0] = 0.5;
  CHECK(error_of(j).find("at /generators/0/map/pieces/1/0") != std::string::npos);
  j = doubling_doc();
  j.erase("space");
  CHECK(error_of(j).find("at /: missing 'space'") != std::string::npos);
  j = doubling_doc();
  j["schedule"]["word"][0] = "nope";
  CHECK(error_of(j).find("at /schedule/word/0") != std::string::npos);
  j = doubling_doc();
  j["generators"][0]["map"]["breakpoints"][1] = "x/2";
  CHECK(error_of(j).find("at /generators/0/map/breakpoints/1") != std::string::npos);
  j = doubling_doc();
  j["schema_version"] = 99;
  CHECK_FALSE(error_of(j).empty());
}

TEST_CASE("samples round-trip") {
  const System& s = fixture("k-transfer-counterexample");
  const IndexSample h = hitting_set(s.space, s.schedule, IndexSet(4, {0}), IndexSet(4, {1}), 10);
  CHECK(sample_from_json(sample_to_json(h)) == h);
}

TEST_CASE("reports hash stably") {
  const System& s = fixture("circle-alternating");
  CheckParams p = params(50, "1/8");
  const PropertyReport a = check_minimality(s, MinimalityMode::M2, p);
  const PropertyReport b = check_minimality(s, MinimalityMode::M2, p);
  CHECK(report_hash(a) == report_hash(b));
  const json j = report_to_json(a);
  CHECK(j.at("hash") == report_hash(a));
  CHECK(j.at("verdict") == "FailsWitness");
  const PropertyReport back = report_from_json(j);
  CHECK(report_hash(back) == report_hash(a));
  p.horizon = 51;
  CHECK(report_hash(check_minimality(s, MinimalityMode::M2, p)) != report_hash(a));
}

TEST_CASE("parameters from JSON") {
  const CheckParams p = params_from_json(json::parse(R"({"T": 12, "w": "1/4", "delta": "1/3", "k": 2})"));
  CHECK(p.horizon == 12);
  CHECK(p.width == q("1/4"));
  CHECK(p.delta == q("1/3"));
  CHECK(p.k == 2);
  CHECK_THROWS_AS(params_from_json(json::parse(R"({"w": 0.25})")), Error);
}

TEST_CASE("schema document") {
  const json& s = system_schema();
  CHECK(s.at("$schema") == "https://json-schema.org/draft/2020-12/schema");
  CHECK(s.at("required").size() >= 4);
}
