#include "support.hpp"

#include <doctest.h>

#include <set>

using namespace ndsys;

TEST_CASE("every fixture matches its manifest") {
  for (const auto& name : list_fixtures()) {
    const FixtureDiff d = run_fixture(name);
    for (const auto& e : d.failures) MESSAGE(name, ": ", e.operation, " expected ", e.expected, " got ", e.actual);
    CHECK_MESSAGE(d.pass(), name);
    CHECK(d.checked == get_fixture(name).manifest.size());
  }
}

TEST_CASE("manifests agree across worker counts") {
  for (const auto& name : {"nonsurjective-transitive", "weak-but-not"}) {
    CHECK(fixture_diff_to_json(run_fixture(name, 1)) == fixture_diff_to_json(run_fixture(name, 4)));
  }
}

TEST_CASE("anchors map one-to-one onto fixtures") {
  std::set<std::string> ids, fixtures;
  for (const auto& a : example_anchors()) {
    CHECK(ids.insert(a.id).second);
    CHECK(fixtures.insert(a.fixture).second);
    CHECK(get_fixture(a.fixture).anchor == a.id);
  }
  CHECK(fixtures.size() == list_fixtures().size());
}

TEST_CASE("unknown fixtures are reported") {
  try {
    get_fixture("nope");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownFixture);
  }
}

TEST_CASE("manifest tags") {
  for (const auto& name : list_fixtures()) {
    for (const auto& e : get_fixture(name).manifest) CHECK((e.tag == "SOURCE" || e.tag == "DERIVED"));
  }
}
