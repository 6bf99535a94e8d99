#pragma once

// Built-in example systems, each with a manifest of expected results.

#include "ndsys/detectors.hpp"
#include "ndsys/schedule.hpp"

#include <json.hpp>

#include <functional>
#include <string>
#include <vector>

namespace ndsys {

// Building blocks shared by the fixtures and the tests.

/// x/2 on [0,1].
MapSpec halving_map();
/// 2x on [0,1/2], 1 on [1/2,1].
MapSpec fold_map();
/// 2x on [0,1/2), 2x-1 on [1/2,1].
MapSpec doubling_map();
/// x -> x + steps*alpha.
MapSpec alpha_rotation(std::int64_t steps);
/// i -> i+power (mod n) on {0..n-1}.
MapSpec cycle_map(std::size_t n, std::int64_t power);
/// Constant map on a finite space.
MapSpec constant_map(std::size_t n, std::size_t value);

/// Periodic rule over the generators in the given order.
System periodic_system(std::string name, SpaceSpec space, std::vector<Generator> word);

struct ManifestEntry {
  std::string operation;
  std::string expected;
  /// "SOURCE" or "DERIVED".
  std::string tag;
  std::function<std::string(const System&, std::uint64_t workers)> run;
};

struct Fixture {
  std::string name;
  std::string anchor;
  std::string notes;
  System system;
  std::vector<ManifestEntry> manifest;
};

const std::vector<std::string>& list_fixtures();
/// Throws UnknownFixture.
const Fixture& get_fixture(const std::string& name);

struct DiffEntry {
  std::string operation;
  std::string expected;
  std::string actual;
  std::string tag;
};

struct FixtureDiff {
  std::string name;
  std::size_t checked = 0;
  std::vector<DiffEntry> failures;
  bool pass() const { return failures.empty(); }
};

FixtureDiff run_fixture(const std::string& name, std::uint64_t workers = 1);
json fixture_diff_to_json(const FixtureDiff& d);

/// Named constructions, each mapped to the one fixture encoding it.
struct Anchor {
  std::string id;
  std::string fixture;
};
const std::vector<Anchor>& example_anchors();

}  // namespace ndsys
