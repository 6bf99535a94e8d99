#pragma once

// k-periodic reduction to the autonomous map g = f_k o ... o f_1, sequence
// shifts f_{n,oo}, and paired runs that compare a property on both sides.

#include "ndsys/detectors.hpp"
#include "ndsys/schedule.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace ndsys {

/// g = compile_window(s, 1, k) for the least period k; NotPeriodic otherwise.
MapSpec compile_period_map(const Schedule& s);
/// Periodic{g} on the same space.
System period_system(const System& sys);

enum class Consistency { Consistent, Violation, NotApplicable };
const char* consistency_name(Consistency c);

struct DirectionCheck {
  /// "nds=>reduced" or "reduced=>nds".
  std::string direction;
  Consistency status = Consistency::NotApplicable;
  std::string reason;
};

struct TransferCase {
  std::string system;
  /// "period" or "shift".
  std::string mode;
  /// Period k, or the start index n of f_{n,oo}.
  std::uint64_t index = 0;
  std::string property;
  std::string theorem_tag;
  json hypotheses = json::object();
  PropertyReport nds_report;
  PropertyReport reduced_report;
  std::vector<DirectionCheck> directions;
  /// Violation if any direction is violated, else Consistent if any
  /// direction was checked, else NotApplicable.
  Consistency consistency = Consistency::NotApplicable;
};

/// Runs the property on the NDS and on Periodic{g} at the same parameters.
/// Supported: the sensitivity family, li_yorke_sensitive, li_yorke and the
/// transitivity family.
TransferCase transfer_compare(const System& sys, const std::string& property, const CheckParams& p);

/// Runs the property on the NDS and on f_{n,oo} (n >= 2). Supported:
/// sensitive, multi_sensitive, syndetically_sensitive,
/// cofinitely_sensitive and ergodically_sensitive.
TransferCase shift_compare(const System& sys, std::uint64_t n, const std::string& property, const CheckParams& p);

json transfer_case_to_json(const TransferCase& c);

/// Every transfer theorem the harness knows, with the fixture exercising it
/// or "needs-fixture".
struct TheoremEntry {
  std::string tag;
  std::string statement;
  std::string fixture;
};
const std::vector<TheoremEntry>& theorem_harness();

}  // namespace ndsys
