#pragma once

// JSON documents: systems, maps, index samples and reports.
//
// Rationals are written as strings "p/q" (or "p"); circle positions may
// carry an alpha part, "q+c*a".

#include "ndsys/detectors.hpp"
#include "ndsys/hitting.hpp"
#include "ndsys/schedule.hpp"

#include <json.hpp>

#include <string>

namespace ndsys {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// 64-bit FNV-1a, as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

json space_to_json(const SpaceSpec& space);
SpaceSpec space_from_json(const json& j);

json map_to_json(const MapSpec& m);
/// `generators` resolves {"kind":"ref","name":...}; pass nullptr to forbid refs.
MapSpec map_from_json(const json& j, const std::vector<Generator>* generators = nullptr);

json rule_to_json(const Rule& r, const std::vector<Generator>& generators);
Rule rule_from_json(const json& j, const std::vector<Generator>& generators);

json system_to_json(const System& sys);
/// Validates structure and values; errors carry the failing JSON path.
System system_from_json(const json& j);
System load_system_file(const std::string& path);
/// Hash of the canonical system document.
std::string system_digest(const System& sys);

/// {"T": n, "members": [...]} plus an optional "cycle".
json sample_to_json(const IndexSample& s);
IndexSample sample_from_json(const json& j);

json class_verdict_to_json(const ClassVerdict& v);

/// Report JSON including its "hash" (FNV-1a of the canonical JSON without
/// the hash field).
json report_to_json(const PropertyReport& r);
PropertyReport report_from_json(const json& j);
std::string report_hash(const PropertyReport& r);

CheckParams params_from_json(const json& j, CheckParams base = {});
/// Library defaults overridden by the system's own defaults.
CheckParams system_params(const System& sys);

/// JSON Schema (draft 2020-12) of system documents.
const json& system_schema();

}  // namespace ndsys
