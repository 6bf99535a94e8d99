#include "ndsys/serialize.hpp"

#include "ndsys/error.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace ndsys {

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

[[noreturn]] void fail_at(const std::string& path, const std::string& msg, ErrorCode code = ErrorCode::Schema) {
  fail(code, "at " + (path.empty() ? std::string("/") : path) + ": " + msg);
}

const json& member(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail_at(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail_at(path, "missing '" + key + "'");
  return *it;
}

std::string string_at(const json& j, const std::string& path) {
  if (!j.is_string()) fail_at(path, "expected a string");
  return j.get<std::string>();
}

Rational rational_at(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) fail_at(path, "expected a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    fail_at(path, e.what(), ErrorCode::Parse);
  }
}

std::uint64_t uint_at(const json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    fail_at(path, "expected a nonnegative integer");
  }
  return j.get<std::uint64_t>();
}

std::int64_t int_at(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail_at(path, "expected an integer");
  return j.get<std::int64_t>();
}

json rat(const Rational& q) { return format_rational(q); }

}  // namespace

// ---------------------------------------------------------------------------
// Spaces and maps

json space_to_json(const SpaceSpec& space) {
  json j = {{"kind", space_kind_name(space.kind)}};
  if (space.kind == SpaceKind::Finite) {
    j["size"] = space.size;
    if (space.first_label != 0) j["first_label"] = space.first_label;
    if (!space.metric.empty()) {
      json rows = json::array();
      for (const auto& row : space.metric) {
        json r = json::array();
        for (const auto& v : row) r.push_back(rat(v));
        rows.push_back(r);
      }
      j["metric"] = rows;
    }
  }
  return j;
}

namespace {

SpaceSpec space_at(const json& j, const std::string& path) {
  const std::string kind = string_at(member(j, "kind", path), path + "/kind");
  SpaceSpec s;
  if (kind == "interval") {
    s = SpaceSpec::interval();
  } else if (kind == "circle") {
    s = SpaceSpec::circle();
  } else if (kind == "shift") {
    s = SpaceSpec::shift();
  } else if (kind == "finite") {
    s = SpaceSpec::finite(uint_at(member(j, "size", path), path + "/size"));
    if (j.contains("first_label")) s.first_label = int_at(j.at("first_label"), path + "/first_label");
    if (j.contains("metric")) {
      const json& rows = j.at("metric");
      if (!rows.is_array()) fail_at(path + "/metric", "expected an array of rows");
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string rp = path + "/metric/" + std::to_string(i);
        if (!rows[i].is_array()) fail_at(rp, "expected an array");
        std::vector<Rational> row;
        for (std::size_t k = 0; k < rows[i].size(); ++k) row.push_back(rational_at(rows[i][k], rp + "/" + std::to_string(k)));
        s.metric.push_back(std::move(row));
      }
    }
  } else {
    fail_at(path + "/kind", "unknown space kind '" + kind + "'");
  }
  try {
    s.validate();
  } catch (const Error& e) {
    fail_at(path, e.what(), e.code());
  }
  return s;
}

MapSpec map_at_path(const json& j, const std::vector<Generator>* gens, const std::string& path) {
  const std::string kind = string_at(member(j, "kind", path), path + "/kind");
  try {
    if (kind == "identity") return IdentityMap{};
    if (kind == "shift") return ShiftMap{j.contains("power") ? int_at(j.at("power"), path + "/power") : 1};
    if (kind == "rotation") {
      Rotation r;
      if (j.contains("step")) r.step = int_at(j.at("step"), path + "/step");
      if (j.contains("offset")) r.offset = rational_at(j.at("offset"), path + "/offset");
      return r;
    }
    if (kind == "finite") {
      const json& t = member(j, "table", path);
      if (!t.is_array()) fail_at(path + "/table", "expected an array");
      FiniteMap f;
      for (std::size_t i = 0; i < t.size(); ++i) f.table.push_back(uint_at(t[i], path + "/table/" + std::to_string(i)));
      return f;
    }
    if (kind == "pl") {
      const json& bs = member(j, "breakpoints", path);
      const json& ps = member(j, "pieces", path);
      if (!bs.is_array()) fail_at(path + "/breakpoints", "expected an array");
      if (!ps.is_array()) fail_at(path + "/pieces", "expected an array");
      std::vector<Rational> breaks;
      for (std::size_t i = 0; i < bs.size(); ++i) breaks.push_back(rational_at(bs[i], path + "/breakpoints/" + std::to_string(i)));
      std::vector<Affine> pieces;
      for (std::size_t i = 0; i < ps.size(); ++i) {
        const std::string pp = path + "/pieces/" + std::to_string(i);
        if (!ps[i].is_array() || ps[i].size() != 2) fail_at(pp, "expected [slope, intercept]");
        pieces.push_back(Affine{rational_at(ps[i][0], pp + "/0"), rational_at(ps[i][1], pp + "/1")});
      }
      std::map<Rational, Rational> points;
      if (j.contains("point_values")) {
        const json& pv = j.at("point_values");
        if (!pv.is_object()) fail_at(path + "/point_values", "expected an object");
        for (auto it = pv.begin(); it != pv.end(); ++it) {
          const std::string kp = path + "/point_values/" + it.key();
          points[rational_at(json(it.key()), kp)] = rational_at(it.value(), kp);
        }
      }
      return PLMap(std::move(breaks), std::move(pieces), std::move(points));
    }
    if (kind == "composite") {
      const json& ms = member(j, "maps", path);
      if (!ms.is_array() || ms.empty()) fail_at(path + "/maps", "expected a nonempty array");
      CompositeMap c;
      for (std::size_t i = 0; i < ms.size(); ++i) c.maps.push_back(map_at_path(ms[i], gens, path + "/maps/" + std::to_string(i)));
      return c;
    }
    if (kind == "inverse") return MapSpec::inverse_of(map_at_path(member(j, "of", path), gens, path + "/of"));
    if (kind == "ref") {
      const std::string name = string_at(member(j, "name", path), path + "/name");
      if (gens) {
        for (const auto& g : *gens) {
          if (g.name == name) return g.map;
        }
      }
      fail_at(path + "/name", "unknown generator '" + name + "'");
    }
  } catch (const Error& e) {
    const std::string what = e.what();
    if (what.rfind("at ", 0) == 0) throw;
    fail_at(path, what, e.code());
  }
  fail_at(path + "/kind", "unknown map kind '" + kind + "'");
}

}  // namespace

json map_to_json(const MapSpec& m) {
  return std::visit(
      [](const auto& body) -> json {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, IdentityMap>) {
          return {{"kind", "identity"}};
        } else if constexpr (std::is_same_v<T, ShiftMap>) {
          return {{"kind", "shift"}, {"power", body.power}};
        } else if constexpr (std::is_same_v<T, Rotation>) {
          return {{"kind", "rotation"}, {"step", body.step}, {"offset", rat(body.offset)}};
        } else if constexpr (std::is_same_v<T, FiniteMap>) {
          return {{"kind", "finite"}, {"table", body.table}};
        } else if constexpr (std::is_same_v<T, PLMap>) {
          json bs = json::array(), ps = json::array();
          for (const auto& b : body.breakpoints()) bs.push_back(rat(b));
          for (const auto& a : body.pieces()) ps.push_back({rat(a.slope), rat(a.intercept)});
          json j = {{"kind", "pl"}, {"breakpoints", bs}, {"pieces", ps}};
          if (!body.point_values().empty()) {
            json pv = json::object();
            for (const auto& [x, v] : body.point_values()) pv[format_rational(x)] = rat(v);
            j["point_values"] = pv;
          }
          return j;
        } else if constexpr (std::is_same_v<T, CompositeMap>) {
          json ms = json::array();
          for (const auto& x : body.maps) ms.push_back(map_to_json(x));
          return {{"kind", "composite"}, {"maps", ms}};
        } else {
          return {{"kind", "inverse"}, {"of", map_to_json(*body.inner)}};
        }
      },
      m.body);
}

MapSpec map_from_json(const json& j, const std::vector<Generator>* generators) { return map_at_path(j, generators, ""); }

// ---------------------------------------------------------------------------
// Rules

json rule_to_json(const Rule& r, const std::vector<Generator>& gens) {
  auto name = [&](std::size_t i) { return gens.at(i).name; };
  auto names = [&](const std::vector<std::size_t>& v) {
    json a = json::array();
    for (auto i : v) a.push_back(name(i));
    return a;
  };
  return std::visit(
      [&](const auto& body) -> json {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, PeriodicRule>) {
          return {{"kind", "periodic"}, {"word", names(body.word)}};
        } else if constexpr (std::is_same_v<T, TriangularRule>) {
          return {{"kind", "triangular"}, {"base", name(body.base)}, {"filler", name(body.filler)}};
        } else if constexpr (std::is_same_v<T, GrowingBlocksRule>) {
          return {{"kind", "growing_blocks"}, {"map", name(body.map)}, {"inverse", name(body.inverse)}, {"filler", name(body.filler)}};
        } else if constexpr (std::is_same_v<T, ExplicitRule>) {
          return {{"kind", "explicit"}, {"prefix", names(body.prefix)}, {"tail", names(body.tail)}};
        } else if constexpr (std::is_same_v<T, IndexedBlocksRule>) {
          return {{"kind", "indexed_blocks"}, {"family", body.family}};
        } else {
          return {{"kind", "offset"}, {"by", body.by}, {"inner", rule_to_json(*body.inner, gens)}};
        }
      },
      r);
}

namespace {

Rule rule_at(const json& j, const std::vector<Generator>& gens, const std::string& path) {
  auto index = [&](const json& v, const std::string& p) -> std::size_t {
    const std::string n = string_at(v, p);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (gens[i].name == n) return i;
    }
    fail_at(p, "unknown generator '" + n + "'");
  };
  auto indices = [&](const char* key, bool required) {
    std::vector<std::size_t> out;
    if (!j.contains(key)) {
      if (required) fail_at(path, std::string("missing '") + key + "'");
      return out;
    }
    const json& a = j.at(key);
    const std::string p = path + "/" + key;
    if (!a.is_array()) fail_at(p, "expected an array of generator names");
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(index(a[i], p + "/" + std::to_string(i)));
    return out;
  };
  const std::string kind = string_at(member(j, "kind", path), path + "/kind");
  if (kind == "periodic") return PeriodicRule{indices("word", true)};
  if (kind == "triangular") {
    return TriangularRule{index(member(j, "base", path), path + "/base"), index(member(j, "filler", path), path + "/filler")};
  }
  if (kind == "growing_blocks") {
    return GrowingBlocksRule{index(member(j, "map", path), path + "/map"), index(member(j, "inverse", path), path + "/inverse"),
                             index(member(j, "filler", path), path + "/filler")};
  }
  if (kind == "explicit") return ExplicitRule{indices("prefix", false), indices("tail", true)};
  if (kind == "indexed_blocks") return IndexedBlocksRule{string_at(member(j, "family", path), path + "/family")};
  if (kind == "offset") {
    OffsetRule o;
    o.by = uint_at(member(j, "by", path), path + "/by");
    o.inner = std::make_shared<const Rule>(rule_at(member(j, "inner", path), gens, path + "/inner"));
    return o;
  }
  fail_at(path + "/kind", "unknown schedule kind '" + kind + "'");
}

}  // namespace

Rule rule_from_json(const json& j, const std::vector<Generator>& gens) { return rule_at(j, gens, ""); }

// ---------------------------------------------------------------------------
// Systems

json system_to_json(const System& sys) {
  json gens = json::array();
  for (const auto& g : sys.schedule.generators()) gens.push_back({{"name", g.name}, {"map", map_to_json(g.map)}});
  json j = {{"schema_version", kSchemaVersion},
            {"name", sys.name},
            {"space", space_to_json(sys.space)},
            {"generators", gens},
            {"schedule", rule_to_json(sys.schedule.rule(), sys.schedule.generators())}};
  json d = json::object();
  const auto& df = sys.defaults;
  if (df.horizon) d["T"] = *df.horizon;
  if (df.width) d["w"] = rat(*df.width);
  if (df.delta) d["delta"] = rat(*df.delta);
  if (df.epsilon) d["epsilon"] = rat(*df.epsilon);
  if (df.theta) d["theta"] = rat(*df.theta);
  if (df.word_length) d["L"] = *df.word_length;
  if (!d.empty()) j["defaults"] = d;
  return j;
}

System system_from_json(const json& j) {
  if (!j.is_object()) fail_at("", "system document must be an object");
  const json& ver = member(j, "schema_version", "");
  if (!ver.is_number_integer() || ver.get<int>() != kSchemaVersion) {
    fail_at("/schema_version", "expected " + std::to_string(kSchemaVersion));
  }
  const std::string name = j.contains("name") ? string_at(j.at("name"), "/name") : "system";
  const SpaceSpec space = space_at(member(j, "space", ""), "/space");
  const json& gj = member(j, "generators", "");
  if (!gj.is_array() || gj.empty()) fail_at("/generators", "expected a nonempty array");
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < gj.size(); ++i) {
    const std::string p = "/generators/" + std::to_string(i);
    Generator g;
    g.name = string_at(member(gj[i], "name", p), p + "/name");
    for (const auto& other : gens) {
      if (other.name == g.name) fail_at(p + "/name", "duplicate generator name '" + g.name + "'");
    }
    g.map = map_at_path(member(gj[i], "map", p), &gens, p + "/map");
    try {
      require_acts_on(space, g.map);
      normalize(g.map);
    } catch (const Error& e) {
      fail_at(p + "/map", e.what(), e.code());
    }
    gens.push_back(std::move(g));
  }
  Rule rule = rule_at(member(j, "schedule", ""), gens, "/schedule");
  Defaults d;
  if (j.contains("defaults")) {
    const json& dj = j.at("defaults");
    if (!dj.is_object()) fail_at("/defaults", "expected an object");
    if (dj.contains("T")) d.horizon = uint_at(dj.at("T"), "/defaults/T");
    if (dj.contains("w")) d.width = rational_at(dj.at("w"), "/defaults/w");
    if (dj.contains("delta")) d.delta = rational_at(dj.at("delta"), "/defaults/delta");
    if (dj.contains("epsilon")) d.epsilon = rational_at(dj.at("epsilon"), "/defaults/epsilon");
    if (dj.contains("theta")) d.theta = rational_at(dj.at("theta"), "/defaults/theta");
    if (dj.contains("L")) d.word_length = uint_at(dj.at("L"), "/defaults/L");
  }
  try {
    System sys{name, space, Schedule(std::move(gens), std::move(rule)), d};
    validate_system(sys);
    return sys;
  } catch (const Error& e) {
    const std::string what = e.what();
    if (what.rfind("at ", 0) == 0) throw;
    fail_at("/schedule", what, e.code());
  }
}

System load_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Parse, "cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Parse, "'" + path + "' is not valid JSON: " + e.what());
  }
  return system_from_json(j);
}

std::string system_digest(const System& sys) { return fnv1a_hex(system_to_json(sys).dump()); }

// ---------------------------------------------------------------------------
// Samples and reports

json sample_to_json(const IndexSample& s) {
  json j = {{"T", s.horizon}, {"members", s.members}};
  if (s.cycle) {
    json pat = json::array();
    for (bool b : s.cycle->pattern) pat.push_back(b ? 1 : 0);
    j["cycle"] = {{"start", s.cycle->start}, {"period", s.cycle->period}, {"pattern", pat}};
  }
  if (s.approximate) j["approximate"] = true;
  return j;
}

IndexSample sample_from_json(const json& j) {
  IndexSample s = make_sample(uint_at(member(j, "T", ""), "/T"), [&] {
    std::vector<std::uint64_t> m;
    const json& a = member(j, "members", "");
    if (!a.is_array()) fail_at("/members", "expected an array");
    for (std::size_t i = 0; i < a.size(); ++i) m.push_back(uint_at(a[i], "/members/" + std::to_string(i)));
    return m;
  }());
  if (j.contains("cycle")) {
    const json& c = j.at("cycle");
    SampleCycle sc;
    sc.start = uint_at(member(c, "start", "/cycle"), "/cycle/start");
    sc.period = uint_at(member(c, "period", "/cycle"), "/cycle/period");
    for (const auto& b : member(c, "pattern", "/cycle")) sc.pattern.push_back(b.get<int>() != 0);
    if (sc.start < 1 || sc.period < 1 || sc.pattern.size() != sc.period) fail_at("/cycle", "inconsistent cycle");
    s.cycle = std::move(sc);
  }
  s.approximate = j.value("approximate", false);
  return s;
}

json class_verdict_to_json(const ClassVerdict& v) {
  json j = {{"verdict", verdict_name(v.verdict)},
            {"basis", v.basis},
            {"T", v.horizon},
            {"sub_horizon", v.sub_horizon},
            {"count", v.count},
            {"max_gap", v.max_gap},
            {"max_gap_sub", v.max_gap_sub},
            {"gap_at", {v.gap_at.first, v.gap_at.second}},
            {"longest_run", v.longest_run},
            {"longest_run_sub", v.longest_run_sub},
            {"tail_start", v.tail_start},
            {"density", format_rational(v.density)}};
  if (v.failing_run) j["failing_run"] = *v.failing_run;
  return j;
}

namespace {
json report_body(const PropertyReport& r) {
  return {{"property", r.property},
          {"verdict", report_verdict_name(r.verdict)},
          {"basis", r.basis},
          {"params", r.params},
          {"witnesses", r.witnesses},
          {"provenance", r.provenance}};
}
}  // namespace

std::string report_hash(const PropertyReport& r) { return fnv1a_hex(report_body(r).dump()); }

json report_to_json(const PropertyReport& r) {
  json j = report_body(r);
  j["hash"] = report_hash(r);
  return j;
}

PropertyReport report_from_json(const json& j) {
  PropertyReport r;
  r.property = string_at(member(j, "property", ""), "/property");
  r.verdict = parse_report_verdict(string_at(member(j, "verdict", ""), "/verdict"));
  r.basis = j.value("basis", "horizon");
  r.params = j.value("params", json::object());
  r.witnesses = j.value("witnesses", json::object());
  r.provenance = j.value("provenance", json::object());
  return r;
}

CheckParams params_from_json(const json& j, CheckParams p) {
  if (!j.is_object()) fail_at("", "parameters must be an object");
  if (j.contains("T")) p.horizon = uint_at(j.at("T"), "/T");
  if (j.contains("w")) p.width = rational_at(j.at("w"), "/w");
  if (j.contains("delta")) p.delta = rational_at(j.at("delta"), "/delta");
  if (j.contains("epsilon")) p.epsilon = rational_at(j.at("epsilon"), "/epsilon");
  if (j.contains("eta")) p.eta = rational_at(j.at("eta"), "/eta");
  if (j.contains("theta")) p.theta = rational_at(j.at("theta"), "/theta");
  if (j.contains("k")) p.k = uint_at(j.at("k"), "/k");
  if (j.contains("m")) p.m = uint_at(j.at("m"), "/m");
  if (j.contains("L")) p.word_length = uint_at(j.at("L"), "/L");
  if (j.contains("pair_budget")) p.pair_budget = uint_at(j.at("pair_budget"), "/pair_budget");
  if (j.contains("seed")) p.seed = uint_at(j.at("seed"), "/seed");
  if (j.contains("sub_horizon")) p.sub_horizon = uint_at(j.at("sub_horizon"), "/sub_horizon");
  if (j.contains("grid_depth")) p.grid_depth = uint_at(j.at("grid_depth"), "/grid_depth");
  if (j.contains("anchor")) {
    const std::string a = string_at(j.at("anchor"), "/anchor");
    if (a != "first" && a != "all") fail_at("/anchor", "expected \"first\" or \"all\"");
    p.anchor = a == "first" ? PeriodicAnchor::First : PeriodicAnchor::All;
  }
  if (j.contains("epsilons")) {
    p.epsilons.clear();
    const json& e = j.at("epsilons");
    if (!e.is_array()) fail_at("/epsilons", "expected an array");
    for (std::size_t i = 0; i < e.size(); ++i) p.epsilons.push_back(rational_at(e[i], "/epsilons/" + std::to_string(i)));
  }
  return p;
}

CheckParams system_params(const System& sys) {
  CheckParams p;
  const Defaults& d = sys.defaults;
  if (d.horizon) p.horizon = *d.horizon;
  if (d.width) p.width = *d.width;
  if (d.delta) p.delta = *d.delta;
  if (d.epsilon) p.epsilon = *d.epsilon;
  if (d.theta) p.theta = *d.theta;
  if (d.word_length) p.word_length = *d.word_length;
  return p;
}

// ---------------------------------------------------------------------------

const json& system_schema() {
  static const json schema = json::parse(R"JSON({
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "title": "ndsys system document",
  "type": "object",
  "required": ["schema_version", "space", "generators", "schedule"],
  "additionalProperties": false,
  "properties": {
    "schema_version": {"const": 1},
    "name": {"type": "string"},
    "space": {"$ref": "#/$defs/space"},
    "generators": {
      "type": "array",
      "minItems": 1,
      "items": {
        "type": "object",
        "required": ["name", "map"],
        "additionalProperties": false,
        "properties": {"name": {"type": "string"}, "map": {"$ref": "#/$defs/map"}}
      }
    },
    "schedule": {"$ref": "#/$defs/rule"},
    "defaults": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "T": {"type": "integer", "minimum": 1},
        "w": {"$ref": "#/$defs/rational"},
        "delta": {"$ref": "#/$defs/rational"},
        "epsilon": {"$ref": "#/$defs/rational"},
        "theta": {"$ref": "#/$defs/rational"},
        "L": {"type": "integer", "minimum": 1}
      }
    }
  },
  "$defs": {
    "rational": {
      "oneOf": [
        {"type": "string", "pattern": "^-?[0-9]+(/[0-9]+)?$"},
        {"type": "integer"}
      ]
    },
    "name_list": {"type": "array", "items": {"type": "string"}},
    "space": {
      "type": "object",
      "required": ["kind"],
      "properties": {
        "kind": {"enum": ["interval", "circle", "finite", "shift"]},
        "size": {"type": "integer", "minimum": 1},
        "first_label": {"type": "integer"},
        "metric": {"type": "array", "items": {"type": "array", "items": {"$ref": "#/$defs/rational"}}}
      }
    },
    "map": {
      "type": "object",
      "required": ["kind"],
      "oneOf": [
        {"properties": {"kind": {"const": "identity"}}},
        {"properties": {"kind": {"const": "shift"}, "power": {"type": "integer"}}},
        {"properties": {"kind": {"const": "rotation"}, "step": {"type": "integer"}, "offset": {"$ref": "#/$defs/rational"}}},
        {"properties": {"kind": {"const": "finite"}, "table": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
         "required": ["table"]},
        {"properties": {
           "kind": {"const": "pl"},
           "breakpoints": {"type": "array", "items": {"$ref": "#/$defs/rational"}, "minItems": 2},
           "pieces": {"type": "array", "items": {"type": "array", "items": {"$ref": "#/$defs/rational"}, "minItems": 2, "maxItems": 2}},
           "point_values": {"type": "object", "additionalProperties": {"$ref": "#/$defs/rational"}}},
         "required": ["breakpoints", "pieces"]},
        {"properties": {"kind": {"const": "composite"}, "maps": {"type": "array", "items": {"$ref": "#/$defs/map"}, "minItems": 1}},
         "required": ["maps"]},
        {"properties": {"kind": {"const": "inverse"}, "of": {"$ref": "#/$defs/map"}}, "required": ["of"]},
        {"properties": {"kind": {"const": "ref"}, "name": {"type": "string"}}, "required": ["name"]}
      ]
    },
    "rule": {
      "type": "object",
      "required": ["kind"],
      "oneOf": [
        {"properties": {"kind": {"const": "periodic"}, "word": {"$ref": "#/$defs/name_list"}}, "required": ["word"]},
        {"properties": {"kind": {"const": "triangular"}, "base": {"type": "string"}, "filler": {"type": "string"}},
         "required": ["base", "filler"]},
        {"properties": {"kind": {"const": "growing_blocks"}, "map": {"type": "string"}, "inverse": {"type": "string"},
                        "filler": {"type": "string"}},
         "required": ["map", "inverse", "filler"]},
        {"properties": {"kind": {"const": "explicit"}, "prefix": {"$ref": "#/$defs/name_list"}, "tail": {"$ref": "#/$defs/name_list"}},
         "required": ["tail"]},
        {"properties": {"kind": {"const": "indexed_blocks"}, "family": {"enum": ["minimal2"]}}, "required": ["family"]},
        {"properties": {"kind": {"const": "offset"}, "by": {"type": "integer", "minimum": 0}, "inner": {"$ref": "#/$defs/rule"}},
         "required": ["by", "inner"]}
      ]
    }
  }
})JSON");
  return schema;
}

}  // namespace ndsys
