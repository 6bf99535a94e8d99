#include "ndsys/detectors.hpp"

#include "detectors_internal.hpp"
#include "ndsys/serialize.hpp"

#include <map>
#include <set>

namespace ndsys {

using namespace detail;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::Schema, std::string("witness lacks '") + key + "'");
  return j.at(key);
}

RegionSet region_field(const SpaceSpec& space, const json& j, const char* key) {
  return parse_region(space, field(j, key).get<std::string>());
}

Point point_field(const SpaceSpec& space, const json& j, const char* key) {
  return parse_point(space, field(j, key).get<std::string>());
}

std::optional<std::string> replay_sensitivity(const System& sys, const PropertyReport& rep, const CheckParams& p) {
  const json& f = field(rep.witnesses, "failing");
  if (rep.property == "multi_sensitive") {
    std::optional<IndexSample> common;
    for (const auto& text : field(f, "regions")) {
      const auto h = sensitivity_hits(sys.space, sys.schedule, parse_region(sys.space, text.get<std::string>()),
                                      p.delta, p.horizon);
      common = common ? intersect(*common, h) : h;
    }
    if (!common) return "witness lists no cells";
    if (const auto n = first_member(*common)) return "cells share the hit " + std::to_string(*n);
    return std::nullopt;
  }
  const RegionSet cell = region_field(sys.space, f, "region");
  const IndexSample hits = sensitivity_hits(sys.space, sys.schedule, cell, p.delta, p.horizon);
  if (f.contains("hits") && sample_to_json(hits) != f.at("hits")) return "recomputed hit set differs from the stored one";
  if (rep.property == "sensitive") {
    if (const auto n = first_member(hits)) return "cell is spread at n = " + std::to_string(*n);
    return std::nullopt;
  }
  static const std::map<std::string, SetClass> classes = {{"cofinitely_sensitive", SetClass::Cofinite},
                                                          {"syndetically_sensitive", SetClass::Syndetic},
                                                          {"thickly_sensitive", SetClass::Thick},
                                                          {"thickly_syndetically_sensitive", SetClass::ThicklySyndetic},
                                                          {"ergodically_sensitive", SetClass::UpperDensity}};
  ClassifyOptions opts;
  opts.k = p.k;
  opts.theta = p.theta;
  opts.sub_horizon = p.sub_horizon;
  if (classify(hits, classes.at(rep.property), opts).verdict != Verdict::Fails) return "classifier no longer fails";
  return std::nullopt;
}

std::optional<std::string> replay_transitivity(const System& sys, const PropertyReport& rep, const CheckParams& p) {
  const json& f = field(rep.witnesses, "failing");
  auto pair_hits = [&](const json& pj) {
    return hitting_set(sys.space, sys.schedule, region_field(sys.space, pj, "u_region"),
                       region_field(sys.space, pj, "v_region"), p.horizon);
  };
  if (rep.property == "weakly_mixing" && f.contains("first")) {
    const IndexSample common = intersect(pair_hits(field(f, "first")), pair_hits(field(f, "second")));
    if (const auto n = first_member(common)) return "pairs share the time " + std::to_string(*n);
    return std::nullopt;
  }
  const IndexSample h = pair_hits(f);
  if (rep.property == "transitive") {
    if (const auto n = first_member(h)) return "image meets the target at n = " + std::to_string(*n);
    return std::nullopt;
  }
  ClassifyOptions opts;
  opts.sub_horizon = p.sub_horizon;
  if (classify(h, SetClass::Cofinite, opts).verdict != Verdict::Fails) return "hitting set is no longer rejected";
  return std::nullopt;
}

std::optional<std::string> replay_accessible(const System& sys, const json& w, const CheckParams& p) {
  const json& f = field(w, "failing");
  const ImageTrace tu(sys.space, sys.schedule, region_field(sys.space, f, "u_region"), p.horizon);
  const ImageTrace tv(sys.space, sys.schedule, region_field(sys.space, f, "v_region"), p.horizon);
  for (std::uint64_t n = 1; n <= p.horizon; ++n) {
    if (gap(sys.space, tu.at(n), tv.at(n)) < Real(p.epsilon)) return "images come within epsilon at n = " + std::to_string(n);
  }
  return std::nullopt;
}

std::optional<std::string> replay_minimality(const System& sys, const PropertyReport& rep, const CheckParams& p) {
  const json& w = rep.witnesses;
  if (rep.property == "minimal_m2") {
    const json& f = field(w, "failing").at(0);
    const Point x = point_field(sys.space, f, "point");
    const RegionSet cell = region_field(sys.space, f, "missed_region");
    const PointTrace trace(sys.space, sys.schedule, x, p.horizon);
    for (std::uint64_t n = 0; n <= p.horizon; ++n) {
      if (contains(sys.space, cell, trace.at(n))) return "orbit enters the cell at n = " + std::to_string(n);
    }
    return std::nullopt;
  }
  const auto maps = schedule_maps(sys.schedule);
  if (sys.space.kind == SpaceKind::Finite) {
    const RegionSet sub = region_field(sys.space, w, "invariant_subset");
    if (sub.empty() || sub == RegionSet::full(sys.space)) return "subset is not proper and nonempty";
    for (const auto& m : maps) {
      for (auto i : sub.as_indices()->members()) {
        if (!contains(sys.space, sub, eval(m, FinitePoint{i}))) return "subset is not invariant";
      }
    }
    return std::nullopt;
  }
  std::set<std::string> pts;
  for (const auto& t : field(w, "invariant_points")) pts.insert(format_point(sys.space, parse_point(sys.space, t.get<std::string>())));
  for (const auto& t : pts) {
    const Point x = parse_point(sys.space, t);
    for (const auto& m : maps) {
      if (!pts.count(format_point(sys.space, eval(m, x)))) return "point set is not invariant";
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> replay(const System& sys, const PropertyReport& rep) {
  if (rep.verdict != Verdict::Fails) return "only FailsWitness reports carry a replayable witness";
  const CheckParams p = params_from_json(rep.params);
  const json& w = rep.witnesses;
  const std::string& prop = rep.property;
  if (prop == "sensitive" || prop == "cofinitely_sensitive" || prop == "syndetically_sensitive" ||
      prop == "thickly_sensitive" || prop == "thickly_syndetically_sensitive" || prop == "ergodically_sensitive" ||
      prop == "multi_sensitive") {
    return replay_sensitivity(sys, rep, p);
  }
  if (prop == "transitive" || prop == "weakly_mixing" || prop == "mixing") return replay_transitivity(sys, rep, p);
  if (prop == "accessible") return replay_accessible(sys, w, p);
  if (prop == "kato") {
    const json& s = field(w, "sensitive");
    if (field(s, "verdict") == "FailsWitness") {
      PropertyReport sub = rep;
      sub.property = "sensitive";
      sub.witnesses = field(s, "witnesses");
      return replay(sys, sub);
    }
    return replay_accessible(sys, field(field(w, "accessible"), "witnesses"), p);
  }
  if (prop == "minimal_m1" || prop == "minimal_m2") return replay_minimality(sys, rep, p);
  if (prop == "li_yorke" || prop == "li_yorke_sensitive" || prop == "weak_li_yorke") {
    if (!w.value("isometries", false) || !all_isometries(sys)) return "failure rests on isometries, which do not hold";
    return std::nullopt;
  }
  if (prop == "weak_sensitive" || prop == "weak_transitive") {
    if (w.value("isometries", false) && !all_isometries(sys)) return "generators are not isometries";
    const PropertyReport again = weak_scan(sys, prop == "weak_sensitive" ? WeakKind::Sensitive : WeakKind::Transitive, p);
    if (again.verdict != Verdict::Fails || again.witnesses.at("failing") != field(w, "failing")) {
      return "word search no longer fails on the stored cell";
    }
    return std::nullopt;
  }
  if (prop == "preimage_cover") {
    const json& f = field(w, "failing");
    const RegionSet cell = region_field(sys.space, f, "region");
    RegionSet acc = cell;
    for (std::uint64_t n = 1; n <= p.horizon; ++n) acc = unite(acc, window_preimage(sys.space, sys.schedule, cell, n));
    if (acc == RegionSet::full(sys.space)) return "preimages cover the space";
    return std::nullopt;
  }
  if (prop == "fixed_points") {
    if (!fixed_points(sys).empty()) return "fixed points exist";
    return std::nullopt;
  }
  const Point x = parse_point(sys.space, field(rep.params, "point").get<std::string>());
  if (prop == "recurrent") {
    const PointTrace trace(sys.space, sys.schedule, x, p.horizon);
    if (const auto n = first_member(return_times(sys.space, trace, p.epsilon))) return "point returns at n = " + std::to_string(*n);
    return std::nullopt;
  }
  if (prop == "almost_periodic") {
    const PointTrace trace(sys.space, sys.schedule, x, p.horizon);
    ClassifyOptions opts;
    opts.sub_horizon = p.sub_horizon;
    if (classify(return_times(sys.space, trace, p.epsilon), SetClass::Syndetic, opts).verdict != Verdict::Fails) {
      return "return times are no longer rejected";
    }
    return std::nullopt;
  }
  if (prop == "periodic") {
    const json& f = field(w, "failing");
    const auto anchor = field(f, "anchor").get<std::uint64_t>();
    const auto n = field(f, "n").get<std::uint64_t>();
    Point y = x;
    for (std::uint64_t i = anchor; i < anchor + n; ++i) y = eval(sys.schedule.map_at(i), y);
    if (y == x) return "the window returns to the point";
    return std::nullopt;
  }
  if (prop == "equicontinuous") {
    const json& f = field(w, "failing");
    const Point y = point_field(sys.space, f, "probe");
    const auto n = field(f, "n").get<std::uint64_t>();
    const Rational eps = parse_rational(field(f, "epsilon").get<std::string>());
    const Rational delta = parse_rational(field(f, "delta").get<std::string>());
    if (!(distance(sys.space, x, y) < Real(delta))) return "probe lies outside the ball";
    const Real d = distance(sys.space, orbit_point(sys.schedule, x, n), orbit_point(sys.schedule, y, n));
    if (d < Real(eps)) return "probe stays within epsilon";
    return std::nullopt;
  }
  return "no replay for property '" + prop + "'";
}

}  // namespace ndsys
