#pragma once

// Three-valued property detectors. "For every nonempty open set" is checked
// over the cells of a finite cover at a declared scale, and every report is
// stamped with that scale and the horizon.

#include "ndsys/hitting.hpp"
#include "ndsys/region.hpp"
#include "ndsys/schedule.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ndsys {

using json = nlohmann::json;

struct CoverSpec {
  SpaceSpec space;
  Rational width;
  std::vector<RegionSet> cells;
  /// One representative inside each cell.
  std::vector<Point> centers;
  /// Centers plus cell endpoints on the interval and the circle.
  std::vector<Point> probes;
};

/// Interval: relatively open dyadic intervals [0,h), (h,2h), ..., (1-h,1]
/// with h the largest power of 1/2 not above w. Circle: open dyadic arcs.
/// Finite: singletons. Shift: cylinders fixing coordinates |i| <= r, r >= 0
/// least with 2^-(r+1) <= w.
CoverSpec make_cover(const SpaceSpec& space, const Rational& width);

enum class PeriodicAnchor { First, All };

struct CheckParams {
  std::uint64_t horizon = 30;
  Rational width{1, 8};
  Rational delta{1, 4};
  Rational epsilon{1, 16};
  Rational eta{1, 32};
  Rational theta{1, 100};
  std::optional<std::uint64_t> sub_horizon;
  /// Thickly syndetic run length, periodic(k) and multi(m).
  std::uint64_t k = 1;
  std::uint64_t m = 2;
  std::uint64_t word_length = 8;
  std::uint64_t pair_budget = 200;
  std::uint64_t seed = 1;
  std::uint64_t workers = 1;
  PeriodicAnchor anchor = PeriodicAnchor::First;
  /// Equicontinuity targets; empty means {epsilon}.
  std::vector<Rational> epsilons;
  /// Equicontinuity delta grid 1/2, 1/4, ..., 2^-grid_depth.
  std::uint64_t grid_depth = 12;
};

struct PropertyReport {
  std::string property;
  Verdict verdict = Verdict::Inconclusive;
  /// "exhaustive", "horizon", "trend" or "grid".
  std::string basis = "horizon";
  json params = json::object();
  json witnesses = json::object();
  json provenance = json::object();
};

/// "HoldsEvidence", "FailsWitness", "Inconclusive".
const char* report_verdict_name(Verdict v);
Verdict parse_report_verdict(const std::string& s);

enum class SensitivityKind { Plain, Cofinite, Syndetic, Thick, ThicklySyndetic, Ergodic, Multi };
const char* sensitivity_property_name(SensitivityKind k);

PropertyReport check_sensitive(const System& sys, SensitivityKind kind, const CheckParams& p);

enum class TransitivityKind { Transitive, WeaklyMixing, Mixing };
PropertyReport check_transitive(const System& sys, TransitivityKind kind, const CheckParams& p);

PropertyReport check_accessible(const System& sys, const CheckParams& p);
PropertyReport check_kato(const System& sys, const CheckParams& p);

PropertyReport check_recurrent(const System& sys, const Point& x, const CheckParams& p);
PropertyReport check_almost_periodic(const System& sys, const Point& x, const CheckParams& p);
/// f^{kn}(x) = x for every kn <= T, anchored at f_1 (or at every f_i).
PropertyReport check_periodic(const System& sys, const Point& x, const CheckParams& p);
PropertyReport check_equicontinuity(const System& sys, const Point& x, const CheckParams& p);

struct FixedPoints {
  /// Interval, circle and finite spaces.
  std::optional<RegionSet> region;
  /// Shift: the enumerated common periodic points.
  std::vector<Point> points;
  bool empty() const { return region ? region->empty() : points.empty(); }
};
FixedPoints fixed_points(const System& sys);
PropertyReport check_fixed_points(const System& sys, const CheckParams& p);

PropertyReport li_yorke_scan(const System& sys, const CheckParams& p);
PropertyReport check_li_yorke_sensitive(const System& sys, const CheckParams& p);

enum class MinimalityMode { M1, M2 };
PropertyReport check_minimality(const System& sys, MinimalityMode mode, const CheckParams& p);

/// For every cell U, the least n <= T with X = U ∪ f_1^-1(U) ∪ ... ∪ f_1^-n(U).
PropertyReport check_preimage_cover(const System& sys, const CheckParams& p);

enum class WeakKind { Sensitive, Transitive, LiYorke };
PropertyReport weak_scan(const System& sys, WeakKind kind, const CheckParams& p);

/// Runs a detector by name: sensitive, cofinitely_sensitive,
/// syndetically_sensitive, thickly_sensitive, thickly_syndetically_sensitive,
/// ergodically_sensitive, multi_sensitive, transitive, weakly_mixing,
/// mixing, accessible, kato, li_yorke, li_yorke_sensitive, minimal_m1,
/// minimal_m2, weak_sensitive, weak_transitive, weak_li_yorke,
/// fixed_points, preimage_cover, and the point checks recurrent, almost_periodic, periodic,
/// equicontinuous (which need `point`).
PropertyReport run_check(const System& sys, const std::string& property, const CheckParams& p,
                         const std::optional<Point>& point = std::nullopt);
const std::vector<std::string>& property_names();
bool property_needs_point(const std::string& property);

/// Re-verifies a FailsWitness report from its stored witness; returns the
/// reason when the witness does not hold up.
std::optional<std::string> replay(const System& sys, const PropertyReport& report);

struct ChainReplay {
  std::vector<std::pair<std::string, Verdict>> verdicts;
  /// "A Holds but B does not" for each broken implication A => B.
  std::vector<std::string> violations;
};
/// mixing => weakly_mixing => transitive, and for sensitivity
/// cofinite => thickly_syndetic => {syndetic, thick} => plain, all on the
/// same traces.
ChainReplay implication_chain(const System& sys, const CheckParams& p);

/// Per-n diameters of the image of one cell, for plotting.
std::vector<std::pair<std::uint64_t, Real>> diameter_curve(const System& sys, const RegionSet& u,
                                                           std::uint64_t horizon);

json params_json(const CheckParams& p);

}  // namespace ndsys
