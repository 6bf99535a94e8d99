#pragma once

// Finite unions of basic sets, used as the stand-in for open sets.
//
//   IntervalSet  - unions of intervals with open/closed ends on [0,1], or on
//                  the circle [0,1) with 0 == 1.
//   IndexSet     - subsets of a finite space.
//   CylinderSet  - unions of cylinders in the two-sided binary shift.
//
// All three keep a canonical form, so operator== is set equality.

#include "ndsys/number.hpp"
#include "ndsys/space.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ndsys {

struct Interval {
  Real lo, hi;
  bool lo_closed = true;
  bool hi_closed = true;

  static Interval closed(Real a, Real b) { return {std::move(a), std::move(b), true, true}; }
  static Interval open(Real a, Real b) { return {std::move(a), std::move(b), false, false}; }
  static Interval point(const Real& a) { return {a, a, true, true}; }

  bool empty() const { return hi < lo || (lo == hi && !(lo_closed && hi_closed)); }
  bool contains(const Real& x) const;
  friend bool operator==(const Interval&, const Interval&) = default;
};

class IntervalSet {
 public:
  IntervalSet() = default;
  IntervalSet(SpaceKind kind, std::vector<Interval> parts);

  static IntervalSet full(SpaceKind kind);
  static IntervalSet empty_set(SpaceKind kind) { return IntervalSet(kind, {}); }

  SpaceKind kind() const { return kind_; }
  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }

  bool contains(const Real& x) const;
  IntervalSet unite(const IntervalSet& o) const;
  IntervalSet intersect(const IntervalSet& o) const;
  /// Circle only: translate by t (mod 1).
  IntervalSet rotated(const Real& t) const;

  Real diam() const;
  /// inf { d(x,y) : x in this, y in o }; zero when closures touch.
  Real gap(const IntervalSet& o) const;
  /// Some point inside the set; throws on empty.
  Real sample() const;

  std::string to_string() const;
  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  void canonicalize();

  SpaceKind kind_ = SpaceKind::Interval;
  std::vector<Interval> parts_;
};

class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::size_t space_size, std::vector<std::size_t> members);

  static IndexSet full(std::size_t n);

  std::size_t space_size() const { return size_; }
  const std::vector<std::size_t>& members() const { return members_; }
  bool empty() const { return members_.empty(); }
  bool contains(std::size_t i) const;
  IndexSet unite(const IndexSet& o) const;
  IndexSet intersect(const IndexSet& o) const;
  std::string to_string(std::int64_t first_label) const;
  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::size_t> members_;
};

/// One cylinder: fixed coordinates -> bits.
using Cylinder = std::map<std::int64_t, std::uint8_t>;

class CylinderSet {
 public:
  /// Empty set.
  CylinderSet() = default;
  explicit CylinderSet(const std::vector<Cylinder>& cylinders);

  static CylinderSet full();
  static CylinderSet single(const Cylinder& c) { return CylinderSet(std::vector<Cylinder>{c}); }

  bool empty() const { return patterns_.empty(); }
  bool contains(const SeqPoint& x) const;
  CylinderSet unite(const CylinderSet& o) const;
  CylinderSet intersect(const CylinderSet& o) const;
  /// Image under sigma^p, (sigma x)_i = x_{i+1}.
  CylinderSet shifted(std::int64_t power) const;

  Rational diam() const;
  Rational gap(const CylinderSet& o) const;
  SeqPoint sample() const;

  /// Coordinates the set depends on (minimal support).
  const std::vector<std::int64_t>& support() const { return support_; }
  /// Disjoint cylinders over the support.
  std::vector<Cylinder> cylinders() const;

  std::string to_string() const;
  friend bool operator==(const CylinderSet&, const CylinderSet&) = default;

 private:
  CylinderSet(std::vector<std::int64_t> support, std::vector<std::uint64_t> patterns);
  CylinderSet expanded(const std::vector<std::int64_t>& support) const;
  void minimize();

  std::vector<std::int64_t> support_;
  std::vector<std::uint64_t> patterns_;  // bit j <-> support_[j]
};

class RegionSet {
 public:
  RegionSet() = default;
  RegionSet(IntervalSet s) : body_(std::move(s)) {}  // NOLINT
  RegionSet(IndexSet s) : body_(std::move(s)) {}     // NOLINT
  RegionSet(CylinderSet s) : body_(std::move(s)) {}  // NOLINT

  static RegionSet full(const SpaceSpec& space);
  static RegionSet empty_in(const SpaceSpec& space);
  static RegionSet singleton(const SpaceSpec& space, const Point& p);

  SpaceKind kind() const;
  bool empty() const;

  const IntervalSet* as_intervals() const { return std::get_if<IntervalSet>(&body_); }
  const IndexSet* as_indices() const { return std::get_if<IndexSet>(&body_); }
  const CylinderSet* as_cylinders() const { return std::get_if<CylinderSet>(&body_); }

  friend bool operator==(const RegionSet&, const RegionSet&) = default;

 private:
  std::variant<IntervalSet, IndexSet, CylinderSet> body_;
};

void require_compatible(const SpaceSpec& space, const RegionSet& r);

bool contains(const SpaceSpec& space, const RegionSet& r, const Point& x);
RegionSet unite(const RegionSet& a, const RegionSet& b);
RegionSet intersect(const RegionSet& a, const RegionSet& b);
bool intersects(const RegionSet& a, const RegionSet& b);
Real diam(const SpaceSpec& space, const RegionSet& r);
/// inf distance between the two sets over the space metric.
Real gap(const SpaceSpec& space, const RegionSet& a, const RegionSet& b);
Point sample_point(const SpaceSpec& space, const RegionSet& r);
/// Open ball B(x, eps).
RegionSet ball(const SpaceSpec& space, const Point& x, const Rational& eps);

/// Canonical literal: "[0, 1/2) U {3/4}", "{0,2}", "[{0:1},{-1:0,1:1}]", "empty".
std::string format_region(const SpaceSpec& space, const RegionSet& r);
/// Accepts the literal syntax for intervals and points ("[a, b)", "{p}",
/// joined with "U"), label arrays "[0,2]" for finite spaces and either JSON
/// cylinder objects {"0":1} or arrays of them for the shift.
RegionSet parse_region(const SpaceSpec& space, std::string_view text);

}  // namespace ndsys
