#include "ndsys/region.hpp"

#include "ndsys/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <regex>
#include <set>
#include <sstream>

namespace ndsys {

// ---------------------------------------------------------------------------
// Interval / IntervalSet

bool Interval::contains(const Real& x) const {
  if (x < lo || x > hi) return false;
  if (x == lo && !lo_closed) return false;
  if (x == hi && !hi_closed) return false;
  return true;
}

namespace {

// Interval of differences x - y for x in a, y in b, as a closed range.
std::pair<Real, Real> difference_range(const Interval& a, const Interval& b) {
  return {a.lo - b.hi, a.hi - b.lo};
}

// Arc-length distance of the point with lift t from 0.
Real arc_norm(const Real& t) {
  Real f = t.frac();
  return min(f, Real(1) - f);
}

Rational ceil_of(const Real& x) { return -((-x).floor()); }

void push_arc(std::vector<Interval>& out, Interval iv) {
  // Lifts an arc [lo, hi] with hi - lo <= 1 back into [0,1).
  const Rational f = iv.lo.floor();
  iv.lo -= Real(f);
  iv.hi -= Real(f);
  if (iv.hi <= Real(1)) {
    out.push_back(iv);
    return;
  }
  out.push_back({iv.lo, Real(1), iv.lo_closed, false});
  out.push_back({Real(0), iv.hi - Real(1), true, iv.hi_closed});
}

}  // namespace

IntervalSet::IntervalSet(SpaceKind kind, std::vector<Interval> parts)
    : kind_(kind), parts_(std::move(parts)) {
  if (kind_ != SpaceKind::Interval && kind_ != SpaceKind::Circle) {
    fail(ErrorCode::SpaceMismatch, "interval sets live on the interval or the circle");
  }
  canonicalize();
}

IntervalSet IntervalSet::full(SpaceKind kind) {
  if (kind == SpaceKind::Circle) return IntervalSet(kind, {{Real(0), Real(1), true, false}});
  return IntervalSet(kind, {Interval::closed(Real(0), Real(1))});
}

void IntervalSet::canonicalize() {
  std::vector<Interval> clipped;
  clipped.reserve(parts_.size() + 1);
  if (kind_ == SpaceKind::Circle) {
    std::vector<Interval> lifted;
    for (const auto& iv : parts_) {
      if (iv.empty()) continue;
      if (iv.hi - iv.lo >= Real(1)) {
        lifted = {{Real(0), Real(1), true, false}};
        break;
      }
      push_arc(lifted, iv);
    }
    parts_ = std::move(lifted);
  }
  bool add_zero = false;
  for (Interval iv : parts_) {
    if (iv.lo < Real(0)) {
      iv.lo = Real(0);
      iv.lo_closed = true;
    }
    if (iv.hi > Real(1)) {
      iv.hi = Real(1);
      iv.hi_closed = true;
    }
    if (iv.empty()) continue;
    if (kind_ == SpaceKind::Circle && iv.hi == Real(1) && iv.hi_closed) {
      iv.hi_closed = false;
      add_zero = true;
      if (iv.empty()) continue;
    }
    clipped.push_back(std::move(iv));
  }
  if (add_zero) clipped.push_back(Interval::point(Real(0)));
  std::sort(clipped.begin(), clipped.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
  });
  std::vector<Interval> merged;
  for (auto& iv : clipped) {
    if (!merged.empty()) {
      Interval& cur = merged.back();
      const bool overlaps = iv.lo < cur.hi || (iv.lo == cur.hi && (cur.hi_closed || iv.lo_closed));
      if (overlaps) {
        if (iv.lo == cur.lo) cur.lo_closed = cur.lo_closed || iv.lo_closed;
        if (iv.hi > cur.hi) {
          cur.hi = iv.hi;
          cur.hi_closed = iv.hi_closed;
        } else if (iv.hi == cur.hi) {
          cur.hi_closed = cur.hi_closed || iv.hi_closed;
        }
        continue;
      }
    }
    merged.push_back(std::move(iv));
  }
  parts_ = std::move(merged);
}

bool IntervalSet::contains(const Real& x) const {
  const Real y = kind_ == SpaceKind::Circle ? x.frac() : x;
  for (const auto& iv : parts_) {
    if (iv.contains(y)) return true;
  }
  return false;
}

IntervalSet IntervalSet::unite(const IntervalSet& o) const {
  if (o.kind_ != kind_) fail(ErrorCode::SpaceMismatch, "union of interval sets from different spaces");
  std::vector<Interval> all = parts_;
  all.insert(all.end(), o.parts_.begin(), o.parts_.end());
  return IntervalSet(kind_, std::move(all));
}

IntervalSet IntervalSet::intersect(const IntervalSet& o) const {
  if (o.kind_ != kind_) fail(ErrorCode::SpaceMismatch, "intersection of interval sets from different spaces");
  std::vector<Interval> out;
  for (const auto& a : parts_) {
    for (const auto& b : o.parts_) {
      Interval c;
      if (a.lo > b.lo) {
        c.lo = a.lo;
        c.lo_closed = a.lo_closed;
      } else if (b.lo > a.lo) {
        c.lo = b.lo;
        c.lo_closed = b.lo_closed;
      } else {
        c.lo = a.lo;
        c.lo_closed = a.lo_closed && b.lo_closed;
      }
      if (a.hi < b.hi) {
        c.hi = a.hi;
        c.hi_closed = a.hi_closed;
      } else if (b.hi < a.hi) {
        c.hi = b.hi;
        c.hi_closed = b.hi_closed;
      } else {
        c.hi = a.hi;
        c.hi_closed = a.hi_closed && b.hi_closed;
      }
      if (!c.empty()) out.push_back(std::move(c));
    }
  }
  return IntervalSet(kind_, std::move(out));
}

IntervalSet IntervalSet::rotated(const Real& t) const {
  if (kind_ != SpaceKind::Circle) fail(ErrorCode::SpaceMismatch, "rotation of a non-circle set");
  std::vector<Interval> out;
  for (const auto& iv : parts_) push_arc(out, {iv.lo + t, iv.hi + t, iv.lo_closed, iv.hi_closed});
  return IntervalSet(kind_, std::move(out));
}

Real IntervalSet::diam() const {
  if (parts_.empty()) return Real(0);
  if (kind_ == SpaceKind::Interval) return parts_.back().hi - parts_.front().lo;
  Real best(0);
  const Real half(Rational(1, 2));
  for (const auto& a : parts_) {
    for (const auto& b : parts_) {
      auto [p, q] = difference_range(a, b);
      const Real c = half + Real(ceil_of(p - half));
      if (c <= q) return half;
      best = max(best, max(arc_norm(p), arc_norm(q)));
    }
  }
  return best;
}

Real IntervalSet::gap(const IntervalSet& o) const {
  if (o.kind_ != kind_) fail(ErrorCode::SpaceMismatch, "gap between interval sets from different spaces");
  if (parts_.empty() || o.parts_.empty()) fail(ErrorCode::BadParameter, "gap of an empty set");
  std::optional<Real> best;
  for (const auto& a : parts_) {
    for (const auto& b : o.parts_) {
      Real d(0);
      if (kind_ == SpaceKind::Interval) {
        if (a.hi < b.lo) d = b.lo - a.hi;
        else if (b.hi < a.lo) d = a.lo - b.hi;
      } else {
        auto [p, q] = difference_range(a, b);
        if (Real(ceil_of(p)) > q) d = min(arc_norm(p), arc_norm(q));
      }
      if (!best || d < *best) best = d;
    }
  }
  return *best;
}

Real IntervalSet::sample() const {
  if (parts_.empty()) fail(ErrorCode::BadParameter, "cannot sample the empty set");
  const Interval& iv = parts_.front();
  if (iv.lo == iv.hi) return iv.lo;
  return (iv.lo + iv.hi) / Rational(2);
}

std::string IntervalSet::to_string() const {
  if (parts_.empty()) return "empty";
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    const auto& iv = parts_[i];
    if (i > 0) out += " U ";
    if (iv.lo == iv.hi) {
      out += "{" + iv.lo.to_string() + "}";
    } else {
      out += iv.lo_closed ? "[" : "(";
      out += iv.lo.to_string() + ", " + iv.hi.to_string();
      out += iv.hi_closed ? "]" : ")";
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// IndexSet

IndexSet::IndexSet(std::size_t space_size, std::vector<std::size_t> members)
    : size_(space_size), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && members_.back() >= size_) {
    fail(ErrorCode::SpaceMismatch, "index set member outside the finite space");
  }
}

IndexSet IndexSet::full(std::size_t n) {
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  return IndexSet(n, std::move(all));
}

bool IndexSet::contains(std::size_t i) const {
  return std::binary_search(members_.begin(), members_.end(), i);
}

IndexSet IndexSet::unite(const IndexSet& o) const {
  if (o.size_ != size_) fail(ErrorCode::SpaceMismatch, "index sets from different finite spaces");
  std::vector<std::size_t> out;
  std::set_union(members_.begin(), members_.end(), o.members_.begin(), o.members_.end(), std::back_inserter(out));
  return IndexSet(size_, std::move(out));
}

IndexSet IndexSet::intersect(const IndexSet& o) const {
  if (o.size_ != size_) fail(ErrorCode::SpaceMismatch, "index sets from different finite spaces");
  std::vector<std::size_t> out;
  std::set_intersection(members_.begin(), members_.end(), o.members_.begin(), o.members_.end(),
                        std::back_inserter(out));
  return IndexSet(size_, std::move(out));
}

std::string IndexSet::to_string(std::int64_t first_label) const {
  std::string out = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(static_cast<std::int64_t>(members_[i]) + first_label);
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// CylinderSet

namespace {

constexpr std::size_t kMaxSupport = 24;

std::int64_t least_free_coordinate(const std::vector<std::int64_t>& support) {
  for (std::int64_t k = 0;; ++k) {
    const bool pos = std::binary_search(support.begin(), support.end(), k);
    const bool neg = std::binary_search(support.begin(), support.end(), -k);
    if (!pos || !neg) return k;
  }
}

}  // namespace

CylinderSet::CylinderSet(std::vector<std::int64_t> support, std::vector<std::uint64_t> patterns)
    : support_(std::move(support)), patterns_(std::move(patterns)) {
  std::sort(patterns_.begin(), patterns_.end());
  patterns_.erase(std::unique(patterns_.begin(), patterns_.end()), patterns_.end());
  minimize();
}

CylinderSet::CylinderSet(const std::vector<Cylinder>& cylinders) {
  std::set<std::int64_t> coords;
  for (const auto& c : cylinders) {
    for (const auto& [i, b] : c) {
      if (b > 1) fail(ErrorCode::BadParameter, "cylinder bits must be 0 or 1");
      coords.insert(i);
    }
  }
  support_.assign(coords.begin(), coords.end());
  if (support_.size() > kMaxSupport) fail(ErrorCode::Unsupported, "cylinder support too large");
  for (const auto& c : cylinders) {
    std::vector<std::size_t> free_bits;
    std::uint64_t base = 0;
    for (std::size_t j = 0; j < support_.size(); ++j) {
      auto it = c.find(support_[j]);
      if (it == c.end()) free_bits.push_back(j);
      else if (it->second) base |= (std::uint64_t{1} << j);
    }
    const std::uint64_t combos = std::uint64_t{1} << free_bits.size();
    for (std::uint64_t m = 0; m < combos; ++m) {
      std::uint64_t p = base;
      for (std::size_t f = 0; f < free_bits.size(); ++f) {
        if (m & (std::uint64_t{1} << f)) p |= std::uint64_t{1} << free_bits[f];
      }
      patterns_.push_back(p);
    }
  }
  std::sort(patterns_.begin(), patterns_.end());
  patterns_.erase(std::unique(patterns_.begin(), patterns_.end()), patterns_.end());
  minimize();
}

CylinderSet CylinderSet::full() { return CylinderSet({}, {0}); }

void CylinderSet::minimize() {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t j = 0; j < support_.size(); ++j) {
      const std::uint64_t bit = std::uint64_t{1} << j;
      bool irrelevant = true;
      for (auto p : patterns_) {
        if (!std::binary_search(patterns_.begin(), patterns_.end(), p ^ bit)) {
          irrelevant = false;
          break;
        }
      }
      if (!irrelevant) continue;
      std::vector<std::uint64_t> projected;
      for (auto p : patterns_) {
        const std::uint64_t low = p & (bit - 1);
        const std::uint64_t high = (p >> (j + 1)) << j;
        projected.push_back(low | high);
      }
      std::sort(projected.begin(), projected.end());
      projected.erase(std::unique(projected.begin(), projected.end()), projected.end());
      patterns_ = std::move(projected);
      support_.erase(support_.begin() + static_cast<std::ptrdiff_t>(j));
      changed = true;
      break;
    }
  }
  if (patterns_.empty()) support_.clear();
}

CylinderSet CylinderSet::expanded(const std::vector<std::int64_t>& support) const {
  // support must contain support_
  std::vector<std::size_t> where(support_.size());
  for (std::size_t j = 0; j < support_.size(); ++j) {
    where[j] = static_cast<std::size_t>(std::lower_bound(support.begin(), support.end(), support_[j]) - support.begin());
  }
  std::vector<std::size_t> free_bits;
  for (std::size_t j = 0; j < support.size(); ++j) {
    if (!std::binary_search(support_.begin(), support_.end(), support[j])) free_bits.push_back(j);
  }
  CylinderSet out;
  out.support_ = support;
  const std::uint64_t combos = std::uint64_t{1} << free_bits.size();
  for (auto p : patterns_) {
    std::uint64_t base = 0;
    for (std::size_t j = 0; j < support_.size(); ++j) {
      if (p & (std::uint64_t{1} << j)) base |= std::uint64_t{1} << where[j];
    }
    for (std::uint64_t m = 0; m < combos; ++m) {
      std::uint64_t q = base;
      for (std::size_t f = 0; f < free_bits.size(); ++f) {
        if (m & (std::uint64_t{1} << f)) q |= std::uint64_t{1} << free_bits[f];
      }
      out.patterns_.push_back(q);
    }
  }
  std::sort(out.patterns_.begin(), out.patterns_.end());
  return out;
}

namespace {

std::vector<std::int64_t> merged_support(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  std::vector<std::int64_t> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  if (out.size() > kMaxSupport) fail(ErrorCode::Unsupported, "cylinder support too large");
  return out;
}

}  // namespace

bool CylinderSet::contains(const SeqPoint& x) const {
  std::uint64_t p = 0;
  for (std::size_t j = 0; j < support_.size(); ++j) {
    if (x.at(support_[j])) p |= std::uint64_t{1} << j;
  }
  return std::binary_search(patterns_.begin(), patterns_.end(), p);
}

CylinderSet CylinderSet::unite(const CylinderSet& o) const {
  if (empty()) return o;
  if (o.empty()) return *this;
  auto s = merged_support(support_, o.support_);
  auto a = expanded(s);
  auto b = o.expanded(s);
  std::vector<std::uint64_t> out;
  std::set_union(a.patterns_.begin(), a.patterns_.end(), b.patterns_.begin(), b.patterns_.end(),
                 std::back_inserter(out));
  return CylinderSet(std::move(s), std::move(out));
}

CylinderSet CylinderSet::intersect(const CylinderSet& o) const {
  if (empty() || o.empty()) return CylinderSet();
  auto s = merged_support(support_, o.support_);
  auto a = expanded(s);
  auto b = o.expanded(s);
  std::vector<std::uint64_t> out;
  std::set_intersection(a.patterns_.begin(), a.patterns_.end(), b.patterns_.begin(), b.patterns_.end(),
                        std::back_inserter(out));
  return CylinderSet(std::move(s), std::move(out));
}

CylinderSet CylinderSet::shifted(std::int64_t power) const {
  CylinderSet out = *this;
  for (auto& i : out.support_) i -= power;
  return out;
}

Rational CylinderSet::diam() const {
  if (empty()) return 0;
  std::int64_t k = least_free_coordinate(support_);
  for (std::size_t a = 0; a < patterns_.size(); ++a) {
    for (std::size_t b = a + 1; b < patterns_.size(); ++b) {
      const std::uint64_t diff = patterns_[a] ^ patterns_[b];
      for (std::size_t j = 0; j < support_.size(); ++j) {
        if (diff & (std::uint64_t{1} << j)) k = std::min(k, std::abs(support_[j]));
      }
    }
  }
  return dyadic(k);
}

Rational CylinderSet::gap(const CylinderSet& o) const {
  if (empty() || o.empty()) fail(ErrorCode::BadParameter, "gap of an empty set");
  if (!intersect(o).empty()) return 0;
  auto s = merged_support(support_, o.support_);
  auto a = expanded(s);
  auto b = o.expanded(s);
  std::int64_t best = -1;  // largest first-difference index over pairs
  for (auto p : a.patterns_) {
    for (auto q : b.patterns_) {
      const std::uint64_t diff = p ^ q;
      std::int64_t k = INT64_MAX;
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (diff & (std::uint64_t{1} << j)) k = std::min(k, std::abs(s[j]));
      }
      best = std::max(best, k);
    }
  }
  return dyadic(best);
}

SeqPoint CylinderSet::sample() const {
  if (empty()) fail(ErrorCode::BadParameter, "cannot sample the empty set");
  if (support_.empty()) return SeqPoint::constant(0);
  const std::int64_t lo = support_.front();
  const std::int64_t hi = support_.back();
  std::vector<std::uint8_t> center(static_cast<std::size_t>(hi - lo + 1), 0);
  for (std::size_t j = 0; j < support_.size(); ++j) {
    center[static_cast<std::size_t>(support_[j] - lo)] = (patterns_.front() >> j) & 1U;
  }
  return SeqPoint({0}, std::move(center), {0}, lo);
}

std::vector<Cylinder> CylinderSet::cylinders() const {
  std::vector<Cylinder> out;
  for (auto p : patterns_) {
    Cylinder c;
    for (std::size_t j = 0; j < support_.size(); ++j) c[support_[j]] = (p >> j) & 1U;
    out.push_back(std::move(c));
  }
  return out;
}

std::string CylinderSet::to_string() const {
  if (empty()) return "empty";
  std::string out = "[";
  auto cyl = cylinders();
  for (std::size_t i = 0; i < cyl.size(); ++i) {
    if (i > 0) out += ",";
    out += "{";
    bool first = true;
    for (const auto& [coord, bit] : cyl[i]) {
      if (!first) out += ",";
      first = false;
      out += std::to_string(coord) + ":" + std::to_string(bit);
    }
    out += "}";
  }
  return out + "]";
}

// ---------------------------------------------------------------------------
// RegionSet

RegionSet RegionSet::full(const SpaceSpec& space) {
  switch (space.kind) {
    case SpaceKind::Interval:
    case SpaceKind::Circle: return IntervalSet::full(space.kind);
    case SpaceKind::Finite: return IndexSet::full(space.size);
    case SpaceKind::Shift: return CylinderSet::full();
  }
  return {};
}

RegionSet RegionSet::empty_in(const SpaceSpec& space) {
  switch (space.kind) {
    case SpaceKind::Interval:
    case SpaceKind::Circle: return IntervalSet::empty_set(space.kind);
    case SpaceKind::Finite: return IndexSet(space.size, {});
    case SpaceKind::Shift: return CylinderSet();
  }
  return {};
}

RegionSet RegionSet::singleton(const SpaceSpec& space, const Point& p) {
  require_in_space(space, p);
  switch (space.kind) {
    case SpaceKind::Interval:
      return IntervalSet(space.kind, {Interval::point(Real(std::get<IntervalPoint>(p).value))});
    case SpaceKind::Circle:
      return IntervalSet(space.kind, {Interval::point(std::get<CirclePoint>(p).position)});
    case SpaceKind::Finite: return IndexSet(space.size, {std::get<FinitePoint>(p).index});
    case SpaceKind::Shift:
      fail(ErrorCode::Unsupported, "single sequences are not cylinder sets");
  }
  return {};
}

SpaceKind RegionSet::kind() const {
  if (const auto* s = as_intervals()) return s->kind();
  if (as_indices() != nullptr) return SpaceKind::Finite;
  return SpaceKind::Shift;
}

bool RegionSet::empty() const {
  return std::visit([](const auto& s) { return s.empty(); }, body_);
}

void require_compatible(const SpaceSpec& space, const RegionSet& r) {
  if (r.kind() != space.kind) {
    fail(ErrorCode::SpaceMismatch, std::string("region of kind ") + space_kind_name(r.kind()) + " used in a " +
                                       space_kind_name(space.kind) + " space");
  }
  if (const auto* s = r.as_indices(); s != nullptr && s->space_size() != space.size) {
    fail(ErrorCode::SpaceMismatch, "index set from a finite space of a different size");
  }
}

bool contains(const SpaceSpec& space, const RegionSet& r, const Point& x) {
  require_compatible(space, r);
  require_in_space(space, x);
  switch (space.kind) {
    case SpaceKind::Interval: return r.as_intervals()->contains(Real(std::get<IntervalPoint>(x).value));
    case SpaceKind::Circle: return r.as_intervals()->contains(std::get<CirclePoint>(x).position);
    case SpaceKind::Finite: return r.as_indices()->contains(std::get<FinitePoint>(x).index);
    case SpaceKind::Shift: return r.as_cylinders()->contains(std::get<SeqPoint>(x));
  }
  return false;
}

namespace {

void require_same_kind(const RegionSet& a, const RegionSet& b) {
  if (a.kind() != b.kind()) fail(ErrorCode::SpaceMismatch, "regions from different spaces");
}

}  // namespace

RegionSet unite(const RegionSet& a, const RegionSet& b) {
  require_same_kind(a, b);
  if (const auto* s = a.as_intervals()) return s->unite(*b.as_intervals());
  if (const auto* s = a.as_indices()) return s->unite(*b.as_indices());
  return a.as_cylinders()->unite(*b.as_cylinders());
}

RegionSet intersect(const RegionSet& a, const RegionSet& b) {
  require_same_kind(a, b);
  if (const auto* s = a.as_intervals()) return s->intersect(*b.as_intervals());
  if (const auto* s = a.as_indices()) return s->intersect(*b.as_indices());
  return a.as_cylinders()->intersect(*b.as_cylinders());
}

bool intersects(const RegionSet& a, const RegionSet& b) { return !intersect(a, b).empty(); }

Real diam(const SpaceSpec& space, const RegionSet& r) {
  require_compatible(space, r);
  if (const auto* s = r.as_intervals()) return s->diam();
  if (const auto* s = r.as_cylinders()) return Real(s->diam());
  const auto& m = r.as_indices()->members();
  Rational best = 0;
  for (std::size_t a = 0; a < m.size(); ++a) {
    for (std::size_t b = a + 1; b < m.size(); ++b) {
      best = std::max(best, space.metric.empty() ? Rational(1) : space.metric[m[a]][m[b]]);
    }
  }
  return Real(best);
}

Real gap(const SpaceSpec& space, const RegionSet& a, const RegionSet& b) {
  require_compatible(space, a);
  require_compatible(space, b);
  if (const auto* s = a.as_intervals()) return s->gap(*b.as_intervals());
  if (const auto* s = a.as_cylinders()) return Real(s->gap(*b.as_cylinders()));
  const auto& ma = a.as_indices()->members();
  const auto& mb = b.as_indices()->members();
  if (ma.empty() || mb.empty()) fail(ErrorCode::BadParameter, "gap of an empty set");
  std::optional<Rational> best;
  for (auto i : ma) {
    for (auto j : mb) {
      Rational d = i == j ? Rational(0) : (space.metric.empty() ? Rational(1) : space.metric[i][j]);
      if (!best || d < *best) best = d;
    }
  }
  return Real(*best);
}

Point sample_point(const SpaceSpec& space, const RegionSet& r) {
  require_compatible(space, r);
  switch (space.kind) {
    case SpaceKind::Interval: return IntervalPoint{r.as_intervals()->sample().rational_part()};
    case SpaceKind::Circle: return CirclePoint(r.as_intervals()->sample());
    case SpaceKind::Finite: {
      const auto& m = r.as_indices()->members();
      if (m.empty()) fail(ErrorCode::BadParameter, "cannot sample the empty set");
      return FinitePoint{m.front()};
    }
    case SpaceKind::Shift: return r.as_cylinders()->sample();
  }
  return IntervalPoint{};
}

RegionSet ball(const SpaceSpec& space, const Point& x, const Rational& eps) {
  require_in_space(space, x);
  if (eps <= 0) fail(ErrorCode::BadParameter, "ball radius must be positive");
  switch (space.kind) {
    case SpaceKind::Interval: {
      const Real c(std::get<IntervalPoint>(x).value);
      return IntervalSet(space.kind, {Interval::open(c - Real(eps), c + Real(eps))});
    }
    case SpaceKind::Circle: {
      if (eps > Rational(1, 2)) return IntervalSet::full(space.kind);
      const Real c = std::get<CirclePoint>(x).position;
      std::vector<Interval> parts;
      push_arc(parts, Interval::open(c - Real(eps), c + Real(eps)));
      return IntervalSet(space.kind, std::move(parts));
    }
    case SpaceKind::Finite: {
      std::vector<std::size_t> members;
      for (std::size_t j = 0; j < space.size; ++j) {
        if (distance(space, x, FinitePoint{j}) < Real(eps)) members.push_back(j);
      }
      return IndexSet(space.size, std::move(members));
    }
    case SpaceKind::Shift: {
      // d(x,y) < eps  iff  y agrees with x on |i| < K, K least with 2^-K < eps.
      std::int64_t k = 0;
      while (!(dyadic(k) < eps)) ++k;
      const auto& s = std::get<SeqPoint>(x);
      Cylinder c;
      for (std::int64_t i = -(k - 1); i <= k - 1; ++i) c[i] = s.at(i);
      return CylinderSet::single(c);
    }
  }
  return {};
}

std::string format_region(const SpaceSpec& space, const RegionSet& r) {
  require_compatible(space, r);
  if (const auto* s = r.as_intervals()) return s->to_string();
  if (const auto* s = r.as_indices()) return s->to_string(space.first_label);
  return r.as_cylinders()->to_string();
}

namespace {

std::string strip(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(strip(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(strip(cur));
  return out;
}

Cylinder cylinder_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail(ErrorCode::Parse, "cylinder must be a JSON object of coordinate: bit");
  Cylinder c;
  for (const auto& [key, value] : j.items()) {
    char* end = nullptr;
    const long long coord = std::strtoll(key.c_str(), &end, 10);
    if (end == key.c_str() || *end != '\0') fail(ErrorCode::Parse, "cylinder coordinate '" + key + "' is not an integer");
    if (!value.is_number_integer() || (value.get<int>() != 0 && value.get<int>() != 1)) {
      fail(ErrorCode::Parse, "cylinder bits must be 0 or 1");
    }
    c[coord] = static_cast<std::uint8_t>(value.get<int>());
  }
  return c;
}

}  // namespace

RegionSet parse_region(const SpaceSpec& space, std::string_view text) {
  const std::string s = strip(text);
  if (s == "full") return RegionSet::full(space);
  if (s == "empty") return RegionSet::empty_in(space);
  switch (space.kind) {
    case SpaceKind::Interval:
    case SpaceKind::Circle: {
      std::vector<Interval> parts;
      std::string joined = s;
      for (std::size_t pos; (pos = joined.find("\xE2\x88\xAA")) != std::string::npos;) joined.replace(pos, 3, "U");
      for (const auto& piece : split_on(joined, 'U')) {
        if (piece.size() < 2) fail(ErrorCode::Parse, "malformed region literal '" + s + "'");
        const char open = piece.front();
        const char close = piece.back();
        const std::string body = piece.substr(1, piece.size() - 2);
        if (open == '{' && close == '}') {
          for (const auto& v : split_on(body, ',')) {
            Real x = parse_real(v);
            if (space.kind == SpaceKind::Circle) x = x.frac();
            parts.push_back(Interval::point(x));
          }
          continue;
        }
        if ((open != '[' && open != '(') || (close != ']' && close != ')')) {
          fail(ErrorCode::Parse, "malformed interval '" + piece + "'");
        }
        auto ends = split_on(body, ',');
        if (ends.size() != 2) fail(ErrorCode::Parse, "interval needs two endpoints: '" + piece + "'");
        Interval iv{parse_real(ends[0]), parse_real(ends[1]), open == '[', close == ']'};
        if (iv.hi < iv.lo) fail(ErrorCode::Parse, "interval endpoints out of order: '" + piece + "'");
        if (space.kind == SpaceKind::Circle) {
          if (iv.hi - iv.lo > Real(1)) fail(ErrorCode::Parse, "arc longer than the circle: '" + piece + "'");
          push_arc(parts, iv);
        } else {
          if (iv.lo < Real(0) || iv.hi > Real(1)) fail(ErrorCode::Parse, "interval outside [0,1]: '" + piece + "'");
          parts.push_back(iv);
        }
      }
      return IntervalSet(space.kind, std::move(parts));
    }
    case SpaceKind::Finite: {
      std::string body = s;
      if (body.size() >= 2 && ((body.front() == '[' && body.back() == ']') || (body.front() == '{' && body.back() == '}'))) {
        body = body.substr(1, body.size() - 2);
      }
      std::vector<std::size_t> members;
      if (!strip(body).empty()) {
        for (const auto& v : split_on(body, ',')) {
          members.push_back(std::get<FinitePoint>(parse_point(space, v)).index);
        }
      }
      return IndexSet(space.size, std::move(members));
    }
    case SpaceKind::Shift: {
      // The printed form leaves coordinate keys unquoted; quote them.
      static const std::regex bare_key(R"(([{,]\s*)(-?[0-9]+)\s*:)");
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(std::regex_replace(s, bare_key, "$1\"$2\":"));
      } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::Parse, std::string("malformed cylinder literal: ") + e.what());
      }
      std::vector<Cylinder> cyl;
      if (j.is_array()) {
        for (const auto& c : j) cyl.push_back(cylinder_from_json(c));
      } else {
        cyl.push_back(cylinder_from_json(j));
      }
      return CylinderSet(cyl);
    }
  }
  fail(ErrorCode::Parse, "unknown space");
}

}  // namespace ndsys
