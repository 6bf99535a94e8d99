#pragma once

// Hitting sets N(U,V), sensitivity hit sets N(U,delta), return times, and
// classifiers for the set classes built on them.

#include "ndsys/region.hpp"
#include "ndsys/schedule.hpp"
#include "ndsys/verdict.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ndsys {

/// For n >= start the element at n equals the one at n - period whenever
/// n - period >= start.
struct Cycle {
  std::uint64_t start = 0;
  std::uint64_t period = 1;
  friend bool operator==(const Cycle&, const Cycle&) = default;
};

struct SampleCycle {
  std::uint64_t start = 1;
  std::uint64_t period = 1;
  /// Membership of start, start+1, ..., start+period-1.
  std::vector<bool> pattern;
  friend bool operator==(const SampleCycle&, const SampleCycle&) = default;
};

struct IndexSample {
  std::uint64_t horizon = 0;
  std::vector<std::uint64_t> members;
  /// Known when the underlying sequence was seen to repeat before the
  /// horizon; membership of every n >= start then follows the pattern.
  std::optional<SampleCycle> cycle;
  bool approximate = false;

  bool contains(std::uint64_t n) const;
  /// Restriction to [1, t].
  IndexSample prefix(std::uint64_t t) const;
  friend bool operator==(const IndexSample&, const IndexSample&) = default;
};

IndexSample make_sample(std::uint64_t horizon, std::vector<std::uint64_t> members);
IndexSample intersect(const IndexSample& a, const IndexSample& b);

/// f_1^n(U) for n = 0..T, continued past T when a cycle was found.
class ImageTrace {
 public:
  ImageTrace(const SpaceSpec& space, const Schedule& s, const RegionSet& u, std::uint64_t horizon);

  const RegionSet& at(std::uint64_t n) const;
  bool known(std::uint64_t n) const { return n < images_.size() || cycle_.has_value(); }
  std::uint64_t horizon() const { return horizon_; }
  const std::optional<Cycle>& cycle() const { return cycle_; }

 private:
  std::vector<RegionSet> images_;
  std::optional<Cycle> cycle_;
  std::uint64_t horizon_;
};

/// f_1^n(x) for n = 0..T, continued past T when a cycle was found.
class PointTrace {
 public:
  PointTrace(const SpaceSpec& space, const Schedule& s, const Point& x, std::uint64_t horizon);

  const Point& at(std::uint64_t n) const;
  bool known(std::uint64_t n) const { return n < points_.size() || cycle_.has_value(); }
  std::uint64_t horizon() const { return horizon_; }
  const std::optional<Cycle>& cycle() const { return cycle_; }

 private:
  std::vector<Point> points_;
  std::optional<Cycle> cycle_;
  std::uint64_t horizon_;
};

/// Joint cycle of two traces, when both repeat.
std::optional<Cycle> joint_cycle(const std::optional<Cycle>& a, const std::optional<Cycle>& b);

/// Builds {n in [1,T] : pred(n)}; pred is consulted past T to record the
/// cycle when `cycle` is known.
template <class Pred>
IndexSample sample_from(std::uint64_t horizon, const std::optional<Cycle>& cycle, Pred pred);

IndexSample hitting_set(const ImageTrace& trace, const RegionSet& v);
IndexSample hitting_set(const SpaceSpec& space, const Schedule& s, const RegionSet& u, const RegionSet& v,
                        std::uint64_t horizon);

/// {n in [1,T] : diam(f_1^n(U)) > delta}.
IndexSample sensitivity_hits(const SpaceSpec& space, const ImageTrace& trace, const Rational& delta);
IndexSample sensitivity_hits(const SpaceSpec& space, const Schedule& s, const RegionSet& u, const Rational& delta,
                             std::uint64_t horizon);

/// {n in [1,T] : d(f_1^n(x), x) < eps}.
IndexSample return_times(const SpaceSpec& space, const PointTrace& trace, const Rational& eps);

enum class SetClass { Syndetic, Thick, Cofinite, ThicklySyndetic, UpperDensity };
const char* set_class_name(SetClass c);

struct ClassifyOptions {
  /// Run length for the thickly syndetic class.
  std::uint64_t k = 1;
  Rational theta{1, 100};
  /// Second horizon for trend comparisons; defaults to T/4.
  std::optional<std::uint64_t> sub_horizon;
};

struct ClassVerdict {
  Verdict verdict = Verdict::Inconclusive;
  /// "exhaustive" (decided through a cycle), "horizon" or "trend".
  std::string basis;
  std::uint64_t horizon = 0;
  std::uint64_t sub_horizon = 0;
  std::uint64_t count = 0;
  std::uint64_t max_gap = 0;
  std::uint64_t max_gap_sub = 0;
  /// Members bounding the largest gap (0 and T+1 stand for the ends).
  std::pair<std::uint64_t, std::uint64_t> gap_at{0, 0};
  std::uint64_t longest_run = 0;
  std::uint64_t longest_run_sub = 0;
  std::uint64_t tail_start = 0;
  Rational density = 0;
  /// Thickly syndetic only: first run length whose start set failed.
  std::optional<std::uint64_t> failing_run;
};

ClassVerdict classify(const IndexSample& sample, SetClass kind, const ClassifyOptions& opts = {});

/// Largest gap in [0, members..., T+1] and where it sits.
std::pair<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> max_gap(const IndexSample& s);
std::uint64_t longest_run(const IndexSample& s);
/// Least N with [N,T] inside the sample (T+1 when T is missing).
std::uint64_t tail_start(const IndexSample& s);

// ---------------------------------------------------------------------------

template <class Pred>
IndexSample sample_from(std::uint64_t horizon, const std::optional<Cycle>& cycle, Pred pred) {
  IndexSample out;
  out.horizon = horizon;
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    if (pred(n)) out.members.push_back(n);
  }
  if (cycle) {
    SampleCycle c;
    c.start = std::max<std::uint64_t>(cycle->start, 1);
    c.period = cycle->period;
    for (std::uint64_t n = c.start; n < c.start + c.period; ++n) c.pattern.push_back(pred(n));
    out.cycle = std::move(c);
  }
  return out;
}

}  // namespace ndsys
