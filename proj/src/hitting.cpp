#include "ndsys/hitting.hpp"

#include "ndsys/error.hpp"

#include <numeric>
#include <unordered_map>

namespace ndsys {

bool IndexSample::contains(std::uint64_t n) const {
  if (n == 0) return false;
  if (n <= horizon) return std::binary_search(members.begin(), members.end(), n);
  if (cycle && n >= cycle->start) return cycle->pattern[(n - cycle->start) % cycle->period];
  return false;
}

IndexSample IndexSample::prefix(std::uint64_t t) const {
  IndexSample out = *this;
  out.horizon = std::min(t, horizon);
  out.members.erase(std::upper_bound(out.members.begin(), out.members.end(), out.horizon), out.members.end());
  return out;
}

IndexSample make_sample(std::uint64_t horizon, std::vector<std::uint64_t> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (!members.empty() && (members.front() == 0 || members.back() > horizon)) {
    fail(ErrorCode::BadParameter, "sample members must lie in [1, T]");
  }
  IndexSample out;
  out.horizon = horizon;
  out.members = std::move(members);
  return out;
}

IndexSample intersect(const IndexSample& a, const IndexSample& b) {
  IndexSample out;
  out.horizon = std::min(a.horizon, b.horizon);
  for (auto n : a.members) {
    if (n > out.horizon) break;
    if (b.contains(n)) out.members.push_back(n);
  }
  out.approximate = a.approximate || b.approximate;
  if (a.cycle && b.cycle) {
    SampleCycle c;
    c.start = std::max(a.cycle->start, b.cycle->start);
    c.period = std::lcm(a.cycle->period, b.cycle->period);
    for (std::uint64_t n = c.start; n < c.start + c.period; ++n) {
      // Both patterns are valid past their own horizons.
      auto in = [n](const IndexSample& s) { return s.cycle->pattern[(n - s.cycle->start) % s.cycle->period]; };
      c.pattern.push_back(in(a) && in(b));
    }
    out.cycle = std::move(c);
  }
  return out;
}

namespace {

// Phase of the schedule at position n+1, or -1 while still in a prefix.
std::int64_t phase_after(const std::optional<EventualPeriod>& ev, std::uint64_t n) {
  if (!ev || n + 1 < ev->start) return -1;
  return static_cast<std::int64_t>((n + 1 - ev->start) % ev->period);
}

}  // namespace

ImageTrace::ImageTrace(const SpaceSpec& space, const Schedule& s, const RegionSet& u, std::uint64_t horizon)
    : horizon_(horizon) {
  require_compatible(space, u);
  const auto ev = s.eventual_period();
  std::unordered_map<std::string, std::uint64_t> seen;
  images_.push_back(u);
  for (std::uint64_t n = 0;; ++n) {
    if (const auto phase = phase_after(ev, n); phase >= 0) {
      const std::string key = std::to_string(phase) + "|" + format_region(space, images_[n]);
      auto [it, fresh] = seen.emplace(key, n);
      if (!fresh) {
        cycle_ = Cycle{it->second, n - it->second};
        images_.pop_back();
        return;
      }
    }
    if (n == horizon) return;
    images_.push_back(image(space, images_[n], s.map_at(n + 1)));
  }
}

const RegionSet& ImageTrace::at(std::uint64_t n) const {
  if (n < images_.size()) return images_[n];
  if (!cycle_) fail(ErrorCode::BadParameter, "image requested past the traced horizon");
  return images_[cycle_->start + (n - cycle_->start) % cycle_->period];
}

PointTrace::PointTrace(const SpaceSpec& space, const Schedule& s, const Point& x, std::uint64_t horizon)
    : horizon_(horizon) {
  require_in_space(space, x);
  const auto ev = s.eventual_period();
  std::unordered_map<std::string, std::uint64_t> seen;
  points_.push_back(x);
  for (std::uint64_t n = 0;; ++n) {
    if (const auto phase = phase_after(ev, n); phase >= 0) {
      const std::string key = std::to_string(phase) + "|" + format_point(space, points_[n]);
      auto [it, fresh] = seen.emplace(key, n);
      if (!fresh) {
        cycle_ = Cycle{it->second, n - it->second};
        points_.pop_back();
        return;
      }
    }
    if (n == horizon) return;
    points_.push_back(eval(s.map_at(n + 1), points_[n]));
  }
}

const Point& PointTrace::at(std::uint64_t n) const {
  if (n < points_.size()) return points_[n];
  if (!cycle_) fail(ErrorCode::BadParameter, "orbit point requested past the traced horizon");
  return points_[cycle_->start + (n - cycle_->start) % cycle_->period];
}

std::optional<Cycle> joint_cycle(const std::optional<Cycle>& a, const std::optional<Cycle>& b) {
  if (!a || !b) return std::nullopt;
  return Cycle{std::max(a->start, b->start), std::lcm(a->period, b->period)};
}

IndexSample hitting_set(const ImageTrace& trace, const RegionSet& v) {
  return sample_from(trace.horizon(), trace.cycle(), [&](std::uint64_t n) { return intersects(trace.at(n), v); });
}

IndexSample hitting_set(const SpaceSpec& space, const Schedule& s, const RegionSet& u, const RegionSet& v,
                        std::uint64_t horizon) {
  if (u.empty() || v.empty()) fail(ErrorCode::BadParameter, "hitting sets need nonempty regions");
  require_compatible(space, v);
  return hitting_set(ImageTrace(space, s, u, horizon), v);
}

IndexSample sensitivity_hits(const SpaceSpec& space, const ImageTrace& trace, const Rational& delta) {
  const Real d(delta);
  return sample_from(trace.horizon(), trace.cycle(),
                     [&](std::uint64_t n) { return diam(space, trace.at(n)) > d; });
}

IndexSample sensitivity_hits(const SpaceSpec& space, const Schedule& s, const RegionSet& u, const Rational& delta,
                             std::uint64_t horizon) {
  if (u.empty()) fail(ErrorCode::BadParameter, "sensitivity hits need a nonempty region");
  if (delta < 0) fail(ErrorCode::BadParameter, "delta must be nonnegative");
  return sensitivity_hits(space, ImageTrace(space, s, u, horizon), delta);
}

IndexSample return_times(const SpaceSpec& space, const PointTrace& trace, const Rational& eps) {
  const Real e(eps);
  const Point& x = trace.at(0);
  return sample_from(trace.horizon(), trace.cycle(),
                     [&](std::uint64_t n) { return distance(space, trace.at(n), x) < e; });
}

// ---------------------------------------------------------------------------
// Classifiers

const char* set_class_name(SetClass c) {
  switch (c) {
    case SetClass::Syndetic: return "syndetic";
    case SetClass::Thick: return "thick";
    case SetClass::Cofinite: return "cofinite";
    case SetClass::ThicklySyndetic: return "thickly_syndetic";
    case SetClass::UpperDensity: return "upper_density";
  }
  return "?";
}

std::pair<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> max_gap(const IndexSample& s) {
  std::uint64_t prev = 0;
  std::uint64_t best = 0;
  std::pair<std::uint64_t, std::uint64_t> where{0, s.horizon + 1};
  auto consider = [&](std::uint64_t next) {
    if (next - prev > best) {
      best = next - prev;
      where = {prev, next};
    }
    prev = next;
  };
  for (auto m : s.members) consider(m);
  consider(s.horizon + 1);
  return {best, where};
}

std::uint64_t longest_run(const IndexSample& s) {
  std::uint64_t best = 0, run = 0, prev = 0;
  for (auto m : s.members) {
    run = (run > 0 && m == prev + 1) ? run + 1 : 1;
    best = std::max(best, run);
    prev = m;
  }
  return best;
}

std::uint64_t tail_start(const IndexSample& s) {
  std::uint64_t n = s.horizon + 1;
  for (auto it = s.members.rbegin(); it != s.members.rend() && *it + 1 == n; ++it) n = *it;
  return n;
}

namespace {

// Longest cyclic run of true values; pattern.size() when all true.
std::uint64_t cyclic_run(const std::vector<bool>& p) {
  if (std::all_of(p.begin(), p.end(), [](bool b) { return b; })) return p.size();
  std::uint64_t best = 0, run = 0;
  for (std::size_t i = 0; i < 2 * p.size(); ++i) {
    run = p[i % p.size()] ? run + 1 : 0;
    best = std::max(best, run);
  }
  return best;
}

// Start points of runs of length j+1 inside [1,T].
IndexSample run_starts(const IndexSample& s, std::uint64_t j) {
  IndexSample out;
  out.horizon = s.horizon > j ? s.horizon - j : 0;
  std::uint64_t run = 0, prev = 0;
  for (auto m : s.members) {
    run = (run > 0 && m == prev + 1) ? run + 1 : 1;
    if (run >= j + 1) out.members.push_back(m - j);
    prev = m;
  }
  return out;
}

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

ClassVerdict exhaustive(const IndexSample& s, SetClass kind, const ClassifyOptions& opts, ClassVerdict v) {
  const auto& c = *s.cycle;
  const auto& p = c.pattern;
  const std::uint64_t ones = static_cast<std::uint64_t>(std::count(p.begin(), p.end(), true));
  const bool all = ones == p.size();
  v.basis = "exhaustive";
  switch (kind) {
    case SetClass::Cofinite: v.verdict = all ? Verdict::Holds : Verdict::Fails; break;
    case SetClass::Thick: v.verdict = all ? Verdict::Holds : Verdict::Fails; break;
    case SetClass::Syndetic: {
      v.verdict = ones > 0 ? Verdict::Holds : Verdict::Fails;
      if (ones > 0) {
        // Sup of all gaps: two periods past the cycle start cover every gap.
        IndexSample ext;
        ext.horizon = c.start + 2 * c.period;
        for (std::uint64_t n = 1; n <= ext.horizon; ++n) {
          if (s.contains(n)) ext.members.push_back(n);
        }
        std::uint64_t prev = 0, best = 0;
        for (auto m : ext.members) {
          if (m - prev > best) {
            best = m - prev;
            v.gap_at = {prev, m};
          }
          prev = m;
        }
        v.max_gap = best;
      }
      break;
    }
    case SetClass::ThicklySyndetic: {
      const std::uint64_t run = cyclic_run(p);
      if (all || run >= opts.k + 1) {
        v.verdict = Verdict::Holds;
      } else {
        v.verdict = Verdict::Fails;
        v.failing_run = run;
      }
      break;
    }
    case SetClass::UpperDensity:
      v.density = Rational(ones) / Rational(p.size());
      v.verdict = v.density >= opts.theta ? Verdict::Holds : Verdict::Fails;
      break;
  }
  return v;
}

ClassVerdict syndetic_at_horizon(const IndexSample& s, ClassVerdict v) {
  if (v.tail_start <= s.horizon / 2) {
    v.verdict = Verdict::Holds;
    v.basis = "horizon";
    return v;
  }
  if (v.max_gap > v.max_gap_sub) {
    v.verdict = Verdict::Fails;
    v.basis = "trend";
  } else if (v.count >= ceil_div(s.horizon, 2 * v.max_gap)) {
    v.verdict = Verdict::Holds;
    v.basis = "horizon";
  } else {
    v.verdict = Verdict::Inconclusive;
    v.basis = "horizon";
  }
  return v;
}

ClassVerdict base_verdict(const IndexSample& s, std::uint64_t sub) {
  ClassVerdict v;
  v.horizon = s.horizon;
  v.sub_horizon = sub;
  v.count = s.members.size();
  auto [gap, where] = max_gap(s);
  v.max_gap = gap;
  v.gap_at = where;
  v.max_gap_sub = max_gap(s.prefix(sub)).first;
  v.longest_run = longest_run(s);
  v.longest_run_sub = longest_run(s.prefix(sub));
  v.tail_start = tail_start(s);
  v.density = Rational(v.count) / Rational(s.horizon);
  return v;
}

}  // namespace

ClassVerdict classify(const IndexSample& s, SetClass kind, const ClassifyOptions& opts) {
  if (s.horizon == 0) fail(ErrorCode::EmptyHorizon, "cannot classify a sample with horizon 0");
  if (kind == SetClass::ThicklySyndetic && opts.k < 1) fail(ErrorCode::BadParameter, "run length k must be at least 1");
  const std::uint64_t sub = std::max<std::uint64_t>(1, std::min(s.horizon, opts.sub_horizon.value_or(s.horizon / 4)));
  ClassVerdict v = base_verdict(s, sub);
  if (s.cycle) return exhaustive(s, kind, opts, v);

  const bool cofinite = v.tail_start <= s.horizon / 2;
  switch (kind) {
    case SetClass::Cofinite:
      v.verdict = cofinite ? Verdict::Holds : Verdict::Fails;
      v.basis = "horizon";
      return v;
    case SetClass::Syndetic: return syndetic_at_horizon(s, v);
    case SetClass::Thick:
      if (cofinite || v.longest_run > v.longest_run_sub) {
        v.verdict = Verdict::Holds;
        v.basis = cofinite ? "horizon" : "trend";
      } else {
        v.verdict = Verdict::Fails;
        v.basis = "trend";
      }
      return v;
    case SetClass::UpperDensity:
      v.verdict = v.density >= opts.theta ? Verdict::Holds : Verdict::Fails;
      v.basis = "horizon";
      return v;
    case SetClass::ThicklySyndetic: {
      if (cofinite && opts.k <= s.horizon - v.tail_start) {
        v.verdict = Verdict::Holds;
        v.basis = "horizon";
        return v;
      }
      v.verdict = Verdict::Holds;
      v.basis = "horizon";
      for (std::uint64_t j = 0; j <= opts.k; ++j) {
        const IndexSample b = run_starts(s, j);
        if (b.horizon == 0) {
          v.verdict = Verdict::Inconclusive;
          break;
        }
        const std::uint64_t bsub = std::max<std::uint64_t>(1, std::min(sub, b.horizon));
        const ClassVerdict bj = syndetic_at_horizon(b, base_verdict(b, bsub));
        if (bj.verdict == Verdict::Fails) {
          v.verdict = Verdict::Fails;
          v.basis = bj.basis;
          v.failing_run = j;
          if (j > 0) {
            v.max_gap = bj.max_gap;
            v.max_gap_sub = bj.max_gap_sub;
            v.gap_at = bj.gap_at;
          }
          break;
        }
        if (bj.verdict == Verdict::Inconclusive) v.verdict = Verdict::Inconclusive;
      }
      return v;
    }
  }
  return v;
}

}  // namespace ndsys
