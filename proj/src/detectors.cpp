#include "ndsys/detectors.hpp"

#include "detectors_internal.hpp"
#include "ndsys/serialize.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace ndsys {

namespace detail {

void require_positive(const Rational& v, const char* name) {
  if (v <= 0) fail(ErrorCode::BadParameter, std::string(name) + " must be positive");
}

void require_horizon(std::uint64_t t) {
  if (t == 0) fail(ErrorCode::EmptyHorizon, "horizon must be at least 1");
}

PropertyReport start_report(const System& sys, std::string property, const CheckParams& p) {
  PropertyReport r;
  r.property = std::move(property);
  r.params = params_json(p);
  r.provenance = {{"system", sys.name}, {"digest", system_digest(sys)}, {"mode", "exact"}};
  return r;
}

namespace {
int basis_rank(const std::string& b) {
  if (b == "exhaustive") return 0;
  if (b == "trend") return 2;
  return 1;
}
}  // namespace

std::string weaker_basis(const std::string& a, const std::string& b) { return basis_rank(b) > basis_rank(a) ? b : a; }

bool all_isometries(const System& sys) {
  if (!sys.schedule.finitely_generated()) return false;
  for (const auto& m : schedule_maps(sys.schedule)) {
    if (!analyze(m, &sys.space).isometry) return false;
  }
  return true;
}

std::optional<std::uint64_t> first_member(const IndexSample& s) {
  if (!s.members.empty()) return s.members.front();
  if (s.cycle) {
    const auto& c = *s.cycle;
    // Members past the horizon; the cycle is valid from its start on.
    const std::uint64_t from = std::max(c.start, s.horizon + 1);
    for (std::uint64_t n = from; n < from + c.period; ++n) {
      if (c.pattern[(n - c.start) % c.period]) return n;
    }
  }
  return std::nullopt;
}

bool provably_empty(const IndexSample& s) {
  if (!s.members.empty() || !s.cycle) return false;
  return std::none_of(s.cycle->pattern.begin(), s.cycle->pattern.end(), [](bool b) { return b; });
}

std::string region_text(const SpaceSpec& space, const RegionSet& r) { return format_region(space, r); }
std::string point_text(const SpaceSpec& space, const Point& p) { return format_point(space, p); }

std::vector<ImageTrace> cell_traces(const System& sys, const CoverSpec& cover, std::uint64_t horizon,
                                    std::uint64_t workers) {
  std::vector<std::optional<ImageTrace>> slots(cover.cells.size());
  parallel_for(cover.cells.size(), workers,
               [&](std::size_t i) { slots[i].emplace(sys.space, sys.schedule, cover.cells[i], horizon); });
  std::vector<ImageTrace> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

Point orbit_point(const Schedule& s, const Point& x, std::uint64_t n) {
  Point y = x;
  for (std::uint64_t i = 1; i <= n; ++i) y = eval(s.map_at(i), y);
  return y;
}

RegionSet window_preimage(const SpaceSpec& space, const Schedule& s, const RegionSet& r, std::uint64_t n) {
  RegionSet out = r;
  for (std::uint64_t i = n; i >= 1 && !out.empty(); --i) out = preimage(space, out, s.map_at(i));
  return out;
}

std::vector<Point> ball_probes(const SpaceSpec& space, const Point& x, const Rational& eps, int steps) {
  std::vector<Point> out;
  switch (space.kind) {
    case SpaceKind::Interval: {
      const Rational& c = std::get<IntervalPoint>(x).value;
      for (int j = -(steps - 1); j <= steps - 1; ++j) {
        if (j == 0) continue;
        const Rational y = c + eps * Rational(j, steps);
        if (y >= 0 && y <= 1) out.push_back(IntervalPoint{y});
      }
      break;
    }
    case SpaceKind::Circle: {
      const Real& c = std::get<CirclePoint>(x).position;
      // Past half the circle the metric folds back; keep the probes inside.
      const Rational r = std::min(eps, Rational(1, 2));
      for (int j = -(steps - 1); j <= steps - 1; ++j) {
        if (j == 0) continue;
        out.push_back(CirclePoint(c + Real(r * Rational(j, steps))));
      }
      break;
    }
    case SpaceKind::Finite: {
      for (std::size_t i = 0; i < space.size; ++i) {
        const Point y = FinitePoint{i};
        if (!(y == x) && distance(space, x, y) < Real(eps)) out.push_back(y);
      }
      break;
    }
    case SpaceKind::Shift: {
      const auto& s = std::get<SeqPoint>(x);
      // B(x, eps) fixes |i| < K; flip single coordinates just outside.
      std::int64_t k = 0;
      while (!(dyadic(k) < eps)) ++k;
      for (std::int64_t i = k; i < k + 4; ++i) {
        out.push_back(s.with(i, 1 - s.at(i)));
        out.push_back(s.with(-i, 1 - s.at(-i)));
      }
      break;
    }
  }
  return out;
}

PairScan scan_pair(const SpaceSpec& space, const Schedule& s, const Point& x, const Point& y, std::uint64_t horizon,
                   const Rational& eta, const Rational& delta) {
  PointTrace tx(space, s, x, horizon), ty(space, s, y, horizon);
  PairScan out;
  const std::uint64_t tail = std::max<std::uint64_t>(1, (horizon + 1) / 2);
  bool first_tail = true;
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    const Real d = distance(space, tx.at(n), ty.at(n));
    if (n == 1 || out.max < d) {
      out.max = d;
      out.max_at = n;
    }
    if (n >= tail && (first_tail || d < out.tail_min)) {
      out.tail_min = d;
      out.tail_min_at = n;
      first_tail = false;
    }
  }
  out.witness = out.tail_min < Real(eta) && out.max > Real(delta);
  return out;
}

}  // namespace detail

using namespace detail;

const char* report_verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "HoldsEvidence";
    case Verdict::Fails: return "FailsWitness";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

Verdict parse_report_verdict(const std::string& s) {
  if (s == "HoldsEvidence" || s == "Holds") return Verdict::Holds;
  if (s == "FailsWitness" || s == "Fails") return Verdict::Fails;
  if (s == "Inconclusive") return Verdict::Inconclusive;
  fail(ErrorCode::Parse, "unknown verdict '" + s + "'");
}

json params_json(const CheckParams& p) {
  json j = {{"T", p.horizon},
            {"w", rat(p.width)},
            {"delta", rat(p.delta)},
            {"epsilon", rat(p.epsilon)},
            {"eta", rat(p.eta)},
            {"theta", rat(p.theta)},
            {"k", p.k},
            {"m", p.m},
            {"L", p.word_length},
            {"pair_budget", p.pair_budget},
            {"seed", p.seed},
            {"anchor", p.anchor == PeriodicAnchor::First ? "first" : "all"},
            {"grid_depth", p.grid_depth}};
  if (p.sub_horizon) j["sub_horizon"] = *p.sub_horizon;
  if (!p.epsilons.empty()) {
    json e = json::array();
    for (const auto& q : p.epsilons) e.push_back(rat(q));
    j["epsilons"] = e;
  }
  return j;
}

// ---------------------------------------------------------------------------
// Covers

CoverSpec detail::spread_cover(const SpaceSpec& space, const CheckParams& p) {
  return make_cover(space, p.delta < p.width ? p.delta : p.width);
}

CoverSpec make_cover(const SpaceSpec& space, const Rational& width) {
  require_positive(width, "cover width");
  space.validate();
  CoverSpec c;
  c.space = space;
  c.width = width;
  switch (space.kind) {
    case SpaceKind::Interval: {
      Rational h = 1;
      while (h > width) h /= 2;
      const auto n = static_cast<std::int64_t>(numerator(Rational(1) / h));
      if (n == 1) {
        c.cells.push_back(RegionSet::full(space));
      } else {
        for (std::int64_t j = 0; j < n; ++j) {
          const Rational lo = h * j, hi = h * (j + 1);
          c.cells.push_back(IntervalSet(SpaceKind::Interval, {Interval{lo, hi, j == 0, j == n - 1}}));
        }
      }
      for (std::int64_t j = 0; j < n; ++j) c.centers.push_back(IntervalPoint{h * j + h / 2});
      c.probes = c.centers;
      for (std::int64_t j = 0; j <= n; ++j) c.probes.push_back(IntervalPoint{h * j});
      break;
    }
    case SpaceKind::Circle: {
      if (width >= Rational(1, 2)) {
        c.cells.push_back(RegionSet::full(space));
        c.centers.push_back(CirclePoint(Real(0)));
        c.probes = c.centers;
        break;
      }
      Rational h = Rational(1, 2);
      while (h > width) h /= 2;
      const auto n = static_cast<std::int64_t>(numerator(Rational(1) / h));
      for (std::int64_t j = 0; j < n; ++j) {
        c.cells.push_back(IntervalSet(SpaceKind::Circle, {Interval::open(h * j, h * (j + 1))}));
        c.centers.push_back(CirclePoint(Real(h * j + h / 2)));
      }
      c.probes = c.centers;
      for (std::int64_t j = 0; j < n; ++j) c.probes.push_back(CirclePoint(Real(h * j)));
      break;
    }
    case SpaceKind::Finite: {
      for (std::size_t i = 0; i < space.size; ++i) {
        c.cells.push_back(IndexSet(space.size, {i}));
        c.centers.push_back(FinitePoint{i});
      }
      c.probes = c.centers;
      break;
    }
    case SpaceKind::Shift: {
      std::int64_t r = 0;
      while (dyadic(r + 1) > width) ++r;
      if (r > 5) fail(ErrorCode::Unsupported, "shift covers finer than 2^-6 are not supported");
      const std::int64_t len = 2 * r + 1;
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << len); ++bits) {
        Cylinder cyl;
        std::vector<std::uint8_t> word;
        for (std::int64_t j = 0; j < len; ++j) {
          const auto b = static_cast<std::uint8_t>((bits >> (len - 1 - j)) & 1);
          cyl[j - r] = b;
          word.push_back(b);
        }
        c.cells.push_back(CylinderSet::single(cyl));
        c.centers.push_back(SeqPoint({0}, word, {0}, -r));
      }
      c.probes = c.centers;
      break;
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Sensitivity family

const char* sensitivity_property_name(SensitivityKind k) {
  switch (k) {
    case SensitivityKind::Plain: return "sensitive";
    case SensitivityKind::Cofinite: return "cofinitely_sensitive";
    case SensitivityKind::Syndetic: return "syndetically_sensitive";
    case SensitivityKind::Thick: return "thickly_sensitive";
    case SensitivityKind::ThicklySyndetic: return "thickly_syndetically_sensitive";
    case SensitivityKind::Ergodic: return "ergodically_sensitive";
    case SensitivityKind::Multi: return "multi_sensitive";
  }
  return "?";
}

namespace {

SetClass class_of(SensitivityKind k) {
  switch (k) {
    case SensitivityKind::Cofinite: return SetClass::Cofinite;
    case SensitivityKind::Syndetic: return SetClass::Syndetic;
    case SensitivityKind::Thick: return SetClass::Thick;
    case SensitivityKind::ThicklySyndetic: return SetClass::ThicklySyndetic;
    case SensitivityKind::Ergodic: return SetClass::UpperDensity;
    default: break;
  }
  fail(ErrorCode::BadParameter, "sensitivity kind has no set class");
}

ClassifyOptions classify_options(const CheckParams& p) {
  ClassifyOptions o;
  o.k = p.k;
  o.theta = p.theta;
  o.sub_horizon = p.sub_horizon;
  return o;
}

// Binomial coefficient, saturating at `cap`.
std::uint64_t choose(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  long double v = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    v = v * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (v > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::uint64_t>(v + 0.5);
}

// Calls f on every k-subset of {0..n-1} in lexicographic order; stops when f
// returns false.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (!f(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<IndexSample> sensitivity_samples(const System& sys, const CoverSpec& cover,
                                             const std::vector<ImageTrace>& traces, const CheckParams& p) {
  std::vector<IndexSample> hits(cover.cells.size());
  parallel_for(hits.size(), p.workers,
               [&](std::size_t i) { hits[i] = sensitivity_hits(sys.space, traces[i], p.delta); });
  return hits;
}

}  // namespace

PropertyReport check_sensitive(const System& sys, SensitivityKind kind, const CheckParams& p) {
  require_positive(p.delta, "delta");
  require_horizon(p.horizon);
  if (kind == SensitivityKind::Multi && p.m < 1) fail(ErrorCode::BadParameter, "m must be at least 1");
  const CoverSpec cover = spread_cover(sys.space, p);
  const auto traces = cell_traces(sys, cover, p.horizon, p.workers);
  const auto hits = sensitivity_samples(sys, cover, traces, p);
  const bool iso = all_isometries(sys);
  PropertyReport r = start_report(sys, sensitivity_property_name(kind), p);
  r.witnesses["cells_checked"] = cover.cells.size();
  r.witnesses["cover_width"] = format_rational(cover.width);
  if (iso) r.witnesses["isometries"] = true;

  auto cell_json = [&](std::size_t i) {
    return json{{"cell", i}, {"region", region_text(sys.space, cover.cells[i])}};
  };

  if (kind == SensitivityKind::Plain) {
    json cells = json::array();
    for (std::size_t i = 0; i < hits.size(); ++i) {
      const auto first = first_member(hits[i]);
      if (!first) {
        r.verdict = Verdict::Fails;
        r.basis = (iso || provably_empty(hits[i])) ? "exhaustive" : "horizon";
        json f = cell_json(i);
        f["hits"] = sample_to_json(hits[i]);
        r.witnesses["failing"] = f;
        return r;
      }
      json c = cell_json(i);
      c["first_hit"] = *first;
      c["diam"] = diam(sys.space, traces[i].at(*first)).to_string();
      c["count"] = hits[i].members.size();
      cells.push_back(c);
    }
    r.verdict = Verdict::Holds;
    r.basis = "exhaustive";
    r.witnesses["cells"] = cells;
    return r;
  }

  if (kind == SensitivityKind::Multi) {
    const std::size_t m = std::min<std::size_t>(p.m, hits.size());
    constexpr std::uint64_t cap = 200000;
    if (choose(hits.size(), m, cap) > cap) fail(ErrorCode::BadParameter, "too many cell subsets for multi-sensitivity");
    std::uint64_t subsets = 0, worst = 0;
    bool failed = false;
    for_each_subset(hits.size(), m, [&](const std::vector<std::size_t>& idx) {
      IndexSample common = hits[idx[0]];
      for (std::size_t j = 1; j < idx.size(); ++j) common = intersect(common, hits[idx[j]]);
      ++subsets;
      const auto first = first_member(common);
      if (!first) {
        failed = true;
        r.verdict = Verdict::Fails;
        r.basis = (iso || provably_empty(common)) ? "exhaustive" : "horizon";
        json ids = json::array(), regions = json::array();
        for (auto i : idx) {
          ids.push_back(i);
          regions.push_back(region_text(sys.space, cover.cells[i]));
        }
        r.witnesses["failing"] = {{"cells", ids}, {"regions", regions}, {"common", sample_to_json(common)}};
        return false;
      }
      worst = std::max(worst, *first);
      return true;
    });
    if (failed) return r;
    r.verdict = Verdict::Holds;
    r.basis = "exhaustive";
    r.witnesses["m"] = m;
    r.witnesses["subsets"] = subsets;
    r.witnesses["max_first_common_hit"] = worst;
    return r;
  }

  const SetClass cls = class_of(kind);
  const ClassifyOptions opts = classify_options(p);
  std::vector<ClassVerdict> verdicts(hits.size());
  parallel_for(hits.size(), p.workers, [&](std::size_t i) { verdicts[i] = classify(hits[i], cls, opts); });
  json cells = json::array();
  std::string basis = "exhaustive";
  bool inconclusive = false;
  for (std::size_t i = 0; i < hits.size(); ++i) {
    const auto& v = verdicts[i];
    json c = cell_json(i);
    c["class"] = class_verdict_to_json(v);
    if (v.verdict == Verdict::Fails) {
      r.verdict = Verdict::Fails;
      r.basis = iso ? "exhaustive" : v.basis;
      c["hits"] = sample_to_json(hits[i]);
      r.witnesses["failing"] = c;
      return r;
    }
    if (v.verdict == Verdict::Inconclusive) inconclusive = true;
    basis = weaker_basis(basis, v.basis);
    cells.push_back(c);
  }
  r.verdict = inconclusive ? Verdict::Inconclusive : Verdict::Holds;
  r.basis = basis;
  r.witnesses["cells"] = cells;
  return r;
}

// ---------------------------------------------------------------------------
// Transitivity family

namespace {

std::vector<std::uint64_t> bitset_of(const IndexSample& s) {
  std::vector<std::uint64_t> bits(s.horizon / 64 + 1, 0);
  for (auto n : s.members) bits[n / 64] |= std::uint64_t{1} << (n % 64);
  return bits;
}

bool bits_meet(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i] & b[i]) return true;
  }
  return false;
}

const char* transitivity_name(TransitivityKind k) {
  switch (k) {
    case TransitivityKind::Transitive: return "transitive";
    case TransitivityKind::WeaklyMixing: return "weakly_mixing";
    case TransitivityKind::Mixing: return "mixing";
  }
  return "?";
}

}  // namespace

PropertyReport check_transitive(const System& sys, TransitivityKind kind, const CheckParams& p) {
  require_horizon(p.horizon);
  const CoverSpec cover = make_cover(sys.space, p.width);
  const auto traces = cell_traces(sys, cover, p.horizon, p.workers);
  const std::size_t n = cover.cells.size();
  std::vector<IndexSample> hits(n * n);
  parallel_for(n, p.workers, [&](std::size_t u) {
    for (std::size_t v = 0; v < n; ++v) hits[u * n + v] = hitting_set(traces[u], cover.cells[v]);
  });
  PropertyReport r = start_report(sys, transitivity_name(kind), p);
  r.witnesses["cells_checked"] = n;
  auto pair_json = [&](std::size_t pu, std::size_t pv) {
    return json{{"u", pu},
                {"v", pv},
                {"u_region", region_text(sys.space, cover.cells[pu])},
                {"v_region", region_text(sys.space, cover.cells[pv])}};
  };

  if (kind == TransitivityKind::Transitive || kind == TransitivityKind::WeaklyMixing) {
    json pairs = json::array();
    std::uint64_t worst = 0;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        const auto& h = hits[u * n + v];
        const auto first = first_member(h);
        if (!first) {
          r.verdict = Verdict::Fails;
          r.basis = provably_empty(h) ? "exhaustive" : "horizon";
          json f = pair_json(u, v);
          f["hits"] = sample_to_json(h);
          r.witnesses["failing"] = f;
          return r;
        }
        worst = std::max(worst, *first);
        if (kind == TransitivityKind::Transitive) pairs.push_back({{"u", u}, {"v", v}, {"first_hit", *first}});
      }
    }
    if (kind == TransitivityKind::Transitive) {
      r.verdict = Verdict::Holds;
      r.basis = "exhaustive";
      r.witnesses["pairs"] = pairs;
      r.witnesses["max_first_hit"] = worst;
      return r;
    }
    std::vector<std::vector<std::uint64_t>> bits(hits.size());
    for (std::size_t i = 0; i < hits.size(); ++i) bits[i] = bitset_of(hits[i]);
    std::uint64_t checked = 0;
    for (std::size_t a = 0; a < hits.size(); ++a) {
      for (std::size_t b = a; b < hits.size(); ++b) {
        ++checked;
        if (bits_meet(bits[a], bits[b])) continue;
        const IndexSample common = intersect(hits[a], hits[b]);
        if (first_member(common)) continue;
        r.verdict = Verdict::Fails;
        r.basis = provably_empty(common) ? "exhaustive" : "horizon";
        r.witnesses["failing"] = {{"first", pair_json(a / n, a % n)},
                                  {"second", pair_json(b / n, b % n)},
                                  {"common", sample_to_json(common)}};
        return r;
      }
    }
    r.verdict = Verdict::Holds;
    r.basis = "exhaustive";
    r.witnesses["pair_pairs"] = checked;
    return r;
  }

  // Mixing: every pair's hitting set is cofinite.
  const ClassifyOptions opts = classify_options(p);
  std::vector<ClassVerdict> verdicts(hits.size());
  parallel_for(hits.size(), p.workers, [&](std::size_t i) { verdicts[i] = classify(hits[i], SetClass::Cofinite, opts); });
  json pairs = json::array();
  std::string basis = "exhaustive";
  bool inconclusive = false;
  std::uint64_t worst_tail = 0;
  for (std::size_t i = 0; i < hits.size(); ++i) {
    const auto& v = verdicts[i];
    if (v.verdict == Verdict::Fails) {
      r.verdict = Verdict::Fails;
      r.basis = v.basis;
      json f = pair_json(i / n, i % n);
      f["class"] = class_verdict_to_json(v);
      f["hits"] = sample_to_json(hits[i]);
      r.witnesses["failing"] = f;
      return r;
    }
    if (v.verdict == Verdict::Inconclusive) inconclusive = true;
    basis = weaker_basis(basis, v.basis);
    worst_tail = std::max(worst_tail, v.tail_start);
    pairs.push_back({{"u", i / n}, {"v", i % n}, {"tail_start", v.tail_start}, {"basis", v.basis}});
  }
  r.verdict = inconclusive ? Verdict::Inconclusive : Verdict::Holds;
  r.basis = basis;
  r.witnesses["pairs"] = pairs;
  r.witnesses["max_tail_start"] = worst_tail;
  return r;
}

// ---------------------------------------------------------------------------
// Accessibility and Kato chaos

PropertyReport check_accessible(const System& sys, const CheckParams& p) {
  require_positive(p.epsilon, "epsilon");
  require_horizon(p.horizon);
  const CoverSpec cover = make_cover(sys.space, p.width);
  const auto traces = cell_traces(sys, cover, p.horizon, p.workers);
  const std::size_t n = cover.cells.size();
  const Real eps(p.epsilon);
  PropertyReport r = start_report(sys, "accessible", p);
  r.witnesses["cells_checked"] = n;

  struct PairResult {
    std::size_t u = 0, v = 0;
    std::optional<std::uint64_t> at;
    Real gap;
    bool exhaustive = false;
    std::optional<std::pair<Point, Point>> points;
  };
  std::vector<std::pair<std::size_t, std::size_t>> todo;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) todo.emplace_back(u, v);
  }
  std::vector<PairResult> results(todo.size());
  parallel_for(todo.size(), p.workers, [&](std::size_t k) {
    auto& res = results[k];
    res.u = todo[k].first;
    res.v = todo[k].second;
    const auto& tu = traces[res.u];
    const auto& tv = traces[res.v];
    const auto joint = joint_cycle(tu.cycle(), tv.cycle());
    std::uint64_t last = p.horizon;
    if (joint) last = std::max<std::uint64_t>(last, joint->start + joint->period);
    res.exhaustive = joint.has_value();
    for (std::uint64_t t = 1; t <= last; ++t) {
      const Real g = gap(sys.space, tu.at(t), tv.at(t));
      if (g < eps) {
        res.at = t;
        res.gap = g;
        break;
      }
    }
    if (!res.at) return;
    const RegionSet meet = intersect(tu.at(*res.at), tv.at(*res.at));
    if (meet.empty()) return;
    const Point c = sample_point(sys.space, meet);
    const RegionSet target = ball(sys.space, c, p.epsilon / 2);
    const RegionSet pu = intersect(cover.cells[res.u], window_preimage(sys.space, sys.schedule, target, *res.at));
    const RegionSet pv = intersect(cover.cells[res.v], window_preimage(sys.space, sys.schedule, target, *res.at));
    if (pu.empty() || pv.empty()) return;
    const Point x = sample_point(sys.space, pu), y = sample_point(sys.space, pv);
    const Real d = distance(sys.space, orbit_point(sys.schedule, x, *res.at), orbit_point(sys.schedule, y, *res.at));
    if (d < eps) res.points = std::make_pair(x, y);
  });

  json pairs = json::array();
  for (const auto& res : results) {
    json pj = {{"u", res.u},
               {"v", res.v},
               {"u_region", region_text(sys.space, cover.cells[res.u])},
               {"v_region", region_text(sys.space, cover.cells[res.v])}};
    if (!res.at) {
      r.verdict = Verdict::Fails;
      r.basis = res.exhaustive ? "exhaustive" : "horizon";
      r.witnesses["failing"] = pj;
      return r;
    }
    pj["n"] = *res.at;
    pj["gap"] = res.gap.to_string();
    if (res.points) {
      pj["x"] = point_text(sys.space, res.points->first);
      pj["y"] = point_text(sys.space, res.points->second);
    }
    pairs.push_back(pj);
  }
  r.verdict = Verdict::Holds;
  r.basis = "exhaustive";
  r.witnesses["pairs"] = pairs;
  return r;
}

PropertyReport check_kato(const System& sys, const CheckParams& p) {
  const PropertyReport s = check_sensitive(sys, SensitivityKind::Plain, p);
  const PropertyReport a = check_accessible(sys, p);
  PropertyReport r = start_report(sys, "kato", p);
  r.verdict = verdict_and(s.verdict, a.verdict);
  if (r.verdict == Verdict::Fails) {
    r.basis = s.verdict == Verdict::Fails ? s.basis : a.basis;
  } else {
    r.basis = weaker_basis(s.basis, a.basis);
  }
  r.witnesses["sensitive"] = {{"verdict", report_verdict_name(s.verdict)}, {"basis", s.basis}, {"witnesses", s.witnesses}};
  r.witnesses["accessible"] = {{"verdict", report_verdict_name(a.verdict)}, {"basis", a.basis}, {"witnesses", a.witnesses}};
  return r;
}

// ---------------------------------------------------------------------------

ChainReplay implication_chain(const System& sys, const CheckParams& p) {
  ChainReplay out;
  auto record = [&](const std::string& name, const PropertyReport& r) { out.verdicts.emplace_back(name, r.verdict); };
  const auto mixing = check_transitive(sys, TransitivityKind::Mixing, p);
  const auto wm = check_transitive(sys, TransitivityKind::WeaklyMixing, p);
  const auto tr = check_transitive(sys, TransitivityKind::Transitive, p);
  const auto cof = check_sensitive(sys, SensitivityKind::Cofinite, p);
  const auto ts = check_sensitive(sys, SensitivityKind::ThicklySyndetic, p);
  const auto syn = check_sensitive(sys, SensitivityKind::Syndetic, p);
  const auto thick = check_sensitive(sys, SensitivityKind::Thick, p);
  const auto plain = check_sensitive(sys, SensitivityKind::Plain, p);
  record("mixing", mixing);
  record("weakly_mixing", wm);
  record("transitive", tr);
  record("cofinitely_sensitive", cof);
  record("thickly_syndetically_sensitive", ts);
  record("syndetically_sensitive", syn);
  record("thickly_sensitive", thick);
  record("sensitive", plain);
  auto implies = [&](const PropertyReport& a, const PropertyReport& b) {
    if (a.verdict == Verdict::Holds && b.verdict != Verdict::Holds) {
      out.violations.push_back(a.property + " Holds but " + b.property + " is " + report_verdict_name(b.verdict));
    }
  };
  implies(mixing, wm);
  implies(wm, tr);
  implies(cof, ts);
  implies(ts, syn);
  implies(ts, thick);
  implies(syn, plain);
  implies(thick, plain);
  return out;
}

std::vector<std::pair<std::uint64_t, Real>> diameter_curve(const System& sys, const RegionSet& u,
                                                           std::uint64_t horizon) {
  require_horizon(horizon);
  if (u.empty()) fail(ErrorCode::BadParameter, "curve region must be nonempty");
  const ImageTrace trace(sys.space, sys.schedule, u, horizon);
  std::vector<std::pair<std::uint64_t, Real>> out;
  for (std::uint64_t n = 0; n <= horizon; ++n) out.emplace_back(n, diam(sys.space, trace.at(n)));
  return out;
}

}  // namespace ndsys
