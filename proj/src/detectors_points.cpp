#include "ndsys/detectors.hpp"

#include "detectors_internal.hpp"
#include "ndsys/serialize.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace ndsys {

using namespace detail;

namespace {

json point_params(const SpaceSpec& space, const Point& x) { return point_text(space, x); }

}  // namespace

// ---------------------------------------------------------------------------
// Point checks

PropertyReport check_recurrent(const System& sys, const Point& x, const CheckParams& p) {
  require_positive(p.epsilon, "epsilon");
  require_horizon(p.horizon);
  require_in_space(sys.space, x);
  const PointTrace trace(sys.space, sys.schedule, x, p.horizon);
  const IndexSample returns = return_times(sys.space, trace, p.epsilon);
  PropertyReport r = start_report(sys, "recurrent", p);
  r.params["point"] = point_params(sys.space, x);
  r.witnesses["returns"] = sample_to_json(returns);
  if (const auto first = first_member(returns)) {
    r.verdict = Verdict::Holds;
    r.basis = "exhaustive";
    r.witnesses["first_return"] = *first;
    r.witnesses["distance"] = distance(sys.space, trace.at(*first), x).to_string();
  } else {
    r.verdict = Verdict::Fails;
    r.basis = provably_empty(returns) ? "exhaustive" : "horizon";
  }
  return r;
}

PropertyReport check_almost_periodic(const System& sys, const Point& x, const CheckParams& p) {
  require_positive(p.epsilon, "epsilon");
  require_horizon(p.horizon);
  require_in_space(sys.space, x);
  const PointTrace trace(sys.space, sys.schedule, x, p.horizon);
  const IndexSample returns = return_times(sys.space, trace, p.epsilon);
  ClassifyOptions opts;
  opts.sub_horizon = p.sub_horizon;
  const ClassVerdict v = classify(returns, SetClass::Syndetic, opts);
  PropertyReport r = start_report(sys, "almost_periodic", p);
  r.params["point"] = point_params(sys.space, x);
  r.verdict = v.verdict;
  r.basis = v.basis;
  r.witnesses["class"] = class_verdict_to_json(v);
  r.witnesses["returns"] = sample_to_json(returns);
  return r;
}

PropertyReport check_periodic(const System& sys, const Point& x, const CheckParams& p) {
  require_horizon(p.horizon);
  require_in_space(sys.space, x);
  if (p.k < 1) fail(ErrorCode::BadParameter, "k must be at least 1");
  PropertyReport r = start_report(sys, "periodic", p);
  r.params["point"] = point_params(sys.space, x);
  auto failing = [&](std::uint64_t anchor, std::uint64_t n, const Point& y) {
    r.verdict = Verdict::Fails;
    r.witnesses["failing"] = {{"anchor", anchor}, {"n", n}, {"value", point_text(sys.space, y)}};
  };
  if (p.anchor == PeriodicAnchor::First) {
    const PointTrace trace(sys.space, sys.schedule, x, p.horizon);
    std::uint64_t last = p.horizon;
    if (const auto& c = trace.cycle()) last = std::max(last, c->start + p.k * c->period);
    r.basis = trace.cycle() ? "exhaustive" : "horizon";
    std::uint64_t checked = 0;
    for (std::uint64_t n = p.k; n <= last; n += p.k) {
      ++checked;
      if (!(trace.at(n) == x)) {
        failing(1, n, trace.at(n));
        r.basis = "exhaustive";
        return r;
      }
    }
    r.verdict = Verdict::Holds;
    r.witnesses["checked"] = checked;
    r.witnesses["through"] = last;
    return r;
  }
  // Every anchor i: f_i^{kn}(x) = x while i + kn - 1 <= T.
  std::uint64_t checked = 0;
  for (std::uint64_t i = 1; i <= p.horizon; ++i) {
    Point y = x;
    for (std::uint64_t step = 1; i + step - 1 <= p.horizon; ++step) {
      y = eval(sys.schedule.map_at(i + step - 1), y);
      if (step % p.k != 0) continue;
      ++checked;
      if (!(y == x)) {
        failing(i, step, y);
        r.basis = "exhaustive";
        return r;
      }
    }
  }
  r.verdict = Verdict::Holds;
  r.basis = "horizon";
  r.witnesses["checked"] = checked;
  return r;
}

PropertyReport check_equicontinuity(const System& sys, const Point& x, const CheckParams& p) {
  require_horizon(p.horizon);
  require_in_space(sys.space, x);
  std::vector<Rational> targets = p.epsilons.empty() ? std::vector<Rational>{p.epsilon} : p.epsilons;
  for (const auto& e : targets) require_positive(e, "epsilon");
  if (p.grid_depth < 1) fail(ErrorCode::BadParameter, "grid depth must be at least 1");
  PropertyReport r = start_report(sys, "equicontinuous", p);
  r.params["point"] = point_params(sys.space, x);
  r.basis = "grid";
  const PointTrace tx(sys.space, sys.schedule, x, p.horizon);

  struct Worst {
    Real d;
    Point y;
    std::uint64_t n = 0;
  };
  // sup over probes of B(x, delta) and n <= T of d(f^n x, f^n y).
  auto spread = [&](const Rational& delta, const Real& cap) {
    Worst w{Real(0), x, 0};
    for (const auto& y : ball_probes(sys.space, x, delta, 64)) {
      const PointTrace ty(sys.space, sys.schedule, y, p.horizon);
      for (std::uint64_t n = 0; n <= p.horizon; ++n) {
        const Real d = distance(sys.space, tx.at(n), ty.at(n));
        if (w.d < d) w = Worst{d, y, n};
        if (!(w.d < cap)) return w;
      }
    }
    return w;
  };

  json found = json::array();
  for (const auto& eps : targets) {
    const Real cap(eps);
    std::optional<Rational> delta;
    Worst last;
    Rational d = Rational(1, 2);
    for (std::uint64_t level = 1; level <= p.grid_depth; ++level, d /= 2) {
      last = spread(d, cap);
      if (last.d < cap) {
        delta = d;
        break;
      }
    }
    if (!delta) {
      r.verdict = Verdict::Fails;
      r.witnesses["failing"] = {{"epsilon", rat(eps)},
                                {"delta", rat(d * 2)},
                                {"probe", point_text(sys.space, last.y)},
                                {"n", last.n},
                                {"distance", last.d.to_string()}};
      return r;
    }
    found.push_back({{"epsilon", rat(eps)}, {"delta", rat(*delta)}, {"sup", last.d.to_string()}});
  }
  r.verdict = Verdict::Holds;
  r.witnesses["deltas"] = found;
  return r;
}

// ---------------------------------------------------------------------------
// Fixed points

namespace {

IntervalSet complement_point(const Rational& q) {
  return IntervalSet(SpaceKind::Interval, {Interval{Real(0), Real(q), true, false}, Interval{Real(q), Real(1), false, true}});
}

IntervalSet pl_fixed(const PLMap& f) {
  const auto& xs = f.breakpoints();
  IntervalSet out = IntervalSet::empty_set(SpaceKind::Interval);
  for (std::size_t i = 0; i < f.pieces().size(); ++i) {
    const auto& a = f.pieces()[i];
    const Rational lo = xs[i], hi = xs[i + 1];
    const bool last = i + 1 == f.pieces().size();
    if (a.slope == 1 && a.intercept == 0) {
      out = out.unite(IntervalSet(SpaceKind::Interval, {Interval{lo, hi, true, last}}));
    } else if (a.slope != 1) {
      const Rational x = a.intercept / (1 - a.slope);
      if (x >= lo && (x < hi || (last && x == hi))) {
        out = out.unite(IntervalSet(SpaceKind::Interval, {Interval::point(x)}));
      }
    }
  }
  for (const auto& [x, v] : f.point_values()) {
    if (v == x) {
      out = out.unite(IntervalSet(SpaceKind::Interval, {Interval::point(x)}));
    } else {
      out = out.intersect(complement_point(x));
    }
  }
  return out;
}

}  // namespace

FixedPoints fixed_points(const System& sys) {
  if (!sys.schedule.finitely_generated()) {
    fail(ErrorCode::Unsupported, "fixed points need a finitely generated schedule");
  }
  const auto maps = schedule_maps(sys.schedule);
  FixedPoints out;
  switch (sys.space.kind) {
    case SpaceKind::Interval: {
      IntervalSet acc = IntervalSet::full(SpaceKind::Interval);
      for (const auto& m : maps) {
        const MapSpec n = normalize(m);
        if (n.is_identity()) continue;
        const auto* f = n.as<PLMap>();
        if (!f) fail(ErrorCode::Unsupported, "fixed points on [0,1] need PL maps");
        acc = acc.intersect(pl_fixed(*f));
      }
      out.region = RegionSet(acc);
      break;
    }
    case SpaceKind::Circle: {
      bool all = true;
      for (const auto& m : maps) {
        const MapSpec n = normalize(m);
        if (n.is_identity()) continue;
        const auto* rot = n.as<Rotation>();
        if (!rot) fail(ErrorCode::Unsupported, "fixed points on the circle need rotations");
        if (rot->step != 0 || rot->offset != 0) all = false;
      }
      out.region = all ? RegionSet::full(sys.space) : RegionSet::empty_in(sys.space);
      break;
    }
    case SpaceKind::Finite: {
      std::vector<std::size_t> keep;
      for (std::size_t i = 0; i < sys.space.size; ++i) {
        const Point x = FinitePoint{i};
        if (std::all_of(maps.begin(), maps.end(), [&](const MapSpec& m) { return eval(m, x) == x; })) keep.push_back(i);
      }
      out.region = RegionSet(IndexSet(sys.space.size, keep));
      break;
    }
    case SpaceKind::Shift: {
      // sigma^p x = x means x is |p|-periodic; common fixed points are the
      // gcd-periodic sequences.
      std::uint64_t g = 0;
      for (const auto& m : maps) {
        const MapSpec n = normalize(m);
        if (n.is_identity()) continue;
        const auto* sh = n.as<ShiftMap>();
        if (!sh) fail(ErrorCode::Unsupported, "fixed points on the shift need shift maps");
        g = std::gcd(g, static_cast<std::uint64_t>(sh->power < 0 ? -sh->power : sh->power));
      }
      if (g == 0) {
        out.region = RegionSet::full(sys.space);
        break;
      }
      if (g > 16) fail(ErrorCode::Unsupported, "periodic-point enumeration is limited to period 16");
      std::set<std::string> seen;
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << g); ++bits) {
        std::vector<std::uint8_t> word;
        for (std::uint64_t j = 0; j < g; ++j) word.push_back(static_cast<std::uint8_t>((bits >> (g - 1 - j)) & 1));
        const SeqPoint x(word, {}, word, 0);
        if (seen.insert(x.to_string()).second) out.points.push_back(x);
      }
      break;
    }
  }
  return out;
}

PropertyReport check_fixed_points(const System& sys, const CheckParams& p) {
  const FixedPoints fp = fixed_points(sys);
  PropertyReport r = start_report(sys, "fixed_points", p);
  r.basis = "exhaustive";
  r.verdict = fp.empty() ? Verdict::Fails : Verdict::Holds;
  if (fp.region) {
    r.witnesses["fixed"] = region_text(sys.space, *fp.region);
  } else {
    json pts = json::array();
    for (const auto& x : fp.points) pts.push_back(point_text(sys.space, x));
    r.witnesses["fixed"] = pts;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Li-Yorke

namespace {

Point random_point(const SpaceSpec& space, std::mt19937_64& rng) {
  auto uniform = [&](std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
  };
  switch (space.kind) {
    case SpaceKind::Interval: {
      const auto j = uniform(1, 10);
      const auto k = uniform(0, std::uint64_t{1} << j);
      return IntervalPoint{Rational(static_cast<long long>(k), static_cast<long long>(std::uint64_t{1} << j))};
    }
    case SpaceKind::Circle: {
      const auto j = uniform(1, 10);
      const auto k = uniform(0, (std::uint64_t{1} << j) - 1);
      return CirclePoint(Real(Rational(static_cast<long long>(k), static_cast<long long>(std::uint64_t{1} << j))));
    }
    case SpaceKind::Finite: return FinitePoint{static_cast<std::size_t>(uniform(0, space.size - 1))};
    case SpaceKind::Shift: {
      auto word = [&](std::uint64_t len) {
        std::vector<std::uint8_t> w;
        for (std::uint64_t i = 0; i < len; ++i) w.push_back(static_cast<std::uint8_t>(uniform(0, 1)));
        return w;
      };
      const auto c = uniform(1, 6);
      return SeqPoint(word(uniform(1, 3)), word(c), word(uniform(1, 3)), -static_cast<std::int64_t>(c / 2));
    }
  }
  return IntervalPoint{0};
}

std::vector<std::pair<Point, Point>> sample_pairs(const SpaceSpec& space, std::uint64_t budget, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Point, Point>> out;
  if (space.kind == SpaceKind::Finite && space.size < 2) return out;
  std::uint64_t attempts = 0;
  while (out.size() < budget && attempts < 20 * budget) {
    ++attempts;
    Point x = random_point(space, rng);
    Point y = random_point(space, rng);
    if (x == y) continue;
    out.emplace_back(std::move(x), std::move(y));
  }
  return out;
}

json pair_witness(const SpaceSpec& space, const Point& x, const Point& y, const PairScan& s) {
  return {{"x", point_text(space, x)},
          {"y", point_text(space, y)},
          {"tail_min", s.tail_min.to_string()},
          {"tail_min_at", s.tail_min_at},
          {"max", s.max.to_string()},
          {"max_at", s.max_at}};
}

}  // namespace

PropertyReport li_yorke_scan(const System& sys, const CheckParams& p) {
  require_positive(p.eta, "eta");
  require_positive(p.delta, "delta");
  require_horizon(p.horizon);
  if (p.pair_budget < 1) fail(ErrorCode::BadParameter, "pair budget must be at least 1");
  PropertyReport r = start_report(sys, "li_yorke", p);
  r.provenance["mode"] = "sampled";
  const auto pairs = sample_pairs(sys.space, p.pair_budget, p.seed);
  std::vector<PairScan> scans(pairs.size());
  parallel_for(pairs.size(), p.workers, [&](std::size_t i) {
    scans[i] = scan_pair(sys.space, sys.schedule, pairs[i].first, pairs[i].second, p.horizon, p.eta, p.delta);
  });
  json examples = json::array();
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!scans[i].witness) continue;
    ++count;
    if (examples.size() < 5) examples.push_back(pair_witness(sys.space, pairs[i].first, pairs[i].second, scans[i]));
  }
  r.witnesses["pairs_scanned"] = pairs.size();
  r.witnesses["witness_count"] = count;
  if (count > 0) {
    r.verdict = Verdict::Holds;
    r.basis = "horizon";
    r.witnesses["examples"] = examples;
  } else if (all_isometries(sys)) {
    // Distances are constant along orbits, so no pair is both proximal and
    // distal.
    r.verdict = Verdict::Fails;
    r.basis = "exhaustive";
    r.witnesses["isometries"] = true;
  } else {
    r.verdict = Verdict::Inconclusive;
    r.basis = "horizon";
  }
  return r;
}

PropertyReport check_li_yorke_sensitive(const System& sys, const CheckParams& p) {
  require_positive(p.eta, "eta");
  require_positive(p.delta, "delta");
  require_positive(p.epsilon, "epsilon");
  require_horizon(p.horizon);
  const CoverSpec cover = make_cover(sys.space, p.width);
  PropertyReport r = start_report(sys, "li_yorke_sensitive", p);
  std::vector<std::optional<json>> found(cover.centers.size());
  parallel_for(cover.centers.size(), p.workers, [&](std::size_t i) {
    const Point& c = cover.centers[i];
    for (const auto& y : ball_probes(sys.space, c, p.epsilon, 8)) {
      const PairScan s = scan_pair(sys.space, sys.schedule, c, y, p.horizon, p.eta, p.delta);
      if (s.witness) {
        found[i] = pair_witness(sys.space, c, y, s);
        return;
      }
    }
  });
  json cells = json::array();
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (!found[i]) {
      r.witnesses["unwitnessed_cell"] = {{"cell", i}, {"center", point_text(sys.space, cover.centers[i])}};
      if (all_isometries(sys)) {
        r.verdict = Verdict::Fails;
        r.basis = "exhaustive";
        r.witnesses["isometries"] = true;
      } else {
        r.verdict = Verdict::Inconclusive;
        r.basis = "horizon";
      }
      return r;
    }
    json c = *found[i];
    c["cell"] = i;
    cells.push_back(c);
  }
  r.verdict = Verdict::Holds;
  r.basis = "horizon";
  r.witnesses["cells"] = cells;
  return r;
}

// ---------------------------------------------------------------------------
// Minimality

namespace {

std::vector<std::vector<std::size_t>> finite_tables(const System& sys) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& m : schedule_maps(sys.schedule)) {
    std::vector<std::size_t> t;
    for (std::size_t i = 0; i < sys.space.size; ++i) t.push_back(std::get<FinitePoint>(eval(m, FinitePoint{i})).index);
    out.push_back(std::move(t));
  }
  return out;
}

json finite_subset_json(const SpaceSpec& space, std::uint64_t mask) {
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < space.size; ++i) {
    if (mask >> i & 1) members.push_back(i);
  }
  return format_region(space, IndexSet(space.size, members));
}

// Closure of {seed} under the family maps, if it stays within `bound` points.
std::optional<std::vector<Point>> finite_closure(const SpaceSpec& space, const std::vector<MapSpec>& maps,
                                                 const Point& seed, std::size_t bound) {
  std::map<std::string, Point> seen;
  std::deque<Point> todo{seed};
  seen.emplace(format_point(space, seed), seed);
  while (!todo.empty()) {
    const Point x = todo.front();
    todo.pop_front();
    for (const auto& m : maps) {
      Point y = eval(m, x);
      if (seen.emplace(format_point(space, y), y).second) {
        if (seen.size() > bound) return std::nullopt;
        todo.push_back(std::move(y));
      }
    }
  }
  std::vector<Point> out;
  for (auto& [k, v] : seen) out.push_back(v);
  return out;
}

}  // namespace

PropertyReport check_minimality(const System& sys, MinimalityMode mode, const CheckParams& p) {
  PropertyReport r = start_report(sys, mode == MinimalityMode::M1 ? "minimal_m1" : "minimal_m2", p);
  if (mode == MinimalityMode::M1) {
    if (sys.space.kind == SpaceKind::Finite) {
      const std::size_t n = sys.space.size;
      if (n > 20) fail(ErrorCode::Unsupported, "exhaustive subset search is limited to 20 points");
      const auto tables = finite_tables(sys);
      const std::uint64_t all = (std::uint64_t{1} << n) - 1;
      r.basis = "exhaustive";
      r.witnesses["subsets_checked"] = all;
      for (std::uint64_t mask = 1; mask < all; ++mask) {
        bool invariant = true;
        for (const auto& t : tables) {
          for (std::size_t i = 0; i < n && invariant; ++i) {
            if ((mask >> i & 1) && !(mask >> t[i] & 1)) invariant = false;
          }
        }
        if (invariant) {
          r.verdict = Verdict::Fails;
          r.witnesses["invariant_subset"] = finite_subset_json(sys.space, mask);
          return r;
        }
      }
      r.verdict = Verdict::Holds;
      return r;
    }
    // A finite invariant set is closed and proper in an infinite space.
    const CoverSpec cover = make_cover(sys.space, p.width);
    const bool exact_family = sys.schedule.finitely_generated();
    const auto maps = schedule_maps(sys.schedule);
    r.witnesses["seeds_checked"] = cover.probes.size();
    for (const auto& seed : cover.probes) {
      const auto closure = finite_closure(sys.space, maps, seed, 64);
      if (!closure) continue;
      json pts = json::array();
      for (const auto& x : *closure) pts.push_back(point_text(sys.space, x));
      r.witnesses["seed"] = point_text(sys.space, seed);
      r.witnesses["invariant_points"] = pts;
      if (exact_family) {
        r.verdict = Verdict::Fails;
        r.basis = "exhaustive";
      } else {
        r.verdict = Verdict::Inconclusive;
        r.basis = "horizon";
        r.witnesses["note"] = "stable under the first family blocks only";
      }
      return r;
    }
    r.verdict = Verdict::Inconclusive;
    r.basis = "horizon";
    return r;
  }

  require_horizon(p.horizon);
  const CoverSpec cover = make_cover(sys.space, p.width);
  struct Miss {
    std::size_t probe;
    std::size_t cell;
    bool exhaustive;
    std::size_t orbit_size;
  };
  std::vector<std::optional<Miss>> misses(cover.probes.size());
  parallel_for(cover.probes.size(), p.workers, [&](std::size_t i) {
    const PointTrace trace(sys.space, sys.schedule, cover.probes[i], p.horizon);
    std::vector<Point> orbit;
    std::set<std::string> keys;
    for (std::uint64_t n = 0; n <= p.horizon; ++n) {
      if (keys.insert(format_point(sys.space, trace.at(n))).second) orbit.push_back(trace.at(n));
    }
    for (std::size_t c = 0; c < cover.cells.size(); ++c) {
      const bool met = std::any_of(orbit.begin(), orbit.end(),
                                   [&](const Point& y) { return contains(sys.space, cover.cells[c], y); });
      if (!met) {
        misses[i] = Miss{i, c, trace.cycle().has_value(), orbit.size()};
        return;
      }
    }
  });
  r.witnesses["probes_checked"] = cover.probes.size();
  // Strongest witnesses first: cycle-decided, then smallest orbit.
  std::vector<Miss> found;
  for (const auto& m : misses) {
    if (m) found.push_back(*m);
  }
  std::stable_sort(found.begin(), found.end(), [](const Miss& a, const Miss& b) {
    if (a.exhaustive != b.exhaustive) return a.exhaustive;
    return a.orbit_size < b.orbit_size;
  });
  r.witnesses["failing_count"] = found.size();
  json failing = json::array();
  bool exhaustive = false;
  for (const auto& m : found) {
    if (failing.empty()) exhaustive = m.exhaustive;
    if (failing.size() < 16) {
      failing.push_back({{"point", point_text(sys.space, cover.probes[m.probe])},
                         {"missed_cell", m.cell},
                         {"missed_region", region_text(sys.space, cover.cells[m.cell])},
                         {"orbit_size", m.orbit_size},
                         {"cycle", m.exhaustive}});
    }
  }
  if (!failing.empty()) {
    r.verdict = Verdict::Fails;
    r.basis = exhaustive ? "exhaustive" : "horizon";
    r.witnesses["failing"] = failing;
    return r;
  }
  r.verdict = Verdict::Holds;
  r.basis = "horizon";
  return r;
}

namespace {

std::size_t region_pieces(const RegionSet& r) {
  if (const auto* s = r.as_intervals()) return s->parts().size();
  if (const auto* s = r.as_cylinders()) return s->cylinders().size();
  return r.as_indices()->members().size();
}

}  // namespace

PropertyReport check_preimage_cover(const System& sys, const CheckParams& p) {
  // Preimages under expanding maps double their pieces at every step.
  constexpr std::size_t piece_cap = 4096;
  require_horizon(p.horizon);
  const CoverSpec cover = make_cover(sys.space, p.width);
  const RegionSet all = RegionSet::full(sys.space);
  std::vector<std::optional<std::uint64_t>> reach(cover.cells.size());
  std::vector<std::optional<std::uint64_t>> cut(cover.cells.size());
  std::vector<RegionSet> reached(cover.cells.size());
  parallel_for(cover.cells.size(), p.workers, [&](std::size_t i) {
    RegionSet acc = cover.cells[i];
    for (std::uint64_t n = 0; n <= p.horizon; ++n) {
      if (n > 0) {
        const RegionSet back = window_preimage(sys.space, sys.schedule, cover.cells[i], n);
        if (region_pieces(back) > piece_cap) {
          cut[i] = n;
          break;
        }
        acc = unite(acc, back);
      }
      if (acc == all) {
        reach[i] = n;
        break;
      }
    }
    reached[i] = acc;
  });
  PropertyReport r = start_report(sys, "preimage_cover", p);
  json cells = json::array();
  for (std::size_t i = 0; i < reach.size(); ++i) {
    if (!reach[i]) {
      json f = {{"cell", i}, {"region", region_text(sys.space, cover.cells[i])}};
      if (cut[i]) {
        r.verdict = Verdict::Inconclusive;
        f["stopped_at"] = *cut[i];
        f["reason"] = "preimage exceeds " + std::to_string(piece_cap) + " pieces";
        r.witnesses["undecided"] = f;
        return r;
      }
      f["covered"] = region_text(sys.space, reached[i]);
      r.verdict = Verdict::Fails;
      r.basis = "horizon";
      r.witnesses["failing"] = f;
      return r;
    }
    cells.push_back({{"cell", i}, {"n", *reach[i]}});
  }
  r.verdict = Verdict::Holds;
  r.basis = "exhaustive";
  r.witnesses["cells"] = cells;
  return r;
}

// ---------------------------------------------------------------------------
// Weak notions: words over the generators at distinct schedule indices

namespace {

struct WordSearch {
  std::vector<std::size_t> letters;
  std::vector<std::uint64_t> available;
  std::vector<MapSpec> maps;
};

WordSearch word_alphabet(const System& sys, const CheckParams& p) {
  if (!sys.schedule.finitely_generated()) fail(ErrorCode::Unsupported, "weak scans need a finitely generated schedule");
  if (p.word_length < 1) fail(ErrorCode::BadParameter, "word length must be at least 1");
  require_horizon(p.horizon);
  std::map<std::size_t, std::uint64_t> counts;
  for (std::uint64_t n = 1; n <= p.horizon; ++n) ++counts[*sys.schedule.generator_at(n)];
  WordSearch w;
  for (auto [g, c] : counts) {
    w.letters.push_back(g);
    w.available.push_back(c);
    w.maps.push_back(sys.schedule.generators()[g].map);
  }
  return w;
}

// Concrete schedule indices for a word: each letter takes the next unused
// position of its generator.
json word_json(const System& sys, const WordSearch& w, const std::vector<std::size_t>& word, std::uint64_t horizon) {
  std::map<std::size_t, std::vector<std::uint64_t>> positions;
  for (std::uint64_t n = 1; n <= horizon; ++n) positions[*sys.schedule.generator_at(n)].push_back(n);
  std::map<std::size_t, std::size_t> used;
  json names = json::array(), indices = json::array();
  for (auto letter : word) {
    const auto g = w.letters[letter];
    names.push_back(sys.schedule.generators()[g].name);
    indices.push_back(positions[g][used[g]++]);
  }
  return {{"word", names}, {"indices", indices}};
}

template <class State, class Key, class Step, class Goal>
std::optional<std::vector<std::size_t>> bfs_words(const WordSearch& w, std::uint64_t max_len, const State& start,
                                                  Key key, Step step, Goal goal) {
  struct Node {
    State state;
    std::vector<std::size_t> word;
    std::vector<std::uint64_t> used;
  };
  std::deque<Node> queue;
  queue.push_back({start, {}, std::vector<std::uint64_t>(w.letters.size(), 0)});
  std::set<std::string> seen;
  constexpr std::size_t kMaxStates = 1 << 16;
  while (!queue.empty()) {
    Node node = std::move(queue.front());
    queue.pop_front();
    if (node.word.size() >= max_len) continue;
    for (std::size_t l = 0; l < w.letters.size(); ++l) {
      if (node.used[l] >= w.available[l]) continue;
      Node next{step(node.state, w.maps[l]), node.word, node.used};
      next.word.push_back(l);
      ++next.used[l];
      if (goal(next.state)) return next.word;
      std::string k = key(next.state);
      for (auto u : next.used) k += "|" + std::to_string(u);
      if (!seen.insert(k).second || seen.size() > kMaxStates) continue;
      queue.push_back(std::move(next));
    }
  }
  return std::nullopt;
}

}  // namespace

PropertyReport weak_scan(const System& sys, WeakKind kind, const CheckParams& p) {
  const WordSearch w = word_alphabet(sys, p);
  const char* name = kind == WeakKind::Sensitive ? "weak_sensitive" : kind == WeakKind::Transitive ? "weak_transitive" : "weak_li_yorke";
  PropertyReport r = start_report(sys, name, p);
  const bool iso = all_isometries(sys);
  const SpaceSpec& space = sys.space;
  auto region_key = [&](const RegionSet& s) { return format_region(space, s); };
  auto region_step = [&](const RegionSet& s, const MapSpec& m) { return image(space, s, m); };

  if (kind == WeakKind::Sensitive) {
    require_positive(p.delta, "delta");
    const CoverSpec cover = spread_cover(space, p);
    r.witnesses["cover_width"] = format_rational(cover.width);
    const Real d(p.delta);
    std::vector<std::optional<std::vector<std::size_t>>> words(cover.cells.size());
    parallel_for(cover.cells.size(), p.workers, [&](std::size_t i) {
      words[i] = bfs_words(w, p.word_length, cover.cells[i], region_key, region_step,
                           [&](const RegionSet& s) { return diam(space, s) > d; });
    });
    json cells = json::array();
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (!words[i]) {
        r.verdict = Verdict::Fails;
        r.basis = iso ? "exhaustive" : "horizon";
        r.witnesses["failing"] = {{"cell", i}, {"region", region_text(space, cover.cells[i])}};
        return r;
      }
      json c = word_json(sys, w, *words[i], p.horizon);
      c["cell"] = i;
      cells.push_back(c);
    }
    r.verdict = Verdict::Holds;
    r.basis = "exhaustive";
    r.witnesses["cells"] = cells;
    return r;
  }

  if (kind == WeakKind::Transitive) {
    const CoverSpec cover = make_cover(space, p.width);
    const std::size_t n = cover.cells.size();
    std::vector<std::optional<std::vector<std::size_t>>> words(n * n);
    parallel_for(n * n, p.workers, [&](std::size_t k) {
      const auto& v = cover.cells[k % n];
      words[k] = bfs_words(w, p.word_length, cover.cells[k / n], region_key, region_step,
                           [&](const RegionSet& s) { return intersects(s, v); });
    });
    json pairs = json::array();
    for (std::size_t k = 0; k < words.size(); ++k) {
      if (!words[k]) {
        r.verdict = Verdict::Fails;
        r.basis = "horizon";
        r.witnesses["failing"] = {{"u", k / n},
                                  {"v", k % n},
                                  {"u_region", region_text(space, cover.cells[k / n])},
                                  {"v_region", region_text(space, cover.cells[k % n])}};
        return r;
      }
      json c = word_json(sys, w, *words[k], p.horizon);
      c["u"] = k / n;
      c["v"] = k % n;
      pairs.push_back(c);
    }
    r.verdict = Verdict::Holds;
    r.basis = "exhaustive";
    r.witnesses["pairs"] = pairs;
    return r;
  }

  require_positive(p.eta, "eta");
  require_positive(p.delta, "delta");
  r.provenance["mode"] = "sampled";
  const auto pairs = sample_pairs(space, std::min<std::uint64_t>(p.pair_budget, 64), p.seed);
  using PairState = std::pair<Point, Point>;
  auto pair_key = [&](const PairState& s) { return format_point(space, s.first) + "," + format_point(space, s.second); };
  auto pair_step = [&](const PairState& s, const MapSpec& m) { return PairState{eval(m, s.first), eval(m, s.second)}; };
  const Real eta(p.eta), delta(p.delta);
  for (const auto& [x, y] : pairs) {
    const auto near = bfs_words(w, p.word_length, PairState{x, y}, pair_key, pair_step,
                                [&](const PairState& s) { return distance(space, s.first, s.second) < eta; });
    if (!near) continue;
    const auto far = bfs_words(w, p.word_length, PairState{x, y}, pair_key, pair_step,
                               [&](const PairState& s) { return distance(space, s.first, s.second) > delta; });
    if (!far) continue;
    r.verdict = Verdict::Holds;
    r.basis = "horizon";
    r.witnesses["x"] = point_text(space, x);
    r.witnesses["y"] = point_text(space, y);
    r.witnesses["proximal"] = word_json(sys, w, *near, p.horizon);
    r.witnesses["distal"] = word_json(sys, w, *far, p.horizon);
    return r;
  }
  r.witnesses["pairs_scanned"] = pairs.size();
  if (iso) {
    r.verdict = Verdict::Fails;
    r.basis = "exhaustive";
    r.witnesses["isometries"] = true;
  } else {
    r.verdict = Verdict::Inconclusive;
    r.basis = "horizon";
  }
  return r;
}

// ---------------------------------------------------------------------------
// Dispatch

const std::vector<std::string>& property_names() {
  static const std::vector<std::string> names = {
      "sensitive",       "cofinitely_sensitive", "syndetically_sensitive", "thickly_sensitive",
      "thickly_syndetically_sensitive", "ergodically_sensitive", "multi_sensitive", "transitive",
      "weakly_mixing",   "mixing",               "accessible",             "kato",
      "li_yorke",        "li_yorke_sensitive",   "minimal_m1",             "minimal_m2",
      "weak_sensitive",  "weak_transitive",      "weak_li_yorke",          "fixed_points",
      "preimage_cover",  "recurrent",            "almost_periodic",      "periodic",               "equicontinuous"};
  return names;
}

bool property_needs_point(const std::string& property) {
  return property == "recurrent" || property == "almost_periodic" || property == "periodic" ||
         property == "equicontinuous";
}

PropertyReport run_check(const System& sys, const std::string& property, const CheckParams& p,
                         const std::optional<Point>& point) {
  static const std::map<std::string, SensitivityKind> sensitivity = {
      {"sensitive", SensitivityKind::Plain},
      {"cofinitely_sensitive", SensitivityKind::Cofinite},
      {"syndetically_sensitive", SensitivityKind::Syndetic},
      {"thickly_sensitive", SensitivityKind::Thick},
      {"thickly_syndetically_sensitive", SensitivityKind::ThicklySyndetic},
      {"ergodically_sensitive", SensitivityKind::Ergodic},
      {"multi_sensitive", SensitivityKind::Multi}};
  if (auto it = sensitivity.find(property); it != sensitivity.end()) return check_sensitive(sys, it->second, p);
  if (property == "transitive") return check_transitive(sys, TransitivityKind::Transitive, p);
  if (property == "weakly_mixing") return check_transitive(sys, TransitivityKind::WeaklyMixing, p);
  if (property == "mixing") return check_transitive(sys, TransitivityKind::Mixing, p);
  if (property == "accessible") return check_accessible(sys, p);
  if (property == "kato") return check_kato(sys, p);
  if (property == "li_yorke") return li_yorke_scan(sys, p);
  if (property == "li_yorke_sensitive") return check_li_yorke_sensitive(sys, p);
  if (property == "minimal_m1") return check_minimality(sys, MinimalityMode::M1, p);
  if (property == "minimal_m2") return check_minimality(sys, MinimalityMode::M2, p);
  if (property == "weak_sensitive") return weak_scan(sys, WeakKind::Sensitive, p);
  if (property == "weak_transitive") return weak_scan(sys, WeakKind::Transitive, p);
  if (property == "weak_li_yorke") return weak_scan(sys, WeakKind::LiYorke, p);
  if (property == "fixed_points") return check_fixed_points(sys, p);
  if (property == "preimage_cover") return check_preimage_cover(sys, p);
  if (property_needs_point(property)) {
    if (!point) fail(ErrorCode::BadParameter, property + " needs a point");
    if (property == "recurrent") return check_recurrent(sys, *point, p);
    if (property == "almost_periodic") return check_almost_periodic(sys, *point, p);
    if (property == "periodic") return check_periodic(sys, *point, p);
    return check_equicontinuity(sys, *point, p);
  }
  fail(ErrorCode::BadParameter, "unknown property '" + property + "'");
}

}  // namespace ndsys
