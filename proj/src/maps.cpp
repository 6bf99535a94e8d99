#include "ndsys/maps.hpp"

#include "ndsys/error.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace ndsys {

bool operator==(const CompositeMap& a, const CompositeMap& b) { return a.maps == b.maps; }

bool operator==(const InverseMap& a, const InverseMap& b) {
  if (!a.inner || !b.inner) return a.inner == b.inner;
  return *a.inner == *b.inner;
}

namespace {

Rational frac_rational(const Rational& r) { return r - floor_rational(r); }

bool in_unit(const Rational& v) { return v >= 0 && v <= 1; }

// Builds a PL map from a sorted list of cut points (0 and 1 included), the
// affine formula on each open gap (looked up at its midpoint) and the exact
// value at each cut point.
PLMap assemble(const std::set<Rational>& cuts, const std::function<Affine(const Rational&)>& formula_on,
               const std::function<Rational(const Rational&)>& value_at) {
  std::vector<Rational> breaks(cuts.begin(), cuts.end());
  std::vector<Affine> pieces;
  pieces.reserve(breaks.size() - 1);
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    pieces.push_back(formula_on((breaks[k] + breaks[k + 1]) / 2));
  }
  std::map<Rational, Rational> points;
  for (std::size_t k = 0; k < breaks.size(); ++k) {
    const Affine& owner = pieces[std::min(k, pieces.size() - 1)];
    const Rational v = value_at(breaks[k]);
    if (v != owner(breaks[k])) points.emplace(breaks[k], v);
  }
  return PLMap(std::move(breaks), std::move(pieces), std::move(points));
}

}  // namespace

// ---------------------------------------------------------------------------
// PLMap

PLMap::PLMap() : breaks_{0, 1}, pieces_{{1, 0}} {}

PLMap::PLMap(std::vector<Rational> breakpoints, std::vector<Affine> pieces, std::map<Rational, Rational> point_values)
    : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)), points_(std::move(point_values)) {
  if (breaks_.size() < 2 || breaks_.front() != 0 || breaks_.back() != 1) {
    fail(ErrorCode::BadParameter, "PL breakpoints must run from 0 to 1");
  }
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
    if (!(breaks_[i] < breaks_[i + 1])) fail(ErrorCode::BadParameter, "PL breakpoints must be strictly increasing");
  }
  if (pieces_.size() + 1 != breaks_.size()) fail(ErrorCode::BadParameter, "PL map needs one piece per breakpoint gap");
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (!in_unit(pieces_[i](breaks_[i])) || !in_unit(pieces_[i](breaks_[i + 1]))) {
      fail(ErrorCode::BadParameter, "PL piece " + std::to_string(i) + " leaves [0,1]");
    }
  }
  for (const auto& [x, v] : points_) {
    if (!std::binary_search(breaks_.begin(), breaks_.end(), x)) {
      fail(ErrorCode::BadParameter, "PL point value at " + format_rational(x) + " is not at a breakpoint");
    }
    if (!in_unit(v)) fail(ErrorCode::BadParameter, "PL point value leaves [0,1]");
  }
  normalize();
}

void PLMap::normalize() {
  for (auto it = points_.begin(); it != points_.end();) {
    if (pieces_[piece_at(it->first)](it->first) == it->second) {
      it = points_.erase(it);
    } else {
      ++it;
    }
  }
  std::vector<Rational> breaks{breaks_.front()};
  std::vector<Affine> pieces{pieces_.front()};
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    if (pieces_[i] == pieces.back() && points_.count(breaks_[i]) == 0) continue;
    breaks.push_back(breaks_[i]);
    pieces.push_back(pieces_[i]);
  }
  breaks.push_back(breaks_.back());
  breaks_ = std::move(breaks);
  pieces_ = std::move(pieces);
}

std::size_t PLMap::piece_at(const Rational& x) const {
  if (!in_unit(x)) fail(ErrorCode::SpaceMismatch, "point " + format_rational(x) + " outside [0,1]");
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  const auto i = static_cast<std::size_t>(it - breaks_.begin()) - 1;
  return std::min(i, pieces_.size() - 1);
}

Rational PLMap::operator()(const Rational& x) const {
  if (auto it = points_.find(x); it != points_.end()) return it->second;
  return pieces_[piece_at(x)](x);
}

PLMap PLMap::after(const PLMap& inner) const {
  std::set<Rational> cuts(inner.breaks_.begin(), inner.breaks_.end());
  std::vector<Rational> targets = breaks_;
  for (const auto& [x, v] : points_) targets.push_back(x);
  for (std::size_t i = 0; i < inner.pieces_.size(); ++i) {
    const Affine& g = inner.pieces_[i];
    if (g.slope == 0) continue;
    for (const auto& y : targets) {
      const Rational t = (y - g.intercept) / g.slope;
      if (t > inner.breaks_[i] && t < inner.breaks_[i + 1]) cuts.insert(t);
    }
  }
  return assemble(
      cuts,
      [&](const Rational& m) {
        const Affine& g = inner.pieces_[inner.piece_at(m)];
        if (g.slope == 0) return Affine{0, (*this)(g.intercept)};
        const Affine& f = pieces_[piece_at(g(m))];
        return Affine{f.slope * g.slope, f.slope * g.intercept + f.intercept};
      },
      [&](const Rational& x) { return (*this)(inner(x)); });
}

namespace {

// Domain of piece i with point-valued breakpoints removed.
Interval piece_domain(const PLMap& f, std::size_t i) {
  const auto& b = f.breakpoints();
  const bool last = i + 1 == f.pieces().size();
  return {Real(b[i]), Real(b[i + 1]), f.point_values().count(b[i]) == 0,
          last && f.point_values().count(b[i + 1]) == 0};
}

Interval affine_image(const Affine& a, const Interval& iv) {
  if (a.slope == 0) return Interval::point(Real(a.intercept));
  const Real lo = iv.lo * a.slope + Real(a.intercept);
  const Real hi = iv.hi * a.slope + Real(a.intercept);
  if (a.slope > 0) return {lo, hi, iv.lo_closed, iv.hi_closed};
  return {hi, lo, iv.hi_closed, iv.lo_closed};
}

}  // namespace

IntervalSet PLMap::image(const IntervalSet& s) const {
  std::vector<Interval> out;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const IntervalSet part = s.intersect(IntervalSet(SpaceKind::Interval, {piece_domain(*this, i)}));
    for (const auto& iv : part.parts()) out.push_back(affine_image(pieces_[i], iv));
  }
  for (const auto& [x, v] : points_) {
    if (s.contains(Real(x))) out.push_back(Interval::point(Real(v)));
  }
  return IntervalSet(SpaceKind::Interval, std::move(out));
}

IntervalSet PLMap::preimage(const IntervalSet& s) const {
  std::vector<Interval> out;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const Affine& a = pieces_[i];
    const Interval dom = piece_domain(*this, i);
    std::vector<Interval> pulled;
    for (const auto& c : s.parts()) {
      if (a.slope == 0) {
        if (c.contains(Real(a.intercept))) pulled.push_back(dom);
        continue;
      }
      const Real lo = (c.lo - Real(a.intercept)) / a.slope;
      const Real hi = (c.hi - Real(a.intercept)) / a.slope;
      if (a.slope > 0) {
        pulled.push_back({lo, hi, c.lo_closed, c.hi_closed});
      } else {
        pulled.push_back({hi, lo, c.hi_closed, c.lo_closed});
      }
    }
    const IntervalSet piece_set = IntervalSet(SpaceKind::Interval, std::move(pulled))
                                      .intersect(IntervalSet(SpaceKind::Interval, {dom}));
    out.insert(out.end(), piece_set.parts().begin(), piece_set.parts().end());
  }
  for (const auto& [x, v] : points_) {
    if (s.contains(Real(v))) out.push_back(Interval::point(Real(x)));
  }
  return IntervalSet(SpaceKind::Interval, std::move(out));
}

MapFlags PLMap::flags() const {
  MapFlags f;
  f.continuous = points_.empty();
  for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
    if (pieces_[i](breaks_[i + 1]) != pieces_[i + 1](breaks_[i + 1])) f.continuous = false;
  }
  f.surjective = image(IntervalSet::full(SpaceKind::Interval)) == IntervalSet::full(SpaceKind::Interval);
  f.feeble_open = std::none_of(pieces_.begin(), pieces_.end(), [](const Affine& a) { return a.slope == 0; });
  f.injective = f.feeble_open;
  if (f.injective) {
    std::vector<IntervalSet> atoms;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      atoms.emplace_back(SpaceKind::Interval, std::vector<Interval>{affine_image(pieces_[i], piece_domain(*this, i))});
    }
    for (const auto& [x, v] : points_) atoms.emplace_back(SpaceKind::Interval, std::vector<Interval>{Interval::point(Real(v))});
    for (std::size_t a = 0; a < atoms.size() && f.injective; ++a) {
      for (std::size_t b = a + 1; b < atoms.size(); ++b) {
        if (!atoms[a].intersect(atoms[b]).empty()) {
          f.injective = false;
          break;
        }
      }
    }
  }
  f.isometry = f.continuous && f.injective &&
               std::all_of(pieces_.begin(), pieces_.end(), [](const Affine& a) { return abs_rational(a.slope) == 1; });
  return f;
}

PLMap PLMap::inverse() const {
  const MapFlags f = flags();
  if (!f.injective) fail(ErrorCode::NotInvertible, "PL map is not injective");
  if (!f.surjective) fail(ErrorCode::NotInvertible, "PL map is not surjective");
  std::set<Rational> cuts{0, 1};
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    cuts.insert(pieces_[i](breaks_[i]));
    cuts.insert(pieces_[i](breaks_[i + 1]));
  }
  for (const auto& [x, v] : points_) cuts.insert(v);
  auto solve = [&](const Rational& y, bool open_only) -> std::optional<Rational> {
    if (!open_only) {
      for (const auto& [x, v] : points_) {
        if (v == y) return x;
      }
    }
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      const Rational x = (y - pieces_[i].intercept) / pieces_[i].slope;
      const Interval dom = piece_domain(*this, i);
      if (open_only ? (Real(x) > dom.lo && Real(x) < dom.hi) : dom.contains(Real(x))) return x;
    }
    return std::nullopt;
  };
  return assemble(
      cuts,
      [&](const Rational& m) {
        const auto x = solve(m, true);
        const Affine& a = pieces_[piece_at(*x)];
        return Affine{1 / a.slope, -a.intercept / a.slope};
      },
      [&](const Rational& y) { return *solve(y, false); });
}

// ---------------------------------------------------------------------------
// MapSpec

const char* map_kind_name(const MapSpec& m) {
  switch (m.body.index()) {
    case 0: return "pl";
    case 1: return "rotation";
    case 2: return "finite";
    case 3: return "shift";
    case 4: return "identity";
    case 5: return "composite";
    case 6: return "inverse";
  }
  return "?";
}

std::optional<SpaceKind> map_space_kind(const MapSpec& m) {
  if (m.as<PLMap>()) return SpaceKind::Interval;
  if (m.as<Rotation>()) return SpaceKind::Circle;
  if (m.as<FiniteMap>()) return SpaceKind::Finite;
  if (m.as<ShiftMap>()) return SpaceKind::Shift;
  if (const auto* c = m.as<CompositeMap>()) {
    for (const auto& part : c->maps) {
      if (auto k = map_space_kind(part)) return k;
    }
    return std::nullopt;
  }
  if (const auto* inv = m.as<InverseMap>()) return map_space_kind(*inv->inner);
  return std::nullopt;
}

void require_acts_on(const SpaceSpec& space, const MapSpec& m) {
  if (const auto* c = m.as<CompositeMap>()) {
    for (const auto& part : c->maps) require_acts_on(space, part);
    return;
  }
  if (const auto* inv = m.as<InverseMap>()) {
    require_acts_on(space, *inv->inner);
    return;
  }
  const auto kind = map_space_kind(m);
  if (kind && *kind != space.kind) {
    fail(ErrorCode::SpaceMismatch, std::string(map_kind_name(m)) + " map cannot act on a " + space_kind_name(space.kind) +
                                       " space");
  }
  if (const auto* f = m.as<FiniteMap>()) {
    if (f->table.size() != space.size) fail(ErrorCode::SpaceMismatch, "finite map table size differs from the space size");
    for (auto t : f->table) {
      if (t >= space.size) fail(ErrorCode::SpaceMismatch, "finite map target outside the space");
    }
  }
}

namespace {

MapSpec compose_concrete(const MapSpec& outer, const MapSpec& inner) {
  if (outer.is_identity()) return inner;
  if (inner.is_identity()) return outer;
  if (const auto* f = outer.as<PLMap>()) {
    if (const auto* g = inner.as<PLMap>()) return f->after(*g);
  }
  if (const auto* f = outer.as<Rotation>()) {
    if (const auto* g = inner.as<Rotation>()) return Rotation{f->step + g->step, frac_rational(f->offset + g->offset)};
  }
  if (const auto* f = outer.as<FiniteMap>()) {
    if (const auto* g = inner.as<FiniteMap>()) {
      if (f->table.size() != g->table.size()) fail(ErrorCode::SpaceMismatch, "finite maps on spaces of different size");
      FiniteMap out;
      out.table.reserve(g->table.size());
      for (auto t : g->table) out.table.push_back(f->table.at(t));
      return out;
    }
  }
  if (const auto* f = outer.as<ShiftMap>()) {
    if (const auto* g = inner.as<ShiftMap>()) return ShiftMap{f->power + g->power};
  }
  fail(ErrorCode::SpaceMismatch,
       std::string("cannot compose a ") + map_kind_name(outer) + " map with a " + map_kind_name(inner) + " map");
}

}  // namespace

MapSpec normalize(const MapSpec& m) {
  if (const auto* c = m.as<CompositeMap>()) {
    if (c->maps.empty()) fail(ErrorCode::BadParameter, "composite map must list at least one map");
    MapSpec acc = IdentityMap{};
    for (auto it = c->maps.rbegin(); it != c->maps.rend(); ++it) acc = compose_concrete(normalize(*it), acc);
    return acc;
  }
  if (const auto* inv = m.as<InverseMap>()) return invert(normalize(*inv->inner));
  if (const auto* r = m.as<Rotation>()) return Rotation{r->step, frac_rational(r->offset)};
  return m;
}

MapSpec compose(const MapSpec& outer, const MapSpec& inner) {
  return compose_concrete(normalize(outer), normalize(inner));
}

Point eval(const MapSpec& m, const Point& x) {
  if (m.is_identity()) return x;
  if (const auto* c = m.as<CompositeMap>()) {
    if (c->maps.empty()) fail(ErrorCode::BadParameter, "composite map must list at least one map");
    Point y = x;
    for (auto it = c->maps.rbegin(); it != c->maps.rend(); ++it) y = eval(*it, y);
    return y;
  }
  if (const auto* inv = m.as<InverseMap>()) return eval(invert(normalize(*inv->inner)), x);
  if (const auto* f = m.as<PLMap>()) {
    const auto* p = std::get_if<IntervalPoint>(&x);
    if (!p) fail(ErrorCode::SpaceMismatch, "PL maps act on interval points");
    return IntervalPoint{(*f)(p->value)};
  }
  if (const auto* r = m.as<Rotation>()) {
    const auto* p = std::get_if<CirclePoint>(&x);
    if (!p) fail(ErrorCode::SpaceMismatch, "rotations act on circle points");
    return CirclePoint(p->position + r->angle());
  }
  if (const auto* f = m.as<FiniteMap>()) {
    const auto* p = std::get_if<FinitePoint>(&x);
    if (!p) fail(ErrorCode::SpaceMismatch, "finite maps act on finite points");
    if (p->index >= f->table.size()) fail(ErrorCode::SpaceMismatch, "finite point outside the map table");
    return FinitePoint{f->table[p->index]};
  }
  const auto* s = m.as<ShiftMap>();
  const auto* p = std::get_if<SeqPoint>(&x);
  if (!p) fail(ErrorCode::SpaceMismatch, "the shift acts on sequences");
  return p->shifted(s->power);
}

RegionSet image(const SpaceSpec& space, const RegionSet& r, const MapSpec& m) {
  require_compatible(space, r);
  require_acts_on(space, m);
  if (const auto* c = m.as<CompositeMap>()) {
    RegionSet out = r;
    for (auto it = c->maps.rbegin(); it != c->maps.rend(); ++it) out = image(space, out, *it);
    return out;
  }
  const MapSpec n = normalize(m);
  if (n.is_identity()) return r;
  if (const auto* f = n.as<PLMap>()) return f->image(*r.as_intervals());
  if (const auto* rot = n.as<Rotation>()) return r.as_intervals()->rotated(rot->angle());
  if (const auto* f = n.as<FiniteMap>()) {
    std::vector<std::size_t> out;
    for (auto i : r.as_indices()->members()) out.push_back(f->table[i]);
    return IndexSet(space.size, std::move(out));
  }
  return r.as_cylinders()->shifted(n.as<ShiftMap>()->power);
}

RegionSet preimage(const SpaceSpec& space, const RegionSet& r, const MapSpec& m) {
  require_compatible(space, r);
  require_acts_on(space, m);
  const MapSpec n = normalize(m);
  if (n.is_identity()) return r;
  if (const auto* f = n.as<PLMap>()) return f->preimage(*r.as_intervals());
  if (const auto* rot = n.as<Rotation>()) return r.as_intervals()->rotated(-rot->angle());
  if (const auto* f = n.as<FiniteMap>()) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < f->table.size(); ++i) {
      if (r.as_indices()->contains(f->table[i])) out.push_back(i);
    }
    return IndexSet(space.size, std::move(out));
  }
  return r.as_cylinders()->shifted(-n.as<ShiftMap>()->power);
}

MapFlags analyze(const MapSpec& m, const SpaceSpec* space) {
  const MapSpec n = normalize(m);
  if (const auto* f = n.as<PLMap>()) return f->flags();
  if (const auto* f = n.as<FiniteMap>()) {
    MapFlags out;
    std::vector<bool> hit(f->table.size(), false);
    for (auto t : f->table) {
      if (t >= hit.size()) fail(ErrorCode::SpaceMismatch, "finite map target outside the table");
      if (hit[t]) out.injective = false;
      hit[t] = true;
    }
    out.surjective = out.injective;
    out.isometry = out.injective;
    if (space != nullptr && !space->metric.empty() && out.injective) {
      for (std::size_t i = 0; i < f->table.size(); ++i) {
        for (std::size_t j = 0; j < f->table.size(); ++j) {
          if (space->metric[f->table[i]][f->table[j]] != space->metric[i][j]) out.isometry = false;
        }
      }
    }
    return out;
  }
  if (const auto* s = n.as<ShiftMap>()) {
    // The shift stretches: points first differing at coordinate 1 are 1/2
    // apart, their images first differ at 0 and are 1 apart.
    MapFlags out;
    out.isometry = s->power == 0;
    return out;
  }
  return MapFlags{};
}

std::optional<std::string> non_invertible_reason(const MapSpec& m) {
  const MapSpec n = normalize(m);
  if (n.as<PLMap>() || n.as<FiniteMap>()) {
    const MapFlags f = analyze(n);
    if (!f.injective) return std::string("not injective");
    if (!f.surjective) return std::string("not surjective");
  }
  return std::nullopt;
}

MapSpec invert(const MapSpec& m) {
  const MapSpec n = normalize(m);
  if (n.is_identity()) return n;
  if (const auto* f = n.as<PLMap>()) return f->inverse();
  if (const auto* r = n.as<Rotation>()) return Rotation{-r->step, frac_rational(-r->offset)};
  if (const auto* s = n.as<ShiftMap>()) return ShiftMap{-s->power};
  const auto* f = n.as<FiniteMap>();
  if (auto why = non_invertible_reason(n)) fail(ErrorCode::NotInvertible, "finite map is " + *why);
  FiniteMap out;
  out.table.resize(f->table.size());
  for (std::size_t i = 0; i < f->table.size(); ++i) out.table[f->table[i]] = i;
  return out;
}

CommuteResult commutes(const MapSpec& a, const MapSpec& b) {
  const MapSpec x = normalize(a);
  const MapSpec y = normalize(b);
  if (x.is_identity() || y.is_identity()) return {};
  const auto kx = map_space_kind(x);
  const auto ky = map_space_kind(y);
  if (kx != ky) fail(ErrorCode::SpaceMismatch, "commuting test of maps on different spaces");
  if (x.as<Rotation>() || x.as<ShiftMap>()) return {};
  if (const auto* f = x.as<FiniteMap>()) {
    const auto* g = y.as<FiniteMap>();
    if (f->table.size() != g->table.size()) fail(ErrorCode::SpaceMismatch, "finite maps on spaces of different size");
    for (std::size_t i = 0; i < f->table.size(); ++i) {
      if (f->table[g->table[i]] != g->table[f->table[i]]) return {Verdict::Fails, true, FinitePoint{i}};
    }
    return {};
  }
  const auto* f = x.as<PLMap>();
  const auto* g = y.as<PLMap>();
  const PLMap fg = f->after(*g);
  const PLMap gf = g->after(*f);
  if (fg == gf) return {};
  std::set<Rational> cuts(fg.breakpoints().begin(), fg.breakpoints().end());
  cuts.insert(gf.breakpoints().begin(), gf.breakpoints().end());
  std::vector<Rational> candidates;
  for (auto it = cuts.begin(); it != cuts.end(); ++it) {
    candidates.push_back(*it);
    auto next = std::next(it);
    if (next != cuts.end()) candidates.push_back((*it + *next) / 2);
  }
  for (const auto& t : candidates) {
    if (fg(t) != gf(t)) return {Verdict::Fails, true, IntervalPoint{t}};
  }
  fail(ErrorCode::Precision, "PL normal forms differ but no witness point found");
}

std::string describe(const MapSpec& m) {
  if (m.is_identity()) return "id";
  if (const auto* f = m.as<PLMap>()) {
    std::string out = "pl[";
    for (std::size_t i = 0; i < f->pieces().size(); ++i) {
      if (i > 0) out += "; ";
      const auto& p = f->pieces()[i];
      out += format_rational(p.slope) + "x+" + format_rational(p.intercept) + " on [" +
             format_rational(f->breakpoints()[i]) + "," + format_rational(f->breakpoints()[i + 1]) +
             (i + 1 == f->pieces().size() ? "]" : ")");
    }
    for (const auto& [x, v] : f->point_values()) out += "; " + format_rational(x) + "->" + format_rational(v);
    return out + "]";
  }
  if (const auto* r = m.as<Rotation>()) return "rot(" + r->angle().to_string() + ")";
  if (const auto* f = m.as<FiniteMap>()) {
    std::string out = "table[";
    for (std::size_t i = 0; i < f->table.size(); ++i) out += (i ? "," : "") + std::to_string(f->table[i]);
    return out + "]";
  }
  if (const auto* s = m.as<ShiftMap>()) return "shift^" + std::to_string(s->power);
  if (const auto* c = m.as<CompositeMap>()) {
    std::string out = "(";
    for (std::size_t i = 0; i < c->maps.size(); ++i) out += (i ? " o " : "") + describe(c->maps[i]);
    return out + ")";
  }
  return "inv(" + describe(*m.as<InverseMap>()->inner) + ")";
}

}  // namespace ndsys
