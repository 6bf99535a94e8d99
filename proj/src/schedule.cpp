#include "ndsys/schedule.hpp"

#include "ndsys/error.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

namespace ndsys {

bool operator==(const OffsetRule& a, const OffsetRule& b) {
  if (a.by != b.by) return false;
  if (!a.inner || !b.inner) return a.inner == b.inner;
  return *a.inner == *b.inner;
}

const char* rule_kind_name(const Rule& r) {
  switch (r.index()) {
    case 0: return "periodic";
    case 1: return "triangular";
    case 2: return "growing_blocks";
    case 3: return "explicit";
    case 4: return "indexed_blocks";
    case 5: return "offset";
  }
  return "?";
}

struct WindowCache {
  std::mutex mutex;
  std::map<std::pair<std::uint64_t, std::uint64_t>, MapSpec> windows;
};

namespace {

std::size_t least_word_period(const std::vector<std::size_t>& w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = w[i] == w[i - d];
    if (ok) return d;
  }
  return n;
}

bool is_triangular(std::uint64_t n) {
  // j(j+1)/2 == n
  std::uint64_t j = 0;
  while (j * (j + 1) / 2 < n) ++j;
  return j * (j + 1) / 2 == n;
}

std::size_t growing_blocks_at(const GrowingBlocksRule& r, std::uint64_t n) {
  std::uint64_t m = 1;
  std::uint64_t before = 0;
  while (before + 2 * m * (m + 1) < n) {
    before += 2 * m * (m + 1);
    ++m;
  }
  const std::uint64_t offset = n - before - 1;
  const std::uint64_t half = m * (m + 1);
  const std::size_t lead = offset < half ? r.map : r.inverse;
  return (offset % half) % (m + 1) == 0 ? lead : r.filler;
}

PLMap minimal2_map(std::uint64_t n) {
  const std::uint64_t k = (n - 1) / 5;
  const Rational s = dyadic(static_cast<std::int64_t>(k) + 2);
  const Rational half(1, 2);
  switch ((n - 1) % 5) {
    case 0: return PLMap();
    case 1: return PLMap({0, 1}, {{half, 0}});
    case 2: return PLMap({0, half, 1}, {{2, 0}, {0, 1}});
    case 3: return PLMap({0, half, 1}, {{1, s}, {1 - 2 * s, 2 * s}});
    default: {
      const Rational q = 1 / (2 * s);  // 2^(k+1)
      return PLMap({0, s, half + s, 1}, {{0, 0}, {1, -s}, {q / (q - 1), -1 / (q - 1)}});
    }
  }
}

MapSpec family_map(const std::string& family, std::uint64_t n) {
  if (family == "minimal2") return minimal2_map(n);
  fail(ErrorCode::Schema, "unknown map family '" + family + "'");
}

std::optional<std::size_t> index_at(const Rule& rule, std::uint64_t n) {
  if (n == 0) fail(ErrorCode::BadParameter, "schedule positions start at 1");
  if (const auto* r = std::get_if<PeriodicRule>(&rule)) return r->word[(n - 1) % r->word.size()];
  if (const auto* r = std::get_if<TriangularRule>(&rule)) return is_triangular(n) ? r->base : r->filler;
  if (const auto* r = std::get_if<GrowingBlocksRule>(&rule)) return growing_blocks_at(*r, n);
  if (const auto* r = std::get_if<ExplicitRule>(&rule)) {
    if (n <= r->prefix.size()) return r->prefix[n - 1];
    return r->tail[(n - 1 - r->prefix.size()) % r->tail.size()];
  }
  if (std::holds_alternative<IndexedBlocksRule>(rule)) return std::nullopt;
  const auto& off = std::get<OffsetRule>(rule);
  return index_at(*off.inner, n + off.by);
}

// Innermost family rule and the position inside it.
std::pair<const IndexedBlocksRule*, std::uint64_t> family_slot(const Rule& rule, std::uint64_t n) {
  if (const auto* r = std::get_if<IndexedBlocksRule>(&rule)) return {r, n};
  if (const auto* off = std::get_if<OffsetRule>(&rule)) return family_slot(*off->inner, n + off->by);
  return {nullptr, n};
}

std::optional<EventualPeriod> rule_eventual_period(const Rule& rule) {
  if (const auto* r = std::get_if<PeriodicRule>(&rule)) return EventualPeriod{1, least_word_period(r->word)};
  if (const auto* r = std::get_if<ExplicitRule>(&rule)) {
    std::vector<std::size_t> tail(r->tail.begin(), r->tail.begin() + static_cast<std::ptrdiff_t>(least_word_period(r->tail)));
    std::vector<std::size_t> prefix = r->prefix;
    while (!prefix.empty() && prefix.back() == tail.back()) {
      prefix.pop_back();
      std::rotate(tail.rbegin(), tail.rbegin() + 1, tail.rend());
    }
    return EventualPeriod{prefix.size() + 1, tail.size()};
  }
  if (const auto* off = std::get_if<OffsetRule>(&rule)) {
    auto ev = rule_eventual_period(*off->inner);
    if (!ev) return std::nullopt;
    return EventualPeriod{ev->start > off->by ? ev->start - off->by : 1, ev->period};
  }
  return std::nullopt;
}

std::vector<std::size_t> used_generators(const Rule& rule) {
  std::set<std::size_t> used;
  if (const auto* r = std::get_if<PeriodicRule>(&rule)) used.insert(r->word.begin(), r->word.end());
  if (const auto* r = std::get_if<TriangularRule>(&rule)) used = {r->base, r->filler};
  if (const auto* r = std::get_if<GrowingBlocksRule>(&rule)) used = {r->map, r->inverse, r->filler};
  if (const auto* r = std::get_if<ExplicitRule>(&rule)) {
    used.insert(r->prefix.begin(), r->prefix.end());
    used.insert(r->tail.begin(), r->tail.end());
  }
  if (const auto* off = std::get_if<OffsetRule>(&rule)) {
    // An offset can skip part of an explicit prefix.
    auto ev = rule_eventual_period(rule);
    if (ev) {
      for (std::uint64_t n = 1; n < ev->start + ev->period; ++n) used.insert(*index_at(rule, n));
    } else {
      auto inner = used_generators(*off->inner);
      used.insert(inner.begin(), inner.end());
    }
  }
  return {used.begin(), used.end()};
}

}  // namespace

Schedule::Schedule(std::vector<Generator> generators, Rule rule)
    : generators_(std::move(generators)), rule_(std::move(rule)), cache_(std::make_shared<WindowCache>()) {
  if (const auto* r = std::get_if<PeriodicRule>(&rule_); r && r->word.empty()) {
    fail(ErrorCode::Schema, "periodic rule needs a nonempty word");
  }
  if (const auto* r = std::get_if<ExplicitRule>(&rule_); r && r->tail.empty()) {
    fail(ErrorCode::Schema, "explicit rule needs a nonempty periodic tail");
  }
  if (const auto* r = std::get_if<OffsetRule>(&rule_); r && !r->inner) {
    fail(ErrorCode::Schema, "offset rule needs an inner rule");
  }
  if (const auto* r = std::get_if<IndexedBlocksRule>(&rule_); r && r->family != "minimal2") {
    fail(ErrorCode::Schema, "unknown map family '" + r->family + "'");
  }
  if (!std::holds_alternative<IndexedBlocksRule>(rule_)) {
    for (auto i : used_generators(rule_)) {
      if (i >= generators_.size()) fail(ErrorCode::Schema, "rule refers to generator " + std::to_string(i) + " which does not exist");
    }
  }
}

std::optional<std::size_t> Schedule::generator_at(std::uint64_t n) const { return index_at(rule_, n); }

MapSpec Schedule::map_at(std::uint64_t n) const {
  if (auto i = index_at(rule_, n)) return generators_[*i].map;
  auto [fam, pos] = family_slot(rule_, n);
  return family_map(fam->family, pos);
}

std::string Schedule::slot_at(std::uint64_t n) const {
  if (auto i = index_at(rule_, n)) return "g" + std::to_string(*i);
  auto [fam, pos] = family_slot(rule_, n);
  const std::uint64_t r = (pos - 1) % 5;
  if (r < 3) return fam->family + ":" + std::to_string(r);
  return fam->family + ":" + std::to_string(r) + ":" + std::to_string((pos - 1) / 5);
}

std::optional<EventualPeriod> Schedule::eventual_period() const { return rule_eventual_period(rule_); }

bool Schedule::finitely_generated() const { return family_slot(rule_, 1).first == nullptr; }

MapSpec Schedule::window(std::uint64_t i, std::uint64_t n) const {
  if (i == 0) fail(ErrorCode::BadParameter, "window start must be at least 1");
  if (n == 0) return IdentityMap{};
  auto compose_step = [&](const MapSpec& acc, std::uint64_t pos) {
    try {
      return compose(map_at(pos), acc);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SpaceMismatch) {
        fail(ErrorCode::HeterogeneousWindow, "window starting at " + std::to_string(i) + " mixes spaces: " + e.what());
      }
      throw;
    }
  };
  const auto ev = eventual_period();
  if (!ev) {
    MapSpec acc = IdentityMap{};
    for (std::uint64_t j = 0; j < n; ++j) acc = compose_step(acc, i + j);
    return acc;
  }
  const std::uint64_t key_i = i < ev->start ? i : ev->start + (i - ev->start) % ev->period;
  std::lock_guard<std::mutex> lock(cache_->mutex);
  std::uint64_t have = n;
  while (have > 0 && cache_->windows.count({key_i, have}) == 0) --have;
  MapSpec acc = have == 0 ? MapSpec(IdentityMap{}) : cache_->windows.at({key_i, have});
  for (std::uint64_t m = have + 1; m <= n; ++m) {
    acc = compose_step(acc, key_i + m - 1);
    cache_->windows.emplace(std::make_pair(key_i, m), acc);
  }
  return acc;
}

MapSpec map_at(const Schedule& s, std::uint64_t n) { return s.map_at(n); }

MapSpec compile_window(const Schedule& s, std::uint64_t i, std::uint64_t n) { return s.window(i, n); }

std::optional<std::uint64_t> detect_period(const Schedule& s, std::uint64_t bound) {
  if (bound == 0) fail(ErrorCode::BadParameter, "period bound must be at least 1");
  const auto ev = s.eventual_period();
  if (!ev || ev->start != 1 || ev->period > bound) return std::nullopt;
  return ev->period;
}

std::vector<MapSpec> schedule_maps(const Schedule& s, std::uint64_t blocks) {
  std::vector<MapSpec> out;
  if (s.finitely_generated()) {
    for (auto i : used_generators(s.rule())) out.push_back(s.generators()[i].map);
    return out;
  }
  std::set<std::string> seen;
  for (std::uint64_t n = 1; n <= 5 * blocks; ++n) {
    if (seen.insert(s.slot_at(n)).second) out.push_back(s.map_at(n));
  }
  return out;
}

FamilyAnalysis family_analysis(const Schedule& s) {
  FamilyAnalysis out;
  out.finitely_generated = s.finitely_generated();
  const auto maps = schedule_maps(s);
  if (out.finitely_generated) {
    for (auto i : used_generators(s.rule())) out.family.push_back(s.generators()[i].name);
  } else {
    std::set<std::string> seen;
    for (std::uint64_t n = 1; out.family.size() < maps.size(); ++n) {
      if (seen.insert(s.slot_at(n)).second) out.family.push_back(s.slot_at(n));
    }
  }
  for (std::size_t a = 0; a < maps.size() && !out.non_commuting; ++a) {
    for (std::size_t b = a + 1; b < maps.size(); ++b) {
      if (commutes(maps[a], maps[b]).verdict == Verdict::Fails) {
        out.non_commuting = std::make_pair(a, b);
        break;
      }
    }
  }
  if (out.non_commuting) {
    out.commutative = Verdict::Fails;
  } else {
    out.commutative = out.finitely_generated ? Verdict::Holds : Verdict::Inconclusive;
  }
  for (std::size_t a = 0; a < maps.size(); ++a) {
    if (!analyze(maps[a]).surjective) {
      out.all_surjective = false;
      out.non_surjective.push_back(out.family[a]);
    }
  }
  return out;
}

Schedule shifted_system(const Schedule& s, std::uint64_t n) {
  if (n == 0) fail(ErrorCode::BadParameter, "shifted systems start at index 1 or later");
  if (n == 1) return s;
  if (const auto* r = std::get_if<PeriodicRule>(&s.rule())) {
    auto word = r->word;
    std::rotate(word.begin(), word.begin() + static_cast<std::ptrdiff_t>((n - 1) % word.size()), word.end());
    return Schedule(s.generators(), PeriodicRule{std::move(word)});
  }
  if (const auto* r = std::get_if<OffsetRule>(&s.rule())) {
    return Schedule(s.generators(), OffsetRule{r->inner, r->by + n - 1});
  }
  return Schedule(s.generators(), OffsetRule{std::make_shared<const Rule>(s.rule()), n - 1});
}

void validate_system(const System& sys) {
  sys.space.validate();
  if (sys.schedule.generators().empty()) fail(ErrorCode::Schema, "system needs at least one generator");
  for (const auto& g : sys.schedule.generators()) {
    try {
      require_acts_on(sys.space, g.map);
      normalize(g.map);
    } catch (const Error& e) {
      fail(e.code(), "generator '" + g.name + "': " + e.what());
    }
  }
  if (!sys.schedule.finitely_generated() && sys.space.kind != SpaceKind::Interval) {
    fail(ErrorCode::SpaceMismatch, "the minimal2 family acts on the interval");
  }
}

}  // namespace ndsys
