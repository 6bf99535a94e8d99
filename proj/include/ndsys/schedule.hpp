#pragma once

// Rules n -> f_n for n >= 1, and the systems built from them.

#include "ndsys/maps.hpp"
#include "ndsys/space.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ndsys {

struct Generator {
  std::string name;
  MapSpec map;
  friend bool operator==(const Generator&, const Generator&) = default;
};

/// w_1 w_2 ... w_k w_1 w_2 ...
struct PeriodicRule {
  std::vector<std::size_t> word;
  friend bool operator==(const PeriodicRule&, const PeriodicRule&) = default;
};

/// base at positions j(j+1)/2, filler elsewhere.
struct TriangularRule {
  std::size_t base = 0;
  std::size_t filler = 0;
  friend bool operator==(const TriangularRule&, const TriangularRule&) = default;
};

/// Block n (n = 1, 2, ...): n copies of [map, filler x n], then n copies of
/// [inverse, filler x n].
struct GrowingBlocksRule {
  std::size_t map = 0;
  std::size_t inverse = 0;
  std::size_t filler = 0;
  friend bool operator==(const GrowingBlocksRule&, const GrowingBlocksRule&) = default;
};

/// prefix, then tail repeated forever.
struct ExplicitRule {
  std::vector<std::size_t> prefix;
  std::vector<std::size_t> tail;
  friend bool operator==(const ExplicitRule&, const ExplicitRule&) = default;
};

/// Maps built per block from a named family rather than drawn from the
/// generator list. "minimal2": blocks of five maps on [0,1], block k being
/// id, x/2, the folding map 2x|1 and a pair of mutually inverse maps whose
/// shift is 2^-(k+2).
struct IndexedBlocksRule {
  std::string family;
  friend bool operator==(const IndexedBlocksRule&, const IndexedBlocksRule&) = default;
};

struct OffsetRule;

using Rule = std::variant<PeriodicRule, TriangularRule, GrowingBlocksRule, ExplicitRule, IndexedBlocksRule, OffsetRule>;

/// inner rule read from index by+1 onwards.
struct OffsetRule {
  std::shared_ptr<const Rule> inner;
  std::uint64_t by = 0;
  friend bool operator==(const OffsetRule& a, const OffsetRule& b);
};

const char* rule_kind_name(const Rule& r);

/// Index pattern that is eventually periodic: position n >= start repeats
/// with the given period (start is the least such position).
struct EventualPeriod {
  std::uint64_t start = 1;
  std::uint64_t period = 1;
  friend bool operator==(const EventualPeriod&, const EventualPeriod&) = default;
};

struct WindowCache;

class Schedule {
 public:
  Schedule(std::vector<Generator> generators, Rule rule);

  const std::vector<Generator>& generators() const { return generators_; }
  const Rule& rule() const { return rule_; }

  /// Generator index used at position n (n >= 1); nullopt for family rules.
  std::optional<std::size_t> generator_at(std::uint64_t n) const;
  /// f_n.
  MapSpec map_at(std::uint64_t n) const;
  /// Key such that equal keys mean equal maps (generator index or family slot).
  std::string slot_at(std::uint64_t n) const;

  std::optional<EventualPeriod> eventual_period() const;
  bool finitely_generated() const;

  /// f_i^n = f_{i+n-1} o ... o f_i, flattened; Identity for n == 0.
  MapSpec window(std::uint64_t i, std::uint64_t n) const;

  friend bool operator==(const Schedule& a, const Schedule& b) {
    return a.generators_ == b.generators_ && a.rule_ == b.rule_;
  }

 private:
  std::vector<Generator> generators_;
  Rule rule_;
  std::shared_ptr<WindowCache> cache_;
};

MapSpec map_at(const Schedule& s, std::uint64_t n);
MapSpec compile_window(const Schedule& s, std::uint64_t i, std::uint64_t n);
/// Least k <= bound with f_{n+k} = f_n for every n >= 1.
std::optional<std::uint64_t> detect_period(const Schedule& s, std::uint64_t bound = 1000000);

struct FamilyAnalysis {
  bool finitely_generated = true;
  /// Distinct maps the analysis ranged over.
  std::vector<std::string> family;
  Verdict commutative = Verdict::Holds;
  /// First non-commuting pair, by family position.
  std::optional<std::pair<std::size_t, std::size_t>> non_commuting;
  bool all_surjective = true;
  std::vector<std::string> non_surjective;
};
FamilyAnalysis family_analysis(const Schedule& s);

/// f_{n,oo}: the sequence read from index n onwards.
Schedule shifted_system(const Schedule& s, std::uint64_t n);

/// Maps that occur in the schedule in one list: the generators used by an
/// index rule, or the family maps of the first `blocks` blocks.
std::vector<MapSpec> schedule_maps(const Schedule& s, std::uint64_t blocks = 8);

struct Defaults {
  std::optional<std::uint64_t> horizon;
  std::optional<Rational> width;
  std::optional<Rational> delta;
  std::optional<Rational> epsilon;
  std::optional<Rational> theta;
  std::optional<std::uint64_t> word_length;
  friend bool operator==(const Defaults&, const Defaults&) = default;
};

struct System {
  std::string name;
  SpaceSpec space;
  Schedule schedule;
  Defaults defaults;
};

/// Checks that every generator acts on the space and every index is in range.
void validate_system(const System& sys);

}  // namespace ndsys
