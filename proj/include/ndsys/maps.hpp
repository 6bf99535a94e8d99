#pragma once

// Exact self-maps.
//
// A PLMap lives on [0,1]. Piece i is affine on [x_i, x_{i+1}) and the last
// piece is closed at 1. On top of the pieces a map may carry point values at
// breakpoints (including 0 and 1); these appear when composing maps that are
// discontinuous or have a decreasing piece, and keep composition exact.

#include "ndsys/number.hpp"
#include "ndsys/region.hpp"
#include "ndsys/space.hpp"
#include "ndsys/verdict.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ndsys {

struct Affine {
  Rational slope, intercept;
  Rational operator()(const Rational& x) const { return slope * x + intercept; }
  friend bool operator==(const Affine&, const Affine&) = default;
};

struct MapFlags {
  bool continuous = true;
  bool surjective = true;
  bool injective = true;
  bool feeble_open = true;
  bool isometry = true;
  friend bool operator==(const MapFlags&, const MapFlags&) = default;
};

class PLMap {
 public:
  /// Identity on [0,1].
  PLMap();
  /// breakpoints: 0 = x_0 < ... < x_p = 1, pieces.size() == p.
  PLMap(std::vector<Rational> breakpoints, std::vector<Affine> pieces,
        std::map<Rational, Rational> point_values = {});

  const std::vector<Rational>& breakpoints() const { return breaks_; }
  const std::vector<Affine>& pieces() const { return pieces_; }
  const std::map<Rational, Rational>& point_values() const { return points_; }

  Rational operator()(const Rational& x) const;
  /// Index of the piece whose domain holds x (ignoring point values).
  std::size_t piece_at(const Rational& x) const;

  /// this o inner.
  PLMap after(const PLMap& inner) const;
  IntervalSet image(const IntervalSet& s) const;
  IntervalSet preimage(const IntervalSet& s) const;
  MapFlags flags() const;
  /// Throws NotInvertible unless bijective.
  PLMap inverse() const;

  friend bool operator==(const PLMap&, const PLMap&) = default;

 private:
  void normalize();

  std::vector<Rational> breaks_;
  std::vector<Affine> pieces_;
  std::map<Rational, Rational> points_;
};

/// x -> x + step*alpha + offset (mod 1).
struct Rotation {
  std::int64_t step = 0;
  Rational offset = 0;
  Real angle() const { return Real(offset, Rational(step)); }
  friend bool operator==(const Rotation&, const Rotation&) = default;
};

struct FiniteMap {
  std::vector<std::size_t> table;
  friend bool operator==(const FiniteMap&, const FiniteMap&) = default;
};

/// sigma^power, (sigma x)_i = x_{i+1}.
struct ShiftMap {
  std::int64_t power = 1;
  friend bool operator==(const ShiftMap&, const ShiftMap&) = default;
};

struct IdentityMap {
  friend bool operator==(const IdentityMap&, const IdentityMap&) = default;
};

struct MapSpec;

/// maps.front() is applied last.
struct CompositeMap {
  std::vector<MapSpec> maps;
  friend bool operator==(const CompositeMap&, const CompositeMap&);
};

struct InverseMap {
  std::shared_ptr<const MapSpec> inner;
  friend bool operator==(const InverseMap&, const InverseMap&);
};

struct MapSpec {
  using Body = std::variant<PLMap, Rotation, FiniteMap, ShiftMap, IdentityMap, CompositeMap, InverseMap>;
  Body body = IdentityMap{};

  MapSpec() = default;
  MapSpec(PLMap m) : body(std::move(m)) {}        // NOLINT
  MapSpec(Rotation m) : body(std::move(m)) {}     // NOLINT
  MapSpec(FiniteMap m) : body(std::move(m)) {}    // NOLINT
  MapSpec(ShiftMap m) : body(m) {}                // NOLINT
  MapSpec(IdentityMap m) : body(m) {}             // NOLINT
  MapSpec(CompositeMap m) : body(std::move(m)) {} // NOLINT
  MapSpec(InverseMap m) : body(std::move(m)) {}   // NOLINT

  static MapSpec inverse_of(MapSpec m) { return InverseMap{std::make_shared<const MapSpec>(std::move(m))}; }

  template <class T>
  const T* as() const { return std::get_if<T>(&body); }
  bool is_identity() const { return as<IdentityMap>() != nullptr; }

  friend bool operator==(const MapSpec&, const MapSpec&) = default;
};

/// Name of the variant: "pl", "rotation", "finite", "shift", "identity",
/// "composite", "inverse".
const char* map_kind_name(const MapSpec& m);

/// Space the map acts on; nullopt for the identity (acts on every space).
std::optional<SpaceKind> map_space_kind(const MapSpec& m);
/// Throws SpaceMismatch when the map cannot act on the space.
void require_acts_on(const SpaceSpec& space, const MapSpec& m);

/// Flattens composites and inverses to a single concrete map.
MapSpec normalize(const MapSpec& m);
/// normalize(outer o inner); SpaceMismatch when the kinds cannot compose.
MapSpec compose(const MapSpec& outer, const MapSpec& inner);

Point eval(const MapSpec& m, const Point& x);
RegionSet image(const SpaceSpec& space, const RegionSet& r, const MapSpec& m);
RegionSet preimage(const SpaceSpec& space, const RegionSet& r, const MapSpec& m);

MapFlags analyze(const MapSpec& m, const SpaceSpec* space = nullptr);
/// Why a map cannot be inverted, or nullopt when it can.
std::optional<std::string> non_invertible_reason(const MapSpec& m);
MapSpec invert(const MapSpec& m);

struct CommuteResult {
  Verdict verdict = Verdict::Holds;
  bool exact = true;
  std::optional<Point> witness;
};
CommuteResult commutes(const MapSpec& a, const MapSpec& b);

/// Human-readable one-line description.
std::string describe(const MapSpec& m);

}  // namespace ndsys
