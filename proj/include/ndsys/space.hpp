#pragma once

#include "ndsys/number.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ndsys {

enum class SpaceKind { Interval, Circle, Finite, Shift };

const char* space_kind_name(SpaceKind kind);

struct SpaceSpec {
  SpaceKind kind = SpaceKind::Interval;
  // Finite spaces only.
  std::size_t size = 0;
  std::int64_t first_label = 0;
  // Optional user metric on a finite space; empty means the 0/1 metric.
  std::vector<std::vector<Rational>> metric;

  static SpaceSpec of(SpaceKind k) {
    SpaceSpec s;
    s.kind = k;
    return s;
  }
  static SpaceSpec interval() { return of(SpaceKind::Interval); }
  static SpaceSpec circle() { return of(SpaceKind::Circle); }
  static SpaceSpec shift() { return of(SpaceKind::Shift); }
  static SpaceSpec finite(std::size_t n, std::int64_t first_label = 0) {
    SpaceSpec s = of(SpaceKind::Finite);
    s.size = n;
    s.first_label = first_label;
    return s;
  }

  /// Sup of the metric: 1 on [0,1], 1/2 on the circle, 1 on the shift.
  Rational diameter() const;
  bool has_isolated_points() const { return kind == SpaceKind::Finite; }
  /// Throws BadParameter when the finite metric table is not a metric.
  void validate() const;

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;
};

/// Two-sided binary sequence x_i, i in Z, that is eventually periodic in both
/// directions. Coordinates origin() .. origin()+center().size()-1 hold the
/// center word; to their right the word right() repeats, to their left the
/// word left() repeats, with left().back() sitting at position origin()-1.
class SeqPoint {
 public:
  SeqPoint();
  SeqPoint(std::vector<std::uint8_t> left, std::vector<std::uint8_t> center,
           std::vector<std::uint8_t> right, std::int64_t origin);

  /// The constant sequence with value `bit`.
  static SeqPoint constant(std::uint8_t bit);

  std::uint8_t at(std::int64_t i) const;
  /// (sigma^p x)_i = x_{i+p}.
  SeqPoint shifted(std::int64_t power) const;
  /// Copy with coordinate i set to bit.
  SeqPoint with(std::int64_t i, std::uint8_t bit) const;

  const std::vector<std::uint8_t>& left() const { return left_; }
  const std::vector<std::uint8_t>& center() const { return center_; }
  const std::vector<std::uint8_t>& right() const { return right_; }
  std::int64_t origin() const { return origin_; }

  /// Coordinates outside [lo, hi] follow the periodic tails.
  std::int64_t settled_lo() const;
  std::int64_t settled_hi() const;

  /// Canonical text "<L>C.D<R>" where '.' sits just before coordinate 0.
  std::string to_string() const;
  static SeqPoint parse(std::string_view text);

  friend bool operator==(const SeqPoint& a, const SeqPoint& b);

 private:
  void canonicalize();

  std::vector<std::uint8_t> left_;
  std::vector<std::uint8_t> center_;
  std::vector<std::uint8_t> right_;
  std::int64_t origin_ = 0;
};

struct IntervalPoint {
  Rational value;
  friend bool operator==(const IntervalPoint&, const IntervalPoint&) = default;
};

/// base + m*alpha (mod 1), stored reduced into [0,1).
struct CirclePoint {
  Real position;
  CirclePoint() = default;
  explicit CirclePoint(const Real& p) : position(p.frac()) {}
  CirclePoint(const Rational& base, std::int64_t steps)
      : position(Real(base, Rational(steps)).frac()) {}
  friend bool operator==(const CirclePoint&, const CirclePoint&) = default;
};

struct FinitePoint {
  std::size_t index = 0;
  friend bool operator==(const FinitePoint&, const FinitePoint&) = default;
};

using Point = std::variant<IntervalPoint, CirclePoint, FinitePoint, SeqPoint>;

SpaceKind point_kind(const Point& p);
void require_in_space(const SpaceSpec& space, const Point& p);

/// Exact metric value; circle distances carry an alpha part when the two
/// points differ by an irrational rotation.
Real distance(const SpaceSpec& space, const Point& x, const Point& y);

std::string format_point(const SpaceSpec& space, const Point& p);
Point parse_point(const SpaceSpec& space, std::string_view text);

}  // namespace ndsys
