#pragma once

// Exact scalars.
//
// Rational is an arbitrary-precision rational (GMP backed). Real is an exact
// element q + c*alpha of the field Q(alpha), alpha = (sqrt(5)-1)/2. Interval
// coordinates only ever use the rational part; circle coordinates pick up
// alpha parts from irrational rotations. Equality is exact. Ordering of two
// values with different alpha parts is decided with a 100-digit
// approximation of alpha; since alpha is irrational such a difference is never
// zero, and we refuse to decide (ErrorCode::Precision) when it is smaller than
// 1e-80.

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace ndsys {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;
using HighPrecision = mp::number<mp::cpp_dec_float<100>, mp::et_off>;

/// Parses "p/q", "p" or "-p/q". Decimal notation is rejected.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& r);

Rational floor_rational(const Rational& r);
Rational abs_rational(const Rational& r);
bool is_integer(const Rational& r);
/// 2^-k for k >= 0.
Rational dyadic(std::int64_t k);

HighPrecision to_high_precision(const Rational& r);
const HighPrecision& alpha_high_precision();

class Real {
 public:
  Real() = default;
  Real(const Rational& rational) : q_(rational) {}  // NOLINT implicit on purpose
  Real(const Rational& rational, const Rational& alpha_coeff)
      : q_(rational), c_(alpha_coeff) {}
  Real(long long v) : q_(v) {}  // NOLINT

  static Real alpha_multiple(const Rational& coeff) { return Real(0, coeff); }

  const Rational& rational_part() const { return q_; }
  const Rational& alpha_part() const { return c_; }
  bool is_rational() const { return c_ == 0; }

  Real operator-() const { return Real(-q_, -c_); }
  friend Real operator+(const Real& a, const Real& b) {
    return Real(a.q_ + b.q_, a.c_ + b.c_);
  }
  friend Real operator-(const Real& a, const Real& b) {
    return Real(a.q_ - b.q_, a.c_ - b.c_);
  }
  friend Real operator*(const Real& a, const Rational& s) {
    return Real(a.q_ * s, a.c_ * s);
  }
  friend Real operator*(const Rational& s, const Real& a) { return a * s; }
  friend Real operator/(const Real& a, const Rational& s) {
    return Real(a.q_ / s, a.c_ / s);
  }
  Real& operator+=(const Real& o) { return *this = *this + o; }
  Real& operator-=(const Real& o) { return *this = *this - o; }

  friend bool operator==(const Real& a, const Real& b) {
    return a.q_ == b.q_ && a.c_ == b.c_;
  }
  friend std::strong_ordering operator<=>(const Real& a, const Real& b);

  /// -1, 0 or +1.
  int sign() const;
  /// Greatest integer <= value (decided exactly).
  Rational floor() const;
  /// value - floor(value), in [0,1).
  Real frac() const { return *this - Real(floor()); }

  HighPrecision approx() const;
  std::string to_string() const;

 private:
  Rational q_{0};
  Rational c_{0};
};

inline Real min(const Real& a, const Real& b) { return b < a ? b : a; }
inline Real max(const Real& a, const Real& b) { return a < b ? b : a; }
inline Real abs(const Real& a) { return a.sign() < 0 ? -a : a; }

/// Parses a rational or "q+c*a" / "c*a" forms where "a" denotes alpha.
Real parse_real(std::string_view text);

}  // namespace ndsys
