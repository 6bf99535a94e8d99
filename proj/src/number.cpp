#include "ndsys/number.hpp"

#include "ndsys/error.hpp"

#include <cctype>
#include <sstream>

namespace ndsys {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::HeterogeneousWindow: return "HeterogeneousWindow";
    case ErrorCode::EmptyHorizon: return "EmptyHorizon";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::UnknownFixture: return "UnknownFixture";
    case ErrorCode::NotPeriodic: return "NotPeriodic";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Schema: return "Schema";
    case ErrorCode::Precision: return "Precision";
  }
  return "Unknown";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  s = trim(s);
  std::size_t i = 0;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) fail(ErrorCode::Parse, "malformed rational '" + std::string(whole) + "'");
  for (std::size_t j = i; j < s.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) {
      fail(ErrorCode::Parse, "malformed rational '" + std::string(whole) + "'");
    }
  }
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return Integer(digits);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s, text));
  Integer num = parse_integer(s.substr(0, slash), text);
  Integer den = parse_integer(s.substr(slash + 1), text);
  if (den == 0) fail(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
  return Rational(num) / Rational(den);
}

std::string format_rational(const Rational& r) {
  if (mp::denominator(r) == 1) return mp::numerator(r).str();
  return mp::numerator(r).str() + "/" + mp::denominator(r).str();
}

Rational floor_rational(const Rational& r) {
  Integer n = mp::numerator(r);
  Integer d = mp::denominator(r);
  Integer q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) q -= 1;
  return Rational(q);
}

Rational abs_rational(const Rational& r) { return r < 0 ? Rational(-r) : r; }

bool is_integer(const Rational& r) { return mp::denominator(r) == 1; }

Rational dyadic(std::int64_t k) {
  if (k < 0) fail(ErrorCode::BadParameter, "dyadic exponent must be nonnegative");
  Integer den = 1;
  den <<= static_cast<unsigned>(k);
  return Rational(Integer(1)) / Rational(den);
}

HighPrecision to_high_precision(const Rational& r) {
  return HighPrecision(mp::numerator(r).str()) / HighPrecision(mp::denominator(r).str());
}

const HighPrecision& alpha_high_precision() {
  static const HighPrecision alpha = (mp::sqrt(HighPrecision(5)) - 1) / 2;
  return alpha;
}

HighPrecision Real::approx() const {
  HighPrecision v = to_high_precision(q_);
  if (c_ != 0) v += to_high_precision(c_) * alpha_high_precision();
  return v;
}

int Real::sign() const {
  if (c_ == 0) return q_ > 0 ? 1 : (q_ < 0 ? -1 : 0);
  HighPrecision v = approx();
  static const HighPrecision threshold("1e-80");
  if (mp::abs(v) < threshold) {
    fail(ErrorCode::Precision, "cannot decide the sign of " + to_string());
  }
  return v > 0 ? 1 : -1;
}

std::strong_ordering operator<=>(const Real& a, const Real& b) {
  if (a.c_ == b.c_) {
    if (a.q_ < b.q_) return std::strong_ordering::less;
    if (a.q_ > b.q_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  int s = (a - b).sign();
  return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

Rational Real::floor() const {
  if (c_ == 0) return floor_rational(q_);
  // Irrational, so never an integer: the approximation floor is exact once
  // the value is not within 1e-80 of an integer.
  HighPrecision v = approx();
  HighPrecision f = mp::floor(v);
  static const HighPrecision threshold("1e-80");
  if (v - f < threshold || (f + 1) - v < threshold) {
    fail(ErrorCode::Precision, "cannot decide the floor of " + to_string());
  }
  std::string digits = f.str(0, std::ios_base::fixed);
  if (auto dot = digits.find('.'); dot != std::string::npos) digits.resize(dot);
  if (digits == "-0") digits = "0";
  return Rational(Integer(digits));
}

std::string Real::to_string() const {
  if (c_ == 0) return format_rational(q_);
  std::string out;
  if (q_ != 0) out = format_rational(q_);
  std::string coeff = format_rational(c_);
  if (!out.empty()) {
    if (c_ > 0) out += "+";
  }
  if (c_ == 1) {
    out += "a";
  } else if (c_ == -1) {
    out += "-a";
  } else {
    out += coeff + "*a";
  }
  return out;
}

Real parse_real(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) fail(ErrorCode::Parse, "empty number");
  if (s.back() != 'a') return Real(parse_rational(s));
  // Split off the alpha term: the last '+' or '-' that is not at position 0.
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size() - 1; i > 0; --i) {
    if (s[i] == '+' || s[i] == '-') {
      split = i;
      break;
    }
  }
  std::string rational_part = split == std::string::npos ? "0" : s.substr(0, split);
  std::string alpha_term = split == std::string::npos ? s : s.substr(split);
  alpha_term.pop_back();  // the 'a'
  if (!alpha_term.empty() && alpha_term.back() == '*') alpha_term.pop_back();
  Rational coeff;
  if (alpha_term.empty() || alpha_term == "+") {
    coeff = 1;
  } else if (alpha_term == "-") {
    coeff = -1;
  } else {
    coeff = parse_rational(alpha_term);
  }
  return Real(parse_rational(rational_part), coeff);
}

}  // namespace ndsys
