#include "ndsys/space.hpp"

#include "ndsys/error.hpp"

#include <algorithm>
#include <numeric>

namespace ndsys {

const char* space_kind_name(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::Interval: return "interval";
    case SpaceKind::Circle: return "circle";
    case SpaceKind::Finite: return "finite";
    case SpaceKind::Shift: return "shift";
  }
  return "?";
}

Rational SpaceSpec::diameter() const {
  switch (kind) {
    case SpaceKind::Interval: return 1;
    case SpaceKind::Circle: return Rational(1, 2);
    case SpaceKind::Shift: return 1;
    case SpaceKind::Finite: {
      if (size <= 1) return 0;
      if (metric.empty()) return 1;
      Rational best = 0;
      for (const auto& row : metric)
        for (const auto& v : row) best = std::max(best, v);
      return best;
    }
  }
  return 1;
}

void SpaceSpec::validate() const {
  if (kind != SpaceKind::Finite) return;
  if (size == 0) fail(ErrorCode::BadParameter, "finite space must have at least one point");
  if (metric.empty()) return;
  if (metric.size() != size) fail(ErrorCode::BadParameter, "metric table has wrong size");
  for (std::size_t i = 0; i < size; ++i) {
    if (metric[i].size() != size) fail(ErrorCode::BadParameter, "metric table has wrong size");
    for (std::size_t j = 0; j < size; ++j) {
      const Rational& d = metric[i][j];
      if ((i == j) != (d == 0) || d < 0) fail(ErrorCode::BadParameter, "metric must be positive off the diagonal");
      if (d != metric[j][i]) fail(ErrorCode::BadParameter, "metric must be symmetric");
      for (std::size_t k = 0; k < size; ++k) {
        if (metric[i][k] > d + metric[j][k]) fail(ErrorCode::BadParameter, "metric violates the triangle inequality");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// SeqPoint

namespace {

using Word = std::vector<std::uint8_t>;

std::size_t minimal_cyclic_period(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = w[i] == w[(i + d) % n];
    if (ok) return d;
  }
  return n;
}

std::int64_t mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

void check_bits(const Word& w, const char* part) {
  for (auto b : w) {
    if (b > 1) fail(ErrorCode::BadParameter, std::string("sequence ") + part + " must be binary");
  }
}

}  // namespace

SeqPoint::SeqPoint() : left_{0}, right_{0} {}

SeqPoint::SeqPoint(Word left, Word center, Word right, std::int64_t origin)
    : left_(std::move(left)), center_(std::move(center)), right_(std::move(right)), origin_(origin) {
  if (left_.empty() || right_.empty()) {
    fail(ErrorCode::BadParameter, "sequence tails must have positive period");
  }
  check_bits(left_, "left tail");
  check_bits(center_, "center");
  check_bits(right_, "right tail");
  canonicalize();
}

SeqPoint SeqPoint::constant(std::uint8_t bit) { return SeqPoint({bit}, {}, {bit}, 0); }

void SeqPoint::canonicalize() {
  const std::size_t dl = minimal_cyclic_period(left_);
  left_ = Word(left_.end() - static_cast<std::ptrdiff_t>(dl), left_.end());
  const std::size_t dr = minimal_cyclic_period(right_);
  right_.resize(dr);

  while (!center_.empty() && center_.front() == left_.front()) {
    center_.erase(center_.begin());
    std::rotate(left_.begin(), left_.begin() + 1, left_.end());
    ++origin_;
  }
  while (!center_.empty() && center_.back() == right_.back()) {
    center_.pop_back();
    std::rotate(right_.rbegin(), right_.rbegin() + 1, right_.rend());
  }
}

std::uint8_t SeqPoint::at(std::int64_t i) const {
  const auto csize = static_cast<std::int64_t>(center_.size());
  if (i < origin_) {
    const auto n = static_cast<std::int64_t>(left_.size());
    return left_[static_cast<std::size_t>(mod(i - origin_, n))];
  }
  if (i < origin_ + csize) return center_[static_cast<std::size_t>(i - origin_)];
  const auto n = static_cast<std::int64_t>(right_.size());
  return right_[static_cast<std::size_t>(mod(i - origin_ - csize, n))];
}

SeqPoint SeqPoint::shifted(std::int64_t power) const {
  SeqPoint out = *this;
  out.origin_ -= power;
  return out;
}

SeqPoint SeqPoint::with(std::int64_t i, std::uint8_t bit) const {
  if (at(i) == bit) return *this;
  const std::int64_t lo = std::min(settled_lo(), i);
  const std::int64_t hi = std::max(settled_hi(), i);
  // Re-express with an explicit center over [lo, hi] and aligned tails.
  Word left(left_.size());
  for (std::size_t k = 0; k < left.size(); ++k) {
    left[k] = at(lo - static_cast<std::int64_t>(left.size()) + static_cast<std::int64_t>(k));
  }
  Word right(right_.size());
  for (std::size_t k = 0; k < right.size(); ++k) right[k] = at(hi + 1 + static_cast<std::int64_t>(k));
  Word center;
  for (std::int64_t p = lo; p <= hi; ++p) center.push_back(p == i ? bit : at(p));
  return SeqPoint(std::move(left), std::move(center), std::move(right), lo);
}

std::int64_t SeqPoint::settled_lo() const { return origin_; }
std::int64_t SeqPoint::settled_hi() const {
  return origin_ + static_cast<std::int64_t>(center_.size()) - 1;
}

bool operator==(const SeqPoint& a, const SeqPoint& b) {
  const auto l = static_cast<std::int64_t>(std::lcm(a.left_.size(), b.left_.size()));
  const auto r = static_cast<std::int64_t>(std::lcm(a.right_.size(), b.right_.size()));
  const std::int64_t lo = std::min(a.settled_lo(), b.settled_lo()) - l;
  const std::int64_t hi = std::max(a.settled_hi(), b.settled_hi()) + r;
  for (std::int64_t i = lo; i <= hi; ++i) {
    if (a.at(i) != b.at(i)) return false;
  }
  return true;
}

std::string SeqPoint::to_string() const {
  const std::int64_t lo = std::min<std::int64_t>(settled_lo(), 0);
  const std::int64_t hi = std::max<std::int64_t>(settled_hi(), 0);
  std::string out = "<";
  const auto nl = static_cast<std::int64_t>(left_.size());
  for (std::int64_t k = 0; k < nl; ++k) out.push_back(static_cast<char>('0' + at(lo - nl + k)));
  out += ">";
  for (std::int64_t p = lo; p <= hi; ++p) {
    if (p == 0) out.push_back('.');
    out.push_back(static_cast<char>('0' + at(p)));
  }
  out += "<";
  const auto nr = static_cast<std::int64_t>(right_.size());
  for (std::int64_t k = 0; k < nr; ++k) out.push_back(static_cast<char>('0' + at(hi + 1 + k)));
  out += ">";
  return out;
}

SeqPoint SeqPoint::parse(std::string_view text) {
  // <L>W<R> where W holds exactly one '.', placed just before coordinate 0.
  auto bad = [&]() -> SeqPoint {
    fail(ErrorCode::Parse, "malformed sequence '" + std::string(text) + "', expected <L>C.D<R>");
  };
  if (text.size() < 2 || text.front() != '<') return bad();
  auto close1 = text.find('>');
  if (close1 == std::string_view::npos) return bad();
  auto open2 = text.find('<', close1);
  if (open2 == std::string_view::npos || text.back() != '>') return bad();
  auto bits = [&](std::string_view s, Word& w, std::int64_t* dot) {
    for (char ch : s) {
      if (ch == '0' || ch == '1') {
        w.push_back(static_cast<std::uint8_t>(ch - '0'));
      } else if (ch == '.' && dot != nullptr && *dot == INT64_MIN) {
        *dot = static_cast<std::int64_t>(w.size());
      } else {
        bad();
      }
    }
  };
  Word left, center, right;
  std::int64_t dot = INT64_MIN;
  bits(text.substr(1, close1 - 1), left, nullptr);
  bits(text.substr(close1 + 1, open2 - close1 - 1), center, &dot);
  bits(text.substr(open2 + 1, text.size() - open2 - 2), right, nullptr);
  if (dot == INT64_MIN || left.empty() || right.empty()) return bad();
  return SeqPoint(std::move(left), std::move(center), std::move(right), -dot);
}

// ---------------------------------------------------------------------------
// Points

SpaceKind point_kind(const Point& p) {
  switch (p.index()) {
    case 0: return SpaceKind::Interval;
    case 1: return SpaceKind::Circle;
    case 2: return SpaceKind::Finite;
    default: return SpaceKind::Shift;
  }
}

void require_in_space(const SpaceSpec& space, const Point& p) {
  if (point_kind(p) != space.kind) {
    fail(ErrorCode::SpaceMismatch, std::string("point of kind ") + space_kind_name(point_kind(p)) +
                                       " used in a " + space_kind_name(space.kind) + " space");
  }
  if (const auto* ip = std::get_if<IntervalPoint>(&p)) {
    if (ip->value < 0 || ip->value > 1) fail(ErrorCode::SpaceMismatch, "interval point outside [0,1]");
  }
  if (const auto* fp = std::get_if<FinitePoint>(&p)) {
    if (fp->index >= space.size) fail(ErrorCode::SpaceMismatch, "finite point index out of range");
  }
}

Real distance(const SpaceSpec& space, const Point& x, const Point& y) {
  require_in_space(space, x);
  require_in_space(space, y);
  switch (space.kind) {
    case SpaceKind::Interval: {
      const Rational d = std::get<IntervalPoint>(x).value - std::get<IntervalPoint>(y).value;
      return Real(abs_rational(d));
    }
    case SpaceKind::Circle: {
      const Real t = (std::get<CirclePoint>(x).position - std::get<CirclePoint>(y).position).frac();
      return min(t, Real(1) - t);
    }
    case SpaceKind::Finite: {
      const auto i = std::get<FinitePoint>(x).index;
      const auto j = std::get<FinitePoint>(y).index;
      if (!space.metric.empty()) return Real(space.metric[i][j]);
      return Real(i == j ? 0 : 1);
    }
    case SpaceKind::Shift: {
      const auto& a = std::get<SeqPoint>(x);
      const auto& b = std::get<SeqPoint>(y);
      const auto l = static_cast<std::int64_t>(std::lcm(a.left().size(), b.left().size()));
      const auto r = static_cast<std::int64_t>(std::lcm(a.right().size(), b.right().size()));
      const std::int64_t lo = std::min(a.settled_lo(), b.settled_lo()) - l;
      const std::int64_t hi = std::max(a.settled_hi(), b.settled_hi()) + r;
      const std::int64_t bound = std::max(std::abs(lo), std::abs(hi));
      for (std::int64_t k = 0; k <= bound; ++k) {
        if (a.at(k) != b.at(k) || a.at(-k) != b.at(-k)) return Real(dyadic(k));
      }
      return Real(0);
    }
  }
  return Real(0);
}

std::string format_point(const SpaceSpec& space, const Point& p) {
  switch (point_kind(p)) {
    case SpaceKind::Interval: return format_rational(std::get<IntervalPoint>(p).value);
    case SpaceKind::Circle: return std::get<CirclePoint>(p).position.to_string();
    case SpaceKind::Finite:
      return std::to_string(static_cast<std::int64_t>(std::get<FinitePoint>(p).index) + space.first_label);
    case SpaceKind::Shift: return std::get<SeqPoint>(p).to_string();
  }
  return "?";
}

Point parse_point(const SpaceSpec& space, std::string_view text) {
  switch (space.kind) {
    case SpaceKind::Interval: {
      Point p = IntervalPoint{parse_rational(text)};
      require_in_space(space, p);
      return p;
    }
    case SpaceKind::Circle: return CirclePoint(parse_real(text));
    case SpaceKind::Finite: {
      const Rational label = parse_rational(text);
      if (!is_integer(label)) fail(ErrorCode::Parse, "finite point label must be an integer");
      const Integer idx = mp::numerator(label) - space.first_label;
      if (idx < 0 || idx >= static_cast<long>(space.size)) {
        fail(ErrorCode::SpaceMismatch, "finite point label out of range: " + std::string(text));
      }
      return FinitePoint{static_cast<std::size_t>(idx.convert_to<long>())};
    }
    case SpaceKind::Shift: return SeqPoint::parse(text);
  }
  fail(ErrorCode::Parse, "unknown space");
}

}  // namespace ndsys
