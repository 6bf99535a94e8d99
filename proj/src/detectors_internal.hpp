#pragma once

#include "ndsys/detectors.hpp"
#include "ndsys/error.hpp"

#include <atomic>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace ndsys::detail {

inline json rat(const Rational& q) { return format_rational(q); }

void require_positive(const Rational& v, const char* name);
void require_horizon(std::uint64_t t);

PropertyReport start_report(const System& sys, std::string property, const CheckParams& p);

/// Orders bases from strongest to weakest: exhaustive, horizon/grid, trend.
std::string weaker_basis(const std::string& a, const std::string& b);

/// Finitely generated and every generator used is an isometry.
bool all_isometries(const System& sys);

std::optional<std::uint64_t> first_member(const IndexSample& s);
/// Known to have no member at all, past the horizon included.
bool provably_empty(const IndexSample& s);

std::string region_text(const SpaceSpec& space, const RegionSet& r);
std::string point_text(const SpaceSpec& space, const Point& p);

// Cover for spread checks: cells no wider than delta, so that a cell is
// never spread at time 0 already.
CoverSpec spread_cover(const SpaceSpec& space, const CheckParams& p);

std::vector<ImageTrace> cell_traces(const System& sys, const CoverSpec& cover, std::uint64_t horizon,
                                    std::uint64_t workers);

/// Runs f(0..n-1) on up to `workers` threads; the exception of the lowest
/// failing index is rethrown.
template <class F>
void parallel_for(std::size_t n, std::uint64_t workers, F&& f) {
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t count = std::min<std::size_t>(workers, n);
  for (std::size_t t = 0; t < count; ++t) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

/// f_1^n(x) by sequential evaluation.
Point orbit_point(const Schedule& s, const Point& x, std::uint64_t n);
/// Preimage of r under f_1^n.
RegionSet window_preimage(const SpaceSpec& space, const Schedule& s, const RegionSet& r, std::uint64_t n);

/// Points of B(x, eps) used as stand-ins for the whole ball.
std::vector<Point> ball_probes(const SpaceSpec& space, const Point& x, const Rational& eps, int steps);

/// Li-Yorke witness test on [T/2, T] and [1, T].
struct PairScan {
  bool witness = false;
  Real tail_min;
  Real max;
  std::uint64_t tail_min_at = 0;
  std::uint64_t max_at = 0;
};
PairScan scan_pair(const SpaceSpec& space, const Schedule& s, const Point& x, const Point& y, std::uint64_t horizon,
                   const Rational& eta, const Rational& delta);

}  // namespace ndsys::detail
