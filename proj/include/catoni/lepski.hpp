#ifndef CATONI_LEPSKI_HPP
#define CATONI_LEPSKI_HPP

#include <optional>
#include <vector>

#include "catoni/influence.hpp"
#include "catoni/mean.hpp"
#include "catoni/sample.hpp"

namespace catoni {

/// Candidate variance bounds V rho^{2k}, k = -s..s, each with coding mass 1/(2s+1).
struct GeometricGrid {
  double V = 1.0;
  double rho = 1.05;
  int s = 0;

  /// Throws ParameterError unless V > 0, rho > 1 and s >= 0.
  void validate() const;
  int size() const { return 2 * s + 1; }
  /// Grid point for k in [-s, s].
  double point(int k) const;
};

/// Closed interval [lo, hi]; lo > hi encodes the empty set.
struct Interval {
  double lo;
  double hi;
  bool empty() const { return lo > hi; }
  double midpoint() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

Interval intersect(const Interval& a, const Interval& b);

/// Confidence interval built under one candidate variance bound.
struct GridInterval {
  double v_max;
  double center;
  double halfwidth;  // +infinity when the interval is the whole line
};

struct AdaptiveResult {
  double theta_tilde = 0.0;
  /// One entry per grid point, in increasing v_max.
  std::vector<GridInterval> intervals;
  /// suffix[k] = intersection of intervals[k..]; empty when they do not meet.
  std::vector<Interval> suffix;
  /// Smallest non-empty suffix intersection.
  Interval final_interval{0.0, 0.0};
};

/// 1/(2s+1) for |k| <= s; DomainError otherwise.
double nu_geometric_mass(const GeometricGrid& grid, int k);

/// Dyadic coding mass of v_max relative to V:
/// v_max / V = 2^s sum_{k=0}^d c_k 2^{-k} with c_0 = c_d = 1 gets
/// 2^{-2(d-1)} / (5 (|s|+2)(|s|+3)). Ratios that need more than
/// kMaxDyadicDigits fractional bits, or are not positive and finite, get 0.
double nu_dyadic_mass(double v_max, double V);
inline constexpr int kMaxDyadicDigits = 40;

/// B(eps) = sqrt(2 log(1/eps) / (n (1 - 2 log(1/eps)/n))); +infinity when
/// n <= 2 log(1/eps).
double homogeneous_bound(double epsilon, long n);

/// Variance-adaptive estimate: intersect the confidence intervals built under
/// each grid point, from the largest bound downwards, and return the middle of
/// the smallest non-empty suffix intersection.
AdaptiveResult adaptive_estimate(const Sample& sample, double epsilon, const GeometricGrid& grid,
                                 InfluenceKind kind = InfluenceKind::Narrow,
                                 double tolerance = kDefaultMeanTolerance);

/// 2 rho B(eps / (2s+1)) sqrt(v): the (unobservable) deviation bound of the
/// adaptive estimate when v lies inside the grid range.
double adaptive_halfwidth(double v, const GeometricGrid& grid, double epsilon, long n);

}  // namespace catoni

#endif  // CATONI_LEPSKI_HPP
