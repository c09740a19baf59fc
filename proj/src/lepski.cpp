#include "catoni/lepski.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <string>

#include "catoni/errors.hpp"
#include "checks.hpp"

namespace catoni {

void GeometricGrid::validate() const {
  detail::require_positive(V, "V", "GeometricGrid");
  if (!(rho > 1.0) || !std::isfinite(rho)) {
    throw ParameterError("GeometricGrid: rho must be > 1, got " + detail::fmt(rho));
  }
  if (s < 0) throw ParameterError("GeometricGrid: s must be >= 0");
}

double GeometricGrid::point(int k) const { return V * std::pow(rho, 2.0 * k); }

Interval intersect(const Interval& a, const Interval& b) {
  return Interval{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

double nu_geometric_mass(const GeometricGrid& grid, int k) {
  grid.validate();
  if (k < -grid.s || k > grid.s) {
    throw DomainError("nu_geometric_mass: index " + std::to_string(k) + " outside [-" +
                      std::to_string(grid.s) + ", " + std::to_string(grid.s) + "]");
  }
  return 1.0 / static_cast<double>(grid.size());
}

double nu_dyadic_mass(double v_max, double V) {
  if (!(v_max > 0.0) || !(V > 0.0) || !std::isfinite(v_max) || !std::isfinite(V)) return 0.0;
  const double ratio = v_max / V;
  if (!std::isfinite(ratio) || ratio == 0.0) return 0.0;
  int exponent = 0;
  const double mantissa = std::frexp(ratio, &exponent);  // ratio = mantissa 2^exponent, mantissa in [1/2, 1)
  const long s = exponent - 1;
  // Fractional bits of 2 * mantissa in [1, 2): scale to an integer and count
  // the position of the lowest set bit.
  const double scaled = std::ldexp(2.0 * mantissa, 52);
  const auto bits = static_cast<std::uint64_t>(scaled);
  int trailing = 0;
  while (trailing < 52 && ((bits >> trailing) & 1u) == 0u) ++trailing;
  const int d = 52 - trailing;
  if (d > kMaxDyadicDigits) return 0.0;
  const double as = static_cast<double>(std::labs(s));
  return std::ldexp(1.0, -2 * (d - 1)) / (5.0 * (as + 2.0) * (as + 3.0));
}

double homogeneous_bound(double epsilon, long n) {
  if (!(epsilon > 0.0)) return std::numeric_limits<double>::infinity();
  const double L = std::log(1.0 / epsilon);
  const double nd = static_cast<double>(n);
  if (!(nd > 2.0 * L)) return std::numeric_limits<double>::infinity();
  return std::sqrt(2.0 * L / (nd * (1.0 - 2.0 * L / nd)));
}

AdaptiveResult adaptive_estimate(const Sample& sample, double epsilon, const GeometricGrid& grid,
                                 InfluenceKind kind, double tolerance) {
  grid.validate();
  detail::require_epsilon(epsilon, "adaptive_estimate");
  const long n = static_cast<long>(sample.size());
  const int m = grid.size();
  // Uniform coding mass: every grid point works at the same confidence.
  const double eps_point = epsilon / static_cast<double>(m);
  const double B = homogeneous_bound(eps_point, n);
  if (!std::isfinite(B)) {
    throw InfeasibleError("n > 2 log((2s+1)/eps)",
                          "adaptive_estimate: every grid interval is the whole line; n = " +
                              std::to_string(n) + " must exceed 2 log((2s+1)/eps) = " +
                              detail::fmt(2.0 * std::log(1.0 / eps_point)));
  }

  AdaptiveResult result;
  result.intervals.reserve(static_cast<std::size_t>(m));
  for (int k = -grid.s; k <= grid.s; ++k) {
    const double v_k = grid.point(k);
    const MeanEstimate est = estimate_mean_known_variance(sample, v_k, eps_point, AlphaMode::EpsDependent,
                                                          kind, tolerance);
    result.intervals.push_back(GridInterval{v_k, est.theta_hat, B * std::sqrt(v_k)});
  }

  // Suffix intersections from the largest bound downwards; once empty they
  // stay empty, and the smallest non-empty one is the intersection of all
  // non-empty ones.
  result.suffix.assign(static_cast<std::size_t>(m), Interval{1.0, 0.0});
  Interval running{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  std::optional<Interval> smallest;
  for (int i = m - 1; i >= 0; --i) {
    const GridInterval& gi = result.intervals[static_cast<std::size_t>(i)];
    running = intersect(running, Interval{gi.center - gi.halfwidth, gi.center + gi.halfwidth});
    result.suffix[static_cast<std::size_t>(i)] = running;
    if (!running.empty()) smallest = running;
  }
  // The top interval alone is never empty.
  result.final_interval = *smallest;
  result.theta_tilde = result.final_interval.midpoint();
  return result;
}

double adaptive_halfwidth(double v, const GeometricGrid& grid, double epsilon, long n) {
  grid.validate();
  detail::require_positive(v, "v", "adaptive_halfwidth");
  detail::require_epsilon(epsilon, "adaptive_halfwidth");
  const double range = 2.0 * grid.s * std::log(grid.rho);
  if (std::fabs(std::log(v / grid.V)) > range * (1.0 + 1e-12)) {
    throw DomainError("adaptive_halfwidth: v = " + detail::fmt(v) + " outside the grid range");
  }
  const double eps_point = epsilon / static_cast<double>(grid.size());
  const double B = homogeneous_bound(eps_point, n);
  if (!std::isfinite(B)) {
    throw InfeasibleError("n > 2 log((2s+1)/eps)",
                          "adaptive_halfwidth: n = " + std::to_string(n) +
                              " must exceed 2 log((2s+1)/eps) = " +
                              detail::fmt(2.0 * std::log(1.0 / eps_point)));
  }
  return 2.0 * grid.rho * B * std::sqrt(v);
}

}  // namespace catoni
