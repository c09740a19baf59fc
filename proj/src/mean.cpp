#include "catoni/mean.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "catoni/errors.hpp"
#include "catoni/statistics.hpp"
#include "checks.hpp"

namespace catoni {

namespace {

constexpr int kMaxFixedPointIterations = 100;
// The residual must halve at least once per this many iterations.
constexpr int kStallWindow = 5;

double absolute_tolerance(const Sample& sample, double tolerance) {
  return tolerance * (1.0 + sample.max_abs());
}

// Midpoint of {theta : r(theta) = 0}, located as the midpoint between
// inf{r <= 0} and sup{r >= 0}, each bisected down to adjacent doubles.
double bisect_zero_set(const Sample& sample, double alpha, InfluenceKind kind, int& evaluations) {
  auto r = [&](double t) {
    ++evaluations;
    return criterion(sample, alpha, kind, t);
  };
  double lo = sample.min();
  double hi = sample.max();
  for (;;) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (r(mid) <= 0.0) hi = mid; else lo = mid;
  }
  const double left = 0.5 * (lo + hi);

  lo = sample.min();
  hi = sample.max();
  for (;;) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (r(mid) >= 0.0) lo = mid; else hi = mid;
  }
  const double right = 0.5 * (lo + hi);
  return 0.5 * (left + right);
}

// With the narrow influence function, r is constant between consecutive
// observations once every observation is at least 1/alpha away. If theta sits
// in such a gap and r vanishes there, the zero set is exactly that gap.
std::optional<double> flat_zero_set_midpoint(const Sample& sample, double alpha, double theta) {
  const double reach = 1.0 / alpha;
  double below = -INFINITY;
  double above = INFINITY;
  for (double y : sample) {
    if (y <= theta) below = std::max(below, y); else above = std::min(above, y);
  }
  const double lo = below + reach;
  const double hi = above - reach;
  if (!(lo <= theta && theta <= hi)) return std::nullopt;
  return 0.5 * (lo + hi);
}

}  // namespace

std::string_view to_string(MeanMethod method) {
  switch (method) {
    case MeanMethod::KnownVariance: return "known-v";
    case MeanMethod::EpsFree: return "eps-free";
    case MeanMethod::PlugIn: return "plugin";
    case MeanMethod::Lepski: return "lepski";
    case MeanMethod::Kurtosis: return "kurtosis";
  }
  return "unknown";
}

double criterion(const Sample& sample, double alpha, InfluenceKind kind, double theta) {
  detail::require_positive(alpha, "alpha", "criterion");
  double positive = 0.0;
  double negative = 0.0;
  for (double y : sample) {
    const double term = psi(kind, alpha * (y - theta));
    if (term >= 0.0) positive += term; else negative -= term;
  }
  return (positive - negative) / (alpha * static_cast<double>(sample.size()));
}

MeanEstimate solve_mean(const Sample& sample, double alpha, InfluenceKind kind, double tolerance) {
  detail::require_positive(alpha, "alpha", "solve_mean");
  detail::require_positive(tolerance, "tolerance", "solve_mean");

  MeanEstimate est;
  est.alpha = alpha;
  est.kind = kind;
  if (sample.min() == sample.max()) {
    est.theta_hat = sample.min();
    return est;
  }

  const double tol = absolute_tolerance(sample, tolerance);
  const double lo = sample.min();
  const double hi = sample.max();
  auto r = [&](double t) { return criterion(sample, alpha, kind, t); };

  double theta = std::clamp(empirical_mean(sample.values()), lo, hi);
  std::vector<double> residuals;
  bool converged = false;
  for (int k = 0; k < kMaxFixedPointIterations; ++k) {
    const double rk = r(theta);
    residuals.push_back(std::fabs(rk));
    ++est.iterations;
    if (rk == 0.0) {
      converged = true;
      break;
    }
    if (std::fabs(rk) <= tol) {
      theta = std::clamp(theta + rk, lo, hi);
      // Accept only if a root is certified within tol of theta.
      if (r(std::max(lo, theta - tol)) >= 0.0 && r(std::min(hi, theta + tol)) <= 0.0) {
        converged = true;
        break;
      }
      continue;
    }
    if (k >= kStallWindow && residuals[k] > 0.5 * residuals[k - kStallWindow]) break;
    theta = std::clamp(theta + rk, lo, hi);
  }

  if (converged && kind == InfluenceKind::Narrow) {
    // A flat zero set next to (or around) theta must be reported by its midpoint.
    if (r(theta) == 0.0) {
      if (auto mid = flat_zero_set_midpoint(sample, alpha, theta)) {
        est.theta_hat = *mid;
        return est;
      }
    }
    if (r(std::max(lo, theta - tol)) == 0.0 || r(std::min(hi, theta + tol)) == 0.0) {
      converged = false;
    }
  }

  if (!converged) {
    int evaluations = 0;
    theta = bisect_zero_set(sample, alpha, kind, evaluations);
    est.used_bisection = true;
    est.iterations += evaluations;
  }
  est.theta_hat = std::clamp(theta, lo, hi);
  return est;
}

long min_sample_size_known_variance(double epsilon, AlphaMode mode) {
  detail::require_epsilon(epsilon, "min_sample_size_known_variance");
  const double L = std::log(1.0 / epsilon);
  const double threshold = mode == AlphaMode::EpsDependent ? 2.0 * L : 2.0 * (1.0 + L);
  return static_cast<long>(std::floor(threshold)) + 1;
}

namespace {

void require_known_variance_inputs(long n, double v, double epsilon, AlphaMode mode,
                                   const char* where) {
  detail::require_positive(v, "variance", where);
  detail::require_epsilon(epsilon, where);
  const double L = std::log(1.0 / epsilon);
  const double threshold = mode == AlphaMode::EpsDependent ? 2.0 * L : 2.0 * (1.0 + L);
  if (!(static_cast<double>(n) > threshold)) {
    const long need = min_sample_size_known_variance(epsilon, mode);
    throw InfeasibleError(
        mode == AlphaMode::EpsDependent ? "n > 2 log(1/eps)" : "n > 2 (1 + log(1/eps))",
        std::string(where) + ": sample size " + std::to_string(n) + " too small for epsilon " +
            detail::fmt(epsilon) + "; the minimal n is " + std::to_string(need));
  }
}

}  // namespace

double halfwidth_known_variance(long n, double v, double epsilon, AlphaMode mode) {
  require_known_variance_inputs(n, v, epsilon, mode, "halfwidth_known_variance");
  const double L = std::log(1.0 / epsilon);
  const double nd = static_cast<double>(n);
  if (mode == AlphaMode::EpsDependent) {
    return std::sqrt(2.0 * v * L / (nd * (1.0 - 2.0 * L / nd)));
  }
  const double num = 1.0 + L;
  return num / (0.5 + 0.5 * std::sqrt(1.0 - 2.0 * num / nd)) * std::sqrt(v / (2.0 * nd));
}

double alpha_known_variance(long n, double v, double epsilon, AlphaMode mode) {
  require_known_variance_inputs(n, v, epsilon, mode, "alpha_known_variance");
  const double nd = static_cast<double>(n);
  if (mode == AlphaMode::EpsFree) return std::sqrt(2.0 / (nd * v));
  const double L = std::log(1.0 / epsilon);
  const double eta = halfwidth_known_variance(n, v, epsilon, mode);
  return std::sqrt(2.0 * L / (nd * (v + eta * eta)));
}

MeanEstimate estimate_mean_known_variance(const Sample& sample, double v, double epsilon,
                                          AlphaMode mode, InfluenceKind kind, double tolerance) {
  const long n = static_cast<long>(sample.size());
  const double alpha = alpha_known_variance(n, v, epsilon, mode);
  MeanEstimate est = solve_mean(sample, alpha, kind, tolerance);
  est.halfwidth = halfwidth_known_variance(n, v, epsilon, mode);
  est.method = mode == AlphaMode::EpsDependent ? MeanMethod::KnownVariance : MeanMethod::EpsFree;
  return est;
}

MeanEstimate estimate_mean_plugin(const Sample& sample, double epsilon, InfluenceKind kind,
                                  double tolerance) {
  if (sample.size() < 2) {
    throw DegenerateDataError("plug-in estimate needs at least two observations");
  }
  const double v_hat = unbiased_variance(sample.values());
  if (!(v_hat > 0.0)) {
    throw DegenerateDataError("plug-in estimate: the sample variance is zero");
  }
  const long n = static_cast<long>(sample.size());
  MeanEstimate est = solve_mean(sample, alpha_known_variance(n, v_hat, epsilon, AlphaMode::EpsDependent),
                                kind, tolerance);
  est.method = MeanMethod::PlugIn;
  return est;
}

}  // namespace catoni
