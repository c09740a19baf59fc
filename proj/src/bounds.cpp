#include "catoni/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "catoni/errors.hpp"
#include "catoni/kurtosis_mean.hpp"
#include "catoni/mean.hpp"
#include "catoni/quantiles.hpp"
#include "checks.hpp"
#include "minimize.hpp"

namespace catoni {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLambdaFallback = 1e-6;

void require_query(const BoundQuery& q, const char* where) {
  if (q.n < 1) throw ParameterError(std::string(where) + ": n must be >= 1");
  if (!(q.v >= 0.0) || !std::isfinite(q.v)) {
    throw ParameterError(std::string(where) + ": v must be finite and >= 0, got " + detail::fmt(q.v));
  }
  if (!(q.epsilon > 0.0 && q.epsilon <= 0.5)) {
    throw ParameterError(std::string(where) + ": epsilon must lie in (0, 1/2], got " + detail::fmt(q.epsilon));
  }
}

double require_kappa(const BoundQuery& q, const char* where) {
  if (!q.kappa) throw ParameterError(std::string(where) + ": needs kappa");
  if (!(*q.kappa >= 1.0) || !std::isfinite(*q.kappa)) {
    throw ParameterError(std::string(where) + ": kappa must be finite and >= 1, got " + detail::fmt(*q.kappa));
  }
  return *q.kappa;
}

double kurtosis_bound_at(long n, double kappa, double epsilon, double lambda) {
  const double nd = static_cast<double>(n);
  const double L = std::log(1.0 / (lambda * epsilon));
  const double t1 = std::sqrt(2.0 * L / nd);
  const double t2 = std::sqrt(kappa) * L / (3.0 * nd);
  const double c4 = std::pow(1.0 + std::sqrt(2.0), 4.0);
  const double t3 = std::pow(kappa / (2.0 * (1.0 - lambda) * nd * nd * nd * epsilon), 0.25) *
                    std::pow(1.0 + 3.0 * (nd - 1.0) * kappa * L * L / (64.0 * c4 * nd * nd), 0.25);
  return t1 + t2 + t3;
}

}  // namespace

double chebyshev_halfwidth(const BoundQuery& q) {
  require_query(q, "chebyshev_halfwidth");
  return std::sqrt(q.v / (2.0 * q.epsilon * static_cast<double>(q.n)));
}

double default_lambda(long n, double kappa, double epsilon) {
  const double nd = static_cast<double>(n);
  const double arg = std::log(kappa / (2.0 * nd * std::pow(epsilon, 5.0)));
  if (!(arg > 0.0)) return kLambdaFallback;
  const double lambda = std::min(0.5, std::pow(2.0, 1.75) * std::pow(nd * epsilon / kappa, 0.25) * std::sqrt(arg));
  return lambda > 0.0 ? lambda : kLambdaFallback;
}

double kurtosis_halfwidth(const BoundQuery& q) {
  require_query(q, "kurtosis_halfwidth");
  const double kappa = require_kappa(q, "kurtosis_halfwidth");
  double lambda;
  if (q.lambda) {
    lambda = *q.lambda;
  } else if (q.optimize_lambda) {
    // Search on the logit scale so that both ends of (0, 1) are reachable.
    const double u = detail::scan_golden_minimize(
        [&](double t) { return kurtosis_bound_at(q.n, kappa, q.epsilon, 1.0 / (1.0 + std::exp(-t))); }, -35.0,
        35.0);
    lambda = 1.0 / (1.0 + std::exp(-u));
  } else {
    lambda = default_lambda(q.n, kappa, q.epsilon);
  }
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw ParameterError("kurtosis_halfwidth: lambda must lie in (0, 1), got " + detail::fmt(lambda));
  }
  return std::sqrt(q.v) * kurtosis_bound_at(q.n, kappa, q.epsilon, lambda);
}

double fourth_moment_halfwidth(const BoundQuery& q) {
  require_query(q, "fourth_moment_halfwidth");
  const double kappa = require_kappa(q, "fourth_moment_halfwidth");
  const double nd = static_cast<double>(q.n);
  return std::pow((3.0 * (nd - 1.0) + kappa) / (2.0 * nd * q.epsilon), 0.25) * std::sqrt(q.v / nd);
}

double empirical_mean_best_halfwidth(const BoundQuery& q) {
  double best = chebyshev_halfwidth(q);
  if (q.kappa) {
    best = std::min(best, kurtosis_halfwidth(q));
    best = std::min(best, fourth_moment_halfwidth(q));
  }
  return best;
}

double gaussian_halfwidth(const BoundQuery& q) {
  require_query(q, "gaussian_halfwidth");
  if (q.epsilon == 0.5) return 0.0;
  return std::sqrt(q.v / static_cast<double>(q.n)) * -std_normal_quantile(q.epsilon);
}

double lower_bound_plain(const BoundQuery& q) {
  require_query(q, "lower_bound_plain");
  if (q.epsilon > 0.5 / std::numbers::e) {
    throw DomainError("lower_bound_plain: epsilon = " + detail::fmt(q.epsilon) + " exceeds 1/(2e)");
  }
  const double nd = static_cast<double>(q.n);
  return std::sqrt(q.v / (2.0 * nd * q.epsilon)) *
         std::exp(0.5 * (nd - 1.0) * std::log1p(-2.0 * std::numbers::e * q.epsilon / nd));
}

KurtosisLowerTerms lower_bound_kurtosis_terms(const BoundQuery& q) {
  require_query(q, "lower_bound_kurtosis");
  const double kappa = require_kappa(q, "lower_bound_kurtosis");
  const double nd = static_cast<double>(q.n);
  const double eps = q.epsilon;
  if (q.n < 16 || nd > 1.0 / eps) {
    throw DomainError("lower_bound_kurtosis: needs 1/eps >= n >= 16 (n = " + std::to_string(q.n) +
                      ", eps = " + detail::fmt(eps) + ")");
  }
  const double scale = std::sqrt(q.v / nd);
  const double inner_a = (kappa - 1.0) * (1.0 - 8.0 * eps) / (4.0 * nd * eps);
  const double inner_b = (kappa - 1.0) / (2.0 * nd * eps) * (1.0 - std::pow(nd * eps / 16.0, 0.25) - 4.0 * eps);
  KurtosisLowerTerms t;
  t.a = inner_a >= 0.0 ? std::pow(inner_a, 0.25) * scale : -kInf;
  t.b = inner_b >= 0.0 ? std::pow(inner_b, 0.25) * scale - std::sqrt(std::log(16.0 / (nd * eps)) * q.v / (2.0 * nd))
                       : -kInf;
  return t;
}

double lower_bound_kurtosis(const BoundQuery& q) {
  const KurtosisLowerTerms t = lower_bound_kurtosis_terms(q);
  return std::max(t.a, t.b);
}

const std::vector<std::string>& bound_names() {
  static const std::vector<std::string> names{
      "chebyshev", "kurtosis",         "fourth-moment",   "empirical-best", "gaussian", "lower-plain",
      "lower-kurtosis", "catoni",      "catoni-eps-free", "adaptive",       "kurtosis-mean"};
  return names;
}

std::vector<std::string> applicable_bounds(const BoundQuery& q) {
  std::vector<std::string> out;
  for (const std::string& name : bound_names()) {
    const bool needs_kappa = name == "kurtosis" || name == "fourth-moment" || name == "lower-kurtosis" ||
                             name == "kurtosis-mean";
    if (needs_kappa && !q.kappa) continue;
    if (name == "adaptive" && !q.grid) continue;
    out.push_back(name);
  }
  return out;
}

namespace {

double evaluate_bound(const BoundQuery& q, std::string_view name) {
  if (name == "chebyshev") return chebyshev_halfwidth(q);
  if (name == "kurtosis") return kurtosis_halfwidth(q);
  if (name == "fourth-moment") return fourth_moment_halfwidth(q);
  if (name == "empirical-best") return empirical_mean_best_halfwidth(q);
  if (name == "gaussian") return gaussian_halfwidth(q);
  if (name == "lower-plain") return lower_bound_plain(q);
  if (name == "lower-kurtosis") return lower_bound_kurtosis(q);
  if (name == "catoni" || name == "catoni-eps-free") {
    require_query(q, "catoni");
    if (q.v == 0.0) return 0.0;
    return halfwidth_known_variance(q.n, q.v, q.epsilon,
                                    name == "catoni" ? AlphaMode::EpsDependent : AlphaMode::EpsFree);
  }
  if (name == "adaptive") {
    if (!q.grid) throw ParameterError("the adaptive bound needs a grid");
    return adaptive_halfwidth(q.v, *q.grid, q.epsilon, q.n);
  }
  if (name == "kurtosis-mean") {
    require_query(q, "kurtosis-mean");
    const double kappa = require_kappa(q, "kurtosis-mean");
    const KurtosisMeanParams kp = plugin_params(q.n, q.epsilon, kappa);
    if (q.v == 0.0) return 0.0;
    return halfwidth_kurtosis(kp, q.v, KurtosisHalfwidth::Outer);
  }
  throw ParameterError("unknown bound '" + std::string(name) + "'");
}

}  // namespace

BoundCurve bound_curve(const BoundQuery& q, std::string_view bound_name, const std::vector<double>& epsilons) {
  if (std::find(bound_names().begin(), bound_names().end(), bound_name) == bound_names().end()) {
    throw ParameterError("unknown bound '" + std::string(bound_name) + "'");
  }
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0 && epsilons[i] < 0.5) || (i > 0 && !(epsilons[i] > epsilons[i - 1]))) {
      throw ParameterError("bound_curve: the epsilon grid must be strictly increasing inside (0, 1/2)");
    }
  }
  BoundCurve curve;
  curve.bound_name = std::string(bound_name);
  curve.points.reserve(epsilons.size());
  for (double eps : epsilons) {
    BoundQuery at = q;
    at.epsilon = eps;
    double value;
    try {
      value = evaluate_bound(at, bound_name);
    } catch (const InfeasibleError&) {
      value = kInf;
    } catch (const DomainError&) {
      value = std::numeric_limits<double>::quiet_NaN();
    }
    curve.points.push_back({eps, value});
  }
  return curve;
}

std::vector<double> log_spaced_grid(double start, double stop, int count) {
  if (!(start > 0.0) || !(stop > 0.0) || !std::isfinite(start) || !std::isfinite(stop)) {
    throw ParameterError("log_spaced_grid: endpoints must be positive and finite");
  }
  if (count < 1) throw ParameterError("log_spaced_grid: count must be >= 1");
  double lo = std::min(start, stop);
  double hi = std::max(start, stop);
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    grid.push_back(lo);
    return grid;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < count; ++i) {
    grid.push_back(i == 0 ? lo : i + 1 == count ? hi : std::exp(a + (b - a) * i / (count - 1)));
  }
  return grid;
}

}  // namespace catoni
