#include "catoni/kurtosis_mean.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "catoni/errors.hpp"
#include "catoni/influence.hpp"
#include "checks.hpp"
#include "minimize.hpp"

namespace catoni {

namespace {

constexpr int kMaxBalanceIterations = 50;
constexpr double kBalanceTolerance = 1e-9;
constexpr double kZetaFloor = 1e-8;

struct StepTerms {
  double weight;  // (a+1)/3
  double sinh2;
  double cosh2;
  double L2;
};

StepTerms step_terms(double zeta, double epsilon2) {
  const double a = chi_constants().a;
  const double s = std::sinh(0.5 * zeta);
  const double ch = std::cosh(0.5 * zeta);
  return {(a + 1.0) / 3.0, s * s, ch * ch, std::log(1.0 / epsilon2)};
}

KurtosisStep finish_step(long n, const StepTerms& t, double x) {
  KurtosisStep step;
  step.x = x;
  const double den = 1.0 - t.weight * x * x * t.sinh2;
  const double nd = static_cast<double>(n);
  const double num = std::log1p(1.0 / x) + t.L2;
  if (!(den > 0.0)) {
    step.eta = std::numeric_limits<double>::infinity();
    step.gamma = std::numeric_limits<double>::infinity();
    step.c = 0.0;
    return step;
  }
  step.eta = 2.0 * t.cosh2 * num / (nd * den);
  step.gamma = step.eta / (1.0 - step.eta);
  step.c = 2.0 * num / (nd * den * (1.0 + step.gamma));
  step.feasible = step.eta < 1.0;
  return step;
}

// Minimizes eta over log x, x in (x_max 1e-12, x_max).
double exact_width(long n, const StepTerms& t) {
  const double u_hi = std::log(std::sqrt(1.0 / (t.weight * t.sinh2))) + std::log1p(-1e-12);
  const double u_lo = u_hi - std::log(1e12);
  return std::exp(detail::scan_golden_minimize(
      [&](double u) { return finish_step(n, t, std::exp(u)).eta; }, u_lo, u_hi));
}

}  // namespace

KurtosisStep kurtosis_step(long n, double zeta, double epsilon2, WidthChoice width, std::optional<double> x) {
  if (n < 1) throw ParameterError("kurtosis_step: n must be positive");
  detail::require_positive(zeta, "zeta", "kurtosis_step");
  if (!(epsilon2 > 0.0 && epsilon2 < 1.0)) {
    throw ParameterError("kurtosis_step: epsilon2 must lie in (0, 1), got " + detail::fmt(epsilon2));
  }
  const StepTerms t = step_terms(zeta, epsilon2);
  double width_x;
  if (x) {
    detail::require_positive(*x, "x", "kurtosis_step");
    width_x = *x;
  } else if (width == WidthChoice::Exact) {
    width_x = exact_width(n, t);
  } else {
    width_x = std::pow(2.0 * t.weight * t.L2, -1.0 / 3.0) * std::pow(t.sinh2, -1.0 / 3.0);
  }
  return finish_step(n, t, width_x);
}

double default_kappa_max(long n) {
  if (n < 1000) {
    throw ParameterError("a kurtosis bound is required when n < 1000 (the default 6n/1000 applies from n = 1000)");
  }
  return 6.0 * static_cast<double>(n) / 1000.0;
}

KurtosisMeanParams plugin_params(long n, double epsilon, double kappa_max, const KurtosisOptions& options) {
  detail::require_epsilon(epsilon, "plugin_params");
  if (!(kappa_max > 1.0) || !std::isfinite(kappa_max)) {
    throw ParameterError("plugin_params: kappa_max must be finite and > 1, got " + detail::fmt(kappa_max));
  }
  if (n < 4) throw ParameterError("plugin_params: n must be >= 4");

  KurtosisMeanParams kp;
  kp.n = n;
  kp.epsilon = epsilon;
  kp.kappa_max = kappa_max;
  kp.a = chi_constants().a;
  kp.zeta_source = options.zeta_source;
  if (options.zeta_source == ZetaSource::BlockParams) {
    kp.p = options.p ? *options.p : optimal_block_size(n, kappa_max, 0.5 * epsilon).p;
  }

  auto zeta_at = [&](double eps1) {
    if (options.zeta_source == ZetaSource::Corollary) return zeta_bound_corollary(n, kappa_max, eps1);
    kp.variance = options.xi_mode ? variance_params(n, kp.p, kappa_max, eps1, *options.xi_mode)
                                  : variance_params_auto(n, kp.p, kappa_max, eps1);
    return kp.variance->zeta;
  };

  double y = 0.5;
  double previous_x = std::numeric_limits<double>::quiet_NaN();
  for (int it = 1;; ++it) {
    if (it > kMaxBalanceIterations) {
      throw NumericalError("plugin_params: the eps1/eps2 balance did not converge in " +
                           std::to_string(kMaxBalanceIterations) + " iterations");
    }
    kp.iterations = it;
    kp.y_split = y;
    kp.zeta = zeta_at(y * epsilon);
    const double eps2 = (1.0 - y) * epsilon;
    if (kp.zeta < kZetaFloor) {
      const double L2 = std::log(1.0 / eps2);
      kp.known_variance_path = true;
      kp.x = std::numeric_limits<double>::infinity();
      kp.eta = 2.0 * std::cosh(0.5 * kp.zeta) * std::cosh(0.5 * kp.zeta) * L2 / static_cast<double>(n);
      if (!(kp.eta < 1.0)) {
        throw InfeasibleError(std::string(kEtaCondition), "plugin_params: eta >= 1; n is too small for eps");
      }
      kp.gamma = kp.eta / (1.0 - kp.eta);
      kp.c = 2.0 * L2 / (static_cast<double>(n) * (1.0 + kp.gamma));
      break;
    }
    const KurtosisStep step = kurtosis_step(n, kp.zeta, eps2, options.width);
    if (!step.feasible) {
      const bool width_fails = !std::isfinite(step.eta);
      throw InfeasibleError(std::string(width_fails ? kWidthCondition : kEtaCondition),
                            "plugin_params: variance too uncertain (zeta = " + detail::fmt(kp.zeta) +
                                ", n = " + std::to_string(n) + ", eps = " + detail::fmt(epsilon) +
                                "): needs " + std::string(width_fails ? kWidthCondition : kEtaCondition));
    }
    kp.x = step.x;
    kp.eta = step.eta;
    kp.gamma = step.gamma;
    kp.c = step.c;
    if (std::fabs(step.x - previous_x) <= kBalanceTolerance * step.x) break;
    previous_x = step.x;
    y = 1.0 / (1.0 + step.x);
  }

  if (options.zeta_source == ZetaSource::Corollary) {
    kp.p = optimal_block_size(n, kappa_max, kp.epsilon1()).p;
  }
  kp.feasible = true;
  return kp;
}

KurtosisMeanResult estimate_mean_kurtosis(const Sample& sample, std::optional<double> kappa_max, double epsilon,
                                          const KurtosisOptions& options) {
  const long n = static_cast<long>(sample.size());
  const double kappa = kappa_max ? *kappa_max : default_kappa_max(n);

  KurtosisMeanResult result;
  result.params = plugin_params(n, epsilon, kappa, options);

  VarianceOptions vo;
  vo.p = result.params.p;
  vo.xi_mode = result.params.variance ? std::optional<XiMode>(result.params.variance->xi_mode) : options.xi_mode;
  vo.kind = options.variance_kind;
  result.variance = solve_variance(sample, kappa, result.params.epsilon1(), vo);

  const double alpha = std::sqrt(result.params.c / result.variance.v_hat);
  result.mean = solve_mean(sample, alpha, InfluenceKind::Narrow, options.tolerance);
  result.mean.halfwidth = halfwidth_kurtosis(result.params, result.variance.v_hat, KurtosisHalfwidth::Observable);
  result.mean.method = MeanMethod::Kurtosis;
  return result;
}

double halfwidth_kurtosis(const KurtosisMeanParams& params, double v_or_vhat, KurtosisHalfwidth which) {
  detail::require_positive(v_or_vhat, "variance", "halfwidth_kurtosis");
  if (!(params.eta < 1.0) || !(params.eta >= 0.0)) {
    throw InfeasibleError(std::string(kEtaCondition), "halfwidth_kurtosis: eta = " + detail::fmt(params.eta));
  }
  const double base = std::sqrt(params.eta * v_or_vhat / (1.0 - params.eta));
  switch (which) {
    case KurtosisHalfwidth::Observable: return base * std::exp(0.5 * params.zeta);
    case KurtosisHalfwidth::Inner: return base;
    case KurtosisHalfwidth::Outer: return base * std::exp(params.zeta);
  }
  return base;
}

}  // namespace catoni
