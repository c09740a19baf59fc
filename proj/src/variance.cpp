#include "catoni/variance.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "catoni/errors.hpp"
#include "catoni/statistics.hpp"
#include "checks.hpp"

namespace catoni {

namespace {

constexpr int kMaxFixedPointIterations = 100;
constexpr int kStallWindow = 5;
constexpr int kMaxBracketSteps = 200;

void require_epsilon1(double epsilon1, const char* where) {
  if (!(epsilon1 > 0.0 && epsilon1 < 1.0)) {
    throw ParameterError(std::string(where) + ": epsilon1 must lie in (0, 1), got " + detail::fmt(epsilon1));
  }
}

void require_kappa(double kappa, double lowest, const char* where) {
  if (!(kappa >= lowest) || !std::isfinite(kappa)) {
    throw ParameterError(std::string(where) + ": kappa must be finite and >= " + detail::fmt(lowest) +
                         ", got " + detail::fmt(kappa));
  }
}

}  // namespace

BlockPlan block_plan(long n, long p) {
  if (n < 4) throw ParameterError("block_plan: n must be >= 4, got " + std::to_string(n));
  if (p < 2 || p > n / 2) {
    throw ParameterError("block_plan: block size p = " + std::to_string(p) + " outside [2, " +
                         std::to_string(n / 2) + "]");
  }
  BlockPlan plan;
  plan.n = n;
  plan.p = p;
  plan.q = n / p;
  plan.r = n - p * plan.q;
  plan.ranges.reserve(static_cast<std::size_t>(plan.q));
  for (long l = 0; l < plan.q; ++l) {
    const long end = l + 1 == plan.q ? n : (l + 1) * p;
    plan.ranges.emplace_back(l * p, end);
  }
  return plan;
}

BlockSize optimal_block_size(long n, double kappa, double epsilon1) {
  require_kappa(kappa, 1.0, "optimal_block_size");
  if (kappa == 1.0) throw ParameterError("optimal_block_size: kappa must exceed 1");
  require_epsilon1(epsilon1, "optimal_block_size");
  if (n < 4) throw ParameterError("optimal_block_size: n must be >= 4, got " + std::to_string(n));
  const double L = std::log(1.0 / epsilon1);
  const double raw = std::sqrt(static_cast<double>(n) / ((kappa - 1.0) * (4.0 * L + 0.5)));
  long p = static_cast<long>(std::floor(raw));
  bool clamped = false;
  if (p < 2) {
    p = 2;
    clamped = true;
  }
  p = std::min(p, n / 2);
  return {p, clamped};
}

std::string_view to_string(XiMode mode) { return mode == XiMode::Tight ? "tight" : "simple"; }

XiMode parse_xi_mode(std::string_view name) {
  if (name == "tight") return XiMode::Tight;
  if (name == "simple") return XiMode::Simple;
  throw ParameterError("unknown xi mode '" + std::string(name) + "' (expected tight or simple)");
}

VarianceParams evaluate_variance_params(long n, long p, double kappa, double epsilon1, XiMode mode) {
  require_kappa(kappa, 1.0, "variance_params");
  require_epsilon1(epsilon1, "variance_params");
  const BlockPlan plan = block_plan(n, p);

  VarianceParams vp;
  vp.n = n;
  vp.p = p;
  vp.q = plan.q;
  vp.r = plan.r;
  vp.kappa = kappa;
  vp.epsilon1 = epsilon1;
  vp.xi_mode = mode;

  const double L = std::log(1.0 / epsilon1);
  const double pd = static_cast<double>(p);
  const double qd = static_cast<double>(plan.q);
  const double full = static_cast<double>(n - plan.r);
  vp.chi = kappa - 1.0 + 2.0 / (pd - 1.0);
  vp.delta = std::sqrt(2.0 * pd * L / (vp.chi * qd));
  vp.y = 2.0 * L / qd;

  const double ratio = vp.chi / pd;
  const double lead = 1.0 + ratio * vp.delta;
  const double disc = lead * lead - 4.0 * (1.0 + ratio) * vp.y;
  const double block_count_need =
      8.0 * L * (1.0 + ratio) / std::pow(1.0 + std::sqrt(2.0 * vp.chi * L / full), 2.0);
  vp.tight_holds = disc >= 0.0 && qd >= block_count_need;
  vp.simple_holds = L <= std::min(qd / (4.0 * (1.0 + std::sqrt(2.0))), full / (8.0 * vp.chi));
  vp.corollary_holds =
      kappa > 1.0 && L <= static_cast<double>(n) / (36.0 * (kappa - 1.0)) - 0.125;

  if (mode == XiMode::Tight) {
    vp.xi = disc >= 0.0 ? 4.0 * vp.y / (lead + std::sqrt(disc)) : std::numeric_limits<double>::quiet_NaN();
  } else {
    vp.xi = 2.0 * vp.y * (1.0 + 2.0 * vp.y);
  }
  const bool below = vp.xi < vp.delta;
  vp.zeta = below ? -0.5 * std::log1p(-vp.xi / vp.delta) : std::numeric_limits<double>::infinity();
  vp.feasible = (mode == XiMode::Tight ? vp.tight_holds : vp.simple_holds) && below && vp.xi > 0.0;
  return vp;
}

namespace {

[[noreturn]] void throw_infeasible(const VarianceParams& vp) {
  std::string_view condition;
  if (vp.xi_mode == XiMode::Tight) {
    const double ratio = vp.chi / static_cast<double>(vp.p);
    const double lead = 1.0 + ratio * vp.delta;
    condition = lead * lead < 4.0 * (1.0 + ratio) * vp.y ? kTightDiscriminant : kTightCondition;
    if (vp.tight_holds) condition = kXiBelowDelta;
  } else {
    condition = vp.simple_holds ? kXiBelowDelta : kSimpleCondition;
  }
  throw InfeasibleError(std::string(condition),
                        "variance parameters infeasible (n = " + std::to_string(vp.n) + ", p = " +
                            std::to_string(vp.p) + ", kappa = " + detail::fmt(vp.kappa) +
                            ", eps1 = " + detail::fmt(vp.epsilon1) + "): needs " + std::string(condition));
}

}  // namespace

VarianceParams variance_params(long n, long p, double kappa, double epsilon1, XiMode mode) {
  VarianceParams vp = evaluate_variance_params(n, p, kappa, epsilon1, mode);
  if (!vp.feasible) throw_infeasible(vp);
  return vp;
}

VarianceParams variance_params_auto(long n, long p, double kappa, double epsilon1) {
  VarianceParams tight = evaluate_variance_params(n, p, kappa, epsilon1, XiMode::Tight);
  if (tight.feasible) return tight;
  VarianceParams simple = evaluate_variance_params(n, p, kappa, epsilon1, XiMode::Simple);
  if (simple.feasible) return simple;
  throw_infeasible(simple);
}

VarianceParams best_block_size_scan(long n, double kappa, double epsilon1) {
  std::optional<VarianceParams> best;
  for (long p = 2; p <= n / 2; ++p) {
    VarianceParams vp = evaluate_variance_params(n, p, kappa, epsilon1, XiMode::Tight);
    if (!vp.feasible) vp = evaluate_variance_params(n, p, kappa, epsilon1, XiMode::Simple);
    if (vp.feasible && (!best || vp.zeta < best->zeta)) best = vp;
  }
  if (!best) {
    throw InfeasibleError(std::string(kSimpleCondition),
                          "best_block_size_scan: no block size in [2, n/2] is feasible for n = " +
                              std::to_string(n) + ", kappa = " + detail::fmt(kappa) +
                              ", eps1 = " + detail::fmt(epsilon1));
  }
  return *best;
}

std::vector<double> block_variances(const Sample& sample, const BlockPlan& plan) {
  if (static_cast<long>(sample.size()) != plan.n) {
    throw ParameterError("block_variances: plan is for n = " + std::to_string(plan.n) +
                         " but the sample has " + std::to_string(sample.size()) + " values");
  }
  std::vector<double> out;
  out.reserve(plan.ranges.size());
  const auto values = sample.values();
  for (const auto& [begin, end] : plan.ranges) {
    if (end - begin < 2) throw ParameterError("block_variances: every block needs at least 2 values");
    out.push_back(unbiased_variance(values.subspan(static_cast<std::size_t>(begin),
                                                   static_cast<std::size_t>(end - begin))));
  }
  return out;
}

double q_criterion(const std::vector<double>& block_vars, double beta, double delta, InfluenceKind kind) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw ParameterError("q_criterion: beta must be finite and >= 0, got " + detail::fmt(beta));
  }
  double sum = 0.0;
  for (double bv : block_vars) sum += psi(kind, beta * bv - delta);
  return sum / static_cast<double>(block_vars.size());
}

double q_criterion(const Sample& sample, const BlockPlan& plan, double beta, double delta,
                   InfluenceKind kind) {
  return q_criterion(block_variances(sample, plan), beta, delta, kind);
}

VarianceEstimate solve_variance(const Sample& sample, double kappa, double epsilon1,
                                const VarianceOptions& options) {
  detail::require_positive(options.tolerance, "tolerance", "solve_variance");
  const long n = static_cast<long>(sample.size());
  if (n < 4) throw DegenerateDataError("solve_variance: needs at least 4 observations");
  const long p = options.p ? *options.p : optimal_block_size(n, kappa, epsilon1).p;
  const BlockPlan plan = block_plan(n, p);

  VarianceEstimate est;
  est.params = options.xi_mode ? variance_params(n, p, kappa, epsilon1, *options.xi_mode)
                               : variance_params_auto(n, p, kappa, epsilon1);
  const double delta = est.params.delta;
  const double y = est.params.y;
  est.zeta = est.params.zeta;

  const std::vector<double> bv = block_variances(sample, plan);
  bool any_spread = false;
  for (double v : bv) any_spread = any_spread || v > 0.0;
  if (!any_spread) throw DegenerateDataError("solve_variance: every block has zero variance");
  const double v_emp = unbiased_variance(sample.values());

  const double floor_q = psi(options.kind, -delta);
  if (!(-y > floor_q)) {
    throw InfeasibleError("y < -psi(-delta)", "solve_variance: Q(beta) = -y has no root since y = " +
                                                  detail::fmt(y) + " >= -psi(-delta) = " +
                                                  detail::fmt(-floor_q));
  }

  auto Q = [&](double beta) { return q_criterion(bv, beta, delta, options.kind); };
  const double tol = options.tolerance;

  double beta = (delta - y) / v_emp;
  bool converged = false;
  std::vector<double> residuals;
  for (int k = 0; k < kMaxFixedPointIterations; ++k) {
    const double qk = Q(beta);
    ++est.iterations;
    residuals.push_back(std::fabs(qk + y));
    if (qk + y == 0.0) {
      converged = true;
      break;
    }
    const double denom = qk + delta;
    if (!(denom > 0.0)) break;
    const double next = beta * (delta - y) / denom;
    if (!(next > 0.0) || !std::isfinite(next)) break;
    const bool small_step = std::fabs(next - beta) <= tol * beta;
    beta = next;
    if (small_step) {
      converged = true;
      break;
    }
    if (k >= kStallWindow && residuals[k] > 0.5 * residuals[k - kStallWindow]) break;
  }

  if (!converged) {
    const double start = (delta - y) / v_emp;
    double lo = start;
    double hi = start;
    int steps = 0;
    if (Q(start) < -y) {
      while (Q(hi) < -y) {
        lo = hi;
        hi *= 2.0;
        if (++steps > kMaxBracketSteps || !std::isfinite(hi)) {
          throw NumericalError("solve_variance: could not bracket the root of Q(beta) = -y from above");
        }
      }
    } else {
      while (Q(lo) > -y) {
        hi = lo;
        lo *= 0.5;
        if (++steps > kMaxBracketSteps || lo == 0.0) {
          throw NumericalError("solve_variance: could not bracket the root of Q(beta) = -y from below");
        }
      }
    }
    while (hi - lo > tol * hi) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      ++est.iterations;
      if (Q(mid) < -y) lo = mid; else hi = mid;
    }
    beta = 0.5 * (lo + hi);
    est.used_bisection = true;
  }

  est.beta_hat = beta;
  est.v_hat = std::sqrt(delta * (delta - est.params.xi)) / beta;
  return est;
}

double zeta_bound_corollary(long n, double kappa, double epsilon1) {
  require_kappa(kappa, 1.0, "zeta_bound_corollary");
  if (kappa == 1.0) throw ParameterError("zeta_bound_corollary: kappa must exceed 1");
  require_epsilon1(epsilon1, "zeta_bound_corollary");
  if (n < 1) throw ParameterError("zeta_bound_corollary: n must be positive");
  const double L = std::log(1.0 / epsilon1);
  const double nd = static_cast<double>(n);
  const double limit = nd / (36.0 * (kappa - 1.0)) - 0.125;
  if (!(L <= limit)) {
    throw InfeasibleError(std::string(kCorollaryCondition),
                          "zeta_bound_corollary: log(1/eps1) = " + detail::fmt(L) + " exceeds n/(36(kappa-1)) - 1/8 = " +
                              detail::fmt(limit));
  }
  const double inner = 2.0 * std::sqrt(2.0 * (kappa - 1.0) * L / nd) *
                       std::exp(4.0 * std::sqrt((4.0 * L + 0.5) / ((kappa - 1.0) * nd)));
  if (!(inner < 1.0)) {
    throw InfeasibleError(std::string(kCorollaryCondition),
                          "zeta_bound_corollary: the log argument is not positive");
  }
  return -0.5 * std::log1p(-inner);
}

}  // namespace catoni
