#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "catoni/bounds.hpp"
#include "catoni/cli.hpp"
#include "catoni/distributions.hpp"
#include "catoni/errors.hpp"
#include "catoni/influence.hpp"
#include "catoni/kurtosis_mean.hpp"
#include "catoni/lepski.hpp"
#include "catoni/mean.hpp"
#include "catoni/montecarlo.hpp"
#include "catoni/statistics.hpp"
#include "catoni/variance.hpp"

using namespace catoni;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

void note(Outcome& o, bool ok, const std::string& what) {
  if (!ok) o.pass = false;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += (ok ? "" : "FAILED ") + what;
}

double grid_point(long i, long count, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
}

// 1. Published mixture moments, within half a unit of the printed last digit.
Outcome mixture_moments_match() {
  struct Case {
    const char* spec;
    double m, v, kappa;
    int dm, dv, dk;
  };
  const Case cases[] = {
      {"0.7:2:1,0.2:-2:1,0.1:0:30", 1.0, 93.5, 27.86, 0, 1, 2},
      {"0.99:0:1,0.01:0:30", 0.0, 9.99, 243.5, 0, 2, 1},
      {"0.94:0:1,0.01:20:20,0.05:-30:20", -1.3, 72.25, 33.4, 1, 2, 1},
      {"0.995:0:1,0.005:1:5", 0.005, 1.125, 10.357, 3, 3, 3},
  };
  Outcome o;
  for (const Case& c : cases) {
    const Moments mo = mixture_moments(parse_mixture_spec(c.spec));
    const auto close = [](double x, double printed, int digits) {
      return std::fabs(x - printed) <= 0.5 * std::pow(10.0, -digits) * (1.0 + 1e-12);
    };
    const bool ok = mo.kappa && close(mo.m, c.m, c.dm) && close(mo.v, c.v, c.dv) && close(*mo.kappa, c.kappa, c.dk);
    note(o, ok, fmt("%s -> (%.6g, %.6g, %.6g)", c.spec, mo.m, mo.v, mo.kappa.value_or(NAN)));
  }
  return o;
}

// 2. Influence function inequalities on 10^6 points of [-50, 50] and a 500x500 grid.
Outcome influence_suite() {
  constexpr long count = 1000000;
  const double ulp_slack = 4.0 * std::numeric_limits<double>::epsilon();
  const ChiConstants& k = chi_constants();
  const double g_const = 4.0 * (1.0 + std::sqrt(2.0));
  long sandwich = 0, ordering = 0, oddness = 0, monotone = 0, chi_bad = 0, g_bad = 0;
  double prev_narrow = -INFINITY, prev_wide = -INFINITY;
  for (long i = 0; i < count; ++i) {
    const double x = grid_point(i, count, -50.0, 50.0);
    const double upper = log_upper_envelope(x);
    const double lower = -log_upper_envelope(-x);
    const double narrow = psi(InfluenceKind::Narrow, x);
    const double wide = psi(InfluenceKind::Wide, x);
    for (double value : {narrow, wide}) {
      const double tol = ulp_slack * std::max(1.0, std::fabs(value));
      if (!(lower <= value + tol && value <= upper + tol)) ++sandwich;
    }
    if (x >= 0.0 ? narrow > wide : narrow < wide) ++ordering;
    if (psi(InfluenceKind::Narrow, -x) != -narrow || psi(InfluenceKind::Wide, -x) != -wide) ++oddness;
    if (narrow < prev_narrow || wide < prev_wide) ++monotone;
    prev_narrow = narrow;
    prev_wide = wide;
    const double c = chi(x);
    const double ctol = ulp_slack * std::max(1.0, std::fabs(c));
    if (!(narrow <= c + ctol && c <= upper + ctol)) ++chi_bad;
    const double g = g_remainder(x);
    const double ax = std::fabs(x);
    if (std::fabs(g) > std::min({ax, x * x / g_const, ax * ax * ax / 6.0}) * (1.0 + 1e-12) + 1e-300) ++g_bad;
    if (g_remainder(-x) != -g) ++oddness;
  }
  long smooth_bad = 0;
  const double h = 1e-7;
  for (double at : {k.x1, k.x1 + 4.0 * k.p1}) {
    const double left = (chi(at) - chi(at - h)) / h;
    const double right = (chi(at + h) - chi(at)) / h;
    if (std::fabs(chi(at + h) - chi(at - h)) >= 1e-6 || std::fabs(left - right) > 1e-6) ++smooth_bad;
  }
  long a_bad = 0;
  for (int i = 0; i < 500; ++i) {
    const double x = grid_point(i, 500, -30.0, 30.0);
    for (int j = 1; j <= 500; ++j) {
      const double y = 40.0 * j / 500.0;
      const double lhs = chi(x) + std::min(std::log(4.0), y / 8.0);
      if (lhs > std::log(1.0 + x + 0.5 * x * x + 0.5 * k.a * y) + 1e-12) ++a_bad;
    }
  }
  Outcome o;
  note(o, sandwich == 0, fmt("sandwich violations %ld", sandwich));
  note(o, ordering == 0, fmt("ordering %ld", ordering));
  note(o, oddness == 0, fmt("oddness %ld", oddness));
  note(o, monotone == 0, fmt("monotonicity %ld", monotone));
  note(o, chi_bad == 0 && smooth_bad == 0, fmt("chi %ld/%ld", chi_bad, smooth_bad));
  note(o, g_bad == 0, fmt("g bound %ld", g_bad));
  note(o, a_bad == 0, fmt("constant a %ld over 500x500", a_bad));
  return o;
}

// 3. Gaussian < Catoni < Chebyshev at n = 100, v = 1, eps = 0.05, against high-precision values.
Outcome bound_snapshot() {
  BoundQuery q;
  q.n = 100;
  q.v = 1.0;
  q.epsilon = 0.05;
  const double gaussian = gaussian_halfwidth(q);
  const double catoni = halfwidth_known_variance(100, 1.0, 0.05, AlphaMode::EpsDependent);
  const double chebyshev = chebyshev_halfwidth(q);
  constexpr double tol = 1e-6;
  Outcome o;
  note(o, std::fabs(gaussian - 0.16448536269514727149) <= tol, fmt("gaussian %.8f", gaussian));
  note(o, std::fabs(catoni - 0.25245434715590499374) <= tol, fmt("catoni %.8f", catoni));
  note(o, std::fabs(chebyshev - 0.31622776601683793320) <= tol, fmt("chebyshev %.8f", chebyshev));
  note(o, gaussian < catoni && catoni < chebyshev, "strict ordering");
  return o;
}

double kurtosis_ratio(double kappa, long n, double eps) {
  BoundQuery q;
  q.n = n;
  q.v = 1.0;
  q.kappa = kappa;
  q.epsilon = eps;
  return kurtosis_halfwidth(q) / lower_bound_kurtosis(q);
}

// 4. Lower bounds never exceed upper bounds; asymptotic gap of the kurtosis bounds.
Outcome lower_upper_consistency() {
  const std::vector<double> eps_grid = log_spaced_grid(1e-14, 0.18, 20);
  const std::vector<double> n_real = log_spaced_grid(16.0, 1e6, 20);
  long checked = 0, violations = 0;
  for (double nr : n_real) {
    const long n = std::lround(nr);
    for (double eps : eps_grid) {
      for (double kappa : {1.5, 3.0, 12.0}) {
        BoundQuery q;
        q.n = n;
        q.v = 1.0;
        q.kappa = kappa;
        q.epsilon = eps;
        ++checked;
        if (lower_bound_plain(q) > chebyshev_halfwidth(q)) ++violations;
        if (static_cast<double>(n) <= 1.0 / eps) {
          ++checked;
          if (lower_bound_kurtosis(q) > empirical_mean_best_halfwidth(q)) ++violations;
        }
      }
    }
  }
  const double target = std::pow(1.5, 0.25);
  const double ratio = kurtosis_ratio(3.0, 10000, 1e-7);
  Outcome o;
  note(o, violations == 0, fmt("%ld of %ld comparisons violated", violations, checked));
  note(o, std::fabs(ratio / target - 1.0) <= 0.15,
       fmt("upper/lower at (3, 1e4, 1e-7) = %.4f vs %.4f", ratio, target));
  return o;
}

// 5. The three-point law attains its deviation bound; the four-point law has the requested moments.
Outcome worst_case_realizability() {
  const long n = 100;
  const double eps = 0.05;
  const long reps = 1000000;
  BoundQuery q;
  q.n = n;
  q.v = 1.0;
  q.epsilon = eps;
  const double eta = lower_bound_plain(q);
  const DiscreteSpec spec = three_point_spec(1.0, eta, n);
  long hits = 0;
  for (long r = 0; r < reps; ++r) {
    const Sample s = sample_discrete(spec, n, replication_seed(2718, r));
    double sum = 0.0;
    for (double y : s) sum += y;
    if (sum / static_cast<double>(n) >= eta * (1.0 - 1e-9)) ++hits;
  }
  const double nd = static_cast<double>(n);
  const double analytic = 1.0 / (2.0 * nd * eta * eta) * std::pow(1.0 - 1.0 / (nd * nd * eta * eta), nd - 1.0);
  const double freq = static_cast<double>(hits) / static_cast<double>(reps);
  const double se = std::sqrt(freq * (1.0 - freq) / static_cast<double>(reps));
  Outcome o;
  note(o, std::fabs(analytic - 0.057500624965220005341) <= 1e-12, fmt("analytic %.10f", analytic));
  note(o, freq >= analytic - 3.0 * se, fmt("P(M >= eta) = %.6f (se %.6f)", freq, se));
  double worst = 0.0;
  for (double v : {0.5, 1.0, 4.0}) {
    for (double kappa : {1.5, 3.0, 10.0}) {
      for (double mass : {0.001, 0.01, 0.04}) {
        const Moments mo = discrete_moments(four_point_spec(v, kappa, mass, n));
        worst = std::max({worst, std::fabs(mo.m), std::fabs(mo.v - v) / v, std::fabs(*mo.kappa - kappa) / kappa});
      }
    }
  }
  note(o, worst <= 1e-9, fmt("four-point moment error %.2e", worst));
  return o;
}

Outcome check_coverage(Outcome& o, const std::string& label, const SimulationConfig& c, CoverageMethod m,
                       double level) {
  const CoverageReport r = coverage(c, m);
  const bool ok = std::fabs(r.target - level) < 1e-12 && r.coverage >= level - 3.0 * r.mc_stderr;
  note(o, ok, fmt("%s %.4f (target %.4f, se %.4f)", label.c_str(), r.coverage, level, r.mc_stderr));
  return o;
}

// 6. Coverage of the confidence intervals.
Outcome coverage_suites() {
  Outcome o;
  SimulationConfig gauss;
  gauss.source = MixtureSpec{{{1.0, 0.0, 1.0}}};
  gauss.n = 100;
  gauss.reps = 20000;
  gauss.seed = 101;
  gauss.epsilon = 0.05;
  gauss.threads = 0;
  check_coverage(o, "known-v", gauss, CoverageMethod::KnownVariance, 0.90);

  SimulationConfig lepski = gauss;
  lepski.n = 500;
  lepski.reps = 5000;
  lepski.seed = 102;
  lepski.epsilon = 0.01;
  lepski.grid = GeometricGrid{1.0, 1.05, 95};
  check_coverage(o, "lepski", lepski, CoverageMethod::Lepski, 0.98);

  SimulationConfig mixture;
  mixture.source = parse_mixture_spec("0.995:0:1,0.005:1:5");
  mixture.n = 2000;
  mixture.reps = 5000;
  mixture.seed = 103;
  mixture.epsilon = 0.0025;
  mixture.kappa_max = 12.0;
  mixture.threads = 0;
  check_coverage(o, "variance", mixture, CoverageMethod::Variance, 0.995);

  mixture.reps = 2000;
  mixture.seed = 104;
  mixture.epsilon = 0.005;
  check_coverage(o, "kurtosis", mixture, CoverageMethod::Kurtosis, 0.99);
  return o;
}

const std::vector<double> kLevels{0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99};

SimulationConfig quantile_config(Source source, long n, long reps, std::uint64_t seed,
                                 std::vector<EstimatorKind> kinds) {
  SimulationConfig c;
  c.source = std::move(source);
  c.n = n;
  c.reps = reps;
  c.seed = seed;
  c.epsilon = 0.05;
  c.threads = 0;
  for (EstimatorKind k : kinds) {
    EstimatorSpec s;
    s.kind = k;
    c.estimators.push_back(s);
  }
  return c;
}

// 7. On the three-component mixture the M-estimators beat the empirical mean at every level.
Outcome heavy_mixture_quantiles() {
  const SimulationConfig c =
      quantile_config(parse_mixture_spec("0.7:2:1,0.2:-2:1,0.1:0:30"), 100, 1000, 1,
                      {EstimatorKind::EmpiricalMean, EstimatorKind::KnownVariance, EstimatorKind::PlugIn});
  const std::vector<QuantileCurve> curves = deviation_quantiles(c);
  Outcome o;
  for (std::size_t e = 1; e < curves.size(); ++e) {
    bool below = true;
    std::string values;
    for (double level : kLevels) {
      const double mean = quantile_at(curves[0], level);
      const double est = quantile_at(curves[e], level);
      below = below && est <= mean;
      values += fmt(" %.3g/%.3g", est, mean);
    }
    note(o, below, curves[e].estimator + " <= mean at all levels:" + values);
  }
  const double ratio = quantile_at(curves[1], 0.9) / quantile_at(curves[0], 0.9);
  note(o, ratio <= 0.9, fmt("known-v/mean at 0.9 = %.3f", ratio));
  return o;
}

// 8. On Gaussian data the M-estimators track the empirical mean.
Outcome gaussian_no_loss() {
  const SimulationConfig c =
      quantile_config(MixtureSpec{{{1.0, 0.0, 1.0}}}, 1000, 2000, 2,
                      {EstimatorKind::EmpiricalMean, EstimatorKind::KnownVariance, EstimatorKind::PlugIn});
  const std::vector<QuantileCurve> curves = deviation_quantiles(c);
  Outcome o;
  for (std::size_t e = 1; e < curves.size(); ++e) {
    for (double level : {0.5, 0.9, 0.99}) {
      const double diff = std::fabs(quantile_at(curves[e], level) - quantile_at(curves[0], level));
      const double se = std::hypot(quantile_stderr(curves[e], level), quantile_stderr(curves[0], level));
      note(o, diff <= 2.0 * se, fmt("%s at %.2f: |diff| %.2e vs 2se %.2e", curves[e].estimator.c_str(), level, diff,
                                    2.0 * se));
    }
  }
  return o;
}

double bisection_mean(const Sample& s, double alpha, InfluenceKind kind) {
  auto r = [&](double t) { return criterion(s, alpha, kind, t); };
  auto bisect = [&](bool keep_zero_left) {
    double lo = s.min();
    double hi = s.max();
    for (;;) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double value = r(mid);
      if (value > 0.0 || (keep_zero_left && value == 0.0)) lo = mid; else hi = mid;
    }
    return keep_zero_left ? lo : hi;
  };
  return 0.5 * (bisect(false) + bisect(true));
}

double bisection_beta(const std::vector<double>& bv, double delta, double y, InfluenceKind kind) {
  auto Q = [&](double b) { return q_criterion(bv, b, delta, kind); };
  double lo = 0.0;
  double hi = 1.0;
  while (Q(hi) < -y) {
    lo = hi;
    hi *= 2.0;
  }
  while (Q(lo) >= -y && lo > 0.0) lo *= 0.5;
  for (;;) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (Q(mid) < -y) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Iterations of beta <- beta (delta - y) / (Q(beta) + delta) from (delta - y) / V until |Q + y| <= tol.
int residual_iterations(const Sample& s, const VarianceParams& params, double tol) {
  const std::vector<double> bv = block_variances(s, block_plan(params.n, params.p));
  const double delta = params.delta;
  const double y = params.y;
  double beta = (delta - y) / unbiased_variance(s.values());
  for (int k = 1; k <= 100; ++k) {
    const double q = q_criterion(bv, beta, delta, InfluenceKind::Narrow);
    if (std::fabs(q + y) <= tol) return k;
    beta *= (delta - y) / (q + delta);
  }
  return 101;
}

// 9. Both solvers agree with plain bisection and converge quickly on the experiment settings.
Outcome solver_robustness() {
  Outcome o;
  std::mt19937_64 rng(9);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::cauchy_distribution<double> cauchy(0.0, 1.0);
  std::student_t_distribution<double> t3(3.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  long mean_bad = 0;
  for (int c = 0; c < 10000; ++c) {
    const int n = 1 + static_cast<int>(unit(rng) * 200.0);
    const double shift = 20.0 * unit(rng) - 10.0;
    const double scale = std::pow(10.0, 4.0 * unit(rng) - 2.0);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& y : v) {
      switch (c % 3) {
        case 0: y = shift + scale * normal(rng); break;
        case 1: y = shift + scale * std::clamp(cauchy(rng), -1e6, 1e6); break;
        default: y = shift + scale * std::round(3.0 * t3(rng)); break;
      }
    }
    const Sample s(std::move(v));
    const double alpha = std::pow(10.0, 4.0 * unit(rng) - 3.0) / scale;
    const InfluenceKind kind = c % 2 ? InfluenceKind::Wide : InfluenceKind::Narrow;
    const MeanEstimate m = solve_mean(s, alpha, kind);
    const double tol = kDefaultMeanTolerance * (1.0 + s.max_abs());
    if (std::fabs(m.theta_hat - bisection_mean(s, alpha, kind)) > 10.0 * tol) ++mean_bad;
  }
  note(o, mean_bad == 0, fmt("mean solver: %ld of 10000 disagree", mean_bad));

  long var_solved = 0, var_bad = 0;
  for (int c = 0; c < 10000; ++c) {
    const long n = 200 + static_cast<long>(unit(rng) * 2800.0);
    const double kappa = 2.0 + 10.0 * unit(rng);
    const double eps1 = std::exp(-1.0 - 5.0 * unit(rng));
    const double scale = std::exp(6.0 * unit(rng) - 3.0);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& y : v) y = scale * (c % 2 ? normal(rng) : t3(rng) / std::sqrt(3.0));
    const Sample s(std::move(v));
    VarianceOptions options;
    options.kind = c % 4 < 2 ? InfluenceKind::Narrow : InfluenceKind::Wide;
    VarianceEstimate e;
    try {
      e = solve_variance(s, kappa, eps1, options);
    } catch (const InfeasibleError&) {
      continue;
    }
    ++var_solved;
    const std::vector<double> bv = block_variances(s, block_plan(n, e.params.p));
    const double oracle = bisection_beta(bv, e.params.delta, e.params.y, options.kind);
    if (std::fabs(e.beta_hat - oracle) > 10.0 * options.tolerance * oracle) ++var_bad;
  }
  note(o, var_solved >= 5000 && var_bad == 0,
       fmt("variance solver: %ld of %ld feasible cases disagree", var_bad, var_solved));

  struct Experiment {
    const char* source;
    long n;
    double eps;
  };
  const Experiment experiments[] = {
      {"0.7:2:1,0.2:-2:1,0.1:0:30", 100, 0.05},       {"0.7:2:1,0.2:-2:1,0.1:0:30", 1000, 0.05},
      {"0.99:0:1,0.01:0:30", 1000, 0.005},            {"0.94:0:1,0.01:20:20,0.05:-30:20", 1000, 0.05},
      {"0.94:0:1,0.01:20:20,0.05:-30:20", 1000, 0.0005}, {"1:0:1", 1000, 0.05},
  };
  int worst_mean = 0;
  long mean_fallbacks = 0;
  for (const Experiment& x : experiments) {
    const MixtureSpec spec = parse_mixture_spec(x.source);
    const double v = mixture_moments(spec).v;
    for (long r = 0; r < 200; ++r) {
      const Sample s = sample_mixture(spec, x.n, replication_seed(909, r));
      for (const MeanEstimate& m : {estimate_mean_known_variance(s, v, x.eps), estimate_mean_plugin(s, x.eps)}) {
        worst_mean = std::max(worst_mean, m.iterations);
        if (m.used_bisection) ++mean_fallbacks;
      }
    }
  }
  note(o, worst_mean <= 10 && mean_fallbacks == 0,
       fmt("mean fixed point: at most %d iterations, %ld fallbacks", worst_mean, mean_fallbacks));

  const MixtureSpec mix4 = parse_mixture_spec("0.995:0:1,0.005:1:5");
  int worst_residual = 0;
  int worst_polished = 0;
  long var_fallbacks = 0;
  VarianceOptions pair_blocks;
  pair_blocks.p = 2;
  for (long r = 0; r < 200; ++r) {
    const Sample s = sample_mixture(mix4, 2000, replication_seed(910, r));
    std::vector<VarianceEstimate> runs;
    for (const VarianceOptions& opt : {pair_blocks, VarianceOptions{}}) {
      runs.push_back(solve_variance(s, 12.0, 0.0025, opt));
    }
    const KurtosisMeanResult k = estimate_mean_kurtosis(s, 12.0, 0.005);
    runs.push_back(k.variance);
    worst_mean = std::max(worst_mean, k.mean.iterations);
    if (k.mean.used_bisection) ++mean_fallbacks;
    for (const VarianceEstimate& e : runs) {
      worst_residual = std::max(worst_residual, residual_iterations(s, e.params, VarianceOptions{}.tolerance));
      worst_polished = std::max(worst_polished, e.iterations);
      if (e.used_bisection) ++var_fallbacks;
    }
  }
  note(o, worst_mean <= 10 && mean_fallbacks == 0,
       fmt("kurtosis-path mean fixed point: at most %d iterations, %ld fallbacks", worst_mean, mean_fallbacks));
  note(o, worst_residual <= 10 && var_fallbacks == 0,
       fmt("variance fixed point: residual within tolerance after at most %d iterations, %ld fallbacks "
           "(%d with the relative-step stop)",
           worst_residual, var_fallbacks, worst_polished));
  return o;
}

std::string run_cli_capture(std::vector<std::string> args, int& code) {
  std::ostringstream out, err;
  code = run_cli(args, out, err);
  return out.str();
}

// 10. simulate output does not depend on the worker count.
Outcome simulate_determinism() {
  const std::vector<std::vector<std::string>> invocations{
      {"simulate", "--source", "0.7:2:1,0.2:-2:1,0.1:0:30", "--n", "100", "--reps", "1000", "--seed", "17",
       "--epsilon", "0.05", "--estimators", "mean,median,known-v,eps-free,plugin,lepski"},
      {"simulate", "--source", "0.995:0:1,0.005:1:5", "--n", "2000", "--reps", "200", "--seed", "5", "--epsilon",
       "0.005", "--estimators", "mean,kurtosis", "--kappa-max", "12"},
      {"simulate", "--source", "worst3:1,0.27636558449855623607", "--n", "100", "--reps", "2000", "--seed", "3",
       "--epsilon", "0.05", "--estimators", "mean,known-v"},
      {"simulate", "--source", "worst4:1,3,0.001", "--n", "100", "--reps", "2000", "--seed", "4", "--epsilon",
       "0.05", "--estimators", "mean,plugin"},
      {"simulate", "--source", "1:0:1", "--n", "500", "--reps", "300", "--seed", "6", "--epsilon", "0.01",
       "--coverage", "known-v,lepski,mean-chebyshev"},
  };
  Outcome o;
  for (const auto& args : invocations) {
    std::vector<std::string> one = args, eight = args;
    one.insert(one.end(), {"--threads", "1"});
    eight.insert(eight.end(), {"--threads", "8"});
    int c1 = 0, c8 = 0;
    const std::string a = run_cli_capture(one, c1);
    const std::string b = run_cli_capture(eight, c8);
    note(o, c1 == 0 && c8 == 0 && !a.empty() && a == b, fmt("%s: %zu bytes", args[2].c_str(), a.size()));
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "mixture moments", mixture_moments_match},
      {2, "influence inequalities", influence_suite},
      {3, "bound snapshot", bound_snapshot},
      {4, "lower/upper consistency", lower_upper_consistency},
      {5, "worst-case realizability", worst_case_realizability},
      {6, "coverage", coverage_suites},
      {7, "heavy mixture quantiles", heavy_mixture_quantiles},
      {8, "gaussian no-loss", gaussian_no_loss},
      {9, "solver robustness", solver_robustness},
      {10, "simulate determinism", simulate_determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("%s %2d %s [%.2f s]: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, seconds, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("info: kurtosis upper/lower at (3, 1e4, 1e-20) = %.4f vs %.4f\n", kurtosis_ratio(3.0, 10000, 1e-20),
              std::pow(1.5, 0.25));
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
