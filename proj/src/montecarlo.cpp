#include "catoni/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "catoni/bounds.hpp"
#include "catoni/csv.hpp"
#include "catoni/errors.hpp"
#include "catoni/kurtosis_mean.hpp"
#include "catoni/mean.hpp"
#include "catoni/rng.hpp"
#include "catoni/statistics.hpp"
#include "catoni/variance.hpp"
#include "checks.hpp"

namespace catoni {

std::string_view to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::EmpiricalMean: return "mean";
    case EstimatorKind::EmpiricalMedian: return "median";
    case EstimatorKind::KnownVariance: return "known-v";
    case EstimatorKind::EpsFree: return "eps-free";
    case EstimatorKind::PlugIn: return "plugin";
    case EstimatorKind::Lepski: return "lepski";
    case EstimatorKind::Kurtosis: return "kurtosis";
  }
  return "unknown";
}

EstimatorKind parse_estimator_kind(std::string_view name) {
  for (auto kind : {EstimatorKind::EmpiricalMean, EstimatorKind::EmpiricalMedian, EstimatorKind::KnownVariance,
                    EstimatorKind::EpsFree, EstimatorKind::PlugIn, EstimatorKind::Lepski, EstimatorKind::Kurtosis}) {
    if (name == to_string(kind)) return kind;
  }
  throw ParameterError("unknown estimator '" + std::string(name) +
                       "' (expected mean, median, known-v, eps-free, plugin, lepski or kurtosis)");
}

std::string_view to_string(CoverageMethod method) {
  switch (method) {
    case CoverageMethod::KnownVariance: return "known-v";
    case CoverageMethod::EpsFree: return "eps-free";
    case CoverageMethod::Lepski: return "lepski";
    case CoverageMethod::Kurtosis: return "kurtosis";
    case CoverageMethod::Variance: return "variance";
    case CoverageMethod::MeanChebyshev: return "mean-chebyshev";
  }
  return "unknown";
}

CoverageMethod parse_coverage_method(std::string_view name) {
  for (auto m : {CoverageMethod::KnownVariance, CoverageMethod::EpsFree, CoverageMethod::Lepski,
                 CoverageMethod::Kurtosis, CoverageMethod::Variance, CoverageMethod::MeanChebyshev}) {
    if (name == to_string(m)) return m;
  }
  throw ParameterError("unknown coverage method '" + std::string(name) +
                       "' (expected known-v, eps-free, lepski, kurtosis, variance or mean-chebyshev)");
}

std::uint64_t replication_seed(std::uint64_t seed, long r) {
  return mix(splitmix64(seed), static_cast<std::uint64_t>(r));
}

namespace {

struct Truth {
  double m;
  double v;
};

Truth truth_of(const SimulationConfig& config) {
  const Moments mo = source_moments(config.source);
  return {mo.m, mo.v};
}

// Estimator with every default resolved against the true moments.
EstimatorSpec resolve(EstimatorSpec spec, const SimulationConfig& config, const Truth& truth) {
  const double v_ref = truth.v > 0.0 ? truth.v : 1.0;
  if (!spec.v) spec.v = v_ref;
  if (!spec.grid) spec.grid = config.grid ? *config.grid : GeometricGrid{v_ref, 1.05, 95};
  if (!spec.kappa_max && spec.kind == EstimatorKind::Kurtosis) {
    spec.kappa_max = config.kappa_max ? *config.kappa_max : default_kappa_max(config.n);
  }
  return spec;
}

double run_estimator(const EstimatorSpec& spec, const Sample& sample, double epsilon) {
  switch (spec.kind) {
    case EstimatorKind::EmpiricalMean: return empirical_mean(sample.values());
    case EstimatorKind::EmpiricalMedian: return empirical_median(sample.values());
    case EstimatorKind::KnownVariance:
      return estimate_mean_known_variance(sample, *spec.v, epsilon, AlphaMode::EpsDependent, spec.psi).theta_hat;
    case EstimatorKind::EpsFree:
      return estimate_mean_known_variance(sample, *spec.v, epsilon, AlphaMode::EpsFree, spec.psi).theta_hat;
    case EstimatorKind::PlugIn: return estimate_mean_plugin(sample, epsilon, spec.psi).theta_hat;
    case EstimatorKind::Lepski: return adaptive_estimate(sample, epsilon, *spec.grid, spec.psi).theta_tilde;
    case EstimatorKind::Kurtosis: return estimate_mean_kurtosis(sample, spec.kappa_max, epsilon).mean.theta_hat;
  }
  throw ParameterError("unknown estimator");
}

void check_estimator(const EstimatorSpec& spec, long n, double epsilon) {
  switch (spec.kind) {
    case EstimatorKind::EmpiricalMean:
    case EstimatorKind::EmpiricalMedian: return;
    case EstimatorKind::KnownVariance: alpha_known_variance(n, *spec.v, epsilon, AlphaMode::EpsDependent); return;
    case EstimatorKind::EpsFree: alpha_known_variance(n, *spec.v, epsilon, AlphaMode::EpsFree); return;
    case EstimatorKind::PlugIn:
      if (n < 2) throw DegenerateDataError("plugin estimator needs n >= 2");
      alpha_known_variance(n, 1.0, epsilon, AlphaMode::EpsDependent);
      return;
    case EstimatorKind::Lepski: adaptive_halfwidth(spec.grid->V, *spec.grid, epsilon, n); return;
    case EstimatorKind::Kurtosis: plugin_params(n, epsilon, *spec.kappa_max); return;
  }
}

[[noreturn]] void rethrow_for_replication(std::exception_ptr error, long r) {
  const std::string prefix = "replication " + std::to_string(r) + ": ";
  try {
    std::rethrow_exception(error);
  } catch (const InfeasibleError& e) {
    throw InfeasibleError(e.condition(), prefix + e.what());
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::Parameter: throw ParameterError(prefix + e.what());
      case ErrorKind::Domain: throw DomainError(prefix + e.what());
      case ErrorKind::DegenerateData: throw DegenerateDataError(prefix + e.what());
      default: throw NumericalError(prefix + e.what());
    }
  }
}

// Runs body(r, sample) for every replication on `threads` workers and stores
// the results by replication index.
template <class T, class Body>
std::vector<T> run_replications(const SimulationConfig& config, Body body) {
  const long reps = config.reps;
  std::vector<T> results(static_cast<std::size_t>(reps));
  unsigned threads = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
  threads = static_cast<unsigned>(std::min<long>(threads, reps));

  std::atomic<long> next{0};
  std::mutex error_mutex;
  long failed_rep = reps;
  std::exception_ptr failure;

  auto worker = [&] {
    for (long r = next++; r < reps; r = next++) {
      try {
        const Sample sample = sample_source(config.source, config.n, replication_seed(config.seed, r));
        results[static_cast<std::size_t>(r)] = body(sample);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (r < failed_rep) {
          failed_rep = r;
          failure = std::current_exception();
        }
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) rethrow_for_replication(failure, failed_rep);
  return results;
}

void check_basic(const SimulationConfig& config) {
  if (config.n < 1) throw ParameterError("simulation: n must be >= 1");
  if (config.reps < 1) throw ParameterError("simulation: reps must be >= 1");
  detail::require_epsilon(config.epsilon, "simulation");
}

EstimatorSpec coverage_spec(const SimulationConfig& config, CoverageMethod method, const Truth& truth) {
  EstimatorSpec spec;
  spec.psi = config.psi;
  switch (method) {
    case CoverageMethod::KnownVariance: spec.kind = EstimatorKind::KnownVariance; break;
    case CoverageMethod::EpsFree: spec.kind = EstimatorKind::EpsFree; break;
    case CoverageMethod::Lepski: spec.kind = EstimatorKind::Lepski; break;
    case CoverageMethod::Kurtosis: spec.kind = EstimatorKind::Kurtosis; break;
    case CoverageMethod::Variance: spec.kind = EstimatorKind::Kurtosis; break;
    case CoverageMethod::MeanChebyshev: spec.kind = EstimatorKind::EmpiricalMean; break;
  }
  spec.v = truth.v;
  return resolve(spec, config, truth);
}

void check_coverage(const SimulationConfig& config, CoverageMethod method, const Truth& truth) {
  if (!(truth.v > 0.0) && method != CoverageMethod::MeanChebyshev) {
    throw DegenerateDataError("coverage: the source has zero variance");
  }
  const EstimatorSpec spec = coverage_spec(config, method, truth);
  switch (method) {
    case CoverageMethod::Lepski:
      adaptive_halfwidth(truth.v, *spec.grid, config.epsilon, config.n);
      break;
    case CoverageMethod::Variance: {
      const long p = optimal_block_size(config.n, *spec.kappa_max, config.epsilon).p;
      variance_params_auto(config.n, p, *spec.kappa_max, config.epsilon);
      break;
    }
    default: check_estimator(spec, config.n, config.epsilon);
  }
}

}  // namespace

void validate_config(const SimulationConfig& config, const std::vector<CoverageMethod>& methods) {
  check_basic(config);
  const Truth truth = truth_of(config);
  for (const EstimatorSpec& raw : config.estimators) {
    check_estimator(resolve(raw, config, truth), config.n, config.epsilon);
  }
  for (CoverageMethod m : methods) check_coverage(config, m, truth);
}

std::vector<QuantileCurve> deviation_quantiles(const SimulationConfig& config) {
  if (config.estimators.empty()) throw ParameterError("simulation: needs at least one estimator");
  validate_config(config);
  const Truth truth = truth_of(config);
  std::vector<EstimatorSpec> specs;
  for (const EstimatorSpec& raw : config.estimators) specs.push_back(resolve(raw, config, truth));

  const auto per_rep = run_replications<std::vector<double>>(config, [&](const Sample& sample) {
    std::vector<double> dev;
    dev.reserve(specs.size());
    for (const EstimatorSpec& spec : specs) dev.push_back(std::fabs(run_estimator(spec, sample, config.epsilon) - truth.m));
    return dev;
  });

  std::vector<QuantileCurve> curves;
  const double R = static_cast<double>(config.reps);
  for (std::size_t e = 0; e < specs.size(); ++e) {
    QuantileCurve curve;
    curve.estimator = std::string(to_string(specs[e].kind));
    curve.deviations.reserve(per_rep.size());
    for (const auto& dev : per_rep) curve.deviations.push_back(dev[e]);
    std::sort(curve.deviations.begin(), curve.deviations.end());
    for (long i = 1; i <= config.reps; ++i) curve.levels.push_back(static_cast<double>(i) / R);
    curves.push_back(std::move(curve));
  }
  return curves;
}

double quantile_at(const QuantileCurve& curve, double p) {
  if (curve.deviations.empty()) throw ParameterError("quantile_at: empty curve");
  if (!(p > 0.0 && p <= 1.0)) throw ParameterError("quantile_at: level must lie in (0, 1]");
  const auto R = static_cast<long>(curve.deviations.size());
  long k = static_cast<long>(std::ceil(p * static_cast<double>(R) - 1e-9));
  k = std::clamp(k, 1L, R);
  return curve.deviations[static_cast<std::size_t>(k - 1)];
}

double quantile_stderr(const QuantileCurve& curve, double p) {
  if (curve.deviations.empty()) throw ParameterError("quantile_stderr: empty curve");
  const auto R = static_cast<long>(curve.deviations.size());
  const double Rd = static_cast<double>(R);
  const long k = std::clamp(static_cast<long>(std::ceil(p * Rd - 1e-9)), 1L, R);
  const long spread = std::max(1L, static_cast<long>(std::ceil(std::sqrt(Rd * p * (1.0 - p)))));
  const long lo = std::max(1L, k - spread);
  const long hi = std::min(R, k + spread);
  return 0.5 * (curve.deviations[static_cast<std::size_t>(hi - 1)] - curve.deviations[static_cast<std::size_t>(lo - 1)]);
}

CoverageReport coverage(const SimulationConfig& config, CoverageMethod method) {
  check_basic(config);
  const Truth truth = truth_of(config);
  check_coverage(config, method, truth);
  const EstimatorSpec spec = coverage_spec(config, method, truth);
  const double eps = config.epsilon;
  const long n = config.n;

  const auto hits = run_replications<char>(config, [&](const Sample& sample) -> char {
    switch (method) {
      case CoverageMethod::KnownVariance:
      case CoverageMethod::EpsFree: {
        const MeanEstimate est = estimate_mean_known_variance(
            sample, truth.v, eps, method == CoverageMethod::EpsFree ? AlphaMode::EpsFree : AlphaMode::EpsDependent,
            spec.psi);
        return std::fabs(est.theta_hat - truth.m) <= *est.halfwidth;
      }
      case CoverageMethod::Lepski: {
        const AdaptiveResult res = adaptive_estimate(sample, eps, *spec.grid, spec.psi);
        return std::fabs(res.theta_tilde - truth.m) <= adaptive_halfwidth(truth.v, *spec.grid, eps, n);
      }
      case CoverageMethod::Kurtosis: {
        const KurtosisMeanResult res = estimate_mean_kurtosis(sample, spec.kappa_max, eps);
        return std::fabs(res.mean.theta_hat - truth.m) <= *res.mean.halfwidth;
      }
      case CoverageMethod::Variance: {
        const VarianceEstimate res = solve_variance(sample, *spec.kappa_max, eps);
        return !std::isfinite(res.zeta) || std::fabs(std::log(res.v_hat / truth.v)) <= res.zeta;
      }
      case CoverageMethod::MeanChebyshev: {
        BoundQuery q;
        q.n = n;
        q.v = truth.v;
        q.epsilon = eps;
        return std::fabs(empirical_mean(sample.values()) - truth.m) <= chebyshev_halfwidth(q);
      }
    }
    return 0;
  });

  CoverageReport report;
  report.method = std::string(to_string(method));
  report.reps = config.reps;
  for (char h : hits) report.hits += h ? 1 : 0;
  report.coverage = static_cast<double>(report.hits) / static_cast<double>(report.reps);
  report.target = 1.0 - 2.0 * eps;
  report.mc_stderr = std::sqrt(report.coverage * (1.0 - report.coverage) / static_cast<double>(report.reps));
  return report;
}

unsigned threads_from_environment() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* text = std::getenv("CATONI_THREADS");
  if (text == nullptr || *text == '\0') return hw;
  unsigned value = 0;
  const char* end = text + std::char_traits<char>::length(text);
  const auto [ptr, ec] = std::from_chars(text, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParameterError(std::string("CATONI_THREADS must be a non-negative integer, got '") + text + "'");
  }
  return value == 0 ? hw : value;
}

void write_quantile_csv(std::ostream& out, const std::vector<QuantileCurve>& curves) {
  out << "estimator,level,deviation\n";
  for (const QuantileCurve& c : curves) {
    for (std::size_t i = 0; i < c.deviations.size(); ++i) {
      out << c.estimator << ',' << format_double(c.levels[i]) << ',' << format_double(c.deviations[i]) << '\n';
    }
  }
}

void write_coverage_csv(std::ostream& out, const std::vector<CoverageReport>& reports) {
  out << "method,reps,hits,coverage,target\n";
  for (const CoverageReport& r : reports) {
    out << r.method << ',' << r.reps << ',' << r.hits << ',' << format_double(r.coverage) << ','
        << format_double(r.target) << '\n';
  }
}

}  // namespace catoni
