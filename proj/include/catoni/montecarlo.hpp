#ifndef CATONI_MONTECARLO_HPP
#define CATONI_MONTECARLO_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "catoni/distributions.hpp"
#include "catoni/influence.hpp"
#include "catoni/lepski.hpp"

namespace catoni {

enum class EstimatorKind { EmpiricalMean, EmpiricalMedian, KnownVariance, EpsFree, PlugIn, Lepski, Kurtosis };

/// "mean", "median", "known-v", "eps-free", "plugin", "lepski", "kurtosis".
std::string_view to_string(EstimatorKind kind);
EstimatorKind parse_estimator_kind(std::string_view name);

struct EstimatorSpec {
  EstimatorKind kind = EstimatorKind::EmpiricalMean;
  /// Variance bound for known-v / eps-free; defaults to the true variance.
  std::optional<double> v;
  /// Grid for lepski; defaults to V = true variance, rho = 1.05, s = 95.
  std::optional<GeometricGrid> grid;
  /// Kurtosis bound for kurtosis; defaults to 6n/1000.
  std::optional<double> kappa_max;
  InfluenceKind psi = InfluenceKind::Narrow;
};

enum class CoverageMethod {
  KnownVariance,   // theta_hat +- halfwidth with the true variance
  EpsFree,         // same with the eps-free tuning
  Lepski,          // theta_tilde +- the adaptive bound at the true variance
  Kurtosis,        // theta_hat +- the observable half-width
  Variance,        // |log v_hat - log v| <= zeta at eps1 = epsilon
  MeanChebyshev    // empirical mean +- sqrt(v / (2 eps n))
};

/// "known-v", "eps-free", "lepski", "kurtosis", "variance", "mean-chebyshev".
std::string_view to_string(CoverageMethod method);
CoverageMethod parse_coverage_method(std::string_view name);

struct SimulationConfig {
  Source source;
  long n = 100;
  long reps = 1000;
  std::uint64_t seed = 0;
  double epsilon = 0.05;
  std::vector<EstimatorSpec> estimators;
  /// Worker threads; 0 means the hardware concurrency.
  unsigned threads = 1;
  /// Grid, kurtosis bound and influence function used by coverage methods.
  std::optional<GeometricGrid> grid;
  std::optional<double> kappa_max;
  InfluenceKind psi = InfluenceKind::Narrow;
};

/// Seed of replication r.
std::uint64_t replication_seed(std::uint64_t seed, long r);

struct QuantileCurve {
  std::string estimator;
  std::vector<double> levels;      // i / reps, i = 1..reps
  std::vector<double> deviations;  // sorted |estimate - m|
};

/// Deviation at the smallest level >= p, i.e. the ceil(p R)-th order statistic.
double quantile_at(const QuantileCurve& curve, double p);

/// Monte Carlo standard error of quantile_at, from the spread of the order
/// statistics ceil(pR) +- sqrt(R p (1 - p)).
double quantile_stderr(const QuantileCurve& curve, double p);

/// Runs every estimator on each replication and sorts the deviations per
/// estimator. Output is identical for any thread count. Preconditions are
/// checked before the first replication; a failure inside a replication
/// aborts the run naming the lowest failing replication.
std::vector<QuantileCurve> deviation_quantiles(const SimulationConfig& config);

struct CoverageReport {
  std::string method;
  long hits = 0;
  long reps = 0;
  double coverage = 0.0;
  double target = 0.0;  // 1 - 2 epsilon
  double mc_stderr = 0.0;
};

CoverageReport coverage(const SimulationConfig& config, CoverageMethod method);

/// Checks every estimator and coverage precondition at (n, epsilon) without
/// sampling; throws the error the first replication would hit.
void validate_config(const SimulationConfig& config, const std::vector<CoverageMethod>& methods = {});

/// Thread count from CATONI_THREADS (0 or unset: hardware concurrency).
unsigned threads_from_environment();

void write_quantile_csv(std::ostream& out, const std::vector<QuantileCurve>& curves);
void write_coverage_csv(std::ostream& out, const std::vector<CoverageReport>& reports);

}  // namespace catoni

#endif  // CATONI_MONTECARLO_HPP
