#ifndef CATONI_KURTOSIS_MEAN_HPP
#define CATONI_KURTOSIS_MEAN_HPP

#include <optional>
#include <string_view>

#include "catoni/mean.hpp"
#include "catoni/sample.hpp"
#include "catoni/variance.hpp"

namespace catoni {

/// Where the log-accuracy zeta of the variance estimate comes from.
enum class ZetaSource {
  BlockParams,  // zeta of the block variance parameters (Tight, else Simple) at a fixed p
  Corollary     // the closed form zeta_bound_corollary
};

/// How the perturbation width x is chosen for a given zeta.
enum class WidthChoice {
  Approximate,  // [(2(a+1)/3) log(1/eps2)]^{-1/3} sinh(zeta/2)^{-2/3}
  Exact         // minimizes eta numerically
};

inline constexpr std::string_view kWidthCondition = "((a+1)/3) x^2 sinh(zeta/2)^2 < 1";
inline constexpr std::string_view kEtaCondition = "eta < 1";

/// One evaluation of the interval recipe at a given zeta and eps2.
struct KurtosisStep {
  double x = 0.0;
  double eta = 0.0;
  double gamma = 0.0;  // eta / (1 - eta)
  double c = 0.0;      // alpha^2 v
  bool feasible = false;
};

/// x from the width rule (or the supplied x), then
/// eta = 2 cosh^2(zeta/2) (log(1 + 1/x) + log(1/eps2)) / (n (1 - ((a+1)/3) x^2 sinh^2(zeta/2))),
/// gamma = eta / (1 - eta), c = 2 (log(1+1/x) + log(1/eps2)) / (n (1 - ...) (1 + gamma)).
/// Does not throw on infeasibility.
KurtosisStep kurtosis_step(long n, double zeta, double epsilon2, WidthChoice width = WidthChoice::Approximate,
                           std::optional<double> x = std::nullopt);

struct KurtosisMeanParams {
  long n = 0;
  double epsilon = 0.0;
  double kappa_max = 0.0;
  double y_split = 0.5;  // eps1 / eps
  double x = 0.0;
  double zeta = 0.0;
  double eta = 0.0;
  double gamma = 0.0;
  double a = 0.0;
  double c = 0.0;
  bool feasible = false;
  /// zeta fell below 1e-8 and the known-variance recipe was used.
  bool known_variance_path = false;
  int iterations = 0;
  ZetaSource zeta_source = ZetaSource::BlockParams;
  /// Block size and variance parameters at eps1 (block source, or the block
  /// size used by the variance solver for the corollary source).
  long p = 0;
  std::optional<VarianceParams> variance;

  double epsilon1() const { return y_split * epsilon; }
  double epsilon2() const { return (1.0 - y_split) * epsilon; }
};

struct KurtosisOptions {
  ZetaSource zeta_source = ZetaSource::BlockParams;
  WidthChoice width = WidthChoice::Approximate;
  /// Block size; defaults to optimal_block_size(n, kappa_max, eps/2).
  std::optional<long> p;
  /// Absent: Tight, falling back to Simple.
  std::optional<XiMode> xi_mode;
  InfluenceKind variance_kind = InfluenceKind::Narrow;
  double tolerance = kDefaultMeanTolerance;
};

/// Balances eps1 = y eps and eps2 = (1 - y) eps by iterating y = 1/(1 + x)
/// from y = 1/2 until x changes by at most 1e-9 relatively. Throws
/// InfeasibleError when the variance is too uncertain for the recipe and
/// NumericalError after 50 iterations without convergence.
KurtosisMeanParams plugin_params(long n, double epsilon, double kappa_max, const KurtosisOptions& options = {});

/// Default kurtosis bound for n >= 1000: 6 n / 1000. Throws ParameterError below.
double default_kappa_max(long n);

struct KurtosisMeanResult {
  MeanEstimate mean;
  VarianceEstimate variance;
  KurtosisMeanParams params;
};

/// Mean estimate with estimated variance: v_hat from the block estimator at
/// eps1, alpha = sqrt(c / v_hat), narrow influence, and half-width
/// sqrt(eta v_hat / (1 - eta)) exp(zeta / 2) at confidence 1 - 2 eps.
KurtosisMeanResult estimate_mean_kurtosis(const Sample& sample, std::optional<double> kappa_max, double epsilon,
                                          const KurtosisOptions& options = {});

enum class KurtosisHalfwidth {
  Observable,  // sqrt(eta v_hat / (1 - eta)) exp(zeta/2)
  Inner,       // sqrt(eta v / (1 - eta))
  Outer        // sqrt(eta v / (1 - eta)) exp(zeta)
};

double halfwidth_kurtosis(const KurtosisMeanParams& params, double v_or_vhat,
                          KurtosisHalfwidth which = KurtosisHalfwidth::Observable);

}  // namespace catoni

#endif  // CATONI_KURTOSIS_MEAN_HPP
