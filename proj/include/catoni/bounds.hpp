#ifndef CATONI_BOUNDS_HPP
#define CATONI_BOUNDS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "catoni/lepski.hpp"

namespace catoni {

/// Inputs shared by the closed-form deviation bounds, all at confidence
/// 1 - 2 epsilon (two-sided).
struct BoundQuery {
  long n = 1;
  double v = 1.0;
  std::optional<double> kappa;
  double epsilon = 0.05;
  /// Split of epsilon in the kurtosis-refined bound; absent means the default rule.
  std::optional<double> lambda;
  /// Minimize the kurtosis-refined bound over lambda instead of the default rule.
  bool optimize_lambda = false;
  /// Needed by the "adaptive" curve.
  std::optional<GeometricGrid> grid;
};

/// sqrt(v / (2 eps n)).
double chebyshev_halfwidth(const BoundQuery& q);

/// min{1/2, 2^{7/4} (n eps / kappa)^{1/4} sqrt(log(kappa / (2 n eps^5)))}, with
/// 1e-6 when the log is not positive.
double default_lambda(long n, double kappa, double epsilon);

/// Empirical-mean bound using the kurtosis:
/// sqrt(v) [sqrt(2L/n) + sqrt(kappa) L/(3n)
///          + (kappa / (2 (1-lambda) n^3 eps))^{1/4} (1 + 3 (n-1) kappa L^2 / (4^3 (1+sqrt 2)^4 n^2))^{1/4}],
/// L = log(1 / (lambda eps)).
double kurtosis_halfwidth(const BoundQuery& q);

/// ((3(n-1) + kappa) / (2 n eps))^{1/4} sqrt(v/n).
double fourth_moment_halfwidth(const BoundQuery& q);

/// Smallest of the empirical-mean bounds that apply.
double empirical_mean_best_halfwidth(const BoundQuery& q);

/// sqrt(v/n) Phi^{-1}(1 - eps): no estimator does better on Gaussian samples.
double gaussian_halfwidth(const BoundQuery& q);

/// sqrt(v / (2 n eps)) (1 - 2 e eps / n)^{(n-1)/2}: deviation of the empirical
/// mean reached with probability at least 2 eps for some law of variance v.
/// Needs eps <= 1/(2e).
double lower_bound_plain(const BoundQuery& q);

struct KurtosisLowerTerms {
  double a;  // ((kappa-1)(1-8eps)/(4 n eps))^{1/4} sqrt(v/n)
  double b;  // (((kappa-1)/(2 n eps))(1 - (n eps/16)^{1/4} - 4 eps))^{1/4} sqrt(v/n) - sqrt(log(16/(n eps)) v / (2n))
};

/// Both terms; a term whose fourth-root argument is negative is -infinity.
KurtosisLowerTerms lower_bound_kurtosis_terms(const BoundQuery& q);

/// Worst-case deviation of the empirical mean among laws with kurtosis kappa:
/// the larger of the two terms. Needs 1/eps >= n >= 16.
double lower_bound_kurtosis(const BoundQuery& q);

struct BoundPoint {
  double epsilon;
  double halfwidth;  // +infinity where the bound does not apply
};

struct BoundCurve {
  std::string bound_name;
  std::vector<BoundPoint> points;
};

/// chebyshev, kurtosis, fourth-moment, empirical-best, gaussian, lower-plain,
/// lower-kurtosis, catoni, catoni-eps-free, adaptive, kurtosis-mean.
const std::vector<std::string>& bound_names();

/// Names that apply to q (kappa- and grid-dependent ones only when given).
std::vector<std::string> applicable_bounds(const BoundQuery& q);

/// Tabulates one bound over a strictly increasing epsilon grid in (0, 1/2).
/// Points where an upper bound is infeasible are +infinity; points outside
/// the range of a lower bound are NaN.
BoundCurve bound_curve(const BoundQuery& q, std::string_view bound_name, const std::vector<double>& epsilons);

/// count points from start to stop, equally spaced in log scale, returned in
/// increasing order.
std::vector<double> log_spaced_grid(double start, double stop, int count);

}  // namespace catoni

#endif  // CATONI_BOUNDS_HPP
