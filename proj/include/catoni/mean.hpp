#ifndef CATONI_MEAN_HPP
#define CATONI_MEAN_HPP

#include <optional>
#include <string_view>

#include "catoni/influence.hpp"
#include "catoni/sample.hpp"

namespace catoni {

/// How the scale parameter and the reported half-width were obtained.
enum class MeanMethod { KnownVariance, EpsFree, PlugIn, Lepski, Kurtosis };

std::string_view to_string(MeanMethod method);

/// Tuning of alpha for a known variance bound: optimized for one confidence
/// level, or independent of it.
enum class AlphaMode { EpsDependent, EpsFree };

struct MeanEstimate {
  double theta_hat = 0.0;
  double alpha = 0.0;
  InfluenceKind kind = InfluenceKind::Narrow;
  /// Observable deviation bound at level 1 - 2 epsilon, when the method has one.
  std::optional<double> halfwidth;
  int iterations = 0;
  /// True when the fixed-point iteration was abandoned for bisection.
  bool used_bisection = false;
  MeanMethod method = MeanMethod::KnownVariance;
};

/// Relative stopping tolerance; the absolute one is tolerance * (1 + max |Y_i|).
inline constexpr double kDefaultMeanTolerance = 1e-10;

/// r(theta) = (1 / (alpha n)) sum psi(alpha (Y_i - theta)), non-increasing in
/// theta. Positive and negative terms are accumulated separately so that
/// balanced saturated terms cancel exactly.
double criterion(const Sample& sample, double alpha, InfluenceKind kind, double theta);

/// Root of r. Runs theta <- theta + r(theta) from the empirical mean and falls
/// back to bisection when the residual stops halving. For the narrow
/// influence function, a flat zero set is resolved to its midpoint.
MeanEstimate solve_mean(const Sample& sample, double alpha, InfluenceKind kind,
                        double tolerance = kDefaultMeanTolerance);

/// Scale parameter for a variance bound v at confidence 1 - 2 epsilon.
/// Throws InfeasibleError when n is too small for the chosen mode.
double alpha_known_variance(long n, double v, double epsilon, AlphaMode mode);

/// Deviation bound matching alpha_known_variance.
double halfwidth_known_variance(long n, double v, double epsilon, AlphaMode mode);

/// Smallest n accepted by alpha_known_variance.
long min_sample_size_known_variance(double epsilon, AlphaMode mode);

MeanEstimate estimate_mean_known_variance(const Sample& sample, double v, double epsilon,
                                          AlphaMode mode = AlphaMode::EpsDependent,
                                          InfluenceKind kind = InfluenceKind::Narrow,
                                          double tolerance = kDefaultMeanTolerance);

/// Known-variance recipe with v replaced by the unbiased variance estimate.
/// No half-width: the substitution has no proved guarantee.
MeanEstimate estimate_mean_plugin(const Sample& sample, double epsilon,
                                  InfluenceKind kind = InfluenceKind::Narrow,
                                  double tolerance = kDefaultMeanTolerance);

}  // namespace catoni

#endif  // CATONI_MEAN_HPP
