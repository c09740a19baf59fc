#ifndef CATONI_DISTRIBUTIONS_HPP
#define CATONI_DISTRIBUTIONS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "catoni/sample.hpp"

namespace catoni {

struct MixtureComponent {
  double weight;
  double mean;
  double sd;
};

/// Finite mixture of Gaussians sum_i w_i N(m_i, sd_i^2).
struct MixtureSpec {
  std::vector<MixtureComponent> components;

  /// Throws ParameterError unless non-empty, weights > 0, sd >= 0, all finite,
  /// and the weights sum to 1 within weight_tolerance.
  void validate(double weight_tolerance = 1e-12) const;
};

/// Parses "w:mean:sd,w:mean:sd,..."; weights must sum to 1 within 1e-9.
MixtureSpec parse_mixture_spec(std::string_view text);

struct DiscreteAtom {
  double value;
  double prob;
};

struct DiscreteSpec {
  std::vector<DiscreteAtom> atoms;

  /// Throws ParameterError unless non-empty, probabilities >= 0, all finite,
  /// and the probabilities sum to 1 within 1e-12.
  void validate() const;
};

using Source = std::variant<MixtureSpec, DiscreteSpec>;

struct Moments {
  double m = 0.0;
  double v = 0.0;
  std::optional<double> kappa;  // absent when v = 0
};

Moments mixture_moments(const MixtureSpec& spec);
Moments discrete_moments(const DiscreteSpec& spec);
Moments source_moments(const Source& source);

/// Draw i picks its component (or atom) by inverse CDF on the cumulative
/// weights with uniform_at(seed, i, 0) and its Gaussian value as
/// mean + sd Phi^{-1}(uniform_at(seed, i, 1)).
Sample sample_mixture(const MixtureSpec& spec, long n, std::uint64_t seed);
Sample sample_discrete(const DiscreteSpec& spec, long n, std::uint64_t seed);
Sample sample_source(const Source& source, long n, std::uint64_t seed);

/// Atoms -n eta, 0, n eta with P(+-n eta) = v / (2 n^2 eta^2): mean 0, variance v.
DiscreteSpec three_point_spec(double v, double eta, long n);

/// f_q(x) = (1 - 2q + 2q x^4) / (1 - 2q + 2q x^2)^2, the kurtosis of the
/// four-point law with outer/inner ratio x. Increasing from 1 at x = 1
/// towards 1/(2q).
double four_point_kurtosis(double x, double q);

/// Atoms -+n eta with mass q and -+xi with mass 1/2 - q, where x = n eta / xi
/// solves f_q(x) = kappa and xi = sqrt(v / (1 - 2q + 2q x^2)): mean 0,
/// variance v, kurtosis kappa. Needs 1 <= kappa < 1/(2q).
DiscreteSpec four_point_spec(double v, double kappa, double q, long n);

/// Ratio x = n eta / xi used by four_point_spec.
double four_point_ratio(double kappa, double q);

/// q = (eps / (n (1 - chi))) (1 - 4 eps / (n (1 - chi)))^{-(n-1)}, the mass
/// that makes the four-point law a worst case at confidence eps.
double worst_case_q(long n, double epsilon, double chi);

/// The two choices of chi used for it: (n eps)^{1/4} / 2 and 1/2.
std::array<double, 2> worst_case_chi_choices(long n, double epsilon);

}  // namespace catoni

#endif  // CATONI_DISTRIBUTIONS_HPP
