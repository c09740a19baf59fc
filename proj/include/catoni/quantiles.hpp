#ifndef CATONI_QUANTILES_HPP
#define CATONI_QUANTILES_HPP

namespace catoni {

/// Standard normal distribution function, 0.5 erfc(-x / sqrt 2).
double std_normal_cdf(double x);

/// Phi^{-1}(p): rational approximation (Wichura's AS 241) polished by one
/// Halley step on the lower tail. Throws DomainError unless 0 < p < 1.
double std_normal_quantile(double p);

/// Quantile of the chi-square law with dof degrees of freedom: Wilson-Hilferty
/// start, then safeguarded Newton on the regularized incomplete gamma.
double chi_square_quantile(double p, long dof);

}  // namespace catoni

#endif  // CATONI_QUANTILES_HPP
