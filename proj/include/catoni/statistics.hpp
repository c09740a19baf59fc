#ifndef CATONI_STATISTICS_HPP
#define CATONI_STATISTICS_HPP

#include <span>

namespace catoni {

/// (1/n) sum Y_i. Throws DegenerateDataError on an empty range.
double empirical_mean(std::span<const double> values);

/// Midpoint of the order statistics; the average of the two central values
/// when n is even.
double empirical_median(std::span<const double> values);

/// (1/(n-1)) sum (Y_i - M)^2, two-pass. Needs n >= 2.
double unbiased_variance(std::span<const double> values);

/// (1/(n(n-1))) sum_{i<j} (Y_i - Y_j)^2, the pairwise form of the same
/// quantity. O(n^2); used to cross-check the block variance statistics.
double pairwise_variance(std::span<const double> values);

}  // namespace catoni

#endif  // CATONI_STATISTICS_HPP
