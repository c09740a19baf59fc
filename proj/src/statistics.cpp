#include "catoni/statistics.hpp"

#include <algorithm>
#include <vector>

#include "catoni/errors.hpp"

namespace catoni {

double empirical_mean(std::span<const double> values) {
  if (values.empty()) throw DegenerateDataError("mean of an empty sample");
  double sum = 0.0;
  for (double y : values) sum += y;
  return sum / static_cast<double>(values.size());
}

double empirical_median(std::span<const double> values) {
  if (values.empty()) throw DegenerateDataError("median of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  const std::size_t n = sorted.size();
  const auto mid = sorted.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(sorted.begin(), mid, sorted.end());
  const double upper = *mid;
  if (n % 2 == 1) return upper;
  const double lower = *std::max_element(sorted.begin(), mid);
  return 0.5 * (lower + upper);
}

double unbiased_variance(std::span<const double> values) {
  if (values.size() < 2) {
    throw DegenerateDataError("unbiased variance needs at least two observations");
  }
  const double mean = empirical_mean(values);
  double ss = 0.0;
  for (double y : values) {
    const double d = y - mean;
    ss += d * d;
  }
  return ss / static_cast<double>(values.size() - 1);
}

double pairwise_variance(std::span<const double> values) {
  if (values.size() < 2) {
    throw DegenerateDataError("pairwise variance needs at least two observations");
  }
  const std::size_t n = values.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = values[i] - values[j];
      sum += d * d;
    }
  }
  return sum / (static_cast<double>(n) * static_cast<double>(n - 1));
}

}  // namespace catoni
