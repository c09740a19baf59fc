#include "catoni/sample.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "catoni/errors.hpp"

namespace catoni {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw DegenerateDataError("sample is empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw DomainError("sample entry " + std::to_string(i) + " is not finite");
    }
  }
  const auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
  min_ = *lo;
  max_ = *hi;
}

double Sample::max_abs() const noexcept { return std::max(std::fabs(min_), std::fabs(max_)); }

}  // namespace catoni
