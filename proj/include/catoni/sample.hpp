#ifndef CATONI_SAMPLE_HPP
#define CATONI_SAMPLE_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace catoni {

/// A non-empty list of finite observations. Validated on construction and
/// immutable afterwards, so every estimator can rely on n >= 1 and finiteness.
class Sample {
 public:
  /// Throws DegenerateDataError when empty, DomainError on a non-finite entry.
  explicit Sample(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  double min() const noexcept { return min_; }
  double max() const noexcept { return max_; }
  /// max_i |Y_i|
  double max_abs() const noexcept;

 private:
  std::vector<double> values_;
  double min_;
  double max_;
};

}  // namespace catoni

#endif  // CATONI_SAMPLE_HPP
