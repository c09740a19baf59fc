#ifndef CATONI_CSV_HPP
#define CATONI_CSV_HPP

#include <optional>
#include <string>

namespace catoni {

/// 17 significant digits (round-trips every double); "inf", "-inf", "nan"
/// for non-finite values.
std::string format_double(double x);

/// Empty string when absent.
std::string format_optional(const std::optional<double>& x);

}  // namespace catoni

#endif  // CATONI_CSV_HPP
