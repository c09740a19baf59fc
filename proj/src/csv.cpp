#include "catoni/csv.hpp"

#include <cmath>
#include <cstdio>

namespace catoni {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0.0 ? "inf" : "-inf";
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf, static_cast<std::size_t>(len));
}

std::string format_optional(const std::optional<double>& x) { return x ? format_double(*x) : std::string(); }

}  // namespace catoni
