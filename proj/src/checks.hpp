#ifndef CATONI_SRC_CHECKS_HPP
#define CATONI_SRC_CHECKS_HPP

#include <cmath>
#include <sstream>
#include <string>

#include "catoni/errors.hpp"

namespace catoni::detail {

inline std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

inline void require_epsilon(double epsilon, const char* where) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw ParameterError(std::string(where) + ": epsilon must lie in (0, 1/2), got " + fmt(epsilon));
  }
}

inline void require_positive(double value, const char* name, const char* where) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ParameterError(std::string(where) + ": " + name + " must be positive and finite, got " +
                         fmt(value));
  }
}

}  // namespace catoni::detail

#endif  // CATONI_SRC_CHECKS_HPP
