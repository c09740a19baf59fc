#ifndef CATONI_SRC_MINIMIZE_HPP
#define CATONI_SRC_MINIMIZE_HPP

#include <algorithm>
#include <cmath>
#include <limits>

namespace catoni::detail {

// Minimizer of f on [lo, hi]: a uniform scan of `scan` cells locates the best
// cell, then golden section refines between its neighbours. Non-finite
// values of f count as +infinity.
template <class F>
double scan_golden_minimize(F&& f, double lo, double hi, int scan = 400) {
  auto value = [&](double u) {
    const double y = f(u);
    return std::isfinite(y) ? y : std::numeric_limits<double>::infinity();
  };
  int best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= scan; ++i) {
    const double y = value(lo + (hi - lo) * i / scan);
    if (y < best_value) {
      best_value = y;
      best = i;
    }
  }
  double a = lo + (hi - lo) * std::max(best - 1, 0) / scan;
  double b = lo + (hi - lo) * std::min(best + 1, scan) / scan;
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double fc = value(c);
  double fd = value(d);
  for (int it = 0; it < 200 && b - a > 1e-13 * (1.0 + std::fabs(a)); ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = value(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = value(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace catoni::detail

#endif  // CATONI_SRC_MINIMIZE_HPP
