#include "catoni/quantiles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "catoni/errors.hpp"
#include "checks.hpp"

namespace catoni {

namespace {

void require_probability(double p, const char* where) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError(std::string(where) + ": probability must lie in (0, 1), got " + detail::fmt(p));
  }
}

// AS 241 (PPND16), accurate to about 1e-16.
double wichura(double p) {
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((r * 2509.0809287301226727 + 33430.575583588128105) * r + 67265.770927008700853) * r +
                45921.953931549871457) * r + 13731.693765509461125) * r + 1971.5909503065514427) * r +
             133.14166789178437745) * r + 3.387132872796366608) /
           (((((((r * 5226.495278852545925 + 28729.085735721942674) * r + 39307.89580009271061) * r +
                21213.794301586595867) * r + 5394.1960214247511077) * r + 687.1870074920579083) * r +
             42.313330701600911252) * r + 1.0);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    value = (((((((r * 7.7454501427834140764e-4 + 0.0227238449892691845833) * r + 0.24178072517745061177) * r +
                 1.27045825245236838258) * r + 3.64784832476320460504) * r + 5.7694972214606914055) * r +
              4.6303378461565452959) * r + 1.42343711074968357734) /
            (((((((r * 1.05075007164441684324e-9 + 5.475938084995344946e-4) * r + 0.0151986665636164571966) * r +
                 0.14810397642748007459) * r + 0.68976733498510000455) * r + 1.6763848301838038494) * r +
              2.05319162663775882187) * r + 1.0);
  } else {
    r -= 5.0;
    value = (((((((r * 2.01033439929228813265e-7 + 2.71155556874348757815e-5) * r + 0.0012426609473880784386) * r +
                 0.026532189526576123093) * r + 0.29656057182850489123) * r + 1.7848265399172913358) * r +
              5.4637849111641143699) * r + 6.6579046435011037772) /
            (((((((r * 2.04426310338993978564e-15 + 1.4215117583164458887e-7) * r + 1.8463183175100546818e-5) * r +
                 7.868691311456132591e-4) * r + 0.0148753612908506148525) * r + 0.13692988092273580531) * r +
              0.59983220655588793769) * r + 1.0);
  }
  return q < 0.0 ? -value : value;
}

// p <= 1/2, where both p and Phi(x) are represented with full relative accuracy.
double lower_quantile(double p) {
  double x = wichura(p);
  if (x == 0.0) return 0.0;
  const double e = std_normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

}  // namespace

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double std_normal_quantile(double p) {
  require_probability(p, "std_normal_quantile");
  if (p == 0.5) return 0.0;
  if (p > 0.5) return -lower_quantile(1.0 - p);
  return lower_quantile(p);
}

double chi_square_quantile(double p, long dof) {
  require_probability(p, "chi_square_quantile");
  if (dof < 1) throw DomainError("chi_square_quantile: dof must be >= 1, got " + std::to_string(dof));
  const double k = static_cast<double>(dof);
  const double half = 0.5 * k;
  auto F = [&](double x) { return boost::math::gamma_p(half, 0.5 * x); };
  auto dF = [&](double x) { return 0.5 * boost::math::gamma_p_derivative(half, 0.5 * x); };

  const double z = std_normal_quantile(p);
  const double h = 2.0 / (9.0 * k);
  double x = k * std::pow(1.0 - h + z * std::sqrt(h), 3.0);
  if (!(x > 0.0) || !std::isfinite(x)) {
    // Small-x behaviour F(x) ~ (x/2)^{k/2} / Gamma(k/2 + 1).
    x = 2.0 * std::pow(p * std::tgamma(half + 1.0), 1.0 / half);
  }

  double lo = 0.0;
  double hi = std::max(x, 1.0);
  while (F(hi) < p) {
    lo = hi;
    hi *= 2.0;
  }
  x = std::clamp(x, lo, hi);
  for (int it = 0; it < 200; ++it) {
    const double f = F(x) - p;
    if (f == 0.0) return x;
    if (f < 0.0) lo = x; else hi = x;
    const double d = dF(x);
    double next = d > 0.0 ? x - f / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - x) <= 1e-15 * x || hi - lo <= 1e-15 * hi) return next;
    x = next;
  }
  return x;
}

}  // namespace catoni
