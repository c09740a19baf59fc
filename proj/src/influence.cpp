#include "catoni/influence.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "catoni/errors.hpp"

namespace catoni {

namespace {

void require_finite(double x, const char* fn) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(fn) + ": argument must be finite");
  }
}

// Above this magnitude x * x overflows, so the envelope is rewritten as
// log(x^2 / 2) + log1p(2 (1 + x) / x^2).
constexpr double kLargeArgument = 1e150;

// log(1 + x + x^2/2) for x >= 0.
double upper_envelope_nonneg(double x) {
  if (x > kLargeArgument) {
    return 2.0 * std::log(x) - std::numbers::ln2 + std::log1p(2.0 / x + 2.0 / (x * x));
  }
  return std::log1p(x + 0.5 * x * x);
}

double wide_nonneg(double x) { return upper_envelope_nonneg(x); }

// -log(1 - x + x^2/2) on [0, 1], log 2 above.
double narrow_nonneg(double x) {
  if (x >= 1.0) return std::numbers::ln2;
  return -std::log1p(-x + 0.5 * x * x);
}

// x - log(1 + x + x^2/2) for x >= 0.
double g_nonneg(double x) {
  if (x < 1e-2) {
    // Taylor expansion; the direct difference cancels badly near zero.
    const double x2 = x * x;
    const double x3 = x2 * x;
    return x3 * (1.0 / 6.0 +
                 x * (-1.0 / 8.0 +
                      x * (1.0 / 20.0 +
                           x2 * (-1.0 / 56.0 + x * (1.0 / 64.0 + x * (-1.0 / 144.0))))));
  }
  return x - upper_envelope_nonneg(x);
}

ChiConstants compute_chi_constants() {
  const double sqrt2 = std::numbers::sqrt2;
  const double root = std::sqrt(4.0 * sqrt2 - 5.0);
  ChiConstants c{};
  c.x1 = 1.0 - root;
  c.y1 = -std::log(2.0 * (sqrt2 - 1.0));
  c.p1 = root / (2.0 * (sqrt2 - 1.0));
  c.chi_sup = c.y1 + 2.0 * c.p1 * c.p1;
  c.a = 3.0 * std::exp(c.chi_sup) / (4.0 * std::log(4.0));
  return c;
}

}  // namespace

std::string_view to_string(InfluenceKind kind) {
  return kind == InfluenceKind::Narrow ? "narrow" : "wide";
}

InfluenceKind parse_influence_kind(std::string_view name) {
  if (name == "narrow") return InfluenceKind::Narrow;
  if (name == "wide") return InfluenceKind::Wide;
  throw ParameterError("unknown influence function '" + std::string(name) +
                       "' (expected narrow or wide)");
}

double psi(InfluenceKind kind, double x) {
  require_finite(x, "psi");
  const double ax = std::fabs(x);
  const double value = kind == InfluenceKind::Wide ? wide_nonneg(ax) : narrow_nonneg(ax);
  return std::signbit(x) ? -value : value;
}

double log_upper_envelope(double x) {
  if (x >= 0.0) return upper_envelope_nonneg(x);
  const double ax = -x;
  if (ax > kLargeArgument) {
    return 2.0 * std::log(ax) - std::numbers::ln2 + std::log1p(2.0 / (ax * ax) - 2.0 / ax);
  }
  return std::log1p(x + 0.5 * x * x);
}

const ChiConstants& chi_constants() {
  static const ChiConstants constants = compute_chi_constants();
  return constants;
}

double chi(double x) {
  require_finite(x, "chi");
  const ChiConstants& c = chi_constants();
  if (x <= c.x1) return psi(InfluenceKind::Narrow, x);
  const double top = c.x1 + 4.0 * c.p1;
  if (x <= top) {
    const double d = x - c.x1;
    return c.y1 + c.p1 * d - 0.125 * d * d;
  }
  return c.chi_sup;
}

double g_remainder(double x) {
  require_finite(x, "g_remainder");
  const double value = g_nonneg(std::fabs(x));
  return std::signbit(x) ? -value : value;
}

}  // namespace catoni
