#include "catoni/distributions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>
#include <type_traits>

#include "catoni/errors.hpp"
#include "catoni/quantiles.hpp"
#include "catoni/rng.hpp"
#include "checks.hpp"

namespace catoni {

namespace {

double parse_number(std::string_view text, std::string_view what) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParameterError("mixture spec: cannot read " + std::string(what) + " from '" + std::string(text) + "'");
  }
  return value;
}

template <class Weights>
std::size_t pick(const Weights& cumulative, double u) {
  for (std::size_t k = 0; k + 1 < cumulative.size(); ++k) {
    if (u < cumulative[k]) return k;
  }
  return cumulative.size() - 1;
}

void require_n(long n, const char* where) {
  if (n < 1) throw ParameterError(std::string(where) + ": n must be >= 1, got " + std::to_string(n));
}

}  // namespace

void MixtureSpec::validate(double weight_tolerance) const {
  if (components.empty()) throw ParameterError("mixture spec: needs at least one component");
  double total = 0.0;
  for (const auto& c : components) {
    if (!(c.weight > 0.0) || !std::isfinite(c.weight)) {
      throw ParameterError("mixture spec: weights must be positive, got " + detail::fmt(c.weight));
    }
    if (!std::isfinite(c.mean)) throw ParameterError("mixture spec: component means must be finite");
    if (!(c.sd >= 0.0) || !std::isfinite(c.sd)) {
      throw ParameterError("mixture spec: standard deviations must be finite and >= 0, got " + detail::fmt(c.sd));
    }
    total += c.weight;
  }
  if (std::fabs(total - 1.0) > weight_tolerance) {
    throw ParameterError("mixture spec: weights sum to " + detail::fmt(total) + ", not 1");
  }
}

MixtureSpec parse_mixture_spec(std::string_view text) {
  MixtureSpec spec;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string_view item = text.substr(start, comma - start);
    const std::size_t c1 = item.find(':');
    const std::size_t c2 = c1 == std::string_view::npos ? c1 : item.find(':', c1 + 1);
    if (c2 == std::string_view::npos || item.find(':', c2 + 1) != std::string_view::npos) {
      throw ParameterError("mixture spec: expected weight:mean:sd, got '" + std::string(item) + "'");
    }
    spec.components.push_back({parse_number(item.substr(0, c1), "a weight"),
                               parse_number(item.substr(c1 + 1, c2 - c1 - 1), "a mean"),
                               parse_number(item.substr(c2 + 1), "a standard deviation")});
    start = comma + 1;
  }
  spec.validate(1e-9);
  return spec;
}

void DiscreteSpec::validate() const {
  if (atoms.empty()) throw ParameterError("discrete spec: needs at least one atom");
  double total = 0.0;
  for (const auto& a : atoms) {
    if (!std::isfinite(a.value)) throw ParameterError("discrete spec: atom values must be finite");
    if (!(a.prob >= 0.0) || !std::isfinite(a.prob)) {
      throw ParameterError("discrete spec: probabilities must be >= 0, got " + detail::fmt(a.prob));
    }
    total += a.prob;
  }
  if (std::fabs(total - 1.0) > 1e-12) {
    throw ParameterError("discrete spec: probabilities sum to " + detail::fmt(total) + ", not 1");
  }
}

Moments mixture_moments(const MixtureSpec& spec) {
  spec.validate();
  Moments mo;
  for (const auto& c : spec.components) mo.m += c.weight * c.mean;
  double fourth = 0.0;
  for (const auto& c : spec.components) {
    const double d = c.mean - mo.m;
    const double s2 = c.sd * c.sd;
    mo.v += c.weight * (s2 + d * d);
    fourth += c.weight * (3.0 * s2 * s2 + 6.0 * s2 * d * d + d * d * d * d);
  }
  if (mo.v > 0.0) mo.kappa = fourth / (mo.v * mo.v);
  return mo;
}

Moments discrete_moments(const DiscreteSpec& spec) {
  spec.validate();
  Moments mo;
  for (const auto& a : spec.atoms) mo.m += a.prob * a.value;
  double fourth = 0.0;
  for (const auto& a : spec.atoms) {
    const double d2 = (a.value - mo.m) * (a.value - mo.m);
    mo.v += a.prob * d2;
    fourth += a.prob * d2 * d2;
  }
  if (mo.v > 0.0) mo.kappa = fourth / (mo.v * mo.v);
  return mo;
}

Moments source_moments(const Source& source) {
  return std::visit(
      [](const auto& spec) {
        if constexpr (std::is_same_v<std::decay_t<decltype(spec)>, MixtureSpec>) {
          return mixture_moments(spec);
        } else {
          return discrete_moments(spec);
        }
      },
      source);
}

Sample sample_mixture(const MixtureSpec& spec, long n, std::uint64_t seed) {
  spec.validate();
  require_n(n, "sample_mixture");
  std::vector<double> cumulative;
  double running = 0.0;
  for (const auto& c : spec.components) cumulative.push_back(running += c.weight);
  std::vector<double> values(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    const MixtureComponent& c = spec.components[pick(cumulative, uniform_at(seed, idx, 0))];
    values[static_cast<std::size_t>(i)] =
        c.sd == 0.0 ? c.mean : c.mean + c.sd * std_normal_quantile(uniform_at(seed, idx, 1));
  }
  return Sample(std::move(values));
}

Sample sample_discrete(const DiscreteSpec& spec, long n, std::uint64_t seed) {
  spec.validate();
  require_n(n, "sample_discrete");
  std::vector<double> cumulative;
  double running = 0.0;
  for (const auto& a : spec.atoms) cumulative.push_back(running += a.prob);
  std::vector<double> values(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    values[static_cast<std::size_t>(i)] =
        spec.atoms[pick(cumulative, uniform_at(seed, static_cast<std::uint64_t>(i), 0))].value;
  }
  return Sample(std::move(values));
}

Sample sample_source(const Source& source, long n, std::uint64_t seed) {
  if (const auto* mixture = std::get_if<MixtureSpec>(&source)) return sample_mixture(*mixture, n, seed);
  return sample_discrete(std::get<DiscreteSpec>(source), n, seed);
}

DiscreteSpec three_point_spec(double v, double eta, long n) {
  detail::require_positive(v, "v", "three_point_spec");
  detail::require_positive(eta, "eta", "three_point_spec");
  require_n(n, "three_point_spec");
  const double reach = static_cast<double>(n) * eta;
  const double outer = v / (reach * reach);
  if (!(outer <= 1.0)) {
    throw ParameterError("three_point_spec: v / (n eta)^2 = " + detail::fmt(outer) + " exceeds 1");
  }
  return DiscreteSpec{{{-reach, 0.5 * outer}, {0.0, 1.0 - outer}, {reach, 0.5 * outer}}};
}

double four_point_kurtosis(double x, double q) {
  const double base = 1.0 - 2.0 * q;
  const double x2 = x * x;
  const double den = base + 2.0 * q * x2;
  return (base + 2.0 * q * x2 * x2) / (den * den);
}

double four_point_ratio(double kappa, double q) {
  if (!(q > 0.0 && q < 0.5)) throw ParameterError("four_point_spec: q must lie in (0, 1/2), got " + detail::fmt(q));
  const double sup = 0.5 / q;
  if (!(kappa >= 1.0 && kappa < sup)) {
    throw ParameterError("four_point_spec: kappa = " + detail::fmt(kappa) + " outside the attainable range [1, " +
                         detail::fmt(sup) + ") for q = " + detail::fmt(q));
  }
  if (kappa == 1.0) return 1.0;
  double lo = 1.0;
  double hi = 2.0;
  int steps = 0;
  while (four_point_kurtosis(hi, q) < kappa) {
    lo = hi;
    hi *= 2.0;
    if (++steps > 1000 || !std::isfinite(hi)) {
      throw NumericalError("four_point_spec: could not bracket f_q(x) = kappa");
    }
  }
  for (int it = 0; it < 2000 && hi - lo > 4e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (four_point_kurtosis(mid, q) < kappa) lo = mid; else hi = mid;
  }
  const double x = 0.5 * (lo + hi);
  if (!(std::fabs(four_point_kurtosis(x, q) - kappa) <= 1e-9 * kappa)) {
    throw NumericalError("four_point_spec: bisection residual above 1e-9");
  }
  return x;
}

DiscreteSpec four_point_spec(double v, double kappa, double q, long n) {
  detail::require_positive(v, "v", "four_point_spec");
  require_n(n, "four_point_spec");
  const double x = four_point_ratio(kappa, q);
  const double xi = std::sqrt(v / (1.0 - 2.0 * q + 2.0 * q * x * x));
  const double reach = xi * x;  // n eta
  return DiscreteSpec{{{-reach, q}, {-xi, 0.5 - q}, {xi, 0.5 - q}, {reach, q}}};
}

double worst_case_q(long n, double epsilon, double chi) {
  require_n(n, "worst_case_q");
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw ParameterError("worst_case_q: epsilon must lie in (0, 1/2), got " + detail::fmt(epsilon));
  }
  if (!(chi < 1.0)) throw ParameterError("worst_case_q: chi must be < 1, got " + detail::fmt(chi));
  const double nd = static_cast<double>(n);
  const double base = epsilon / (nd * (1.0 - chi));
  if (!(4.0 * base < 1.0)) throw DomainError("worst_case_q: 4 eps / (n (1 - chi)) must be < 1");
  return base * std::exp(-(nd - 1.0) * std::log1p(-4.0 * base));
}

std::array<double, 2> worst_case_chi_choices(long n, double epsilon) {
  return {0.5 * std::pow(static_cast<double>(n) * epsilon, 0.25), 0.5};
}

}  // namespace catoni
