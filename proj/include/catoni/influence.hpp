#ifndef CATONI_INFLUENCE_HPP
#define CATONI_INFLUENCE_HPP

#include <string_view>

namespace catoni {

/// The two extreme influence functions squeezed between
/// -log(1 - x + x^2/2) and log(1 + x + x^2/2).
///
/// Wide follows the upper envelope for x >= 0 (and the lower one for x <= 0),
/// so it is strictly increasing and unbounded. Narrow follows the opposite
/// envelope on [-1, 1] and is flat at +-log 2 outside; its estimating
/// equations can have a whole interval of roots.
enum class InfluenceKind { Narrow, Wide };

std::string_view to_string(InfluenceKind kind);
/// Accepts "narrow" / "wide"; throws ParameterError otherwise.
InfluenceKind parse_influence_kind(std::string_view name);

/// Influence function value. Odd and non-decreasing. Throws DomainError on
/// non-finite input.
double psi(InfluenceKind kind, double x);

/// log(1 + x + x^2/2), overflow-safe for large |x|; defined for every real x.
double log_upper_envelope(double x);

/// Breakpoints and values of the comparison function chi.
struct ChiConstants {
  double x1;       // 1 - sqrt(4 sqrt 2 - 5): where psi'' of the narrow branch hits -1/4
  double y1;       // psi(Narrow, x1)
  double p1;       // psi'(Narrow, x1)
  double chi_sup;  // y1 + 2 p1^2, the plateau of chi
  double a;        // 3 exp(chi_sup) / (4 log 4)
};

/// Constants evaluated once from their closed forms.
const ChiConstants& chi_constants();

/// Narrow psi up to x1, then a parabola of curvature -1/4 until its vertex
/// at x1 + 4 p1, then constant. Sits between psi(Narrow, .) and the upper
/// envelope.
double chi(double x);

/// Remainder g(x) = x - psi(Wide, x). Odd, with
/// |g(x)| <= min(|x|, x^2 / (4 (1 + sqrt 2)), |x|^3 / 6).
double g_remainder(double x);

}  // namespace catoni

#endif  // CATONI_INFLUENCE_HPP
