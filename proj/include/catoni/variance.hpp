#ifndef CATONI_VARIANCE_HPP
#define CATONI_VARIANCE_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "catoni/influence.hpp"
#include "catoni/sample.hpp"

namespace catoni {

/// n = p q + r split into q consecutive blocks; the last block absorbs the
/// remainder, so its size is p + r.
struct BlockPlan {
  long n = 0;
  long p = 0;
  long q = 0;
  long r = 0;
  /// Half-open index ranges [begin, end), in order.
  std::vector<std::pair<long, long>> ranges;
};

/// Throws ParameterError unless n >= 4 and 2 <= p <= n/2.
BlockPlan block_plan(long n, long p);

struct BlockSize {
  long p;
  bool clamped;  // the formula gave less than 2
};

/// floor(sqrt(n / ((kappa - 1)(4 log(1/eps1) + 1/2)))), at least 2 and at most n/2.
BlockSize optimal_block_size(long n, double kappa, double epsilon1);

enum class XiMode { Tight, Simple };

std::string_view to_string(XiMode mode);
XiMode parse_xi_mode(std::string_view name);

/// Condition names carried by InfeasibleError.
inline constexpr std::string_view kTightCondition =
    "q >= 8 log(1/eps1) (1 + chi/p) / (1 + sqrt(2 chi log(1/eps1) / (n - r)))^2";
inline constexpr std::string_view kTightDiscriminant = "(1 + chi delta / p)^2 >= 4 (1 + chi/p) y";
inline constexpr std::string_view kSimpleCondition =
    "log(1/eps1) <= min(q / (4 (1 + sqrt 2)), (n - r) / (8 chi))";
inline constexpr std::string_view kCorollaryCondition = "log(1/eps1) <= n / (36 (kappa - 1)) - 1/8";
inline constexpr std::string_view kXiBelowDelta = "xi < delta";

struct VarianceParams {
  long n = 0;
  long p = 0;
  long q = 0;
  long r = 0;
  double kappa = 0.0;
  double epsilon1 = 0.0;
  double chi = 0.0;    // kappa - 1 + 2/(p - 1)
  double delta = 0.0;  // sqrt(2 p log(1/eps1) / (chi q))
  double y = 0.0;      // 2 log(1/eps1) / q
  double xi = 0.0;
  double zeta = 0.0;   // -log(1 - xi/delta) / 2
  XiMode xi_mode = XiMode::Tight;
  bool tight_holds = false;        // discriminant and the block-count condition
  bool simple_holds = false;
  bool corollary_holds = false;    // log(1/eps1) <= n/(36(kappa-1)) - 1/8
  bool feasible = false;           // the chosen mode holds and 0 < xi < delta
};

/// Evaluates every quantity for the requested mode without throwing on
/// infeasibility; check .feasible.
VarianceParams evaluate_variance_params(long n, long p, double kappa, double epsilon1, XiMode mode);

/// As evaluate_variance_params, but throws InfeasibleError naming the first
/// violated condition.
VarianceParams variance_params(long n, long p, double kappa, double epsilon1, XiMode mode);

/// Tight when it holds, otherwise Simple; throws if neither does.
VarianceParams variance_params_auto(long n, long p, double kappa, double epsilon1);

/// Scans p over [2, n/2] for the smallest zeta (Tight with Simple fallback).
/// Throws InfeasibleError when no p is feasible.
VarianceParams best_block_size_scan(long n, double kappa, double epsilon1);

/// Unbiased variance of each block, in block order.
std::vector<double> block_variances(const Sample& sample, const BlockPlan& plan);

/// Q(beta) = (1/q) sum_l psi(beta * V_l - delta), V_l the unbiased variance of
/// block l. Non-decreasing in beta.
double q_criterion(const Sample& sample, const BlockPlan& plan, double beta, double delta,
                   InfluenceKind kind = InfluenceKind::Narrow);
double q_criterion(const std::vector<double>& block_vars, double beta, double delta, InfluenceKind kind);

struct VarianceOptions {
  std::optional<long> p;
  /// Absent: Tight, falling back to Simple.
  std::optional<XiMode> xi_mode;
  InfluenceKind kind = InfluenceKind::Narrow;
  double tolerance = 1e-10;
};

struct VarianceEstimate {
  double beta_hat = 0.0;
  double v_hat = 0.0;
  double zeta = 0.0;
  VarianceParams params;
  int iterations = 0;
  bool used_bisection = false;
};

/// Solves Q(beta) = -y by beta <- beta (delta - y) / (Q(beta) + delta) from
/// beta_0 = (delta - y) / V, V the unbiased variance, falling back to
/// bisection on a bracket found by doubling and halving. Returns
/// v_hat = sqrt(delta (delta - xi)) / beta_hat, with |log v_hat - log v| <= zeta
/// at confidence 1 - 2 eps1.
VarianceEstimate solve_variance(const Sample& sample, double kappa, double epsilon1,
                                const VarianceOptions& options = {});

/// Data-free version of zeta that needs only n, kappa and eps1:
/// -log(1 - 2 sqrt(2 (kappa-1) L / n) exp(4 sqrt((4 L + 1/2) / ((kappa-1) n)))) / 2,
/// L = log(1/eps1). Requires log(1/eps1) <= n/(36(kappa-1)) - 1/8.
double zeta_bound_corollary(long n, double kappa, double epsilon1);

}  // namespace catoni

#endif  // CATONI_VARIANCE_HPP
