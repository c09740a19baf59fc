#include "catoni/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "catoni/bounds.hpp"
#include "catoni/csv.hpp"
#include "catoni/distributions.hpp"
#include "catoni/errors.hpp"
#include "catoni/kurtosis_mean.hpp"
#include "catoni/lepski.hpp"
#include "catoni/mean.hpp"
#include "catoni/montecarlo.hpp"
#include "catoni/variance.hpp"

namespace catoni {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double to_double(const std::string& text, const std::string& what) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ParameterError("cannot read " + what + " from '" + text + "'");
  return value;
}

long to_long(const std::string& text, const std::string& what) {
  long value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ParameterError("cannot read " + what + " from '" + text + "'");
  return value;
}

GeometricGrid parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ParameterError("--grid expects V:rho:s, got '" + text + "'");
  GeometricGrid grid{to_double(parts[0], "V"), to_double(parts[1], "rho"),
                     static_cast<int>(to_long(parts[2], "s"))};
  grid.validate();
  return grid;
}

std::vector<double> parse_eps_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ParameterError("--eps-grid expects start:stop:count, got '" + text + "'");
  const long count = to_long(parts[2], "count");
  if (count < 1 || count > 1000000) throw ParameterError("--eps-grid count must lie in [1, 1e6]");
  return log_spaced_grid(to_double(parts[0], "start"), to_double(parts[1], "stop"), static_cast<int>(count));
}

Source parse_source(const std::string& text, long n) {
  auto numbers = [&](const std::string& body, std::size_t expected, const char* form) {
    const auto parts = split(body, ',');
    if (parts.size() != expected) throw ParameterError(std::string("--source expects ") + form);
    std::vector<double> out;
    for (const auto& p : parts) out.push_back(to_double(p, std::string("a number in ") + form));
    return out;
  };
  if (text.rfind("worst3:", 0) == 0) {
    const auto x = numbers(text.substr(7), 2, "worst3:v,eta");
    return three_point_spec(x[0], x[1], n);
  }
  if (text.rfind("worst4:", 0) == 0) {
    const auto x = numbers(text.substr(7), 3, "worst4:v,kappa,q");
    return four_point_spec(x[0], x[1], x[2], n);
  }
  return parse_mixture_spec(text);
}

Sample read_sample(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open input file '" + path + "'");
  std::vector<double> values;
  std::string line;
  long number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string field = line.substr(first, last - first + 1);
    double value = 0.0;
    const char* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc() || ptr != end) {
      throw ParameterError(path + ":" + std::to_string(number) + ": not a number: '" + field + "'");
    }
    values.push_back(value);
  }
  if (values.empty()) throw DegenerateDataError("input file '" + path + "' holds no observations");
  return Sample(std::move(values));
}

struct MomentsArgs {
  std::string mixture;
};

struct MeanArgs {
  std::string input;
  std::string method;
  double epsilon = 0.0;
  std::optional<double> variance;
  std::optional<double> kappa_max;
  std::optional<std::string> grid;
  std::string psi = "narrow";
  double tolerance = kDefaultMeanTolerance;
};

struct VarianceArgs {
  std::string input;
  double kappa_max = 0.0;
  double epsilon1 = 0.0;
  std::optional<long> p;
  std::optional<std::string> xi;
  std::string zeta_bound = "params";
  std::string psi = "narrow";
};

struct BoundsArgs {
  long n = 0;
  double v = 0.0;
  std::optional<double> kappa;
  std::string eps_grid;
  std::optional<std::string> grid;
  std::optional<std::string> bounds;
  std::optional<double> lambda;
};

struct SimulateArgs {
  std::string source;
  long n = 0;
  long reps = 0;
  std::uint64_t seed = 0;
  double epsilon = 0.0;
  std::optional<std::string> estimators;
  std::optional<std::string> coverage;
  std::optional<unsigned> threads;
  std::optional<double> variance;
  std::optional<std::string> grid;
  std::optional<double> kappa_max;
  std::string psi = "narrow";
};

void do_moments(const MomentsArgs& a, std::ostream& out) {
  const Moments mo = mixture_moments(parse_mixture_spec(a.mixture));
  out << "m,v,kappa\n"
      << format_double(mo.m) << ',' << format_double(mo.v) << ',' << format_optional(mo.kappa) << '\n';
}

void do_estimate_mean(const MeanArgs& a, std::ostream& out) {
  const Sample sample = read_sample(a.input);
  const InfluenceKind kind = parse_influence_kind(a.psi);
  MeanEstimate est;
  if (a.method == "known-v" || a.method == "eps-free") {
    if (!a.variance) throw ParameterError("--method " + a.method + " needs --variance");
    est = estimate_mean_known_variance(sample, *a.variance, a.epsilon,
                                       a.method == "known-v" ? AlphaMode::EpsDependent : AlphaMode::EpsFree, kind,
                                       a.tolerance);
  } else if (a.method == "plugin") {
    est = estimate_mean_plugin(sample, a.epsilon, kind, a.tolerance);
  } else if (a.method == "lepski") {
    if (!a.grid) throw ParameterError("--method lepski needs --grid V:rho:s");
    const GeometricGrid grid = parse_grid(*a.grid);
    const AdaptiveResult res = adaptive_estimate(sample, a.epsilon, grid, kind, a.tolerance);
    est.theta_hat = res.theta_tilde;
    est.method = MeanMethod::Lepski;
    if (a.variance) est.halfwidth = adaptive_halfwidth(*a.variance, grid, a.epsilon, static_cast<long>(sample.size()));
  } else if (a.method == "kurtosis") {
    KurtosisOptions options;
    options.tolerance = a.tolerance;
    est = estimate_mean_kurtosis(sample, a.kappa_max, a.epsilon, options).mean;
  } else {
    throw ParameterError("unknown --method '" + a.method + "'");
  }
  out << "method,estimate,halfwidth\n"
      << to_string(est.method) << ',' << format_double(est.theta_hat) << ',' << format_optional(est.halfwidth)
      << '\n';
}

void do_estimate_variance(const VarianceArgs& a, std::ostream& out) {
  const Sample sample = read_sample(a.input);
  VarianceOptions options;
  options.p = a.p;
  if (a.xi) options.xi_mode = parse_xi_mode(*a.xi);
  options.kind = parse_influence_kind(a.psi);
  double zeta_override = -1.0;
  if (a.zeta_bound == "corollary") {
    zeta_override = zeta_bound_corollary(static_cast<long>(sample.size()), a.kappa_max, a.epsilon1);
  } else if (a.zeta_bound != "params") {
    throw ParameterError("--zeta-bound must be params or corollary");
  }
  const VarianceEstimate est = solve_variance(sample, a.kappa_max, a.epsilon1, options);
  out << "v_hat,zeta,p,xi_mode\n"
      << format_double(est.v_hat) << ',' << format_double(zeta_override >= 0.0 ? zeta_override : est.zeta) << ','
      << est.params.p << ',' << to_string(est.params.xi_mode) << '\n';
}

void do_bounds(const BoundsArgs& a, std::ostream& out) {
  BoundQuery q;
  q.n = a.n;
  q.v = a.v;
  q.kappa = a.kappa;
  q.lambda = a.lambda;
  if (a.grid) q.grid = parse_grid(*a.grid);
  const std::vector<double> eps = parse_eps_grid(a.eps_grid);
  if (eps.back() >= 0.5) throw ParameterError("--eps-grid must stay below 1/2");
  const std::vector<std::string> names = a.bounds ? split(*a.bounds, ',') : applicable_bounds(q);
  out << "epsilon,bound,halfwidth\n";
  for (const std::string& name : names) {
    const BoundCurve curve = bound_curve(q, name, eps);
    for (const BoundPoint& pt : curve.points) {
      out << format_double(pt.epsilon) << ',' << curve.bound_name << ',' << format_double(pt.halfwidth) << '\n';
    }
  }
}

void do_simulate(const SimulateArgs& a, std::ostream& out) {
  if (a.n < 1) throw ParameterError("--n must be >= 1");
  SimulationConfig config;
  config.source = parse_source(a.source, a.n);
  config.n = a.n;
  config.reps = a.reps;
  config.seed = a.seed;
  config.epsilon = a.epsilon;
  config.threads = a.threads ? *a.threads : threads_from_environment();
  config.kappa_max = a.kappa_max;
  config.psi = parse_influence_kind(a.psi);
  if (a.grid) config.grid = parse_grid(*a.grid);
  if (a.estimators) {
    for (const std::string& name : split(*a.estimators, ',')) {
      EstimatorSpec spec;
      spec.kind = parse_estimator_kind(name);
      spec.v = a.variance;
      spec.grid = config.grid;
      spec.kappa_max = a.kappa_max;
      spec.psi = config.psi;
      config.estimators.push_back(spec);
    }
  }
  if (a.coverage) {
    std::vector<CoverageMethod> methods;
    for (const std::string& name : split(*a.coverage, ',')) methods.push_back(parse_coverage_method(name));
    validate_config(config, methods);
    std::vector<CoverageReport> reports;
    for (CoverageMethod m : methods) reports.push_back(coverage(config, m));
    write_coverage_csv(out, reports);
    return;
  }
  if (config.estimators.empty()) throw ParameterError("simulate needs --estimators or --coverage");
  write_quantile_csv(out, deviation_quantiles(config));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Robust mean and variance estimation for heavy-tailed samples, with deviation bounds and "
               "Monte Carlo experiments. All results are CSV."};
  app.name("catoni");
  app.require_subcommand(1);
  std::optional<std::string> output;
  app.add_option("-o,--output", output, "Write the CSV to this file instead of standard output");

  MomentsArgs moments;
  auto* c_moments = app.add_subcommand("moments", "Exact mean, variance and kurtosis of a Gaussian mixture");
  c_moments->add_option("--mixture", moments.mixture, "Mixture as weight:mean:sd triples, e.g. 0.7:2:1,0.2:-2:1,0.1:0:30")
      ->required();

  MeanArgs mean;
  auto* c_mean = app.add_subcommand("estimate-mean", "M-estimate of the mean of a data file with its confidence half-width");
  c_mean->add_option("--input", mean.input, "Data file, one number per line; blank lines are ignored")->required();
  c_mean->add_option("--method", mean.method,
                     "known-v: alpha tuned to a known variance bound; eps-free: the same with a confidence-free "
                     "alpha; plugin: variance replaced by the sample variance (no half-width); lepski: adaptive "
                     "over a grid of variance bounds; kurtosis: variance estimated from a kurtosis bound")
      ->required()
      ->check(CLI::IsMember({"known-v", "eps-free", "plugin", "lepski", "kurtosis"}));
  c_mean->add_option("--epsilon", mean.epsilon, "Half the error probability; the interval holds with probability 1 - 2 eps")
      ->required();
  c_mean->add_option("--variance", mean.variance,
                     "Variance bound for known-v and eps-free; for lepski, the variance at which to report the bound");
  c_mean->add_option("--kappa-max", mean.kappa_max, "Kurtosis bound for the kurtosis method (default 6n/1000, n >= 1000)");
  c_mean->add_option("--grid", mean.grid, "Variance grid V:rho:s for lepski: points V rho^(2k), k = -s..s");
  c_mean->add_option("--psi", mean.psi, "Influence function")->check(CLI::IsMember({"narrow", "wide"}));
  c_mean->add_option("--tolerance", mean.tolerance, "Relative root-finding tolerance");

  VarianceArgs var;
  auto* c_var = app.add_subcommand("estimate-variance", "Block M-estimate of the variance with its log-accuracy zeta");
  c_var->add_option("--input", var.input, "Data file, one number per line; blank lines are ignored")->required();
  c_var->add_option("--kappa-max", var.kappa_max, "Upper bound on the kurtosis")->required();
  c_var->add_option("--epsilon1", var.epsilon1, "Half the error probability of |log v_hat - log v| <= zeta")->required();
  c_var->add_option("--p", var.p, "Block size (default: the approximately optimal one)");
  c_var->add_option("--xi", var.xi, "Threshold rule: tight, or simple (default tight, falling back to simple)")
      ->check(CLI::IsMember({"tight", "simple"}));
  c_var->add_option("--zeta-bound", var.zeta_bound,
                    "params: zeta of the chosen block parameters; corollary: the closed form in n, kappa and eps1, "
                    "which needs log(1/eps1) <= n/(36(kappa-1)) - 1/8")
      ->check(CLI::IsMember({"params", "corollary"}));
  c_var->add_option("--psi", var.psi, "Influence function")->check(CLI::IsMember({"narrow", "wide"}));

  BoundsArgs bounds;
  auto* c_bounds = app.add_subcommand("bounds", "Tabulate deviation bounds over a log-spaced epsilon grid");
  c_bounds->add_option("--n", bounds.n, "Sample size")->required();
  c_bounds->add_option("--v", bounds.v, "Variance")->required();
  c_bounds->add_option("--kappa", bounds.kappa, "Kurtosis; enables the kurtosis-aware bounds");
  c_bounds->add_option("--eps-grid", bounds.eps_grid, "start:stop:count, log-spaced, e.g. 0.1:1e-14:200")->required();
  c_bounds->add_option("--grid", bounds.grid, "Variance grid V:rho:s; enables the adaptive bound");
  c_bounds->add_option("--bounds", bounds.bounds,
                       "Comma-separated subset of chebyshev, kurtosis, fourth-moment, empirical-best, gaussian, "
                       "lower-plain, lower-kurtosis, catoni, catoni-eps-free, adaptive, kurtosis-mean");
  c_bounds->add_option("--lambda", bounds.lambda, "Epsilon split of the kurtosis bound, in (0, 1)");

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Deviation quantiles or interval coverage over seeded replications");
  c_sim->add_option("--source", sim.source,
                    "weight:mean:sd,... mixture, worst3:v,eta (atoms 0, +-n eta) or worst4:v,kappa,q "
                    "(atoms +-xi, +-n eta)")
      ->required();
  c_sim->add_option("--n", sim.n, "Sample size")->required();
  c_sim->add_option("--reps", sim.reps, "Number of replications")->required();
  c_sim->add_option("--seed", sim.seed, "64-bit seed")->required();
  c_sim->add_option("--epsilon", sim.epsilon, "Half the error probability")->required();
  c_sim->add_option("--estimators", sim.estimators,
                    "Comma-separated: mean, median, known-v, eps-free, plugin, lepski, kurtosis");
  c_sim->add_option("--coverage", sim.coverage,
                    "Comma-separated: known-v, eps-free, lepski, kurtosis, variance, mean-chebyshev; emits coverage "
                    "instead of quantiles");
  c_sim->add_option("--threads", sim.threads, "Worker threads (0: all cores); overrides CATONI_THREADS");
  c_sim->add_option("--variance", sim.variance, "Variance bound for known-v and eps-free (default: the true variance)");
  c_sim->add_option("--grid", sim.grid, "Variance grid V:rho:s for lepski (default: true v, 1.05, 95)");
  c_sim->add_option("--kappa-max", sim.kappa_max, "Kurtosis bound for kurtosis and variance (default 6n/1000)");
  c_sim->add_option("--psi", sim.psi, "Influence function")->check(CLI::IsMember({"narrow", "wide"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    std::ostringstream buffer;
    if (c_moments->parsed()) do_moments(moments, buffer);
    else if (c_mean->parsed()) do_estimate_mean(mean, buffer);
    else if (c_var->parsed()) do_estimate_variance(var, buffer);
    else if (c_bounds->parsed()) do_bounds(bounds, buffer);
    else if (c_sim->parsed()) do_simulate(sim, buffer);
    if (output) {
      std::ofstream file(*output, std::ios::binary);
      if (!file) throw ParameterError("cannot open output file '" + *output + "'");
      file << buffer.str();
      if (!file) throw ParameterError("failed writing '" + *output + "'");
    } else {
      out << buffer.str();
    }
    return kExitOk;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << " [condition: " << e.condition() << "]\n";
    return kExitInfeasible;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::Parameter:
      case ErrorKind::Domain: return kExitUsage;
      case ErrorKind::DegenerateData: return kExitDegenerate;
      default: return kExitNumerical;
    }
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace catoni
