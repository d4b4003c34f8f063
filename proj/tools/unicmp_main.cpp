// unicmp: compare unknown unitary transforms, estimate Haar-averaged
// detection rates, sweep small differences and self-test the samplers.
//
// Exit codes: 0 success, 1 self-test failure, 2 usage or input error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "unicmp/experiments.hpp"
#include "unicmp/haar.hpp"
#include "unicmp/json_io.hpp"
#include "unicmp/linalg.hpp"
#include "unicmp/strategies.hpp"

namespace {

using unicmp::haar::SU2Phase;
using unicmp::linalg::ComplexMatrix;
using unicmp::linalg::PureState;
using unicmp::linalg::cplx;
namespace experiments = unicmp::experiments;
namespace haar = unicmp::haar;
namespace io = unicmp::io;
namespace linalg = unicmp::linalg;
namespace strategies = unicmp::strategies;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// A transform given on the command line: always as a matrix, plus the
/// parameter set when one was supplied (needed by parametrised strategies).
struct TransformInput {
  ComplexMatrix matrix;
  std::optional<SU2Phase> su2;
};

SU2Phase su2_from_param_string(const std::string& spec, const std::string& field) {
  SU2Phase p;
  bool seen[4] = {false, false, false, false};
  std::stringstream ss(spec);
  std::string token;
  while (std::getline(ss, token, ',')) {
    const auto eq = token.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(field + ": expected name=value pairs, got '" + token + "'");
    std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    double parsed = 0.0;
    try {
      parsed = std::stod(value);
    } catch (const std::exception&) {
      throw std::invalid_argument(field + ": cannot parse number '" + value + "' for '" + key +
                                  "'");
    }
    if (key == "theta" || key == "θ") {
      p.theta = parsed;
      seen[0] = true;
    } else if (key == "alpha" || key == "α") {
      p.alpha = parsed;
      seen[1] = true;
    } else if (key == "beta" || key == "β") {
      p.beta = parsed;
      seen[2] = true;
    } else if (key == "phi" || key == "φ") {
      p.phi = parsed;
      seen[3] = true;
    } else {
      throw std::invalid_argument(field + ": unknown parameter '" + key +
                                  "' (expected theta, alpha, beta, phi)");
    }
  }
  if (!(seen[0] && seen[1] && seen[2] && seen[3]))
    throw std::invalid_argument(field + ": all of theta, alpha, beta, phi must be given");
  if (!(p.theta >= 0.0 && p.theta <= std::numbers::pi / 2.0))
    throw std::invalid_argument(field + ": theta must lie in [0, pi/2]");
  return p;
}

std::optional<ComplexMatrix> builtin_unitary(const std::string& name) {
  const cplx i{0.0, 1.0};
  const double s = 1.0 / std::sqrt(2.0);
  if (name == "identity") return ComplexMatrix::identity(2);
  if (name == "sigma-x") return ComplexMatrix(2, 2, {0.0, 1.0, 1.0, 0.0});
  if (name == "sigma-y") return ComplexMatrix(2, 2, {0.0, -i, i, 0.0});
  if (name == "sigma-z") return ComplexMatrix(2, 2, {1.0, 0.0, 0.0, -1.0});
  if (name == "hadamard") return ComplexMatrix(2, 2, {s, s, s, -s});
  if (name.rfind("global-phase(", 0) == 0 && name.back() == ')') {
    const std::string arg = name.substr(13, name.size() - 14);
    double gamma = 0.0;
    try {
      gamma = std::stod(arg);
    } catch (const std::exception&) {
      throw std::invalid_argument("global-phase: cannot parse angle '" + arg + "'");
    }
    const cplx g = std::polar(1.0, gamma);
    return ComplexMatrix(2, 2, {g, 0.0, 0.0, g});
  }
  return std::nullopt;
}

TransformInput parse_transform_json(const io::json& j) {
  if (j.is_object() && j.contains("theta")) {
    const SU2Phase p = io::su2_from_json(j);
    return {p.to_matrix(), p};
  }
  return {io::matrix_from_json(j), std::nullopt};
}

TransformInput parse_transform(const std::string& spec, const std::string& field) {
  if (spec.empty()) throw std::invalid_argument(field + ": empty transform specification");
  if (spec[0] == '@') {
    const io::json j = io::parse_json(read_file(spec.substr(1)), field);
    return parse_transform_json(j);
  }
  if (spec.find('=') != std::string::npos) {
    const SU2Phase p = su2_from_param_string(spec, field);
    return {p.to_matrix(), p};
  }
  if (auto m = builtin_unitary(spec)) return {*m, std::nullopt};
  throw std::invalid_argument(
      field + ": '" + spec +
      "' is neither a built-in name (identity, sigma-x, sigma-y, sigma-z, hadamard, "
      "global-phase(g)), a theta=..,alpha=..,beta=..,phi=.. parameter set, nor an @file.json "
      "reference");
}

std::vector<TransformInput> parse_transform_list(const std::string& spec,
                                                 const std::string& field) {
  if (spec.empty() || spec[0] != '@')
    throw std::invalid_argument(field + ": expected @file.json holding a JSON array of transforms");
  const io::json j = io::parse_json(read_file(spec.substr(1)), field);
  if (!j.is_array() || j.empty())
    throw std::invalid_argument(field + ": expected a non-empty JSON array of transforms");
  std::vector<TransformInput> out;
  out.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k)
    out.push_back(parse_transform_json(j[k]));
  return out;
}

PureState parse_start_state(const std::string& spec, const std::string& field) {
  if (!spec.empty() && spec[0] == '@')
    return io::state_from_json(io::parse_json(read_file(spec.substr(1)), field));
  if (spec == "psi-") return strategies::bell_basis()[0];
  if (spec == "psi+") return strategies::bell_basis()[1];
  if (spec == "Phi+") return strategies::bell_basis()[2];
  if (spec == "Phi-") return strategies::bell_basis()[3];
  if (spec.rfind("nonsym:", 0) == 0) {
    const std::size_t k = std::stoul(spec.substr(7));
    const auto basis = strategies::two_fourdim_nonsym_basis();
    if (k < 1 || k > basis.size())
      throw std::invalid_argument(field + ": nonsym index must lie in 1.." +
                                  std::to_string(basis.size()));
    return basis[k - 1];
  }
  if (spec.rfind("sym:", 0) == 0) {
    const std::size_t k = std::stoul(spec.substr(4));
    const auto& basis = linalg::symmetric_projector(4, 2).basis();
    if (k < 1 || k > basis.size())
      throw std::invalid_argument(field + ": sym index must lie in 1.." +
                                  std::to_string(basis.size()));
    return basis[k - 1];
  }
  throw std::invalid_argument(field + ": '" + spec +
                              "' is neither a Bell-state name (psi-, psi+, Phi+, Phi-), "
                              "nonsym:k, sym:k, nor an @file.json reference");
}

std::vector<double> parse_grid(const std::string& spec, const std::string& field) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    try {
      out.push_back(std::stod(token));
    } catch (const std::exception&) {
      throw std::invalid_argument(field + ": cannot parse number '" + token + "'");
    }
  }
  if (out.empty()) throw std::invalid_argument(field + ": grid must not be empty");
  return out;
}

/// Computation first, file write last, so failures never leave partial files.
void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file '" + out_path + "'");
  out << text;
  if (!out) throw std::invalid_argument("failed writing output file '" + out_path + "'");
}

void print_report_text(const std::string& strategy, const strategies::StrategyReport& report) {
  std::cout << "strategy: " << strategy << "\n";
  std::cout << "p_diff: " << io::format_double(report.p_diff) << "\n";
  std::cout << "difference subspace: " << report.difference_subspace_dim << " of "
            << report.ambient_dim << " dimensions\n";
  std::cout << "outcomes:\n";
  for (const auto& o : report.outcomes)
    std::cout << "  " << o.label << ": " << io::format_double(o.probability)
              << (o.signals_difference ? "  [different]" : "  [inconclusive]") << "\n";
}

struct CompareArgs {
  std::string strategy;
  std::string u_spec, v_spec;
  std::string transforms_spec;
  std::string state_spec;
  std::string start_spec;
  std::string test_state_spec;
  std::size_t column = 0;
  std::uint64_t shots = 0;
  std::uint64_t seed = 1;
  std::string output;  // "", "json", "csv"
  std::string out_path;
};

TransformInput require_pair_input(const CompareArgs& args, const std::string& which) {
  const std::string& spec = which == "--u" ? args.u_spec : args.v_spec;
  if (spec.empty())
    throw std::invalid_argument("strategy '" + args.strategy + "' requires " + which);
  return parse_transform(spec, which);
}

strategies::StrategyReport report_from_p(double p, std::size_t diff_dim, std::size_t ambient,
                                         const std::string& diff_label,
                                         const std::string& incl_label) {
  strategies::StrategyReport report;
  report.p_diff = p;
  report.difference_subspace_dim = diff_dim;
  report.ambient_dim = ambient;
  report.outcomes.push_back({diff_label, p, true});
  report.outcomes.push_back({incl_label, 1.0 - p, false});
  report.validate();
  return report;
}

strategies::StrategyReport build_compare_report(const CompareArgs& args) {
  const std::string& s = args.strategy;

  if (s == "single-particle") {
    const TransformInput u = require_pair_input(args, "--u");
    const TransformInput v = require_pair_input(args, "--v");
    strategies::SingleParticleTest test = strategies::SingleParticleTest::canonical();
    if (!args.test_state_spec.empty()) {
      const PureState ts = parse_start_state(args.test_state_spec, "--test-state");
      if (ts.dim() != 4)
        throw std::invalid_argument("--test-state: single-particle test states have 4 amplitudes");
      test = strategies::SingleParticleTest{ts[0], ts[1], ts[2], ts[3]};
    }
    auto report = strategies::general_single_particle_report(test, u.matrix, v.matrix);
    if (u.su2 && v.su2 && args.test_state_spec.empty()) {
      const double closed = strategies::single_particle_p_diff(*u.su2, *v.su2);
      if (std::abs(closed - report.p_diff) > 1e-10)
        throw std::runtime_error("internal consistency: closed form and network simulation "
                                 "disagree for single-particle");
    }
    return report;
  }
  if (s == "singlet") {
    const TransformInput u = require_pair_input(args, "--u");
    const TransformInput v = require_pair_input(args, "--v");
    if (u.su2 && v.su2) return strategies::singlet_bell_decompose(*u.su2, *v.su2);
    return strategies::singlet_bell_decompose(u.matrix, v.matrix);
  }
  if (s == "singlet-orthostart") {
    const TransformInput u = require_pair_input(args, "--u");
    const TransformInput v = require_pair_input(args, "--v");
    const PureState start = args.start_spec.empty()
                                ? strategies::bell_basis()[2]
                                : parse_start_state(args.start_spec, "--start");
    return strategies::singlet_orthostart_report(u.matrix, v.matrix, start);
  }
  if (s == "nonentangled") {
    const TransformInput u = require_pair_input(args, "--u");
    const TransformInput v = require_pair_input(args, "--v");
    const std::size_t d = u.matrix.rows();
    const PureState psi = args.state_spec.empty() ? PureState::basis_state(d, 0)
                                                  : parse_start_state(args.state_spec, "--state");
    const double p = strategies::nonentangled_p_diff(u.matrix, v.matrix, psi);
    return report_from_p(p, d * (d - 1) / 2, d * d, "antisymmetric", "symmetric");
  }
  if (s == "multi-single-particle") {
    const auto inputs = parse_transform_list(args.transforms_spec, "--transforms");
    std::vector<SU2Phase> us;
    for (std::size_t k = 0; k < inputs.size(); ++k) {
      if (!inputs[k].su2)
        throw std::invalid_argument("--transforms[" + std::to_string(k) +
                                    "]: multi-single-particle requires theta/alpha/beta/phi "
                                    "parameter sets");
      us.push_back(*inputs[k].su2);
    }
    const double p = strategies::multi_single_particle_p_diff(us);
    return report_from_p(p, 2 * us.size() - 2, 2 * us.size(), "different", "inconclusive");
  }
  if (s == "symmetric-multi") {
    const auto inputs = parse_transform_list(args.transforms_spec, "--transforms");
    std::vector<ComplexMatrix> us;
    for (const auto& t : inputs) us.push_back(t.matrix);
    const std::size_t d = us.front().rows();
    const PureState psi = args.state_spec.empty()
                              ? PureState::basis_state(d, 0)
                              : parse_start_state(args.state_spec, "--state");
    const double p = strategies::symmetric_subspace_multi_p_diff(us, psi);
    std::size_t ambient = 1;
    for (std::size_t k = 0; k < us.size(); ++k) ambient *= d;
    const std::size_t d_sym = linalg::binomial(d + us.size() - 1, us.size());
    return report_from_p(p, ambient - d_sym, ambient, "outside-symmetric", "symmetric");
  }
  if (s == "column" || s == "mixed-column") {
    const TransformInput u = require_pair_input(args, "--u");
    const TransformInput v = require_pair_input(args, "--v");
    const std::size_t m = u.matrix.rows();
    if (s == "column") {
      const double p = strategies::column_strategy_p_diff(u.matrix, v.matrix, args.column);
      return report_from_p(p, m, 2 * m, "different", "inconclusive");
    }
    strategies::StrategyReport report;
    report.ambient_dim = 2 * m;
    report.difference_subspace_dim = m;
    double total = 0.0;
    for (std::size_t col = 0; col < m; ++col) {
      const double pc = strategies::column_strategy_p_diff(u.matrix, v.matrix, col) /
                        static_cast<double>(m);
      total += pc;
      report.outcomes.push_back({"column:" + std::to_string(col) + " different", pc, true});
    }
    report.p_diff = total;
    report.outcomes.push_back({"inconclusive", 1.0 - total, false});
    report.validate();
    return report;
  }
  if (s == "slater") {
    const auto inputs = parse_transform_list(args.transforms_spec, "--transforms");
    std::vector<ComplexMatrix> us;
    for (const auto& t : inputs) us.push_back(t.matrix);
    const double p = strategies::slater_p_diff(us);
    std::size_t ambient = 1;
    for (std::size_t k = 0; k < us.size(); ++k) ambient *= us.size();
    return report_from_p(p, ambient - 1, ambient, "outside-antisymmetric", "antisymmetric");
  }
  if (s == "two-fourdim-nonsym" || s == "two-fourdim-symstart") {
    const TransformInput u = require_pair_input(args, "--u");
    const TransformInput v = require_pair_input(args, "--v");
    const bool nonsym = s == "two-fourdim-nonsym";
    const PureState start =
        args.start_spec.empty()
            ? (nonsym ? strategies::two_fourdim_nonsym_basis().front()
                      : linalg::symmetric_projector(4, 2).basis().front())
            : parse_start_state(args.start_spec, "--start");
    const double p = nonsym ? strategies::two_fourdim_nonsym_p_diff(u.matrix, v.matrix, start)
                            : strategies::two_fourdim_symstart_p_diff(u.matrix, v.matrix, start);
    return nonsym ? report_from_p(p, 10, 16, "symmetric", "antisymmetric")
                  : report_from_p(p, 6, 16, "antisymmetric", "symmetric");
  }
  throw std::invalid_argument("unknown strategy '" + s + "' for compare");
}

void require_output_format(const std::string& output, const std::string& out_path) {
  if (!out_path.empty() && output.empty())
    throw std::invalid_argument("--out requires --output json or --output csv");
}

int run_compare(const CompareArgs& args) {
  require_output_format(args.output, args.out_path);
  const strategies::StrategyReport report = build_compare_report(args);

  if (args.output.empty()) {
    print_report_text(args.strategy, report);
  } else if (args.output == "json") {
    emit(io::report_to_json(report).dump(2) + "\n", args.out_path);
  } else {
    emit(io::report_to_csv(report), args.out_path);
  }

  if (args.shots > 0) {
    haar::SeededRng rng(args.seed, 0);
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t different = 0;
    for (std::uint64_t i = 0; i < args.shots; ++i) {
      const auto outcome = strategies::sample_outcome(report, rng);
      ++counts[outcome.detail];
      if (outcome.verdict == strategies::Verdict::Different) ++different;
    }
    std::cout << "shots: " << args.shots << " (seed " << args.seed << ")\n";
    for (const auto& [label, count] : counts) std::cout << "  " << label << ": " << count << "\n";
    std::cout << "  verdict Different: " << different << "\n";
  }
  return 0;
}

struct AverageArgs {
  std::string strategy;
  std::map<std::string, double> params;
  std::uint64_t samples = 0;  // 0 = strategy default
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::string output;
  std::string out_path;
};

int run_average(const AverageArgs& args) {
  require_output_format(args.output, args.out_path);
  const std::uint64_t samples =
      args.samples > 0 ? args.samples : experiments::default_samples(args.strategy, args.params);
  const auto result =
      experiments::average_p_diff(args.strategy, args.params, samples, args.seed, args.workers);

  if (args.output.empty()) {
    std::cout << "strategy: " << result.strategy_id << "\n";
    for (const auto& [key, value] : result.params)
      std::cout << "  " << key << " = " << io::format_double(value) << "\n";
    std::cout << "mean: " << io::format_double(result.mean) << "\n";
    std::cout << "std_error: " << io::format_double(result.std_error) << "\n";
    std::cout << "n_samples: " << result.n_samples << "\n";
    std::cout << "seed: " << result.seed << "\n";
  } else if (args.output == "json") {
    emit(io::estimation_to_json(result).dump(2) + "\n", args.out_path);
  } else {
    emit(io::estimation_to_csv(result), args.out_path);
  }
  return 0;
}

int run_sweep(const std::string& grid_spec, const std::string& output,
              const std::string& out_path) {
  require_output_format(output, out_path);
  const auto rows = experiments::sweep_delta_theta(parse_grid(grid_spec, "--grid"));
  if (output == "json")
    emit(io::sweep_to_json(rows).dump(2) + "\n", out_path);
  else
    emit(io::sweep_to_csv(rows), out_path);  // CSV is also the default table
  return 0;
}

struct SelfTestCheck {
  std::string name;
  double observed;
  double expected;
  double tol;
};

int run_selftest(std::uint64_t samples, std::uint64_t seed, bool corrupt_rng) {
  std::vector<SelfTestCheck> checks;

  haar::SeededRng rng(seed, 0);
  double sum_a2 = 0.0, sum_a4 = 0.0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const SU2Phase p = corrupt_rng ? SU2Phase{0.3, 0.0, 0.0, 0.0} : haar::sample_su2_phase(rng);
    const double a2 = std::norm(p.a());
    sum_a2 += a2;
    sum_a4 += a2 * a2;
  }
  const auto n = static_cast<double>(samples);
  checks.push_back({"E[|a|^2] (su2 sampler)", sum_a2 / n, 0.5, 0.005});
  checks.push_back({"E[|a|^4] (su2 sampler)", sum_a4 / n, 1.0 / 3.0, 0.005});

  for (const std::size_t d : {std::size_t{2}, std::size_t{3}}) {
    haar::SeededRng rng_d(seed, d);
    double sum_u11 = 0.0;
    for (std::uint64_t i = 0; i < samples; ++i) {
      const ComplexMatrix u =
          corrupt_rng ? ComplexMatrix::identity(d) : haar::sample_unitary(d, rng_d);
      sum_u11 += std::norm(u(0, 0));
    }
    checks.push_back({"E[|U11|^2] (U(" + std::to_string(d) + ") sampler)", sum_u11 / n,
                      1.0 / static_cast<double>(d), 0.005});
  }

  const auto trace_check = [&](std::size_t d, std::size_t sites, bool antisym, double expected) {
    const auto sub = antisym ? linalg::antisymmetric_projector(d, sites)
                             : linalg::symmetric_projector(d, sites);
    const std::string name = std::string("trace P_") + (antisym ? "anti" : "sym") + "(" +
                             std::to_string(d) + "," + std::to_string(sites) + ")";
    checks.push_back({name, sub.projector().trace().real(), expected, 1e-8});
  };
  trace_check(2, 2, false, 3.0);
  trace_check(2, 3, false, 4.0);
  trace_check(3, 2, false, 6.0);
  trace_check(4, 2, false, 10.0);
  trace_check(2, 2, true, 1.0);
  trace_check(3, 3, true, 1.0);

  int failures = 0;
  for (const auto& c : checks) {
    const bool ok = std::abs(c.observed - c.expected) <= c.tol;
    if (!ok) ++failures;
    std::cout << (ok ? "PASS" : "FAIL") << "  " << c.name
              << ": observed=" << io::format_double(c.observed)
              << " expected=" << io::format_double(c.expected)
              << " tol=" << io::format_double(c.tol) << "\n";
  }
  if (failures > 0) {
    std::cout << failures << " self-test check(s) failed\n";
    return 1;
  }
  std::cout << "all self-test checks passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unambiguous comparison of unknown unitary transforms"};
  app.require_subcommand(1);

  CompareArgs cmp;
  auto* compare = app.add_subcommand("compare", "evaluate one strategy for given transforms");
  compare->add_option("--strategy", cmp.strategy, "strategy id")->required();
  compare->add_option("--u", cmp.u_spec, "first transform (name, params or @file.json)");
  compare->add_option("--v", cmp.v_spec, "second transform");
  compare->add_option("--transforms", cmp.transforms_spec,
                      "@file.json with a JSON array of transforms (multi-transform strategies)");
  compare->add_option("--state", cmp.state_spec, "test state @file.json (nonentangled, symmetric-multi)");
  compare->add_option("--start", cmp.start_spec,
                      "start state: Bell name, nonsym:k, sym:k or @file.json");
  compare->add_option("--test-state", cmp.test_state_spec,
                      "single-particle test state @file.json (4 amplitudes)");
  compare->add_option("--column", cmp.column, "column index (column strategy, 0-based)");
  compare->add_option("--shots", cmp.shots, "draw this many single-shot outcomes");
  compare->add_option("--seed", cmp.seed, "seed for --shots sampling");
  compare->add_option("--output", cmp.output, "machine output format")
      ->check(CLI::IsMember({"json", "csv"}));
  compare->add_option("--out", cmp.out_path, "write machine output to this file");

  AverageArgs avg;
  double opt_n = 0, opt_d = 0, opt_m = 0, opt_col = 0;
  auto* average = app.add_subcommand("average", "Haar-averaged success probability");
  average->add_option("--strategy", avg.strategy, "strategy id")->required();
  average->add_option("--n", opt_n, "transform count (multi, slater, symmetric-multi)");
  average->add_option("--d", opt_d, "system dimension (nonentangled, symmetric-multi)");
  average->add_option("--m", opt_m, "matrix dimension (column strategies)");
  average->add_option("--column", opt_col, "column index (column strategy, 0-based)");
  average->add_option("--samples", avg.samples, "sample count (default depends on strategy)");
  average->add_option("--seed", avg.seed, "PRNG seed");
  average->add_option("--workers", avg.workers, "worker threads (does not change results)");
  average->add_option("--output", avg.output, "machine output format")
      ->check(CLI::IsMember({"json", "csv"}));
  average->add_option("--out", avg.out_path, "write machine output to this file");

  std::string grid_spec, sweep_output, sweep_out;
  auto* sweep = app.add_subcommand("sweep", "exact small-difference sweep over delta-theta");
  sweep->add_option("--grid", grid_spec, "comma-separated delta-theta values in (0, pi/2)")
      ->required();
  sweep->add_option("--output", sweep_output, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  sweep->add_option("--out", sweep_out, "write output to this file");

  std::uint64_t st_samples = 100000, st_seed = 1;
  bool corrupt_rng = false;
  auto* selftest = app.add_subcommand("selftest", "sampler moment and projector trace checks");
  selftest->add_option("--samples", st_samples, "samples per moment check");
  selftest->add_option("--seed", st_seed, "PRNG seed");
  selftest->add_flag("--corrupt-rng", corrupt_rng, "test hook: inject a broken sampler")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (compare->parsed()) return run_compare(cmp);
    if (average->parsed()) {
      if (average->count("--n")) avg.params["n"] = opt_n;
      if (average->count("--d")) avg.params["d"] = opt_d;
      if (average->count("--m")) avg.params["m"] = opt_m;
      if (average->count("--column")) avg.params["column"] = opt_col;
      return run_average(avg);
    }
    if (sweep->parsed()) return run_sweep(grid_spec, sweep_output, sweep_out);
    if (selftest->parsed()) return run_selftest(st_samples, st_seed, corrupt_rng);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
