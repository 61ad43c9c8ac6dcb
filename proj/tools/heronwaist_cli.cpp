// heronwaist: solve, verify, render and check Heron–waist problem files.
//
// Exit codes:
//   0  success (solve exits 0 whatever the optimality verdict)
//   1  verify --strict and the verdict is not optimal_within_tol
//   2  bad command line
//   3  file could not be read or written
//   4  malformed problem or results document
//   5  invalid or structurally unsound problem
//   6  numerical failure during the solve
//   7  unsupported dimension (render with n != 2)

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "heronwaist/errors.hpp"
#include "heronwaist/io.hpp"
#include "heronwaist/optimality.hpp"
#include "heronwaist/render.hpp"
#include "heronwaist/solver.hpp"

namespace fs = std::filesystem;
using namespace heronwaist;

namespace {

enum ExitCode : int {
  kOk = 0,
  kNotOptimal = 1,
  kUsage = 2,
  kIo = 3,
  kParse = 4,
  kStructural = 5,
  kNumerical = 6,
  kDimension = 7,
};

std::string point_text(const Eigen::VectorXd& v) {
  std::string s = "(";
  for (Eigen::Index j = 0; j < v.size(); ++j) s += (j ? ", " : "") + format_number(v[j]);
  return s + ")";
}

void print_report(const OptimalityReport& r) {
  std::cout << "verdict: " << to_string(r.verdict) << " (tol " << format_number(r.tolerance) << ")\n";
  for (std::size_t i = 0; i < r.chain_residuals.size(); ++i) {
    std::cout << "  a" << i + 1 << " residual " << point_text(r.chain_residuals[i])
              << (r.chain_indeterminate[i] ? "  indeterminate" : r.chain_normal_ok[i] ? "  ok" : "  FAIL") << "\n";
  }
  std::cout << "  x  residual " << point_text(r.hub_residual)
            << (r.hub_indeterminate ? "  indeterminate" : r.hub_normal_ok ? "  ok" : "  FAIL") << "\n";
  std::cout << "global balance norm: " << format_number(r.global_balance_norm) << "\n";
  if (!r.disjointness.plausibly_disjoint()) {
    std::cout << "warning: " << r.disjointness.pairs.size()
              << " pair(s) of sets are not separated; the equilibrium test assumes disjoint sets\n";
  }
}

struct SolveArgs {
  std::string spec;
  std::optional<double> tolerance;
  std::optional<std::int64_t> max_iter;
  std::optional<std::string> step_rule;
  std::optional<double> step_scale;
  std::optional<double> step_offset;
  bool stop_on_gradient = false;
  bool anchors = false;
  std::string out = ".";
  double verify_tol = 1e-4;
};

int run_solve(const SolveArgs& a) {
  ProblemSpec spec = load_problem(a.spec);
  SolverConfig cfg = spec.solver;
  if (a.tolerance) cfg.tolerance = *a.tolerance;
  if (a.max_iter) cfg.max_iter = *a.max_iter;
  if (a.step_rule) cfg.step_rule = *step_rule_from_string(*a.step_rule);
  if (a.step_scale) cfg.step_scale = *a.step_scale;
  if (a.step_offset) cfg.step_offset = *a.step_offset;
  if (a.stop_on_gradient) cfg.stop_on_gradient = true;

  const Problem& p = spec.problem;
  const Configuration start =
      (spec.init && !a.anchors) ? initialize_projected(p, *spec.init) : initialize_anchors(p);
  const SolveResult result = solve(p, start, cfg);
  const OptimalityReport report = verify(p, result.best_config, a.verify_tol);

  fs::create_directories(a.out);
  const fs::path results_path = fs::path(a.out) / "results.json";
  const fs::path trace_path = fs::path(a.out) / "trace.csv";
  write_file_atomic(trace_path, trace_csv(result.trace));
  write_file_atomic(results_path, serialize_results(make_results(result, report, trace_path.filename().string())));

  std::cout << "J_best: " << format_number(result.best_objective) << "\n";
  std::cout << "iterations: " << result.iterations << " (" << to_string(result.stop_reason) << ")\n";
  for (const auto& cp : result.checkpoints) {
    std::cout << "  |dJ| < " << format_number(cp.tolerance) << " first at k = "
              << (cp.iteration ? std::to_string(*cp.iteration) : std::string("-")) << "\n";
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::cout << "a" << i + 1 << " = " << point_text(result.best_config.chain(i)) << "\n";
  }
  std::cout << "x  = " << point_text(result.best_config.hub()) << "\n";
  print_report(report);
  std::cout << "wrote " << results_path.string() << " and " << trace_path.string() << "\n";
  return kOk;
}

int run_verify(const std::string& spec_path, const std::string& results_path, double tol, bool strict) {
  ProblemSpec spec = load_problem(spec_path);
  ResultsDocument doc = load_results(results_path, spec.problem);
  std::cout << "J_best: " << format_number(doc.best_objective) << " (matches recomputed objective)\n";
  const OptimalityReport report = verify(spec.problem, doc.best_config, tol);
  print_report(report);
  if (strict && report.verdict != Verdict::optimal_within_tol) return kNotOptimal;
  return kOk;
}

int run_render(const std::string& spec_path, const std::string& results_path, const std::string& svg) {
  ProblemSpec spec = load_problem(spec_path);
  ResultsDocument doc = load_results(results_path, spec.problem);
  write_svg(spec.problem, doc.best_config, svg);
  std::cout << "wrote " << svg << "\n";
  return kOk;
}

int run_check(const std::string& spec_path, double margin) {
  ProblemSpec spec = load_problem(spec_path);
  const Problem& p = spec.problem;
  std::cout << "n = " << p.dimension() << ", m = " << p.size() << "\n";

  const auto bad = check_nondegeneracy(p);
  if (bad.empty()) {
    std::cout << "nondegeneracy: ok\n";
  } else {
    std::cout << "nondegeneracy: violated at";
    for (auto k : bad) std::cout << " a" << k + 1;
    std::cout << "\n";
    return kOk;
  }

  const ExistenceReport existence = check_existence(p);
  for (const auto& e : existence.entries) {
    std::cout << "component {";
    for (std::size_t j = 0; j < e.component.indices.size(); ++j) {
      std::cout << (j ? ", " : "") << "a" << e.component.indices[j] + 1;
    }
    std::cout << "}" << (e.component.includes_hub ? " with hub" : " without hub") << ": condition ("
              << e.condition << ") " << (e.satisfied ? "satisfied" : "NOT satisfied") << "\n";
  }
  std::cout << "existence: " << (existence.satisfied ? "guaranteed" : "not guaranteed") << "\n";

  const DisjointnessReport disjoint = check_pairwise_disjoint(p, margin);
  if (disjoint.plausibly_disjoint()) {
    std::cout << "pairwise separation (margin " << format_number(margin) << "): ok\n";
  } else {
    for (const auto& pair : disjoint.pairs) {
      std::cout << "sets a" << pair.first + 1 << " and "
                << (pair.second == kHubIndex ? std::string("hub") : "a" + std::to_string(pair.second + 1))
                << " are within " << format_number(pair.distance) << "\n";
    }
  }
  if (uniqueness_expected(p)) std::cout << "note: all sets strictly convex with positive weights; optimum is unique\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projected subgradient solver for the weighted Heron–waist problem"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Run the projected subgradient method and verify the result");
  solve_cmd->add_option("spec", solve_args.spec, "Problem file (JSON)")->required();
  solve_cmd->add_option("--tolerance", solve_args.tolerance, "Stop when |J(k+1) - J(k)| falls below this");
  solve_cmd->add_option("--max-iter", solve_args.max_iter, "Iteration cap");
  solve_cmd->add_option("--step-rule", solve_args.step_rule, "harmonic | harmonic_offset | sqrt_decay")
      ->check(CLI::IsMember({"harmonic", "harmonic_offset", "sqrt_decay"}));
  solve_cmd->add_option("--step-scale", solve_args.step_scale, "Step scale c");
  solve_cmd->add_option("--step-offset", solve_args.step_offset, "Offset k0 for harmonic_offset");
  solve_cmd->add_flag("--stop-on-gradient", solve_args.stop_on_gradient, "Also stop when ||g|| < tolerance");
  solve_cmd->add_flag("--anchors", solve_args.anchors, "Start from set anchors instead of the file's init");
  solve_cmd->add_option("--out", solve_args.out, "Output directory for results.json and trace.csv");
  solve_cmd->add_option("--verify-tol", solve_args.verify_tol, "Normal-cone tolerance for the verification");

  std::string spec_path, results_path, svg_path;
  double verify_tol = 1e-4;
  bool strict = false;
  auto* verify_cmd = app.add_subcommand("verify", "Check the equilibrium conditions at a stored result");
  verify_cmd->add_option("spec", spec_path, "Problem file")->required();
  verify_cmd->add_option("results", results_path, "Results file")->required();
  verify_cmd->add_option("--tol", verify_tol, "Normal-cone tolerance");
  verify_cmd->add_flag("--strict", strict, "Exit 1 unless the verdict is optimal_within_tol");

  auto* render_cmd = app.add_subcommand("render", "Draw a planar result as SVG");
  render_cmd->add_option("spec", spec_path, "Problem file")->required();
  render_cmd->add_option("results", results_path, "Results file")->required();
  render_cmd->add_option("--svg", svg_path, "Output SVG path")->required();

  double margin = 0.0;
  auto* check_cmd = app.add_subcommand("check", "Run the structural diagnostics on a problem file");
  check_cmd->add_option("spec", spec_path, "Problem file")->required();
  check_cmd->add_option("--margin", margin, "Flag set pairs closer than this");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve_cmd) return run_solve(solve_args);
    if (*verify_cmd) return run_verify(spec_path, results_path, verify_tol, strict);
    if (*render_cmd) return run_render(spec_path, results_path, svg_path);
    if (*check_cmd) return run_check(spec_path, margin);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.what() << "\n";
    return kParse;
  } catch (const StructuralError& e) {
    std::cerr << "invalid problem: " << e.what() << "\n";
    return kStructural;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kStructural;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const UnsupportedDimension& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kDimension;
  }
  return kUsage;
}
