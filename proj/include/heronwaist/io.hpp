#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heronwaist/optimality.hpp"
#include "heronwaist/problem.hpp"
#include "heronwaist/solver.hpp"

namespace heronwaist {

/// A parsed problem document: the instance plus optional starting point and
/// solver settings.
struct ProblemSpec {
  Problem problem;
  // Explicit starting point; empty when the document asks for anchors or
  // says nothing.
  std::optional<Configuration> init;
  SolverConfig solver;

  bool operator==(const ProblemSpec& other) const;
};

/// Parses the JSON problem format. Syntax errors raise ParseError located as
/// "line:column"; schema errors raise ParseError naming the field as a JSON
/// pointer; semantic validation failures (weight lengths, nondegeneracy)
/// raise StructuralError.
ProblemSpec parse_problem(std::string_view text);
ProblemSpec load_problem(const std::filesystem::path& path);

/// Inverse of parse_problem. Doubles are written in shortest round-trip form.
std::string serialize_problem(const ProblemSpec& spec);

struct OptimalitySummary {
  double tolerance = 0.0;
  Verdict verdict = Verdict::indeterminate;
  double global_balance_norm = 0.0;
  std::vector<bool> chain_normal_ok;
  std::vector<bool> chain_indeterminate;
  bool hub_normal_ok = false;
  bool hub_indeterminate = false;
  std::size_t overlapping_pairs = 0;
};

OptimalitySummary summarize(const OptimalityReport& report);

/// Contents of a results file.
struct ResultsDocument {
  Configuration best_config;
  double best_objective = 0.0;
  std::int64_t iterations = 0;
  StopReason stop_reason = StopReason::max_iter;
  bool initial_projected = false;
  std::vector<Checkpoint> checkpoints;
  std::optional<OptimalitySummary> optimality;
  std::string trace_file;
};

ResultsDocument make_results(const SolveResult& result, const std::optional<OptimalityReport>& report,
                             std::string trace_file);

std::string serialize_results(const ResultsDocument& doc);

/// Parses a results file written for `p`. Throws ParseError on malformed
/// documents and StructuralError if the configuration does not fit `p` or
/// the stored objective differs from the recomputed one by more than 1e-12.
ResultsDocument parse_results(std::string_view text, const Problem& p);
ResultsDocument load_results(const std::filesystem::path& path, const Problem& p);

/// Comma-separated trace with header k,J,J_best,alpha,grad_norm; values in
/// 12 significant digits.
std::string trace_csv(const std::vector<TraceRecord>& trace);

/// %.12g formatting used for human-readable output.
std::string format_number(double value);

std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace heronwaist
