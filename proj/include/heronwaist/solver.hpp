#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "heronwaist/errors.hpp"
#include "heronwaist/problem.hpp"
#include "heronwaist/subgradient.hpp"

namespace heronwaist {

enum class StepRule {
  harmonic,         // c / k
  harmonic_offset,  // c / (k + k0)
  sqrt_decay,       // c / sqrt(k); not square-summable, for experiments only
};

const char* to_string(StepRule rule);
std::optional<StepRule> step_rule_from_string(const std::string& name);

struct SolverConfig {
  StepRule step_rule = StepRule::harmonic;
  double step_scale = 1.0;
  double step_offset = 0.0;  // k0, used by harmonic_offset
  double tolerance = 1e-12;
  std::int64_t max_iter = 10'000'000;
  bool stop_on_gradient = false;
  // Every iteration up to this count is traced; afterwards iteration k is
  // traced iff k is a multiple of ceil(k / trace_full_records).
  std::int64_t trace_full_records = 10'000;
  CoincidenceRule coincidence = CoincidenceRule::per_term;
};

enum class StopReason { objective_stagnation, gradient_small, max_iter };

const char* to_string(StopReason reason);

/// State after iteration k: u^(k) -> u^(k+1).
struct TraceRecord {
  std::int64_t k;
  double objective;       // J(u^(k+1))
  double best_objective;  // best J seen up to and including u^(k+1)
  double step;            // alpha_k
  double grad_norm;       // ||g^(k)||
};

// Stagnation levels whose first crossing is recorded during every solve.
inline constexpr std::array<double, 5> kCheckpointTolerances{1e-4, 1e-6, 1e-8, 1e-10, 1e-12};

struct Checkpoint {
  double tolerance;
  // First k with |J(u^(k+1)) - J(u^(k))| < tolerance, if reached.
  std::optional<std::int64_t> iteration;
};

struct SolveResult {
  Configuration best_config;
  double best_objective = 0.0;
  std::int64_t iterations = 0;
  StopReason stop_reason = StopReason::max_iter;
  std::vector<TraceRecord> trace;
  std::vector<Checkpoint> checkpoints;
  // The starting point was outside the feasible set and had to be projected.
  bool initial_projected = false;
};

/// Thrown when the objective becomes non-finite; carries the trace so far.
class DivergenceError : public NumericalError {
 public:
  DivergenceError(const std::string& what, std::vector<TraceRecord> trace)
      : NumericalError(what), trace_(std::move(trace)) {}
  const std::vector<TraceRecord>& trace() const noexcept { return trace_; }

 private:
  std::vector<TraceRecord> trace_;
};

/// alpha_k for k >= 1. Throws InvalidInput for k < 1.
double step_size(const SolverConfig& cfg, std::int64_t k);

/// Blockwise projection onto C_1 x ... x C_m x S.
Configuration project_feasible(const Problem& p, const Configuration& u_raw);

bool is_feasible(const Problem& p, const Configuration& u, double tol = kMembershipTol);

/// Canonical starting point: every block at its set's anchor.
Configuration initialize_anchors(const Problem& p);

/// Projection of a user-supplied starting point onto the feasible set.
Configuration initialize_projected(const Problem& p, const Configuration& u_raw);

/// Read-only view of one iteration, handed to the optional observer.
struct IterationView {
  std::int64_t k;
  const Configuration& current;  // u^(k)
  const SubgradientVector& subgradient;
  double step;
  double current_objective;  // J(u^(k))
  const Configuration& next;  // u^(k+1)
  double next_objective;
};

using IterationObserver = std::function<void(const IterationView&)>;

/// Projected subgradient iteration
///   u^(k+1) = proj(u^(k) - alpha_k g^(k)),  k = 1, 2, ...
/// with u^(1) the (projected) starting point. Returns the best iterate seen.
/// Stops when |J(u^(k+1)) - J(u^(k))| < tolerance, when ||g^(k)|| < tolerance
/// (only with stop_on_gradient), or after max_iter iterations.
///
/// Throws StructuralError for degenerate problems, InvalidInput for a bad
/// configuration and DivergenceError if J becomes non-finite.
SolveResult solve(const Problem& p, const Configuration& u0, const SolverConfig& cfg,
                  const IterationObserver& observer = {});

struct MultiStartOptions {
  int runs = 4;
  double perturbation = 0.5;  // uniform in [-perturbation, perturbation] per coordinate
  std::uint64_t seed = 0;
  bool parallel = true;
};

struct MultiStartResult {
  SolveResult best;
  int best_run = 0;
  std::vector<double> run_objectives;
};

/// Independent solves from perturbed anchors (run 0 is unperturbed). The
/// winner is the lowest best_objective, ties going to the lowest run index.
/// Results do not depend on `parallel`.
MultiStartResult solve_multistart(const Problem& p, const SolverConfig& cfg, const MultiStartOptions& options);

}  // namespace heronwaist
