#include "heronwaist/solver.hpp"

#include <cmath>
#include <future>
#include <random>
#include <string>

namespace heronwaist {

const char* to_string(StepRule rule) {
  switch (rule) {
    case StepRule::harmonic: return "harmonic";
    case StepRule::harmonic_offset: return "harmonic_offset";
    case StepRule::sqrt_decay: return "sqrt_decay";
  }
  return "unknown";
}

std::optional<StepRule> step_rule_from_string(const std::string& name) {
  if (name == "harmonic") return StepRule::harmonic;
  if (name == "harmonic_offset") return StepRule::harmonic_offset;
  if (name == "sqrt_decay") return StepRule::sqrt_decay;
  return std::nullopt;
}

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::objective_stagnation: return "objective_stagnation";
    case StopReason::gradient_small: return "gradient_small";
    case StopReason::max_iter: return "max_iter";
  }
  return "unknown";
}

double step_size(const SolverConfig& cfg, std::int64_t k) {
  if (k < 1) throw InvalidInput("step index must be >= 1, got " + std::to_string(k));
  const double kd = double(k);
  switch (cfg.step_rule) {
    case StepRule::harmonic: return cfg.step_scale / kd;
    case StepRule::harmonic_offset: return cfg.step_scale / (kd + cfg.step_offset);
    case StepRule::sqrt_decay: return cfg.step_scale / std::sqrt(kd);
  }
  return 0.0;
}

namespace {

void check_config(const SolverConfig& cfg) {
  if (!(cfg.step_scale > 0.0) || !std::isfinite(cfg.step_scale)) throw InvalidInput("step_scale must be positive");
  if (!(cfg.step_offset >= 0.0) || !std::isfinite(cfg.step_offset)) {
    throw InvalidInput("step_offset must be nonnegative");
  }
  if (!(cfg.tolerance > 0.0)) throw InvalidInput("tolerance must be positive");
  if (cfg.max_iter < 1) throw InvalidInput("max_iter must be positive");
  if (cfg.trace_full_records < 1) throw InvalidInput("trace_full_records must be positive");
}

void project_blocks(const Problem& p, const Configuration& in, Configuration& out) {
  for (std::size_t i = 0; i < p.size(); ++i) p.chain_set(i).project_into(in.chain(i), out.chain(i));
  p.hub_set().project_into(in.hub(), out.hub());
}

bool traced(std::int64_t k, std::int64_t full) {
  if (k <= full) return true;
  const std::int64_t stride = (k + full - 1) / full;
  return k % stride == 0;
}

}  // namespace

Configuration project_feasible(const Problem& p, const Configuration& u_raw) {
  check_shape(p, u_raw);
  if (!u_raw.flat().allFinite()) throw InvalidInput("configuration has non-finite coordinates");
  Configuration out(p.dimension(), p.size());
  project_blocks(p, u_raw, out);
  return out;
}

bool is_feasible(const Problem& p, const Configuration& u, double tol) {
  check_shape(p, u);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!p.chain_set(i).contains(u.chain(i), tol)) return false;
  }
  return p.hub_set().contains(u.hub(), tol);
}

Configuration initialize_anchors(const Problem& p) {
  Configuration u(p.dimension(), p.size());
  for (std::size_t i = 0; i < p.size(); ++i) u.chain(i) = p.chain_set(i).anchor();
  u.hub() = p.hub_set().anchor();
  return u;
}

Configuration initialize_projected(const Problem& p, const Configuration& u_raw) { return project_feasible(p, u_raw); }

SolveResult solve(const Problem& p, const Configuration& u0, const SolverConfig& cfg, const IterationObserver& observer) {
  check_config(cfg);
  check_shape(p, u0);
  if (!check_nondegeneracy(p).empty()) throw StructuralError("solve requires nondegenerate weights");

  SolveResult result;
  Configuration current = project_feasible(p, u0);
  result.initial_projected = !is_feasible(p, u0);

  double current_objective = objective(p, current);
  if (!std::isfinite(current_objective)) throw DivergenceError("objective at the starting point is not finite", {});

  result.best_config = current;
  result.best_objective = current_objective;
  for (double tol : kCheckpointTolerances) result.checkpoints.push_back({tol, std::nullopt});

  SubgradientVector g(p.dimension(), p.size());
  Configuration next(p.dimension(), p.size());
  std::int64_t k = 1;
  for (;; ++k) {
    full_subgradient_into(p, current, cfg.coincidence, g);
    const double grad_norm = g.norm();
    const double alpha = step_size(cfg, k);

    next.flat() = current.flat() - alpha * g.flat();
    project_blocks(p, next, next);
    const double next_objective = objective(p, next);

    if (!std::isfinite(next_objective)) {
      result.trace.push_back({k, next_objective, result.best_objective, alpha, grad_norm});
      throw DivergenceError("objective became non-finite at iteration " + std::to_string(k),
                            std::move(result.trace));
    }
    if (next_objective < result.best_objective) {
      result.best_objective = next_objective;
      result.best_config = next;
    }
    if (observer) observer(IterationView{k, current, g, alpha, current_objective, next, next_objective});

    const double change = std::abs(next_objective - current_objective);
    for (auto& cp : result.checkpoints) {
      if (!cp.iteration && change < cp.tolerance) cp.iteration = k;
    }

    std::optional<StopReason> stop;
    if (cfg.stop_on_gradient && grad_norm < cfg.tolerance) {
      stop = StopReason::gradient_small;
    } else if (change < cfg.tolerance) {
      stop = StopReason::objective_stagnation;
    } else if (k >= cfg.max_iter) {
      stop = StopReason::max_iter;
    }

    if (stop || traced(k, cfg.trace_full_records)) {
      result.trace.push_back({k, next_objective, result.best_objective, alpha, grad_norm});
    }

    std::swap(current, next);
    current_objective = next_objective;
    if (stop) {
      result.stop_reason = *stop;
      break;
    }
  }
  result.iterations = k;
  return result;
}

MultiStartResult solve_multistart(const Problem& p, const SolverConfig& cfg, const MultiStartOptions& options) {
  if (options.runs < 1) throw InvalidInput("multi-start needs at least one run");
  if (!(options.perturbation >= 0.0)) throw InvalidInput("perturbation must be nonnegative");

  // Starting points are drawn up front so that they do not depend on
  // scheduling.
  const Configuration anchors = initialize_anchors(p);
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> jitter(-options.perturbation, options.perturbation);
  std::vector<Configuration> starts;
  for (int r = 0; r < options.runs; ++r) {
    Configuration u = anchors;
    if (r > 0) {
      for (Eigen::Index j = 0; j < u.flat().size(); ++j) u.flat()[j] += jitter(rng);
    }
    starts.push_back(project_feasible(p, u));
  }

  std::vector<SolveResult> results(starts.size());
  if (options.parallel) {
    std::vector<std::future<SolveResult>> pending;
    for (const auto& u : starts) {
      pending.push_back(std::async(std::launch::async, [&p, &cfg, u] { return solve(p, u, cfg); }));
    }
    for (std::size_t r = 0; r < pending.size(); ++r) results[r] = pending[r].get();
  } else {
    for (std::size_t r = 0; r < starts.size(); ++r) results[r] = solve(p, starts[r], cfg);
  }

  MultiStartResult out;
  for (std::size_t r = 0; r < results.size(); ++r) {
    out.run_objectives.push_back(results[r].best_objective);
    if (results[r].best_objective < results[std::size_t(out.best_run)].best_objective) out.best_run = int(r);
  }
  out.best = std::move(results[std::size_t(out.best_run)]);
  return out;
}

}  // namespace heronwaist
