#include "heronwaist/optimality.hpp"

#include <string>

#include "heronwaist/errors.hpp"
#include "heronwaist/solver.hpp"
#include "heronwaist/subgradient.hpp"

namespace heronwaist {

namespace {

template <class A, class B>
bool coincident(double weight, const A& a, const B& b) {
  return weight > 0.0 && (a - b).norm() < kCoincidenceThreshold;
}

bool chain_is_degenerate(const Problem& p, const Configuration& u, std::size_t i) {
  const auto ai = u.chain(i);
  return coincident(p.rho()[p.prev(i)], ai, u.chain(p.prev(i))) || coincident(p.rho()[i], ai, u.chain(p.next(i))) ||
         coincident(p.omega()[i], ai, u.hub());
}

bool hub_is_degenerate(const Problem& p, const Configuration& u) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (coincident(p.omega()[i], u.hub(), u.chain(i))) return true;
  }
  return false;
}

}  // namespace

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::optimal_within_tol: return "optimal_within_tol";
    case Verdict::not_optimal: return "not_optimal";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "unknown";
}

std::optional<Point> chain_residual(const Problem& p, const Configuration& u, std::size_t i) {
  Point r = chain_subgradient(p, u, i, CoincidenceRule::per_term);
  if (chain_is_degenerate(p, u, i)) return std::nullopt;
  return r;
}

std::optional<Point> hub_residual(const Problem& p, const Configuration& u) {
  Point r = hub_subgradient(p, u);
  if (hub_is_degenerate(p, u)) return std::nullopt;
  return r;
}

OptimalityReport verify(const Problem& p, const Configuration& u, double tol) {
  check_shape(p, u);
  if (!(tol > 0.0)) throw InvalidInput("verification tolerance must be positive");
  if (!is_feasible(p, u, tol)) throw InvalidInput("candidate configuration is not feasible within tolerance");

  const std::size_t m = p.size();
  OptimalityReport report;
  report.tolerance = tol;
  Point balance = Point::Zero(p.dimension());
  bool any_failed = false;
  bool any_indeterminate = false;

  for (std::size_t i = 0; i < m; ++i) {
    Point r = chain_subgradient(p, u, i, CoincidenceRule::per_term);
    const bool degenerate = chain_is_degenerate(p, u, i);
    const bool ok = !degenerate && p.chain_set(i).normal_cone_contains(u.chain(i), -r, tol);
    balance -= r;
    report.chain_residuals.push_back(std::move(r));
    report.chain_indeterminate.push_back(degenerate);
    report.chain_normal_ok.push_back(ok);
    any_indeterminate = any_indeterminate || degenerate;
    any_failed = any_failed || (!degenerate && !ok);
  }

  report.hub_residual = hub_subgradient(p, u);
  report.hub_indeterminate = hub_is_degenerate(p, u);
  report.hub_normal_ok =
      !report.hub_indeterminate && p.hub_set().normal_cone_contains(u.hub(), -report.hub_residual, tol);
  balance -= report.hub_residual;
  any_indeterminate = any_indeterminate || report.hub_indeterminate;
  any_failed = any_failed || (!report.hub_indeterminate && !report.hub_normal_ok);

  report.global_balance_norm = balance.norm();
  if (any_failed) {
    report.verdict = Verdict::not_optimal;
  } else if (any_indeterminate) {
    report.verdict = Verdict::indeterminate;
  } else {
    report.verdict = Verdict::optimal_within_tol;
  }
  report.disjointness = check_pairwise_disjoint(p, tol);
  return report;
}

}  // namespace heronwaist
