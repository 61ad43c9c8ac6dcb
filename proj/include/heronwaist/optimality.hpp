#pragma once

#include <optional>
#include <vector>

#include "heronwaist/problem.hpp"

namespace heronwaist {

enum class Verdict { optimal_within_tol, not_optimal, indeterminate };

const char* to_string(Verdict verdict);

/// First-order equilibrium check at a candidate configuration.
///
/// The residual at a chain point is the weighted sum of unit vectors pulling
/// it away from its two neighbours and the hub; the hub residual is the
/// weighted sum of unit vectors from the chain points to the hub. The
/// configuration is optimal iff each negated residual is a normal vector of
/// the corresponding set at that point.
struct OptimalityReport {
  std::vector<Point> chain_residuals;
  Point hub_residual;
  std::vector<bool> chain_normal_ok;
  // Set where a positively weighted term involves two coincident points, so
  // that the unit vector is undefined.
  std::vector<bool> chain_indeterminate;
  bool hub_normal_ok = false;
  bool hub_indeterminate = false;
  // || sum_i n_i + n_S || with the normals taken as the negated residuals.
  double global_balance_norm = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::indeterminate;
  // Sets closer than the tolerance; the equilibrium conditions assume
  // pairwise disjoint sets, so a nonempty list weakens the verdict.
  DisjointnessReport disjointness;
};

/// Residual at chain point i, or nullopt if a positively weighted term at i
/// has coincident endpoints. Throws InvalidInput if i is out of range.
std::optional<Point> chain_residual(const Problem& p, const Configuration& u, std::size_t i);

/// Residual at the hub, or nullopt if the hub coincides with a positively
/// weighted chain point.
std::optional<Point> hub_residual(const Problem& p, const Configuration& u);

/// Evaluates every residual and the normal-cone memberships at tolerance
/// `tol`. The verdict is not_optimal if any determinate membership fails,
/// otherwise indeterminate if some block is indeterminate, otherwise
/// optimal_within_tol. Throws InvalidInput if `u` is not feasible within
/// `tol` or `tol` is not positive.
OptimalityReport verify(const Problem& p, const Configuration& u, double tol);

}  // namespace heronwaist
