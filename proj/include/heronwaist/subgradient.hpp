#pragma once

#include "heronwaist/problem.hpp"

namespace heronwaist {

// A distance below this is treated as zero and its unit-vector term dropped.
inline constexpr double kCoincidenceThreshold = 1e-15;

enum class CoincidenceRule {
  // Drop only the terms whose own distance vanishes.
  per_term,
  // Zero the whole chain block as soon as any of its three distances
  // vanishes (the hub block is always handled per term).
  whole_block,
};

/// Subgradient of the objective, laid out like a Configuration.
class SubgradientVector : public BlockVector {
 public:
  using BlockVector::BlockVector;
  double norm() const { return data_.norm(); }
};

/// Block of the subgradient belonging to chain point i.
/// Throws InvalidInput if i is out of range.
Point chain_subgradient(const Problem& p, const Configuration& u, std::size_t i,
                        CoincidenceRule rule = CoincidenceRule::per_term);

/// Block of the subgradient belonging to the hub.
Point hub_subgradient(const Problem& p, const Configuration& u);

SubgradientVector full_subgradient(const Problem& p, const Configuration& u,
                                   CoincidenceRule rule = CoincidenceRule::per_term);

/// Writes the subgradient into `out` without shape checks. `out` must have
/// been constructed with the problem's shape.
void full_subgradient_into(const Problem& p, const Configuration& u, CoincidenceRule rule, SubgradientVector& out);

/// Uniform bound on the norm of every subgradient returned above:
/// sqrt(m * (max_j(rho_j + rho_{j+1}) + max_j omega_j)^2 + (sum_j omega_j)^2).
double subgradient_bound(const Problem& p);

}  // namespace heronwaist
