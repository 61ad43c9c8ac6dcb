#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "heronwaist/geometry.hpp"

namespace heronwaist {

// Indices are 0-based throughout the library. Chain index i is linked to
// i + 1 (mod m) by the waist weight rho[i].

struct Weights {
  std::vector<double> rho;    // waist weights, one per chain edge (i, i+1)
  std::vector<double> omega;  // radial weights, one per chain vertex
};

struct ProblemOptions {
  // Accept m = 2; the waist sum is then applied literally and counts the
  // single edge twice.
  bool allow_two_vertex_chain = false;
  // Accept weights that leave some chain vertex out of the objective.
  bool allow_degenerate = false;
};

/// A Heron–waist instance: m chain sets, one hub set and the two weight vectors.
class Problem {
 public:
  /// Validates dimensions, weight lengths and signs, the chain length and
  /// (unless opted out) nondegeneracy. Throws StructuralError.
  Problem(std::vector<ConvexSet> chain_sets, ConvexSet hub_set, Weights weights, ProblemOptions options = {});

  int dimension() const { return dimension_; }
  std::size_t size() const { return chain_sets_.size(); }

  const std::vector<ConvexSet>& chain_sets() const { return chain_sets_; }
  const ConvexSet& chain_set(std::size_t i) const { return chain_sets_.at(i); }
  const ConvexSet& hub_set() const { return hub_set_; }
  const Weights& weights() const { return weights_; }
  const std::vector<double>& rho() const { return weights_.rho; }
  const std::vector<double>& omega() const { return weights_.omega; }
  const ProblemOptions& options() const { return options_; }

  std::size_t next(std::size_t i) const { return i + 1 == size() ? 0 : i + 1; }
  std::size_t prev(std::size_t i) const { return i == 0 ? size() - 1 : i - 1; }

  bool operator==(const Problem& other) const;

 private:
  std::vector<ConvexSet> chain_sets_;
  ConvexSet hub_set_;
  Weights weights_;
  ProblemOptions options_;
  int dimension_;
};

/// Fixed-size stack of m + 1 points in R^n stored contiguously:
/// blocks 0..m-1 are the chain points, block m is the hub.
class BlockVector {
 public:
  BlockVector() = default;
  BlockVector(int dimension, std::size_t chain_length)
      : dimension_(dimension), chain_length_(chain_length),
        data_(Eigen::VectorXd::Zero(dimension * Eigen::Index(chain_length + 1))) {}

  int dimension() const { return dimension_; }
  std::size_t chain_length() const { return chain_length_; }

  auto chain(std::size_t i) { return data_.segment(Eigen::Index(i) * dimension_, dimension_); }
  auto chain(std::size_t i) const { return data_.segment(Eigen::Index(i) * dimension_, dimension_); }
  auto hub() { return data_.tail(dimension_); }
  auto hub() const { return data_.tail(dimension_); }

  Eigen::VectorXd& flat() { return data_; }
  const Eigen::VectorXd& flat() const { return data_; }

  bool operator==(const BlockVector& other) const = default;

 protected:
  int dimension_ = 0;
  std::size_t chain_length_ = 0;
  Eigen::VectorXd data_;
};

/// Decision variable u = (a_1, ..., a_m, x).
class Configuration : public BlockVector {
 public:
  using BlockVector::BlockVector;

  /// Throws InvalidInput if the points disagree in dimension, are
  /// non-finite, or fewer than one chain point is given.
  static Configuration from_points(const std::vector<Point>& chain_points, const Point& hub_point);

  std::vector<Point> chain_points() const;
  Point hub_point() const { return hub(); }
};

/// Throws InvalidInput unless `u` has the shape of a configuration for `p`.
void check_shape(const Problem& p, const BlockVector& u);

/// Weighted closed-chain perimeter plus weighted hub distances. Defined for
/// any configuration of the right shape, feasible or not.
double objective(const Problem& p, const Configuration& u);

/// Chain indices k with rho[k-1] + rho[k] + omega[k] == 0 (cyclic).
std::vector<std::size_t> check_nondegeneracy(const Problem& p);

struct Component {
  std::vector<std::size_t> indices;  // ascending
  bool includes_hub = false;
};

/// Connected pieces of the chain graph, where i and i+1 are linked iff
/// rho[i] > 0. A component includes the hub iff one of its members has a
/// positive radial weight; several components may share the hub.
/// Components are ordered by their smallest index.
/// Throws StructuralError if the problem is degenerate.
std::vector<Component> connected_components(const Problem& p);

struct ExistenceEntry {
  Component component;
  // 'a' for hub-attached components (hub set or some member bounded),
  // 'b' for hubless ones (some member bounded).
  char condition;
  bool satisfied;
};

struct ExistenceReport {
  std::vector<ExistenceEntry> entries;
  bool satisfied;
};

ExistenceReport check_existence(const Problem& p);

inline constexpr std::size_t kHubIndex = std::numeric_limits<std::size_t>::max();

struct OverlapPair {
  std::size_t first;
  std::size_t second;  // kHubIndex for the hub set
  double distance;
};

struct DisjointnessReport {
  double margin;
  std::vector<OverlapPair> pairs;
  bool plausibly_disjoint() const { return pairs.empty(); }
};

/// Every pair of constraint sets (chain/chain and chain/hub) whose
/// set_distance is <= margin. This is a necessary condition for general
/// position, not a certificate of it.
DisjointnessReport check_pairwise_disjoint(const Problem& p, double margin);

/// True when every set is a ball or singleton and every weight is positive,
/// the case in which the optimum is known to be unique.
bool uniqueness_expected(const Problem& p);

}  // namespace heronwaist
