#include "heronwaist/subgradient.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "heronwaist/errors.hpp"

namespace heronwaist {

namespace {

// Adds weight * (from - to) / ||from - to|| to out. Returns false (and adds
// nothing) when the two points coincide.
template <class A, class B, class Out>
bool add_unit_term(double weight, const A& from, const B& to, Out&& out) {
  const double dist = (from - to).norm();
  if (dist < kCoincidenceThreshold) return false;
  if (weight != 0.0) out += (weight / dist) * (from - to);
  return true;
}

template <class Out>
void chain_block(const Problem& p, const Configuration& u, std::size_t i, CoincidenceRule rule, Out&& out) {
  out.setZero();
  const auto ai = u.chain(i);
  bool clean = add_unit_term(p.rho()[p.prev(i)], ai, u.chain(p.prev(i)), out);
  clean = add_unit_term(p.rho()[i], ai, u.chain(p.next(i)), out) && clean;
  clean = add_unit_term(p.omega()[i], ai, u.hub(), out) && clean;
  if (!clean && rule == CoincidenceRule::whole_block) out.setZero();
}

template <class Out>
void hub_block(const Problem& p, const Configuration& u, Out&& out) {
  out.setZero();
  for (std::size_t i = 0; i < p.size(); ++i) add_unit_term(p.omega()[i], u.hub(), u.chain(i), out);
}

}  // namespace

Point chain_subgradient(const Problem& p, const Configuration& u, std::size_t i, CoincidenceRule rule) {
  check_shape(p, u);
  if (i >= p.size()) {
    throw InvalidInput("chain index " + std::to_string(i) + " out of range for m=" + std::to_string(p.size()));
  }
  Point g(p.dimension());
  chain_block(p, u, i, rule, g);
  return g;
}

Point hub_subgradient(const Problem& p, const Configuration& u) {
  check_shape(p, u);
  Point g(p.dimension());
  hub_block(p, u, g);
  return g;
}

SubgradientVector full_subgradient(const Problem& p, const Configuration& u, CoincidenceRule rule) {
  check_shape(p, u);
  SubgradientVector g(p.dimension(), p.size());
  full_subgradient_into(p, u, rule, g);
  return g;
}

void full_subgradient_into(const Problem& p, const Configuration& u, CoincidenceRule rule, SubgradientVector& out) {
  for (std::size_t i = 0; i < p.size(); ++i) chain_block(p, u, i, rule, out.chain(i));
  hub_block(p, u, out.hub());
}

double subgradient_bound(const Problem& p) {
  const auto& rho = p.rho();
  const auto& omega = p.omega();
  double max_pair = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) max_pair = std::max(max_pair, rho[j] + rho[p.next(j)]);
  const double max_omega = *std::max_element(omega.begin(), omega.end());
  const double total_omega = std::accumulate(omega.begin(), omega.end(), 0.0);
  const double chain_term = max_pair + max_omega;
  return std::sqrt(double(p.size()) * chain_term * chain_term + total_omega * total_omega);
}

}  // namespace heronwaist
