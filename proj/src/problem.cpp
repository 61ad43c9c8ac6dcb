#include "heronwaist/problem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "heronwaist/errors.hpp"

namespace heronwaist {

namespace {

void check_weights(const std::vector<double>& w, const char* name, std::size_t m) {
  if (w.size() != m) {
    throw StructuralError(std::string(name) + " has length " + std::to_string(w.size()) + ", expected " +
                          std::to_string(m));
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!std::isfinite(w[i]) || w[i] < 0.0) {
      throw StructuralError(std::string(name) + "[" + std::to_string(i) + "] must be finite and nonnegative");
    }
  }
}

}  // namespace

Problem::Problem(std::vector<ConvexSet> chain_sets, ConvexSet hub_set, Weights weights, ProblemOptions options)
    : chain_sets_(std::move(chain_sets)),
      hub_set_(std::move(hub_set)),
      weights_(std::move(weights)),
      options_(options),
      dimension_(hub_set_.dimension()) {
  const std::size_t min_length = options_.allow_two_vertex_chain ? 2 : 3;
  if (chain_sets_.size() < min_length) {
    throw StructuralError("chain_sets has " + std::to_string(chain_sets_.size()) + " entries, need at least " +
                          std::to_string(min_length));
  }
  for (std::size_t i = 0; i < chain_sets_.size(); ++i) {
    if (chain_sets_[i].dimension() != dimension_) {
      throw StructuralError("chain_sets[" + std::to_string(i) + "] has dimension " +
                            std::to_string(chain_sets_[i].dimension()) + ", hub set has " +
                            std::to_string(dimension_));
    }
  }
  check_weights(weights_.rho, "rho", chain_sets_.size());
  check_weights(weights_.omega, "omega", chain_sets_.size());
  if (!options_.allow_degenerate) {
    const auto bad = check_nondegeneracy(*this);
    if (!bad.empty()) {
      throw StructuralError("weights leave chain vertex " + std::to_string(bad.front()) +
                            " out of the objective (rho[k-1] + rho[k] + omega[k] == 0)");
    }
  }
}

bool Problem::operator==(const Problem& other) const {
  return chain_sets_ == other.chain_sets_ && hub_set_ == other.hub_set_ && weights_.rho == other.weights_.rho &&
         weights_.omega == other.weights_.omega;
}

Configuration Configuration::from_points(const std::vector<Point>& chain_points, const Point& hub_point) {
  if (chain_points.empty()) throw InvalidInput("configuration needs at least one chain point");
  const int n = int(hub_point.size());
  if (n < 1) throw InvalidInput("hub point must have dimension >= 1");
  Configuration u(n, chain_points.size());
  for (std::size_t i = 0; i < chain_points.size(); ++i) {
    if (chain_points[i].size() != n) {
      throw InvalidInput("chain point " + std::to_string(i) + " has dimension " +
                         std::to_string(chain_points[i].size()) + ", hub has " + std::to_string(n));
    }
    u.chain(i) = chain_points[i];
  }
  u.hub() = hub_point;
  if (!u.flat().allFinite()) throw InvalidInput("configuration has non-finite coordinates");
  return u;
}

std::vector<Point> Configuration::chain_points() const {
  std::vector<Point> out;
  out.reserve(chain_length_);
  for (std::size_t i = 0; i < chain_length_; ++i) out.emplace_back(chain(i));
  return out;
}

void check_shape(const Problem& p, const BlockVector& u) {
  if (u.dimension() != p.dimension() || u.chain_length() != p.size()) {
    throw InvalidInput("configuration shape (n=" + std::to_string(u.dimension()) +
                       ", m=" + std::to_string(u.chain_length()) + ") does not match problem (n=" +
                       std::to_string(p.dimension()) + ", m=" + std::to_string(p.size()) + ")");
  }
}

double objective(const Problem& p, const Configuration& u) {
  check_shape(p, u);
  const auto& rho = p.rho();
  const auto& omega = p.omega();
  double waist = 0.0;
  double heron = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    waist += rho[i] * (u.chain(i) - u.chain(p.next(i))).norm();
    heron += omega[i] * (u.chain(i) - u.hub()).norm();
  }
  return waist + heron;
}

std::vector<std::size_t> check_nondegeneracy(const Problem& p) {
  std::vector<std::size_t> bad;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p.rho()[p.prev(k)] + p.rho()[k] + p.omega()[k] == 0.0) bad.push_back(k);
  }
  return bad;
}

std::vector<Component> connected_components(const Problem& p) {
  if (!check_nondegeneracy(p).empty()) throw StructuralError("connected_components requires nondegenerate weights");
  const std::size_t m = p.size();
  const auto& rho = p.rho();

  std::vector<Component> out;
  if (std::all_of(rho.begin(), rho.end(), [](double r) { return r > 0.0; })) {
    Component c;
    for (std::size_t i = 0; i < m; ++i) c.indices.push_back(i);
    out.push_back(std::move(c));
  } else {
    // Start right after a broken edge so that each run of linked vertices is
    // contiguous in the walk.
    std::size_t start = 0;
    while (rho[start] > 0.0) ++start;
    start = p.next(start);
    Component current;
    for (std::size_t step = 0; step < m; ++step) {
      const std::size_t i = (start + step) % m;
      current.indices.push_back(i);
      if (rho[i] == 0.0) {
        std::sort(current.indices.begin(), current.indices.end());
        out.push_back(std::move(current));
        current = Component{};
      }
    }
    std::sort(out.begin(), out.end(),
              [](const Component& a, const Component& b) { return a.indices.front() < b.indices.front(); });
  }
  for (auto& c : out) {
    c.includes_hub = std::any_of(c.indices.begin(), c.indices.end(), [&](std::size_t k) { return p.omega()[k] > 0.0; });
  }
  return out;
}

ExistenceReport check_existence(const Problem& p) {
  ExistenceReport report{{}, true};
  for (auto& c : connected_components(p)) {
    const bool member_bounded =
        std::any_of(c.indices.begin(), c.indices.end(), [&](std::size_t k) { return p.chain_set(k).is_bounded(); });
    ExistenceEntry entry{c, c.includes_hub ? 'a' : 'b', member_bounded};
    if (c.includes_hub) entry.satisfied = member_bounded || p.hub_set().is_bounded();
    report.satisfied = report.satisfied && entry.satisfied;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

DisjointnessReport check_pairwise_disjoint(const Problem& p, double margin) {
  DisjointnessReport report{margin, {}};
  const std::size_t m = p.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double d = set_distance(p.chain_set(i), p.chain_set(j));
      if (d <= margin) report.pairs.push_back({i, j, d});
    }
    const double d = set_distance(p.chain_set(i), p.hub_set());
    if (d <= margin) report.pairs.push_back({i, kHubIndex, d});
  }
  return report;
}

bool uniqueness_expected(const Problem& p) {
  auto strictly_convex = [](const ConvexSet& s) {
    return s.kind() == SetKind::ball || s.kind() == SetKind::singleton;
  };
  auto positive = [](double w) { return w > 0.0; };
  return std::all_of(p.chain_sets().begin(), p.chain_sets().end(), strictly_convex) &&
         strictly_convex(p.hub_set()) && std::all_of(p.rho().begin(), p.rho().end(), positive) &&
         std::all_of(p.omega().begin(), p.omega().end(), positive);
}

}  // namespace heronwaist
