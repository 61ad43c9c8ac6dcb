#include "heronwaist/geometry.hpp"

#include <cmath>
#include <string>

#include "heronwaist/errors.hpp"

namespace heronwaist {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite(const Point& p, const char* what) {
  if (p.size() < 1) throw InvalidInput(std::string(what) + " must have dimension >= 1");
  if (!p.allFinite()) throw InvalidInput(std::string(what) + " has non-finite coordinates");
}

// v is (numerically) zero, or points along the unit vector dir with the sine
// of the angle between them at most tol.
bool along_ray(const Point& v, const Point& dir, double tol) {
  const double len = v.norm();
  if (len <= tol) return true;
  const double along = v.dot(dir);
  if (along < 0.0) return false;
  return (v - along * dir).norm() <= tol * len;
}

constexpr int kMaxAlternatingRounds = 10000;
constexpr double kAlternatingImprovement = 1e-12;
constexpr double kAlternatingFloor = 1e-9;

double alternating_projections(const ConvexSet& a, const ConvexSet& b) {
  Point pa = a.anchor();
  Point pb(pa.size());
  double gap = std::numeric_limits<double>::infinity();
  for (int round = 0; round < kMaxAlternatingRounds; ++round) {
    b.project_into(pa, pb);
    a.project_into(pb, pa);
    const double next = (pa - pb).norm();
    const bool stalled = gap - next < kAlternatingImprovement;
    gap = next;
    if (stalled) break;
  }
  return gap < kAlternatingFloor ? 0.0 : gap;
}

}  // namespace

const char* to_string(SetKind kind) {
  switch (kind) {
    case SetKind::ball: return "ball";
    case SetKind::box: return "box";
    case SetKind::halfspace: return "halfspace";
    case SetKind::singleton: return "singleton";
  }
  return "unknown";
}

ConvexSet ConvexSet::ball(Point center, double radius) {
  require_finite(center, "ball center");
  if (!std::isfinite(radius) || radius <= 0.0) throw InvalidInput("ball radius must be positive and finite");
  return ConvexSet(Ball{std::move(center), radius});
}

ConvexSet ConvexSet::box(Point center, Point half_widths) {
  require_finite(center, "box center");
  require_finite(half_widths, "box half_widths");
  if (center.size() != half_widths.size()) throw InvalidInput("box center and half_widths differ in dimension");
  if ((half_widths.array() <= 0.0).any()) throw InvalidInput("box half_widths must all be positive");
  return ConvexSet(Box{std::move(center), std::move(half_widths)});
}

ConvexSet ConvexSet::halfspace(Point normal, double offset) {
  require_finite(normal, "halfspace normal");
  if (!std::isfinite(offset)) throw InvalidInput("halfspace offset must be finite");
  if (normal.norm() <= 0.0) throw InvalidInput("halfspace normal must be nonzero");
  return ConvexSet(HalfSpace{std::move(normal), offset});
}

ConvexSet ConvexSet::singleton(Point point) {
  require_finite(point, "singleton point");
  return ConvexSet(Singleton{std::move(point)});
}

int ConvexSet::dimension() const {
  return std::visit(overloaded{[](const Ball& s) { return int(s.center.size()); },
                               [](const Box& s) { return int(s.center.size()); },
                               [](const HalfSpace& s) { return int(s.normal.size()); },
                               [](const Singleton& s) { return int(s.point.size()); }},
                    shape_);
}

SetKind ConvexSet::kind() const { return static_cast<SetKind>(shape_.index()); }

void ConvexSet::check_point(const Point& x) const {
  if (x.size() != dimension()) {
    throw InvalidInput("point has dimension " + std::to_string(x.size()) + ", set has dimension " +
                       std::to_string(dimension()));
  }
  if (!x.allFinite()) throw InvalidInput("point has non-finite coordinates");
}

void ConvexSet::project_into(Eigen::Ref<const Eigen::VectorXd> x, Eigen::Ref<Eigen::VectorXd> out) const {
  std::visit(overloaded{[&](const Ball& s) {
                          const double dist = (x - s.center).norm();
                          if (dist > s.radius) {
                            out = s.center + (s.radius / dist) * (x - s.center);
                          } else {
                            out = x;
                          }
                        },
                        [&](const Box& s) {
                          out = x.cwiseMax(s.center - s.half_widths).cwiseMin(s.center + s.half_widths);
                        },
                        [&](const HalfSpace& s) {
                          const double excess = s.normal.dot(x) - s.offset;
                          if (excess > 0.0) {
                            out = x - (excess / s.normal.squaredNorm()) * s.normal;
                          } else {
                            out = x;
                          }
                        },
                        [&](const Singleton& s) { out = s.point; }},
             shape_);
}

Point ConvexSet::project(const Point& x) const {
  check_point(x);
  Point out(x.size());
  project_into(x, out);
  return out;
}

double ConvexSet::distance(const Point& x) const { return (x - project(x)).norm(); }

bool ConvexSet::contains(const Point& x, double tol) const { return distance(x) <= tol; }

bool ConvexSet::is_bounded() const { return kind() != SetKind::halfspace; }

bool ConvexSet::normal_cone_contains(const Point& x, const Point& v, double tol) const {
  check_point(v);
  if (!contains(x, tol)) throw InvalidInput("normal cone requested at a point outside the set");
  return std::visit(overloaded{[&](const Ball& s) {
                                 const Point offset = x - s.center;
                                 const double dist = offset.norm();
                                 if (dist < s.radius - tol || dist == 0.0) return v.norm() <= tol;
                                 return along_ray(v, offset / dist, tol);
                               },
                               [&](const Box& s) {
                                 for (Eigen::Index i = 0; i < x.size(); ++i) {
                                   const bool upper = x[i] >= s.center[i] + s.half_widths[i] - tol;
                                   const bool lower = x[i] <= s.center[i] - s.half_widths[i] + tol;
                                   if (upper && lower) continue;  // face width below tol
                                   if (upper && v[i] < -tol) return false;
                                   if (lower && v[i] > tol) return false;
                                   if (!upper && !lower && std::abs(v[i]) > tol) return false;
                                 }
                                 return true;
                               },
                               [&](const HalfSpace& s) {
                                 const double norm = s.normal.norm();
                                 const double slack = (s.offset - s.normal.dot(x)) / norm;
                                 if (slack > tol) return v.norm() <= tol;
                                 return along_ray(v, s.normal / norm, tol);
                               },
                               [](const Singleton&) { return true; }},
                    shape_);
}

Point ConvexSet::anchor() const {
  return std::visit(overloaded{[](const Ball& s) -> Point { return s.center; },
                               [](const Box& s) -> Point { return s.center; },
                               [](const HalfSpace& s) -> Point {
                                 const double excess = std::max(0.0, -s.offset);
                                 return -(excess / s.normal.squaredNorm()) * s.normal;
                               },
                               [](const Singleton& s) -> Point { return s.point; }},
                    shape_);
}

bool ConvexSet::operator==(const ConvexSet& other) const {
  if (kind() != other.kind() || dimension() != other.dimension()) return false;
  return std::visit(overloaded{[&](const Ball& s) {
                                 const auto& o = std::get<Ball>(other.shape_);
                                 return s.center == o.center && s.radius == o.radius;
                               },
                               [&](const Box& s) {
                                 const auto& o = std::get<Box>(other.shape_);
                                 return s.center == o.center && s.half_widths == o.half_widths;
                               },
                               [&](const HalfSpace& s) {
                                 const auto& o = std::get<HalfSpace>(other.shape_);
                                 return s.normal == o.normal && s.offset == o.offset;
                               },
                               [&](const Singleton& s) { return s.point == std::get<Singleton>(other.shape_).point; }},
                    shape_);
}

double set_distance(const ConvexSet& a, const ConvexSet& b) {
  if (a.dimension() != b.dimension()) throw InvalidInput("set_distance between sets of different dimension");

  if (b.kind() == SetKind::singleton) return a.distance(std::get<Singleton>(b.shape()).point);
  if (a.kind() == SetKind::singleton) return b.distance(std::get<Singleton>(a.shape()).point);

  if (a.kind() == SetKind::ball && b.kind() == SetKind::ball) {
    const auto& p = std::get<Ball>(a.shape());
    const auto& q = std::get<Ball>(b.shape());
    return std::max(0.0, (p.center - q.center).norm() - p.radius - q.radius);
  }
  if (a.kind() == SetKind::box && b.kind() == SetKind::box) {
    const auto& p = std::get<Box>(a.shape());
    const auto& q = std::get<Box>(b.shape());
    const Eigen::ArrayXd gap =
        ((p.center - q.center).array().abs() - p.half_widths.array() - q.half_widths.array()).max(0.0);
    return gap.matrix().norm();
  }
  if (a.kind() == SetKind::halfspace && b.kind() != SetKind::halfspace) return set_distance(b, a);
  if (b.kind() == SetKind::halfspace && a.kind() != SetKind::halfspace) {
    const auto& h = std::get<HalfSpace>(b.shape());
    // Smallest value of <normal, y> over the bounded set a.
    double lowest = 0.0;
    if (a.kind() == SetKind::ball) {
      const auto& s = std::get<Ball>(a.shape());
      lowest = h.normal.dot(s.center) - s.radius * h.normal.norm();
    } else {
      const auto& s = std::get<Box>(a.shape());
      lowest = h.normal.dot(s.center) - h.normal.cwiseAbs().dot(s.half_widths);
    }
    return std::max(0.0, (lowest - h.offset) / h.normal.norm());
  }
  return alternating_projections(a, b);
}

}  // namespace heronwaist
