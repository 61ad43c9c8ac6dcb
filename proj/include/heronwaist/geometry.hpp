#pragma once

#include <Eigen/Dense>
#include <variant>

namespace heronwaist {

using Point = Eigen::VectorXd;

// Absolute membership tolerance used when none is given.
inline constexpr double kMembershipTol = 1e-12;
// Default tolerance for normal-cone membership tests.
inline constexpr double kAngularTol = 1e-9;

struct Ball {
  Point center;
  double radius;
};

struct Box {
  Point center;
  Point half_widths;
};

// {y : <normal, y> <= offset}
struct HalfSpace {
  Point normal;
  double offset;
};

struct Singleton {
  Point point;
};

enum class SetKind { ball, box, halfspace, singleton };

const char* to_string(SetKind kind);

/// A nonempty closed convex subset of R^n with an exact Euclidean projection.
///
/// Instances are built through the named factories, which reject degenerate
/// parameters (nonpositive radius or half-width, zero normal, non-finite
/// coordinates) with InvalidInput. Values are immutable once built.
class ConvexSet {
 public:
  using Shape = std::variant<Ball, Box, HalfSpace, Singleton>;

  static ConvexSet ball(Point center, double radius);
  static ConvexSet box(Point center, Point half_widths);
  static ConvexSet halfspace(Point normal, double offset);
  static ConvexSet singleton(Point point);

  int dimension() const;
  SetKind kind() const;
  const Shape& shape() const { return shape_; }

  /// Nearest point of the set to `x`. Throws InvalidInput on dimension
  /// mismatch or non-finite input.
  Point project(const Point& x) const;

  /// Unchecked projection of `x` written to `out`; `x` and `out` may alias.
  /// This is the solver's inner-loop entry point.
  void project_into(Eigen::Ref<const Eigen::VectorXd> x, Eigen::Ref<Eigen::VectorXd> out) const;

  /// ||x - project(x)||.
  double distance(const Point& x) const;

  bool contains(const Point& x, double tol = kMembershipTol) const;

  /// False only for half-spaces.
  bool is_bounded() const;

  /// Decides whether `v` lies in the normal cone of the set at `x`, up to `tol`.
  ///
  /// Interior points of a ball or half-space accept only ||v|| <= tol. On the
  /// boundary, v must be (numerically) zero or point along the outward
  /// normal, with the sine of the angle between them at most `tol`. For a box
  /// the test is componentwise and absolute: v_i >= -tol on an active upper
  /// face, v_i <= tol on an active lower face and |v_i| <= tol otherwise.
  /// A face or boundary counts as active when x is within `tol` of it.
  /// Every v is accepted for a singleton.
  ///
  /// Throws InvalidInput if `x` is not in the set within `tol`.
  bool normal_cone_contains(const Point& x, const Point& v, double tol = kAngularTol) const;

  /// A canonical point of the set: the center of a ball or box, the point of
  /// a singleton, the projection of the origin onto a half-space.
  Point anchor() const;

  bool operator==(const ConvexSet& other) const;

 private:
  explicit ConvexSet(Shape shape) : shape_(std::move(shape)) {}
  void check_point(const Point& x) const;

  Shape shape_;
};

/// inf { ||a - b|| : a in A, b in B }.
///
/// Closed forms are used for ball/ball, box/box, ball/half-space and any pair
/// involving a singleton. Other pairs use alternating projections capped at
/// 10,000 rounds, stopping once a round improves the gap by less than 1e-12.
/// Gaps below 1e-9 (the accuracy of the iteration) are reported as 0.
double set_distance(const ConvexSet& a, const ConvexSet& b);

}  // namespace heronwaist
