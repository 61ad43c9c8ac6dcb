#include <doctest.h>

#include "heronwaist/errors.hpp"
#include "heronwaist/geometry.hpp"
#include "instances.hpp"
#include "oracles.hpp"

using namespace heronwaist;
using heronwaist::testing::pt;

namespace {

ConvexSet random_set(oracle::Sampler& s, SetKind kind, int n) {
  switch (kind) {
    case SetKind::ball: return ConvexSet::ball(s.vector(n, -3, 3), s.uniform(0.1, 2.0));
    case SetKind::box: return ConvexSet::box(s.vector(n, -3, 3), s.vector(n, 0.1, 2.0));
    case SetKind::halfspace: {
      Point normal = s.vector(n, -1, 1);
      if (normal.norm() < 1e-3) normal[0] = 1.0;
      return ConvexSet::halfspace(normal, s.uniform(-2, 2));
    }
    case SetKind::singleton: return ConvexSet::singleton(s.vector(n, -3, 3));
  }
  return ConvexSet::singleton(Point::Zero(n));
}

constexpr SetKind kAllKinds[] = {SetKind::ball, SetKind::box, SetKind::halfspace, SetKind::singleton};

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("projection examples") {
    CHECK(ConvexSet::ball(pt({0, 0}), 1).project(pt({2, 0})).isApprox(pt({1, 0})));
    const auto box = ConvexSet::box(pt({1, -1}), pt({1, 1}));
    CHECK(box.project(pt({0.5, -1.5})) == pt({0.5, -1.5}));
    CHECK(box.project(pt({3, 0})) == pt({2, 0}));
    const auto half = ConvexSet::halfspace(pt({0, 2}), 2);  // y <= 1
    CHECK(half.project(pt({5, 4})).isApprox(pt({5, 1})));
    CHECK(half.project(pt({5, -4})) == pt({5, -4}));
    CHECK(ConvexSet::singleton(pt({3, 4})).project(pt({9, 9})) == pt({3, 4}));
  }

  TEST_CASE("distance examples") {
    CHECK(ConvexSet::ball(pt({0, 0}), 1).distance(pt({2, 0})) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ConvexSet::singleton(pt({3, 4})).distance(pt({0, 0})) == doctest::Approx(5.0).epsilon(1e-15));

    // Brute-force grid over the box first; the corner (1, 1) is on the grid.
    const double grid = oracle::grid_distance_to_box({0, 0}, {1, 1}, {2, 2}, 1e-3);
    CHECK(grid == doctest::Approx(1.41421356).epsilon(1e-8));
    CHECK(ConvexSet::box(pt({0, 0}), pt({1, 1})).distance(pt({2, 2})) == doctest::Approx(grid).epsilon(1e-12));
  }

  TEST_CASE("contains examples") {
    CHECK(ConvexSet::box(pt({1, -1}), pt({1, 1})).contains(pt({0, -1.5290885465}), 1e-9));
    CHECK(ConvexSet::ball(pt({0, 0}), 1).contains(pt({0, 0}), 0.0));
    CHECK_FALSE(ConvexSet::ball(pt({0, 0}), 1).contains(pt({1.1, 0}), 1e-3));
  }

  TEST_CASE("boundedness") {
    CHECK(ConvexSet::ball(pt({0, 0}), 1).is_bounded());
    CHECK(ConvexSet::box(pt({0, 0}), pt({1, 2})).is_bounded());
    CHECK(ConvexSet::singleton(pt({0, 0})).is_bounded());
    CHECK_FALSE(ConvexSet::halfspace(pt({0, 1}), 0).is_bounded());
  }

  TEST_CASE("normal cone examples") {
    const auto disc = ConvexSet::ball(pt({0, 0}), 1);
    CHECK(disc.normal_cone_contains(pt({1, 0}), pt({2, 0}), 1e-9));
    CHECK_FALSE(disc.normal_cone_contains(pt({0.5, 0}), pt({1, 0}), 1e-9));
    CHECK_FALSE(disc.normal_cone_contains(pt({1, 0}), pt({-2, 0}), 1e-9));
    CHECK_FALSE(disc.normal_cone_contains(pt({1, 0}), pt({2, 0.1}), 1e-9));

    // Left face of the square: the grid oracle confirms <v, y - x> <= 0 on the box.
    const auto box = ConvexSet::box(pt({1, -1}), pt({1, 1}));
    CHECK(oracle::grid_max_inner({1, -1}, {1, 1}, {0, -1.5}, {-1, 0}, 1e-3) <= 1e-12);
    CHECK(box.normal_cone_contains(pt({0, -1.5}), pt({-1, 0}), 1e-9));
    CHECK(oracle::grid_max_inner({1, -1}, {1, 1}, {0, -1.5}, {-1, 0.5}, 1e-3) > 0.0);
    CHECK_FALSE(box.normal_cone_contains(pt({0, -1.5}), pt({-1, 0.5}), 1e-9));
    // Corner: any vector in the quadrant spanned by the two outward normals.
    CHECK(box.normal_cone_contains(pt({0, 0}), pt({-1, 3}), 1e-9));
    CHECK_FALSE(box.normal_cone_contains(pt({0, 0}), pt({1, 3}), 1e-9));

    const auto half = ConvexSet::halfspace(pt({0, 1}), 0);
    CHECK(half.normal_cone_contains(pt({4, 0}), pt({0, 3}), 1e-9));
    CHECK_FALSE(half.normal_cone_contains(pt({4, 0}), pt({0, -3}), 1e-9));
    CHECK_FALSE(half.normal_cone_contains(pt({4, -1}), pt({0, 3}), 1e-9));

    CHECK(ConvexSet::singleton(pt({1, 1})).normal_cone_contains(pt({1, 1}), pt({-7, 2}), 0.0));
    CHECK_THROWS_AS(disc.normal_cone_contains(pt({2, 0}), pt({1, 0}), 1e-9), InvalidInput);
  }

  TEST_CASE("set distance examples") {
    CHECK(set_distance(ConvexSet::ball(pt({0, 0}), 1), ConvexSet::ball(pt({4, 0}), 1)) == doctest::Approx(2.0));
    CHECK(set_distance(ConvexSet::ball(pt({0, 0}), 1), ConvexSet::ball(pt({1, 0}), 1)) == 0.0);

    const double grid = oracle::grid_box_disc_gap({0, 0}, {1, 1}, {4, 0}, 1.0, 1e-3);
    CHECK(grid == doctest::Approx(2.0).epsilon(1e-9));
    const auto box = ConvexSet::box(pt({0, 0}), pt({1, 1}));
    const auto ball = ConvexSet::ball(pt({4, 0}), 1);
    CHECK(set_distance(box, ball) == doctest::Approx(grid).epsilon(1e-9));
    CHECK(set_distance(ball, box) == doctest::Approx(grid).epsilon(1e-9));

    // Off-axis ball/box pair: nearest box point is the corner (1, 1).
    const auto diag = ConvexSet::ball(pt({4, 5}), 1);
    CHECK(set_distance(box, diag) == doctest::Approx(std::hypot(3.0, 4.0) - 1.0).epsilon(1e-9));
    CHECK(set_distance(box, ConvexSet::box(pt({4, 3}), pt({1, 1}))) == doctest::Approx(std::hypot(2.0, 1.0)));
    CHECK(set_distance(ConvexSet::halfspace(pt({1, 0}), 0), ConvexSet::halfspace(pt({-1, 0}), -3)) ==
          doctest::Approx(3.0).epsilon(1e-9));
    CHECK(set_distance(ConvexSet::halfspace(pt({1, 0}), 0), ConvexSet::halfspace(pt({0, 1}), 0)) == 0.0);
    CHECK(set_distance(ConvexSet::halfspace(pt({1, 0}), 0), ball) == doctest::Approx(3.0));
    CHECK(set_distance(ConvexSet::singleton(pt({0, 3})), box) == doctest::Approx(2.0));
    CHECK_THROWS_AS(set_distance(box, ConvexSet::ball(pt({0, 0, 0}), 1)), InvalidInput);
  }

  TEST_CASE("invalid construction and inputs") {
    CHECK_THROWS_AS(ConvexSet::ball(pt({0, 0}), 0.0), InvalidInput);
    CHECK_THROWS_AS(ConvexSet::ball(pt({0, NAN}), 1.0), InvalidInput);
    CHECK_THROWS_AS(ConvexSet::box(pt({0, 0}), pt({1, -1})), InvalidInput);
    CHECK_THROWS_AS(ConvexSet::box(pt({0, 0}), pt({1})), InvalidInput);
    CHECK_THROWS_AS(ConvexSet::halfspace(pt({0, 0}), 1.0), InvalidInput);
    CHECK_THROWS_AS(ConvexSet::singleton(Point()), InvalidInput);

    const auto disc = ConvexSet::ball(pt({0, 0}), 1);
    CHECK_THROWS_AS(disc.project(pt({1, 2, 3})), InvalidInput);
    CHECK_THROWS_AS(disc.project(pt({INFINITY, 0})), InvalidInput);
    CHECK_THROWS_AS(disc.distance(pt({1})), InvalidInput);
    CHECK_THROWS_AS(disc.contains(pt({1})), InvalidInput);
  }

  TEST_CASE("anchors") {
    CHECK(ConvexSet::halfspace(pt({0, 1}), 0).anchor() == pt({0, 0}));
    CHECK(ConvexSet::halfspace(pt({0, 2}), -4).anchor().isApprox(pt({0, -2})));
    CHECK(ConvexSet::box(pt({1, -1}), pt({1, 1})).anchor() == pt({1, -1}));
  }

  TEST_CASE("projection properties on random samples") {
    oracle::Sampler s(20240611);
    for (SetKind kind : kAllKinds) {
      const std::string kind_name = to_string(kind);
      CAPTURE(kind_name);
      for (int trial = 0; trial < 1000; ++trial) {
        const int n = s.integer(1, 4);
        const ConvexSet set = random_set(s, kind, n);
        const Point x = s.vector(n, -6, 6);
        const Point y = s.vector(n, -6, 6);
        const Point px = set.project(x);
        const Point py = set.project(y);

        REQUIRE(set.contains(px, 1e-12));
        CHECK((set.project(px) - px).lpNorm<Eigen::Infinity>() <= 1e-14);
        CHECK((px - py).norm() <= (x - y).norm() + 1e-12);
        CHECK(std::abs(set.distance(x) - set.distance(y)) <= (x - y).norm() + 1e-12);

        // Variational inequality against a feasible z.
        const Point z = set.project(s.vector(n, -6, 6));
        CHECK((x - px).dot(z - px) <= 1e-10);

        CHECK(set.distance(px) <= 1e-12);
        CHECK((set.distance(x) <= 1e-12) == set.contains(x, 1e-12));
        CHECK(set.normal_cone_contains(px, Point::Zero(n), 1e-12));
        // x - P(x) is always a normal vector at P(x).
        CHECK(set.normal_cone_contains(px, x - px, 1e-9));
      }
    }
  }
}
