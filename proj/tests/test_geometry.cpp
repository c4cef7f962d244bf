#include <random>

#include "doctest.h"
#include "pdr/error.hpp"
#include "pdr/geometry.hpp"
#include "support.hpp"

using namespace pdr;

using testing_util::throws_code;

TEST_CASE("orientation signs") {
  CHECK(orientation({0, 0}, {1, 0}, {0, 1}) == Orientation::positive);
  CHECK(orientation({0, 0}, {1, 0}, {2, 0}) == Orientation::zero);
  CHECK(orientation({0, 0}, {0, 1}, {1, 0}) == Orientation::negative);
}

TEST_CASE("in_circle on the unit right triangle") {
  // (0.5,0.5) is the circumcenter, so strictly inside
  CHECK(in_circle({0, 0}, {1, 0}, {0, 1}, {0.5, 0.5}) == Orientation::positive);
  CHECK(in_circle({0, 0}, {1, 0}, {0, 1}, {0.4, 0.4}) == Orientation::positive);
  CHECK(in_circle({0, 0}, {1, 0}, {0, 1}, {2, 2}) == Orientation::negative);
  // (1,1) closes the cocircular square
  CHECK(in_circle({0, 0}, {1, 0}, {0, 1}, {1, 1}) == Orientation::zero);
  CHECK(throws_code([] { in_circle({0, 0}, {1, 0}, {2, 0}, {5, 5}); }, ErrorCode::DegenerateTriangle));
}

TEST_CASE("predicates agree with the rational oracle on near-degenerate input") {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(-1, 1);
  int mismatches = 0;
  for (int i = 0; i < 100000; ++i) {
    const Point a{u(gen), u(gen)}, b{u(gen), u(gen)};
    const double t = u(gen);
    // a point on line ab, nudged by a few ulps
    Point c{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
    c.x = std::nextafter(c.x, (i & 1) ? 2.0 : -2.0);
    if (i % 3 == 0) c.y = std::nextafter(c.y, 2.0);
    if (sign_of(orientation(a, b, c)) != oracle::orient(a, b, c)) ++mismatches;
  }
  CHECK(mismatches == 0);

  mismatches = 0;
  for (int i = 0; i < 100000; ++i) {
    // a point close to the circumcircle of a random triangle
    Point a{u(gen), u(gen)}, b{u(gen), u(gen)}, c{u(gen), u(gen)};
    if (oracle::orient(a, b, c) == 0) continue;
    if (oracle::orient(a, b, c) < 0) std::swap(b, c);
    const Circle cc = circumcircle(a, b, c);
    const double th = u(gen) * 3.14159;
    Point p{cc.center.x + cc.radius * std::cos(th), cc.center.y + cc.radius * std::sin(th)};
    if (i & 1) p.y = std::nextafter(p.y, 0.0);
    if (sign_of(in_circle(a, b, c, p)) != oracle::incircle(a, b, c, p)) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("perturbed in_circle never ties and agrees off the circle") {
  const Point a{0, 0}, b{1, 0}, c{1, 1}, d{0, 1};
  CHECK(in_circle_perturbed(a, b, c, d) != Orientation::zero);
  CHECK(in_circle_perturbed(a, b, c, {0.5, 0.5}) == Orientation::positive);
  CHECK(in_circle_perturbed(a, b, c, {3, 3}) == Orientation::negative);
  // translation invariance of the tie-break
  CHECK(in_circle_perturbed({2, 5}, {3, 5}, {3, 6}, {2, 6}) == in_circle_perturbed(a, b, c, d));
}

TEST_CASE("circumcircle constructions") {
  Circle c = circumcircle({0, 0}, {1, 0}, {0, 1});
  CHECK(c.center.x == doctest::Approx(0.5));
  CHECK(c.center.y == doctest::Approx(0.5));
  CHECK(c.radius == doctest::Approx(std::sqrt(2.0) / 2));
  c = circumcircle({0, 0}, {2, 0}, {1, 1});
  CHECK(c.center.x == doctest::Approx(1.0));
  CHECK(c.center.y == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(c.radius == doctest::Approx(1.0));
  CHECK(throws_code([] { circumcircle({0, 0}, {1, 0}, {2, 0}); }, ErrorCode::DegenerateTriangle));
}

TEST_CASE("circumcircle passes through its vertices") {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(-1, 1);
  int checked = 0;
  for (int i = 0; i < 20000; ++i) {
    const Point a{u(gen), u(gen)}, b{u(gen), u(gen)}, c{u(gen), u(gen)};
    if (orientation(a, b, c) == Orientation::zero || radius_edge_ratio(a, b, c) > 1e6) continue;
    const Circle cc = circumcircle(a, b, c);
    double worst = 0;
    for (Point p : {a, b, c}) worst = std::max(worst, std::abs(distance(cc.center, p) - cc.radius));
    CHECK(worst <= 1e-12 * cc.radius);
    ++checked;
  }
  CHECK(checked > 19000);
}

TEST_CASE("diametral circles") {
  Circle d = diametral_circle({0, 0}, {1, 0});
  CHECK(d.center == Point{0.5, 0});
  CHECK(d.radius == 0.5);
  d = diametral_circle({0, 0}, {0, 2});
  CHECK(d.center == Point{0, 1});
  CHECK(d.radius == 1);
  CHECK(throws_code([] { diametral_circle({3, 3}, {3, 3}); }, ErrorCode::DegenerateSegment));
}

TEST_CASE("encroachment is strict") {
  const Circle d = diametral_circle({0, 0}, {1, 0});
  CHECK(encroaches({0.5, 0.3}, d));
  CHECK_FALSE(encroaches({0.5, 0.5}, d));
  CHECK_FALSE(encroaches({2, 0}, d));
  // (8,4) lies exactly on the diametral circle of (0,0)-(10,0): 3^2 + 4^2 = 5^2
  CHECK_FALSE(encroaches_segment({8, 4}, {0, 0}, {10, 0}));
  CHECK(encroaches_segment({8, std::nextafter(4.0, 0.0)}, {0, 0}, {10, 0}));
  CHECK_FALSE(encroaches_segment({0.5, 0.5}, {0, 0}, {1, 0}));
  CHECK_FALSE(encroaches_segment({0, 0}, {0, 0}, {1, 0}));
}

TEST_CASE("circles_conflict") {
  CHECK(circles_conflict({{0, 0}, 1}, {{0.8, 0}, 1}));
  CHECK_FALSE(circles_conflict({{0, 0}, 1}, {{3, 0}, 1}));
  CHECK_FALSE(circles_conflict({{0, 0}, 1}, {{0.9, 0}, 0.5}));
}

TEST_CASE("circumcenter_diametral_conflict") {
  CHECK(circumcenter_diametral_conflict({{0, 0}, 1}, {{0.5, 0}, 0.8}));
  CHECK_FALSE(circumcenter_diametral_conflict({{0, 0}, 1}, {{0.5, 0}, 0.5}));
  CHECK_FALSE(circumcenter_diametral_conflict({{0, 0}, 1}, {{2, 0}, 0.9}));
}

TEST_CASE("circles_conflict is symmetric and implies mutual containment") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0, 1), r(0.01, 1);
  int conflicts = 0;
  for (int i = 0; i < 50000; ++i) {
    const Circle a{{u(gen), u(gen)}, r(gen)}, b{{u(gen), u(gen)}, r(gen)};
    const bool ab = circles_conflict(a, b);
    CHECK(ab == circles_conflict(b, a));
    if (ab) {
      ++conflicts;
      const double dd = distance(a.center, b.center);
      CHECK(dd < a.radius);
      CHECK(dd < b.radius);
    }
  }
  CHECK(conflicts > 1000);
}

TEST_CASE("radius_edge_ratio") {
  const double h = std::sqrt(3.0) / 2;
  CHECK(radius_edge_ratio({0, 0}, {1, 0}, {0.5, h}) == doctest::Approx(1 / std::sqrt(3.0)));
  CHECK(radius_edge_ratio({0, 0}, {1, 0}, {0, 1}) == doctest::Approx(std::sqrt(2.0) / 2));
  // R = abc / (4 area): sides 1, 0.502494, 0.502494, area 0.025
  const double s = std::sqrt(0.25 + 0.0025);
  const double R = 1.0 * s * s / (4 * 0.025);
  CHECK(radius_edge_ratio({0, 0}, {1, 0}, {0.5, 0.05}) == doctest::Approx(R / s));
  CHECK(radius_edge_ratio({0, 0}, {1, 0}, {0.5, 0.05}) == doctest::Approx(5.025).epsilon(1e-3));
  CHECK(throws_code([] { radius_edge_ratio({0, 0}, {1, 0}, {2, 0}); }, ErrorCode::DegenerateTriangle));
}

TEST_CASE("ratio_exceeds matches the exact oracle") {
  std::mt19937_64 gen(4);
  std::uniform_int_distribution<int> u(0, 64);
  const oracle::Q two(2);
  int mismatches = 0;
  for (int i = 0; i < 20000; ++i) {
    const Point a{u(gen) / 64.0, u(gen) / 64.0}, b{u(gen) / 64.0, u(gen) / 64.0}, c{u(gen) / 64.0, u(gen) / 64.0};
    if (oracle::orient(a, b, c) == 0) continue;
    std::pair<Point, Point> e{a, b};
    if (compare_squared_lengths(b, c, e.first, e.second) < 0) e = {b, c};
    if (compare_squared_lengths(c, a, e.first, e.second) < 0) e = {c, a};
    if (ratio_exceeds(a, b, c, e.first, e.second, 2.0) == oracle::ratio_at_most(a, b, c, two)) ++mismatches;
  }
  CHECK(mismatches == 0);
}
