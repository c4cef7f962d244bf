#pragma once

#include <cmath>
#include <compare>

namespace pdr {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
  // Lexicographic (x, then y); this is also the symbolic-perturbation order.
  friend auto operator<=>(const Point& a, const Point& b) {
    if (auto c = a.x <=> b.x; c != 0) return c;
    return a.y <=> b.y;
  }
};

struct Circle {
  Point center;
  double radius = 0.0;
};

enum class Orientation { negative = -1, zero = 0, positive = 1 };

inline int sign_of(Orientation o) { return static_cast<int>(o); }

inline double squared_distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double distance(Point a, Point b) { return std::sqrt(squared_distance(a, b)); }

inline Point midpoint(Point a, Point b) { return {(a.x + b.x) / 2.0, (a.y + b.y) / 2.0}; }

// --- exact predicates (floating-point filter, rational fallback) ---

/// Sign of twice the signed area of abc; positive for counterclockwise.
Orientation orientation(Point a, Point b, Point c);

/// Positive iff p lies strictly inside the circumcircle of the
/// counterclockwise triangle abc. Throws DegenerateTriangle if abc is
/// collinear.
Orientation in_circle(Point a, Point b, Point c, Point p);

/// in_circle with cocircular ties resolved by symbolic perturbation: points
/// are lifted by decreasing infinitesimals in lexicographic coordinate order.
/// Never returns zero for four distinct points. The order is translation
/// invariant, so lattice translates of a configuration decide identically.
Orientation in_circle_perturbed(Point a, Point b, Point c, Point p);

/// True iff p lies strictly inside the diametral circle of segment ab,
/// i.e. the angle apb is obtuse. Exact.
bool encroaches_segment(Point p, Point a, Point b);

/// Sign of |ab|^2 - |cd|^2. Exact.
int compare_squared_lengths(Point a, Point b, Point c, Point d);

/// True iff circumradius(abc)^2 > beta_sq * |e0 e1|^2. Exact with respect to
/// the given doubles; a collinear abc counts as exceeding.
bool ratio_exceeds(Point a, Point b, Point c, Point e0, Point e1, double beta_sq);

// --- constructions (floating point) ---

Circle circumcircle(Point a, Point b, Point c);
Circle diametral_circle(Point p, Point q);
double radius_edge_ratio(Point a, Point b, Point c);

// --- circle relations, evaluated on constructed values ---

/// Relative guard applied to the strict comparisons below; near-ties are
/// reported as "independent" / "not encroaching".
inline constexpr double kConflictGuard = 1e-12;

/// Strict interior test on a constructed circle.
bool encroaches(Point p, const Circle& seg_diametral);

/// Two circles conflict iff each strictly contains the other's center.
bool circles_conflict(const Circle& c1, const Circle& c2);

/// A circumcircle c and a diametral circle d conflict iff d's center is
/// strictly inside c and radius(c) < sqrt(2) * radius(d).
bool circumcenter_diametral_conflict(const Circle& c, const Circle& d);

}  // namespace pdr
