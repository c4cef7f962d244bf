#include "pdr/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <gmpxx.h>

#include "pdr/error.hpp"

namespace pdr {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon() / 2.0;  // 2^-53
constexpr double kCcwErrBound = (3.0 + 16.0 * kEps) * kEps;
constexpr double kIccErrBound = (10.0 + 96.0 * kEps) * kEps;

Orientation from_sign(int s) {
  return s > 0 ? Orientation::positive : (s < 0 ? Orientation::negative : Orientation::zero);
}

template <class T>
int sgn(const T& v) {
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

mpq_class q(double v) { return mpq_class(v); }

int orientation_exact(Point a, Point b, Point c) {
  const mpq_class acx = q(a.x) - q(c.x), bcx = q(b.x) - q(c.x);
  const mpq_class acy = q(a.y) - q(c.y), bcy = q(b.y) - q(c.y);
  return sgn(mpq_class(acx * bcy - acy * bcx));
}

int in_circle_exact(Point a, Point b, Point c, Point d) {
  const mpq_class adx = q(a.x) - q(d.x), ady = q(a.y) - q(d.y);
  const mpq_class bdx = q(b.x) - q(d.x), bdy = q(b.y) - q(d.y);
  const mpq_class cdx = q(c.x) - q(d.x), cdy = q(c.y) - q(d.y);
  const mpq_class alift = adx * adx + ady * ady;
  const mpq_class blift = bdx * bdx + bdy * bdy;
  const mpq_class clift = cdx * cdx + cdy * cdy;
  const mpq_class det = alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
                        clift * (adx * bdy - bdx * ady);
  return sgn(det);
}

int orientation_sign(Point a, Point b, Point c) {
  const double detleft = (a.x - c.x) * (b.y - c.y);
  const double detright = (a.y - c.y) * (b.x - c.x);
  const double det = detleft - detright;
  const double errbound = kCcwErrBound * (std::fabs(detleft) + std::fabs(detright));
  if (det > errbound) return 1;
  if (-det > errbound) return -1;
  return orientation_exact(a, b, c);
}

int in_circle_sign(Point a, Point b, Point c, Point d) {
  const double adx = a.x - d.x, bdx = b.x - d.x, cdx = c.x - d.x;
  const double ady = a.y - d.y, bdy = b.y - d.y, cdy = c.y - d.y;

  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double alift = adx * adx + ady * ady;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double blift = bdx * bdx + bdy * bdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;
  const double clift = cdx * cdx + cdy * cdy;

  const double det =
      alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
  const double permanent = (std::fabs(bdxcdy) + std::fabs(cdxbdy)) * alift +
                           (std::fabs(cdxady) + std::fabs(adxcdy)) * blift +
                           (std::fabs(adxbdy) + std::fabs(bdxady)) * clift;
  const double errbound = kIccErrBound * permanent;
  if (det > errbound) return 1;
  if (-det > errbound) return -1;
  return in_circle_exact(a, b, c, d);
}

}  // namespace

Orientation orientation(Point a, Point b, Point c) { return from_sign(orientation_sign(a, b, c)); }

Orientation in_circle(Point a, Point b, Point c, Point p) {
  if (orientation_sign(a, b, c) == 0) {
    throw Error(ErrorCode::DegenerateTriangle, "in_circle on collinear triangle");
  }
  return from_sign(in_circle_sign(a, b, c, p));
}

Orientation in_circle_perturbed(Point a, Point b, Point c, Point p) {
  const int s = in_circle_sign(a, b, c, p);
  if (s != 0) return from_sign(s);

  // Leading terms of the perturbed determinant, largest point first.
  std::array<const Point*, 4> pts{&a, &b, &c, &p};
  std::sort(pts.begin(), pts.end(), [](const Point* u, const Point* v) { return *u < *v; });
  for (int i = 3; i > 1; --i) {
    if (pts[i] == &p) return Orientation::negative;
    int o = 0;
    if (pts[i] == &c && (o = orientation_sign(a, b, p)) != 0) return from_sign(o);
    if (pts[i] == &b && (o = orientation_sign(a, p, c)) != 0) return from_sign(o);
    if (pts[i] == &a && (o = orientation_sign(p, b, c)) != 0) return from_sign(o);
  }
  return Orientation::negative;
}

bool encroaches_segment(Point p, Point a, Point b) {
  const double t1 = (a.x - p.x) * (b.x - p.x);
  const double t2 = (a.y - p.y) * (b.y - p.y);
  const double dot = t1 + t2;
  const double errbound = 8.0 * kEps * (std::fabs(t1) + std::fabs(t2));
  if (dot < -errbound) return true;
  if (dot > errbound) return false;
  const mpq_class e = (q(a.x) - q(p.x)) * (q(b.x) - q(p.x)) + (q(a.y) - q(p.y)) * (q(b.y) - q(p.y));
  return sgn(e) < 0;
}

int compare_squared_lengths(Point a, Point b, Point c, Point d) {
  const double l1 = squared_distance(a, b);
  const double l2 = squared_distance(c, d);
  const double diff = l1 - l2;
  const double errbound = 8.0 * kEps * (l1 + l2);
  if (diff > errbound) return 1;
  if (-diff > errbound) return -1;
  const mpq_class abx = q(a.x) - q(b.x), aby = q(a.y) - q(b.y);
  const mpq_class cdx = q(c.x) - q(d.x), cdy = q(c.y) - q(d.y);
  return sgn(mpq_class(abx * abx + aby * aby - cdx * cdx - cdy * cdy));
}

bool ratio_exceeds(Point a, Point b, Point c, Point e0, Point e1, double beta_sq) {
  // R^2 = |ab|^2 |bc|^2 |ca|^2 / (4 D^2) with D twice the signed area.
  const double detleft = (a.x - c.x) * (b.y - c.y);
  const double detright = (a.y - c.y) * (b.x - c.x);
  const double det = detleft - detright;
  const double det_err = kCcwErrBound * (std::fabs(detleft) + std::fabs(detright));
  if (std::fabs(det) > 4.0 * det_err) {
    const double rel = det_err / std::fabs(det);
    const double lhs = squared_distance(a, b) * squared_distance(b, c) * squared_distance(c, a);
    const double rhs = 4.0 * beta_sq * det * det * squared_distance(e0, e1);
    const double tol = (2.5 * rel + 64.0 * kEps) * std::max(lhs, rhs);
    if (lhs - rhs > tol) return true;
    if (rhs - lhs > tol) return false;
  }
  const auto sq = [](Point u, Point v) {
    const mpq_class dx = q(u.x) - q(v.x), dy = q(u.y) - q(v.y);
    return mpq_class(dx * dx + dy * dy);
  };
  const mpq_class acx = q(a.x) - q(c.x), bcx = q(b.x) - q(c.x);
  const mpq_class acy = q(a.y) - q(c.y), bcy = q(b.y) - q(c.y);
  const mpq_class d = acx * bcy - acy * bcx;
  if (sgn(d) == 0) return true;
  const mpq_class lhs = sq(a, b) * sq(b, c) * sq(c, a);
  const mpq_class rhs = 4 * q(beta_sq) * d * d * sq(e0, e1);
  return lhs > rhs;
}

Circle circumcircle(Point a, Point b, Point c) {
  if (orientation_sign(a, b, c) == 0) {
    throw Error(ErrorCode::DegenerateTriangle, "circumcircle of collinear points");
  }
  using ld = long double;
  const ld bx = ld(b.x) - ld(a.x), by = ld(b.y) - ld(a.y);
  const ld cx = ld(c.x) - ld(a.x), cy = ld(c.y) - ld(a.y);
  const ld d = 2.0L * (bx * cy - by * cx);
  const ld b2 = bx * bx + by * by;
  const ld c2 = cx * cx + cy * cy;
  const ld ux = (cy * b2 - by * c2) / d;
  const ld uy = (bx * c2 - cx * b2) / d;
  const Point center{static_cast<double>(ld(a.x) + ux), static_cast<double>(ld(a.y) + uy)};
  return {center, static_cast<double>(std::sqrt(ux * ux + uy * uy))};
}

Circle diametral_circle(Point p, Point q) {
  if (p == q) throw Error(ErrorCode::DegenerateSegment, "diametral circle of a zero-length segment");
  return {midpoint(p, q), distance(p, q) / 2.0};
}

double radius_edge_ratio(Point a, Point b, Point c) {
  const Circle cc = circumcircle(a, b, c);
  const double shortest =
      std::sqrt(std::min({squared_distance(a, b), squared_distance(b, c), squared_distance(c, a)}));
  return cc.radius / shortest;
}

bool encroaches(Point p, const Circle& d) {
  return squared_distance(p, d.center) < d.radius * d.radius * (1.0 - kConflictGuard);
}

bool circles_conflict(const Circle& c1, const Circle& c2) {
  const double d2 = squared_distance(c1.center, c2.center);
  return d2 < c1.radius * c1.radius * (1.0 - kConflictGuard) &&
         d2 < c2.radius * c2.radius * (1.0 - kConflictGuard);
}

bool circumcenter_diametral_conflict(const Circle& c, const Circle& d) {
  const double d2 = squared_distance(c.center, d.center);
  return d2 < c.radius * c.radius * (1.0 - kConflictGuard) &&
         c.radius * c.radius < 2.0 * d.radius * d.radius * (1.0 - kConflictGuard);
}

}  // namespace pdr
