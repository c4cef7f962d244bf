#pragma once

// Test-only helpers: an exact rational oracle independent of the library's
// predicates, and the fixture corpus.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "pdr/analysis.hpp"
#include "pdr/domain.hpp"
#include "pdr/error.hpp"
#include "pdr/io.hpp"
#include "pdr/preprocess.hpp"
#include "pdr/refine.hpp"

namespace oracle {

using Q = boost::multiprecision::cpp_rational;

inline Q q(double v) { return Q(v); }  // exact: every double is a dyadic rational

inline int sgn(const Q& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

inline int orient(pdr::Point a, pdr::Point b, pdr::Point c) {
  return sgn((q(b.x) - q(a.x)) * (q(c.y) - q(a.y)) - (q(b.y) - q(a.y)) * (q(c.x) - q(a.x)));
}

/// Sign of the incircle determinant for counterclockwise abc.
inline int incircle(pdr::Point a, pdr::Point b, pdr::Point c, pdr::Point p) {
  const Q adx = q(a.x) - q(p.x), ady = q(a.y) - q(p.y);
  const Q bdx = q(b.x) - q(p.x), bdy = q(b.y) - q(p.y);
  const Q cdx = q(c.x) - q(p.x), cdy = q(c.y) - q(p.y);
  const Q al = adx * adx + ady * ady, bl = bdx * bdx + bdy * bdy, cl = cdx * cdx + cdy * cdy;
  return sgn(adx * (bdy * cl - bl * cdy) - ady * (bdx * cl - bl * cdx) + al * (bdx * cdy - bdy * cdx));
}

inline Q sqdist(pdr::Point a, pdr::Point b) {
  const Q dx = q(a.x) - q(b.x), dy = q(a.y) - q(b.y);
  return dx * dx + dy * dy;
}

/// R^2 = |ab|^2 |bc|^2 |ca|^2 / (16 area^2), exactly.
inline Q circumradius_sq(pdr::Point a, pdr::Point b, pdr::Point c) {
  const Q twice_area = (q(b.x) - q(a.x)) * (q(c.y) - q(a.y)) - (q(b.y) - q(a.y)) * (q(c.x) - q(a.x));
  return sqdist(a, b) * sqdist(b, c) * sqdist(c, a) / (4 * twice_area * twice_area);
}

/// Exact test of R / shortest side <= sqrt(beta_sq).
inline bool ratio_at_most(pdr::Point a, pdr::Point b, pdr::Point c, const Q& beta_sq) {
  const Q e = std::min({sqdist(a, b), sqdist(b, c), sqdist(c, a)});
  return circumradius_sq(a, b, c) <= beta_sq * e;
}

/// Every triangle's circumcircle is free of all vertices (and their lattice
/// translates for periodic meshes). Cocircular points are allowed.
inline bool empty_circles(const pdr::Mesh& m) {
  std::vector<pdr::Point> pts;
  const int r = m.mode == pdr::Mode::periodic ? 2 : 0;
  for (const pdr::Point& p : m.vertices) {
    for (int dx = -r; dx <= r; ++dx) {
      for (int dy = -r; dy <= r; ++dy) pts.push_back({p.x + dx, p.y + dy});
    }
  }
  for (const pdr::TriKey& t : m.triangles) {
    const auto c = m.corners(t);
    if (orient(c[0], c[1], c[2]) <= 0) return false;
    // Only a coarse floating-point prefilter: points well outside the
    // circumcircle skip the exact test.
    const pdr::Circle cc = pdr::circumcircle(c[0], c[1], c[2]);
    const double reach = cc.radius * (1 + 1e-6) + 1e-12;
    for (const pdr::Point& p : pts) {
      if (std::abs(p.x - cc.center.x) > reach || std::abs(p.y - cc.center.y) > reach) continue;
      if (incircle(c[0], c[1], c[2], p) > 0) return false;
    }
  }
  return true;
}

/// Brute-force lfs: min over mutually non-incident feature pairs of the
/// larger of the two distances. Features are vertices and segments.
inline double lfs(const pdr::Pslg& d, pdr::Point x) {
  struct F {
    double dist;
    int a, b;  // vertex: a == b
  };
  std::vector<F> fs;
  for (int i = 0; i < static_cast<int>(d.vertices().size()); ++i) fs.push_back({pdr::distance(x, d.vertex(i)), i, i});
  for (pdr::SegmentId s : d.live_segments()) {
    const auto& seg = d.segment(s);
    fs.push_back({pdr::point_segment_distance(x, d.vertex(seg.a), d.vertex(seg.b)), seg.a, seg.b});
  }
  const auto incident = [](const F& f, const F& g) {
    const bool fv = f.a == f.b, gv = g.a == g.b;
    if (fv && gv) return false;
    if (fv) return f.a == g.a || f.a == g.b;
    if (gv) return g.a == f.a || g.a == f.b;
    return f.a == g.a || f.a == g.b || f.b == g.a || f.b == g.b;
  };
  double best = INFINITY;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::size_t j = i + 1; j < fs.size(); ++j) {
      if (!incident(fs[i], fs[j])) best = std::min(best, std::max(fs[i].dist, fs[j].dist));
    }
  }
  return best;
}

}  // namespace oracle

namespace testing_util {

inline bool throws_code(auto&& fn, pdr::ErrorCode code) {
  try {
    fn();
  } catch (const pdr::Error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace testing_util

namespace fixtures {

inline std::filesystem::path dir() { return PDR_FIXTURES; }

inline std::vector<std::string> pslg_names() {
  return {"square", "rectangle", "graded", "slit", "parallel", "nested", "plus", "octagon", "lpartition", "points"};
}

inline std::vector<std::string> periodic_names() {
  return {"periodic_single", "periodic_pair", "periodic_lattice", "periodic_random10",
          "periodic_random50", "periodic_random200", "periodic_cluster"};
}

inline pdr::Pslg pslg(const std::string& name) { return pdr::read_poly(dir() / (name + ".poly")).domain; }

inline pdr::PeriodicPointSet periodic(const std::string& name) {
  return pdr::read_periodic(dir() / (name + ".txt"));
}

inline pdr::Pslg unit_square() {
  return pdr::Pslg({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

/// Unit square with a centered square feature of side s.
inline pdr::Pslg shrinking_feature(double s) {
  const double a = 0.5 - s / 2, b = 0.5 + s / 2;
  return pdr::Pslg({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {a, a}, {b, a}, {b, b}, {a, b}},
                   {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6}, {6, 7}, {7, 4}});
}

/// Both preprocessing passes with the default alpha.
inline pdr::Pslg prepared(const pdr::Pslg& d) {
  return pdr::preprocess_feature_conforming(pdr::preprocess_boundary(d).first, 3.0);
}

inline const double kSqrt2 = std::sqrt(2.0);

}  // namespace fixtures
