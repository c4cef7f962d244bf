#include "pdr/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "pdr/error.hpp"

namespace pdr {

Pslg::Pslg(std::vector<Point> vertices, const std::vector<std::pair<int, int>>& segments)
    : vertices_(std::move(vertices)) {
  const int n = static_cast<int>(vertices_.size());
  for (const Point& p : vertices_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(ErrorCode::InvalidDomain, "non-finite vertex coordinate");
    }
  }
  segments_.reserve(segments.size());
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto [a, b] = segments[i];
    if (a < 0 || b < 0 || a >= n || b >= n) {
      throw Error(ErrorCode::InvalidDomain,
                  "segment " + std::to_string(i) + " references a missing vertex");
    }
    segments_.push_back({a, b, static_cast<int>(i), -1});
  }
  live_.assign(segments_.size(), true);
  live_count_ = segments_.size();
  input_segments_ = segments_.size();
}

bool Pslg::is_live(SegmentId id) const {
  return id >= 0 && static_cast<std::size_t>(id) < segments_.size() && live_[static_cast<std::size_t>(id)];
}

const Segment& Pslg::segment(SegmentId id) const {
  if (!is_live(id)) throw Error(ErrorCode::NoSuchSegment, "segment " + std::to_string(id));
  return segments_[static_cast<std::size_t>(id)];
}

std::vector<SegmentId> Pslg::live_segments() const {
  std::vector<SegmentId> out;
  out.reserve(live_count_);
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (live_[i]) out.push_back(static_cast<SegmentId>(i));
  }
  return out;
}

SegmentId Pslg::input_ancestor(SegmentId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= segments_.size()) {
    throw Error(ErrorCode::NoSuchSegment, "segment " + std::to_string(id));
  }
  while (segments_[static_cast<std::size_t>(id)].parent >= 0) {
    id = segments_[static_cast<std::size_t>(id)].parent;
  }
  return id;
}

std::pair<Pslg, int> split_segment(const Pslg& d, SegmentId seg) {
  const Segment s = d.segment(seg);
  Pslg out = d;
  const int m = static_cast<int>(out.vertices_.size());
  out.vertices_.push_back(midpoint(d.vertex(s.a), d.vertex(s.b)));
  out.live_[static_cast<std::size_t>(seg)] = false;
  out.segments_.push_back({s.a, m, s.origin, seg});
  out.segments_.push_back({m, s.b, s.origin, seg});
  out.live_.push_back(true);
  out.live_.push_back(true);
  out.live_count_ += 1;
  return {std::move(out), m};
}

namespace {

bool strictly_between(Point p, Point a, Point b) {
  // p is known to be collinear with ab.
  if (a.x != b.x) return (a.x < p.x && p.x < b.x) || (b.x < p.x && p.x < a.x);
  return (a.y < p.y && p.y < b.y) || (b.y < p.y && p.y < a.y);
}

bool segments_cross(Point a, Point b, Point c, Point d) {
  const int o1 = sign_of(orientation(a, b, c));
  const int o2 = sign_of(orientation(a, b, d));
  const int o3 = sign_of(orientation(c, d, a));
  const int o4 = sign_of(orientation(c, d, b));
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && o2 == 0) {
    // Collinear: overlapping interiors count as crossing.
    return strictly_between(c, a, b) || strictly_between(d, a, b) || strictly_between(a, c, d) ||
           strictly_between(b, c, d) || ((a == c && b == d) || (a == d && b == c));
  }
  return false;
}

}  // namespace

ValidationReport validate_pslg(const Pslg& d) {
  ValidationReport r;
  const auto& vs = d.vertices();
  {
    std::vector<int> order(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int i, int j) {
      return vs[static_cast<std::size_t>(i)] < vs[static_cast<std::size_t>(j)] ||
             (vs[static_cast<std::size_t>(i)] == vs[static_cast<std::size_t>(j)] && i < j);
    });
    for (std::size_t k = 1; k < order.size(); ++k) {
      if (vs[static_cast<std::size_t>(order[k])] == vs[static_cast<std::size_t>(order[k - 1])]) {
        r.duplicate_vertices.emplace_back(order[k - 1], order[k]);
      }
    }
  }

  const std::vector<SegmentId> segs = d.live_segments();
  for (SegmentId s : segs) {
    const Segment& g = d.segment(s);
    if (g.a == g.b || d.vertex(g.a) == d.vertex(g.b)) r.degenerate_segments.push_back(s);
  }

  for (std::size_t i = 0; i < segs.size(); ++i) {
    const Segment& s1 = d.segment(segs[i]);
    const Point a = d.vertex(s1.a), b = d.vertex(s1.b);
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      const Segment& s2 = d.segment(segs[j]);
      const bool share = s1.a == s2.a || s1.a == s2.b || s1.b == s2.a || s1.b == s2.b;
      const Point c = d.vertex(s2.a), e = d.vertex(s2.b);
      if (!share) {
        if (segments_cross(a, b, c, e)) r.crossings.emplace_back(segs[i], segs[j]);
        continue;
      }
      if ((s1.a == s2.a && s1.b == s2.b) || (s1.a == s2.b && s1.b == s2.a)) {
        r.crossings.emplace_back(segs[i], segs[j]);
        continue;
      }
      // Adjacent pair: measure the angle at the shared vertex.
      const int v = (s1.a == s2.a || s1.a == s2.b) ? s1.a : s1.b;
      const Point pv = d.vertex(v);
      const Point p1 = d.vertex(s1.a == v ? s1.b : s1.a);
      const Point p2 = d.vertex(s2.a == v ? s2.b : s2.a);
      const double ux = p1.x - pv.x, uy = p1.y - pv.y;
      const double wx = p2.x - pv.x, wy = p2.y - pv.y;
      const double angle = std::atan2(std::fabs(ux * wy - uy * wx), ux * wx + uy * wy);
      if (angle < std::numbers::pi / 2.0 - kAngleTolerance) {
        r.small_angles.push_back({segs[i], segs[j], v, angle});
      }
    }
  }

  for (SegmentId s : segs) {
    const Segment& g = d.segment(s);
    const Point a = d.vertex(g.a), b = d.vertex(g.b);
    for (std::size_t v = 0; v < vs.size(); ++v) {
      const int vi = static_cast<int>(v);
      if (vi == g.a || vi == g.b) continue;
      if (orientation(a, b, vs[v]) == Orientation::zero && strictly_between(vs[v], a, b)) {
        r.vertex_on_segment.emplace_back(s, vi);
      }
    }
  }
  return r;
}

std::vector<int> convex_hull(std::span<const Point> pts) {
  std::vector<int> idx(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) idx[i] = static_cast<int>(i);
  std::sort(idx.begin(), idx.end(), [&](int i, int j) {
    return pts[static_cast<std::size_t>(i)] < pts[static_cast<std::size_t>(j)];
  });
  idx.erase(std::unique(idx.begin(), idx.end(),
                        [&](int i, int j) {
                          return pts[static_cast<std::size_t>(i)] == pts[static_cast<std::size_t>(j)];
                        }),
            idx.end());
  if (idx.size() < 3) return idx;
  const auto P = [&](int i) { return pts[static_cast<std::size_t>(i)]; };
  // Monotone chain keeping collinear boundary points.
  std::vector<int> hull;
  for (int pass = 0; pass < 2; ++pass) {
    const std::size_t start = hull.size();
    for (int i : idx) {
      while (hull.size() >= start + 2 &&
             orientation(P(hull[hull.size() - 2]), P(hull.back()), P(i)) == Orientation::negative) {
        hull.pop_back();
      }
      hull.push_back(i);
    }
    hull.pop_back();
    std::reverse(idx.begin(), idx.end());
  }
  // All points collinear: the two chains coincide.
  std::set<int> seen;
  std::vector<int> out;
  for (int i : hull) {
    if (seen.insert(i).second) out.push_back(i);
  }
  return out;
}

bool boundary_covers_hull(const Pslg& d) {
  const std::vector<int> hull = convex_hull(d.vertices());
  if (hull.size() < 3) return false;
  std::set<std::pair<int, int>> edges;
  for (SegmentId s : d.live_segments()) {
    const Segment& g = d.segment(s);
    edges.emplace(std::min(g.a, g.b), std::max(g.a, g.b));
  }
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const int a = hull[i], b = hull[(i + 1) % hull.size()];
    if (!edges.contains({std::min(a, b), std::max(a, b)})) return false;
  }
  return true;
}

double pslg_diameter(const Pslg& d) {
  const std::vector<int> hull = convex_hull(d.vertices());
  double best = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    for (std::size_t j = i + 1; j < hull.size(); ++j) {
      best = std::max(best, distance(d.vertex(hull[i]), d.vertex(hull[j])));
    }
  }
  return best;
}

double point_segment_distance(Point x, Point a, Point b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  if (len2 == 0.0) return distance(x, a);
  double t = ((x.x - a.x) * dx + (x.y - a.y) * dy) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return distance(x, Point{a.x + t * dx, a.y + t * dy});
}

double local_feature_size(const Pslg& d, Point x) {
  const std::vector<SegmentId> segs = d.live_segments();
  const std::size_t nv = d.vertices().size();
  const std::size_t nf = nv + segs.size();

  // Features 0..nv-1 are vertices, nv.. are live segments.
  std::vector<double> dist(nf);
  for (std::size_t v = 0; v < nv; ++v) dist[v] = distance(x, d.vertices()[v]);
  std::vector<std::vector<std::size_t>> segs_at(nv);
  for (std::size_t k = 0; k < segs.size(); ++k) {
    const Segment& g = d.segment(segs[k]);
    dist[nv + k] = point_segment_distance(x, d.vertex(g.a), d.vertex(g.b));
    segs_at[static_cast<std::size_t>(g.a)].push_back(nv + k);
    segs_at[static_cast<std::size_t>(g.b)].push_back(nv + k);
  }

  std::vector<std::size_t> order(nf);
  for (std::size_t i = 0; i < nf; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return dist[i] < dist[j] || (dist[i] == dist[j] && i < j);
  });
  std::vector<std::size_t> rank(nf);
  for (std::size_t r = 0; r < nf; ++r) rank[order[r]] = r;

  // The answer is the distance of the first feature (in distance order) that
  // has a non-incident feature ranked before it.
  for (std::size_t r = 1; r < nf; ++r) {
    const std::size_t f = order[r];
    std::size_t incident_before = 0;
    if (f < nv) {
      for (std::size_t s : segs_at[f]) incident_before += rank[s] < r;
    } else {
      const Segment& g = d.segment(segs[f - nv]);
      std::set<std::size_t> inc{static_cast<std::size_t>(g.a), static_cast<std::size_t>(g.b)};
      for (std::size_t s : segs_at[static_cast<std::size_t>(g.a)]) inc.insert(s);
      for (std::size_t s : segs_at[static_cast<std::size_t>(g.b)]) inc.insert(s);
      inc.erase(f);
      for (std::size_t s : inc) incident_before += rank[s] < r;
    }
    if (incident_before < r) return dist[f];
  }
  throw Error(ErrorCode::NoFeaturePair, "domain has no two mutually non-incident features");
}

double min_vertex_lfs(const Pslg& d) {
  double best = std::numeric_limits<double>::infinity();
  for (const Point& v : d.vertices()) best = std::min(best, local_feature_size(d, v));
  return best;
}

Point snap_periodic(Point p) {
  const auto snap = [](double v) {
    v -= std::floor(v);
    v = std::nearbyint(v / kPeriodicQuantum) * kPeriodicQuantum;
    return v >= 1.0 ? v - 1.0 : v;
  };
  return {snap(p.x), snap(p.y)};
}

PeriodicPointSet::PeriodicPointSet(std::vector<Point> points) {
  if (points.empty()) throw Error(ErrorCode::InvalidDomain, "empty periodic point set");
  for (const Point& p : points) {
    if (!(p.x >= 0.0 && p.x < 1.0 && p.y >= 0.0 && p.y < 1.0)) {
      throw Error(ErrorCode::InvalidDomain, "periodic point outside [0,1)^2");
    }
    points_.push_back(snap_periodic(p));
  }
  std::vector<Point> sorted = points_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::InvalidDomain, "duplicate periodic points");
  }
}

TorusDisplacement torus_displacement(Point p, Point q) {
  TorusDisplacement best{{0.0, 0.0}, std::numeric_limits<double>::infinity()};
  for (int dx = -1; dx <= 1; ++dx) {
    for (int dy = -1; dy <= 1; ++dy) {
      const Point v{q.x + dx - p.x, q.y + dy - p.y};
      const double len = std::hypot(v.x, v.y);
      if (len < best.distance) best = {v, len};
    }
  }
  return best;
}

}  // namespace pdr
