#include "pdr/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "pdr/classes.hpp"
#include "pdr/error.hpp"

namespace pdr {

namespace {

Point position(const Mesh& m, VertexRef v) {
  const Point p = m.vertices[static_cast<std::size_t>(v.id)];
  return {p.x + v.dx, p.y + v.dy};
}

void require_nonempty(const Mesh& m) {
  if (m.triangles.empty()) throw Error(ErrorCode::EmptyMesh, "mesh has no triangles");
}

// Interior angle at a opposite side bc, clamped so rounding never leaves
// the arccos domain.
long double angle_at(Point a, Point b, Point c) {
  const long double ab = squared_distance(a, b), ac = squared_distance(a, c), bc = squared_distance(b, c);
  const long double cosv = (ab + ac - bc) / (2.0L * std::sqrt(ab) * std::sqrt(ac));
  return std::acos(std::clamp(cosv, -1.0L, 1.0L));
}

bool starts_with(const std::string& s, const char* prefix) { return s.rfind(prefix, 0) == 0; }

}  // namespace

std::vector<EdgeKey> mesh_edges(const Mesh& m) {
  std::vector<EdgeKey> out;
  out.reserve(m.triangles.size() * 3);
  for (const TriKey& t : m.triangles) {
    for (const EdgeKey& e : edges_of(t)) out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

QualityReport quality_report(const Mesh& m) {
  require_nonempty(m);
  QualityReport r;
  r.triangle_count = m.triangles.size();
  long double min_angle = std::numbers::pi_v<long double>;
  for (const TriKey& t : m.triangles) {
    const auto c = m.corners(t);
    min_angle = std::min({min_angle, angle_at(c[0], c[1], c[2]), angle_at(c[1], c[2], c[0]),
                          angle_at(c[2], c[0], c[1])});
    r.max_ratio = std::max(r.max_ratio, radius_edge_ratio(c[0], c[1], c[2]));
  }
  r.min_angle_deg = static_cast<double>(min_angle * 180.0L / std::numbers::pi_v<long double>);
  const auto edges = mesh_edges(m);
  r.edge_count = edges.size();
  r.shortest_edge = std::numeric_limits<double>::infinity();
  for (const EdgeKey& e : edges) {
    const double len = distance(position(m, e.a), position(m, e.b));
    r.shortest_edge = std::min(r.shortest_edge, len);
    r.longest_edge = std::max(r.longest_edge, len);
  }
  r.quasi_uniformity = r.longest_edge / r.shortest_edge;
  return r;
}

QualityReport quality_report(const Mesh& m, const Pslg& domain) {
  QualityReport r = quality_report(m);
  const LfsProfile p = edge_lfs_profile(m, domain);
  r.edge_lfs_min = p.min;
  r.edge_lfs_max = p.max;
  return r;
}

std::vector<TriKey> triangles_exceeding(const Mesh& m, double beta) {
  const double beta_sq = beta * beta;
  std::vector<TriKey> out;
  for (const TriKey& t : m.triangles) {
    const auto c = m.corners(t);
    std::pair<Point, Point> e{c[0], c[1]};
    if (compare_squared_lengths(c[1], c[2], e.first, e.second) < 0) e = {c[1], c[2]};
    if (compare_squared_lengths(c[2], c[0], e.first, e.second) < 0) e = {c[2], c[0]};
    if (ratio_exceeds(c[0], c[1], c[2], e.first, e.second, beta_sq)) out.push_back(t);
  }
  return out;
}

std::vector<ConflictViolation> check_conflict_pairs(std::span<const ConflictRecord> pairs, int round) {
  constexpr double guard = 1e-12;
  std::vector<ConflictViolation> out;
  for (const ConflictRecord& p : pairs) {
    const double a = p.r_leader, b = p.r_other;
    const bool ok = a > b / 2.0 * (1.0 - guard) && a < 2.0 * b * (1.0 + guard);
    if (!ok) out.push_back({round, a, b});
  }
  return out;
}

std::vector<ConflictViolation> check_conflict_lemma(const Trace& trace) {
  std::vector<ConflictViolation> out;
  for (const RoundRecord& r : trace.rounds) {
    const auto v = check_conflict_pairs(r.conflicts, r.index);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

std::vector<ConflictViolation> check_conflict_locality(const Trace& trace) {
  std::vector<ConflictViolation> out;
  for (const RoundRecord& r : trace.rounds) {
    for (const ConflictRecord& p : r.conflicts) {
      const int ha = radius_class_unbounded(p.r_leader, trace.L);
      const int hb = radius_class_unbounded(p.r_other, trace.L);
      if (std::abs(ha - hb) > 1) out.push_back({r.index, p.r_leader, p.r_other});
    }
  }
  return out;
}

std::vector<ShrinkViolation> check_shrinkage(std::span<const double> series, std::size_t window, double factor) {
  std::vector<ShrinkViolation> out;
  for (std::size_t k = window; k < series.size(); ++k) {
    if (series[k] > factor * series[k - window]) out.push_back({k, series[k], series[k - window]});
  }
  return out;
}

std::vector<ShrinkViolation> check_shrinkage(const Trace& trace, std::size_t window, double factor) {
  const auto series = trace.max_circumradius_series();
  return check_shrinkage(series, window, factor);
}

std::vector<LfsViolation> check_lfs_ratio(const Pslg& before, const Pslg& after, std::span<const Point> samples,
                                          double rel_tol) {
  std::vector<LfsViolation> out;
  for (const Point& x : samples) {
    const double b = local_feature_size(before, x);
    const double a = local_feature_size(after, x);
    const bool ok = a >= b / 3.0 * (1.0 - rel_tol) && a <= b * (1.0 + rel_tol);
    if (!ok) out.push_back({x, b, a});
  }
  return out;
}

std::vector<Point> sample_points(const Pslg& d, std::size_t n, std::uint64_t seed) {
  double x0 = std::numeric_limits<double>::infinity(), y0 = x0, x1 = -x0, y1 = -x0;
  for (const Point& p : d.vertices()) {
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  }
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> ux(x0, x1), uy(y0, y1);
  std::vector<Point> out(n);
  for (Point& p : out) {
    p.x = ux(gen);
    p.y = uy(gen);
  }
  return out;
}

std::vector<EncroachViolation> check_encroach_ratio(const Trace& trace) {
  std::vector<EncroachViolation> out;
  for (const RoundRecord& r : trace.rounds) {
    for (const EncroachRecord& e : r.encroachments) {
      // r_d >= r_c / sqrt(2)  <=>  2 r_d^2 >= r_c^2
      if (2.0 * e.r_d * e.r_d < e.r_c * e.r_c * (1.0 - 1e-12)) out.push_back({r.index, e.r_c, e.r_d});
    }
  }
  return out;
}

LfsProfile edge_lfs_profile(const Mesh& m, const Pslg& domain, std::size_t bins) {
  require_nonempty(m);
  LfsProfile p;
  for (const EdgeKey& e : mesh_edges(m)) {
    const Point a = position(m, e.a), b = position(m, e.b);
    p.ratios.push_back(distance(a, b) / local_feature_size(domain, midpoint(a, b)));
  }
  const auto [lo, hi] = std::minmax_element(p.ratios.begin(), p.ratios.end());
  p.min = *lo;
  p.max = *hi;
  bins = std::max<std::size_t>(bins, 1);
  const double l0 = std::log(p.min), l1 = std::log(p.max);
  for (std::size_t i = 0; i <= bins; ++i) {
    p.bin_edges.push_back(std::exp(l0 + (l1 - l0) * static_cast<double>(i) / static_cast<double>(bins)));
  }
  p.bin_edges.front() = p.min;
  p.bin_edges.back() = p.max;
  p.histogram.assign(bins, 0);
  for (double r : p.ratios) {
    const auto it = std::upper_bound(p.bin_edges.begin(), p.bin_edges.end(), r);
    const std::size_t i = static_cast<std::size_t>(std::distance(p.bin_edges.begin(), it));
    ++p.histogram[std::clamp<std::size_t>(i, 1, bins) - 1];
  }
  return p;
}

std::size_t chew_round_ceiling(double L, double s) {
  return static_cast<std::size_t>(std::ceil(98.0 * std::log(L / s) / std::log(4.0 / 3.0)));
}

std::size_t ruppert_round_ceiling(double L, double s) {
  const double classes = std::ceil(std::log(L / s) / std::log(std::sqrt(2.0)));
  const double packing = std::ceil(std::log(L / s) / std::log(4.0 / 3.0));
  return static_cast<std::size_t>(classes * (81.0 + 98.0 * packing));
}

BoundReport bound_report(const Trace& trace, const Mesh& final_mesh) {
  BoundReport b;
  b.rounds_used = trace.rounds.size();
  b.L = trace.L;
  b.series = trace.max_circumradius_series();
  if (starts_with(trace.algorithm, "par-chew-pps")) {
    b.s = final_mesh.triangles.empty() ? trace.s : quality_report(final_mesh).shortest_edge;
    b.ceiling = chew_round_ceiling(b.L, b.s);
  } else if (starts_with(trace.algorithm, "par-ruppert")) {
    b.s = trace.s;
    b.ceiling = ruppert_round_ceiling(b.L, b.s);
  } else {
    b.s = trace.s;
  }
  return b;
}

}  // namespace pdr
