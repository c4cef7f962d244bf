#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pdr/geometry.hpp"

namespace pdr {

using SegmentId = int;

struct Segment {
  int a = -1;
  int b = -1;
  int origin = -1;  // index of the input segment this piece subdivides
  SegmentId parent = -1;
};

/// Planar straight line graph. Segment ids are stable: splitting retires the
/// old id and appends two new ones, so a stale id is detectable.
class Pslg {
 public:
  Pslg() = default;
  /// Throws InvalidDomain on out-of-range indices.
  Pslg(std::vector<Point> vertices, const std::vector<std::pair<int, int>>& segments);

  const std::vector<Point>& vertices() const { return vertices_; }
  const Point& vertex(int i) const { return vertices_.at(static_cast<std::size_t>(i)); }

  std::size_t segment_slots() const { return segments_.size(); }
  bool is_live(SegmentId id) const;
  /// Throws NoSuchSegment for retired or unknown ids.
  const Segment& segment(SegmentId id) const;
  std::vector<SegmentId> live_segments() const;
  std::size_t num_live_segments() const { return live_count_; }
  std::size_t num_input_segments() const { return input_segments_; }

  /// Follows parent links back to the input segment.
  SegmentId input_ancestor(SegmentId id) const;

  friend std::pair<Pslg, int> split_segment(const Pslg& d, SegmentId seg);

 private:
  std::vector<Point> vertices_;
  std::vector<Segment> segments_;
  std::vector<bool> live_;
  std::size_t live_count_ = 0;
  std::size_t input_segments_ = 0;
};

/// Replaces segment `seg` with its two halves; returns the new domain and the
/// index of the midpoint vertex. Throws NoSuchSegment.
std::pair<Pslg, int> split_segment(const Pslg& d, SegmentId seg);

struct AngleViolation {
  SegmentId s1, s2;
  int vertex;
  double angle;  // radians
};

struct ValidationReport {
  std::vector<std::pair<SegmentId, SegmentId>> crossings;
  std::vector<std::pair<SegmentId, int>> vertex_on_segment;
  std::vector<SegmentId> degenerate_segments;
  std::vector<AngleViolation> small_angles;
  std::vector<std::pair<int, int>> duplicate_vertices;

  bool ok() const {
    return crossings.empty() && vertex_on_segment.empty() && degenerate_segments.empty() &&
           small_angles.empty() && duplicate_vertices.empty();
  }
};

inline constexpr double kAngleTolerance = 1e-9;

ValidationReport validate_pslg(const Pslg& d);

/// Convex hull vertex indices in counterclockwise order, collinear boundary
/// vertices included.
std::vector<int> convex_hull(std::span<const Point> pts);

/// True iff every edge of the convex hull (between consecutive hull
/// vertices) is a live segment, so the triangulated region is enclosed.
bool boundary_covers_hull(const Pslg& d);

double pslg_diameter(const Pslg& d);

double point_segment_distance(Point x, Point a, Point b);

/// Radius of the smallest disk centered at x touching two mutually
/// non-incident features (vertices and live segments). A vertex is incident
/// to a segment iff it is an endpoint; segments are incident iff they share an
/// endpoint; distinct vertices are never incident. Throws NoFeaturePair.
double local_feature_size(const Pslg& d, Point x);

/// min over vertices v of lfs(v).
double min_vertex_lfs(const Pslg& d);

// --- periodic point sets ---

/// Coordinates of periodic points are snapped to multiples of this quantum so
/// that integer translates used by the lifted triangulation are exact.
inline constexpr double kPeriodicQuantum = 0x1p-48;

/// Wraps into [0,1)^2 and snaps to the periodic quantum.
Point snap_periodic(Point p);

class PeriodicPointSet {
 public:
  /// Throws InvalidDomain if empty, out of [0,1)^2, or has duplicates after
  /// snapping.
  explicit PeriodicPointSet(std::vector<Point> points);

  const std::vector<Point>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

  /// Upper bound on the diameter of any set in the unit square.
  static double diameter() { return std::sqrt(2.0); }

 private:
  std::vector<Point> points_;
};

struct TorusDisplacement {
  Point vector;  // from p to the nearest translate of q
  double distance = 0.0;
};

TorusDisplacement torus_displacement(Point p, Point q);

}  // namespace pdr
