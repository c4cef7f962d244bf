#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pdr/domain.hpp"
#include "pdr/parallel_refine.hpp"
#include "pdr/refine.hpp"

namespace pdr {

struct QualityReport {
  std::size_t triangle_count = 0;
  std::size_t edge_count = 0;
  double min_angle_deg = 0.0;
  double max_ratio = 0.0;  // circumradius / shortest side of the same triangle
  double shortest_edge = 0.0;
  double longest_edge = 0.0;
  double quasi_uniformity = 0.0;  // longest / shortest edge
  // length(e) / lfs(midpoint(e)) range, when a domain is supplied.
  std::optional<double> edge_lfs_min;
  std::optional<double> edge_lfs_max;

  friend bool operator==(const QualityReport&, const QualityReport&) = default;
};

/// Every distinct edge of the mesh, sorted.
std::vector<EdgeKey> mesh_edges(const Mesh& m);

/// Throws EmptyMesh when the mesh has no triangles.
QualityReport quality_report(const Mesh& m);
QualityReport quality_report(const Mesh& m, const Pslg& domain);

/// Triangles whose radius-edge ratio exceeds beta, decided exactly.
std::vector<TriKey> triangles_exceeding(const Mesh& m, double beta);

struct ConflictViolation {
  int round = 0;
  double r_a = 0.0;
  double r_b = 0.0;
};

/// Pairs outside r_b/2 < r_a < 2 r_b. A relative guard of 1e-12 keeps
/// rounding in the stored radii from producing false reports.
std::vector<ConflictViolation> check_conflict_lemma(const Trace& trace);
std::vector<ConflictViolation> check_conflict_pairs(std::span<const ConflictRecord> pairs, int round = 0);

/// Recorded conflicts between radius classes more than one apart.
std::vector<ConflictViolation> check_conflict_locality(const Trace& trace);

struct ShrinkViolation {
  std::size_t k = 0;
  double r_k = 0.0;
  double r_window = 0.0;  // r_{k - window}
};

std::vector<ShrinkViolation> check_shrinkage(std::span<const double> series, std::size_t window = 98,
                                             double factor = 0.75);
std::vector<ShrinkViolation> check_shrinkage(const Trace& trace, std::size_t window = 98, double factor = 0.75);

struct LfsViolation {
  Point x;
  double before = 0.0;
  double after = 0.0;
};

/// Samples where lfs_after is outside [lfs_before / 3, lfs_before].
std::vector<LfsViolation> check_lfs_ratio(const Pslg& before, const Pslg& after, std::span<const Point> samples,
                                          double rel_tol = 1e-9);

/// Deterministic uniform samples over the bounding box of the domain.
std::vector<Point> sample_points(const Pslg& d, std::size_t n, std::uint64_t seed);

struct EncroachViolation {
  int round = 0;
  double r_c = 0.0;
  double r_d = 0.0;
};

/// Encroachment events with r_d < r_c / sqrt(2).
std::vector<EncroachViolation> check_encroach_ratio(const Trace& trace);

struct LfsProfile {
  std::vector<double> ratios;  // one per edge, in mesh_edges order
  std::vector<double> bin_edges;  // log-spaced, size bins + 1
  std::vector<std::size_t> histogram;
  double min = 0.0;
  double max = 0.0;
};

LfsProfile edge_lfs_profile(const Mesh& m, const Pslg& domain, std::size_t bins = 16);

/// ceil(98 log_{4/3}(L/s)).
std::size_t chew_round_ceiling(double L, double s);
/// ceil(log_sqrt2(L/s)) * (81 + 98 ceil(log_{4/3}(L/s))).
std::size_t ruppert_round_ceiling(double L, double s);

struct BoundReport {
  std::size_t rounds_used = 0;
  std::optional<std::size_t> ceiling;
  double L = 0.0;
  double s = 0.0;
  std::vector<double> series;

  bool within() const { return !ceiling || rounds_used <= *ceiling; }
};

/// Chew traces are bounded with s = shortest edge of the final mesh, Ruppert
/// traces with the class reference size. Other traces carry no ceiling.
BoundReport bound_report(const Trace& trace, const Mesh& final_mesh);

}  // namespace pdr
