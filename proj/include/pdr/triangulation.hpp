#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "pdr/geometry.hpp"

namespace pdr {

enum class Mode { planar, periodic };

/// A vertex of the (possibly periodic) triangulation: point id plus the
/// integer lattice translate it is taken at. Planar vertices have zero offset.
struct VertexRef {
  int id = -1;
  std::int8_t dx = 0;
  std::int8_t dy = 0;

  friend bool operator==(const VertexRef&, const VertexRef&) = default;
  friend auto operator<=>(const VertexRef&, const VertexRef&) = default;
};

/// Canonical representative of a triangle (orbit, in periodic mode):
/// counterclockwise, rotated and translated so that the lexicographically
/// smallest admissible choice starts with a zero-offset vertex of minimal id.
struct TriKey {
  std::array<VertexRef, 3> v;

  friend bool operator==(const TriKey&, const TriKey&) = default;
  friend auto operator<=>(const TriKey&, const TriKey&) = default;
};

/// Canonical undirected edge, normalized like TriKey.
struct EdgeKey {
  VertexRef a, b;

  friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

struct TriKeyHash {
  std::size_t operator()(const TriKey& k) const noexcept;
};
struct EdgeKeyHash {
  std::size_t operator()(const EdgeKey& k) const noexcept;
};

TriKey make_tri_key(const std::array<VertexRef, 3>& ccw);
EdgeKey make_edge_key(VertexRef a, VertexRef b);
std::array<EdgeKey, 3> edges_of(const TriKey& t);

struct InsertionOutcome {
  int vertex = -1;
  std::vector<TriKey> removed;  // sorted
  std::vector<TriKey> created;  // sorted
};

struct Location {
  enum class Kind { in_triangle, on_edge, on_vertex };
  Kind kind = Kind::in_triangle;
  TriKey triangle;
  std::optional<EdgeKey> edge;   // on_edge
  int vertex = -1;               // on_vertex
};

/// Incremental Delaunay triangulation. Planar mode covers the convex hull
/// (ghost triangles close the hull). Periodic mode triangulates the flat
/// torus by maintaining the planar triangulation of the lattice translates
/// of every point within a 3x3 (or, while circumradii are large, 5x5) block
/// and reporting one canonical triangle per orbit.
///
/// Ties are broken by symbolic perturbation, so the result is unique for a
/// given point set; insertion order does not affect the final structure.
class Triangulation {
 public:
  /// Planar: >= 3 points, not all collinear (DegenerateInput).
  /// Periodic: >= 1 point; coordinates are wrapped and snapped.
  /// Duplicates throw DuplicateVertex.
  static Triangulation build(std::span<const Point> points, Mode mode);

  Mode mode() const { return mode_; }
  std::size_t num_vertices() const { return points_.size(); }
  Point vertex(int id) const { return points_[static_cast<std::size_t>(id)]; }
  const std::vector<Point>& vertices() const { return points_; }
  Point position(VertexRef v) const;
  std::array<Point, 3> corners(const TriKey& t) const;

  std::size_t num_triangles() const { return canon_.size(); }
  bool contains(const TriKey& t) const { return canon_.contains(t); }
  /// All canonical triangles, sorted.
  std::vector<TriKey> triangles() const;

  /// Inserts p and restores the Delaunay property. Throws DuplicateVertex
  /// (state unchanged). Planar points outside the hull extend it.
  InsertionOutcome insert(Point p);

  /// Folds insert over the list in order.
  std::vector<InsertionOutcome> insert_batch(std::span<const Point> points);

  /// Throws OutsideHull in planar mode for points outside the hull.
  Location locate(Point p) const;

  /// Planar only: apex vertex ids of the (solid) triangles on edge ab; -1
  /// marks the hull side. nullopt if ab is not an edge.
  std::optional<std::array<int, 2>> edge_apices(int a, int b) const;

  std::size_t hull_size() const;  // planar
  int lifting() const { return lift_; }  // periodic: 1 (3x3) or 2 (5x5)

  /// Flips the interior edge ab; breaks the Delaunay property on purpose.
  void flip_edge_for_testing(int a, int b);

  friend bool delaunay_check(const Triangulation& t);

 private:
  struct Tri {
    std::array<int, 3> v{-1, -1, -1};  // lifted vertex indices, -1 = ghost apex
    std::array<int, 3> n{-1, -1, -1};  // n[k] is across the edge opposite v[k]
    bool alive = false;
  };

  Triangulation() = default;

  int side() const { return 2 * lift_ + 1; }
  int lifted_index(VertexRef v) const;
  void rebuild(int lift);
  void reset_lifted();
  void add_lifted_copies(int id);
  void insert_lifted(int li);
  void make_first_triangle(int a, int b, int c);
  int walk(Point p) const;
  bool conflicts(int t, Point p) const;
  int alloc_tri();
  void kill_tri(int t);
  void on_created(int t);
  std::optional<TriKey> canonical_key(int t) const;
  bool lifting_valid() const;

  Mode mode_ = Mode::planar;
  int lift_ = 0;
  std::vector<Point> points_;

  std::vector<Point> pos_;         // lifted positions
  std::vector<VertexRef> label_;   // lifted labels
  std::vector<int> vtri_;          // one incident triangle per lifted vertex, -1 if absent
  std::vector<Tri> tris_;
  std::vector<int> free_;
  int hint_ = -1;
  int big_count_ = 0;  // canonical triangles with circumradius >= lift/2

  std::unordered_map<TriKey, int, TriKeyHash> canon_;

  // Per-insertion scratch.
  std::vector<TriKey> removed_scratch_;
  std::vector<TriKey> created_scratch_;
  mutable std::vector<std::uint32_t> mark_;
  mutable std::uint32_t epoch_ = 0;
};

/// Exhaustive empty-circumcircle check with exact predicates.
bool delaunay_check(const Triangulation& t);

}  // namespace pdr
