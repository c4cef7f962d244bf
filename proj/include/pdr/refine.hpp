#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <set>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pdr/domain.hpp"
#include "pdr/triangulation.hpp"

namespace pdr {

enum class RuleKind { ruppert, chew };

/// Ruppert: a triangle is poor if circumradius / shortest side > beta.
/// Chew: poor if circumradius / shortest edge of the whole mesh > beta.
struct QualityRule {
  RuleKind kind = RuleKind::ruppert;
  double beta = std::sqrt(2.0);

  /// Throws InvalidConfig unless beta >= sqrt(2) (up to a relative slack of
  /// 1e-6, which also absorbs truncated decimal spellings of sqrt(2)).
  static QualityRule make(RuleKind kind, double beta);

  /// beta^2, exactly 2 when beta is within the slack of sqrt(2).
  double beta_sq() const;
};

enum class CandidateKind { D_T, D_B, C, B };

std::string_view to_string(CandidateKind k);

inline bool is_midpoint(CandidateKind k) { return k == CandidateKind::D_T || k == CandidateKind::D_B; }

struct Candidate {
  Point location;
  Circle circle;
  CandidateKind kind = CandidateKind::C;
  TriKey triangle;         // C and B
  SegmentId segment = -1;  // D_T and D_B
  int birth_round = 0;
};

struct LogEntry {
  Candidate candidate;
  int iteration = 0;
};

using InsertionLog = std::vector<LogEntry>;

/// Final (or intermediate) refinement output. Triangles are canonical keys
/// into `vertices`; offsets are nonzero only for periodic meshes.
struct Mesh {
  Mode mode = Mode::planar;
  std::vector<Point> vertices;
  std::vector<TriKey> triangles;  // sorted
  std::vector<std::pair<int, int>> segments;

  std::array<Point, 3> corners(const TriKey& t) const;

  friend bool operator==(const Mesh&, const Mesh&) = default;
};

struct EngineOptions {
  std::size_t max_vertices = 2'000'000;
  /// Re-verify, before every circumcenter insertion, that the point is not
  /// inside any live diametral circle.
  bool check_protection = false;
};

/// Incrementally maintained refinement state: the Delaunay triangulation,
/// the live subsegments and the candidate sets of the sequential algorithm.
/// Shared by the sequential driver, the parallel drivers and replay.
///
/// D_B accumulates: a subsegment encroached by the circumcenter of a poor
/// triangle stays a D_B candidate until it is split.
class MeshState {
 public:
  /// Throws InvalidDomain if the PSLG fails validation or its convex hull is
  /// not covered by segments.
  MeshState(const Pslg& domain, QualityRule rule, EngineOptions options = {});
  MeshState(const PeriodicPointSet& points, QualityRule rule, EngineOptions options = {});

  MeshState(const MeshState&) = delete;
  MeshState& operator=(const MeshState&) = delete;

  bool periodic() const { return tri_.mode() == Mode::periodic; }
  const Triangulation& triangulation() const { return tri_; }
  const QualityRule& rule() const { return rule_; }
  /// PSLG: min lfs over input vertices. Periodic: shortest initial edge.
  double reference_size() const { return s_ref_; }
  double stall_floor() const { return s_ref_ / 1024.0; }

  // --- subsegments (vertex ids are triangulation ids) ---
  std::size_t segment_slots() const { return segs_.size(); }
  bool segment_live(SegmentId id) const;
  const Segment& segment(SegmentId id) const;
  std::vector<SegmentId> live_segments() const;
  Circle diametral(SegmentId id) const;
  /// Live subsegments whose diametral circle strictly contains p; sorted.
  std::vector<SegmentId> encroached_segments(Point p) const;
  /// Number of times pieces of input segment `origin` have been split.
  std::size_t splits_of(int origin) const;

  // --- candidates ---
  std::size_t poor_count() const { return c_order_.size() + b_set_.size(); }
  bool has_dt() const { return !dt_order_.empty(); }
  /// No poor triangle and no D_T subsegment; leftover D_B midpoints alone
  /// do not keep the refinement going.
  bool done() const { return poor_count() == 0 && dt_order_.empty(); }
  bool is_poor(const TriKey& t) const;
  std::vector<TriKey> poor_triangles() const;  // sorted
  Candidate circumcenter_candidate(const TriKey& t) const;
  /// Circumcenter candidates (B and C) of all poor triangles, sorted by key.
  std::vector<Candidate> circumcenter_candidates() const;
  const std::vector<SegmentId>& encroached_by(const TriKey& t) const;
  Candidate midpoint_candidate(SegmentId id, CandidateKind kind) const;
  std::vector<SegmentId> dt_segments() const;  // sorted
  std::vector<SegmentId> db_segments() const;  // sorted
  bool in_dt(SegmentId id) const;
  bool in_db(SegmentId id) const;
  std::size_t sliver_count() const { return sliver_count_; }

  /// Default sequential choice: D_T before D_B before C; larger radius
  /// first; then lexicographic location; then source.
  std::optional<Candidate> next_sequential() const;

  /// Throws NotSequentializable if `c` is not a legal choice of the
  /// sequential algorithm in the current state.
  void validate(const Candidate& c, std::size_t step) const;
  /// Reason `c` is not a legal choice, or nullopt if it is.
  std::optional<std::string> invalid_reason(const Candidate& c) const;

  struct Applied {
    int vertex = -1;
    std::vector<TriKey> removed;
    std::vector<double> removed_ratios;  // radius-edge ratios, parallel to removed
    std::vector<TriKey> created;
  };

  /// Inserts a C candidate or splits the subsegment of a D candidate.
  /// Throws RefinementStalled when the stall guard trips.
  Applied apply(const Candidate& c);

  // --- metrics ---
  double max_circumradius() const;
  /// Global shortest edge as a pair of endpoint positions.
  std::pair<Point, Point> shortest_edge() const;
  bool has_edge(const EdgeKey& e) const { return edges_.contains(e); }
  std::vector<EdgeKey> edges() const;  // sorted
  double edge_length(const EdgeKey& e) const;
  /// Largest radius-edge ratio among the triangles incident to e.
  double max_incident_ratio(const EdgeKey& e) const;
  std::vector<TriKey> incident_triangles(const EdgeKey& e) const;
  double ratio(const TriKey& t) const;
  Circle circumcircle_of(const TriKey& t) const;

  Mesh mesh() const;

 private:
  struct TriInfo {
    Circle circle;
    double ratio = 0.0;
    bool poor = false;
    bool sliver = false;
    std::vector<SegmentId> encroached;
  };
  struct EdgeInfo {
    std::array<TriKey, 2> tris;
    int count = 0;
  };
  struct CKey {
    double neg_radius;
    Point location;
    TriKey tri;
    friend auto operator<=>(const CKey&, const CKey&) = default;
    friend bool operator==(const CKey&, const CKey&) = default;
  };
  struct SKey {
    double neg_radius;
    Point mid;
    SegmentId id;
    friend auto operator<=>(const SKey&, const SKey&) = default;
    friend bool operator==(const SKey&, const SKey&) = default;
  };
  struct EdgeLess {
    const MeshState* self;
    bool operator()(const EdgeKey& a, const EdgeKey& b) const;
  };

  void init_tables();
  Point pos(int v) const { return tri_.vertex(v); }
  SKey skey(SegmentId id) const;
  TriInfo compute_info(const TriKey& t) const;
  void set_info(const TriKey& t, TriInfo info);
  void clear_info(const TriKey& t);
  void add_edges(const TriKey& t);
  void drop_edges(const TriKey& t);
  void reclassify_all();
  void recheck_dt(SegmentId id);
  void mark_db(SegmentId id);
  void unmark(SegmentId id);
  bool is_sliver(const TriKey& t) const;
  void index_segment(SegmentId id);
  void unindex_segment(SegmentId id);
  void after_insertion(const InsertionOutcome& o);
  std::vector<double> removed_ratios(const InsertionOutcome& o) const;
  static std::uint64_t pair_key(int a, int b);

  QualityRule rule_;
  EngineOptions options_;
  Triangulation tri_;
  double s_ref_ = 0.0;

  std::vector<Segment> segs_;
  std::vector<char> live_;
  std::vector<char> in_dt_, in_db_;
  std::unordered_map<std::uint64_t, SegmentId> seg_by_edge_;
  std::vector<std::vector<int>> vertex_origins_;  // input segments each vertex lies on
  std::vector<std::size_t> splits_;               // per input segment

  // Segment index: level -> cell -> segment ids. Level k has cell size 2^-k.
  std::unordered_map<std::uint64_t, std::vector<SegmentId>> seg_grid_;
  std::vector<int> seg_level_;
  std::set<int> levels_;

  std::unordered_map<TriKey, TriInfo, TriKeyHash> info_;
  std::set<CKey> c_order_;
  std::set<TriKey> b_set_;
  std::unordered_map<SegmentId, std::vector<TriKey>> b_by_seg_;
  std::set<SKey> dt_order_, db_order_;
  std::size_t sliver_count_ = 0;

  std::unordered_map<EdgeKey, EdgeInfo, EdgeKeyHash> edges_;
  std::set<EdgeKey, EdgeLess> edge_order_{EdgeLess{this}};
  std::multiset<double> radii_;
};

// --- free operations ---

/// Direct evaluation (Chew scans the whole triangulation for the shortest
/// edge).
bool is_poor(const Triangulation& t, const TriKey& tri, const QualityRule& rule);

struct CandidateSets {
  std::vector<Candidate> B, C, D_T, D_B;
};

CandidateSets classify_candidates(const MeshState& state);

using Picker = std::function<Candidate(const MeshState&)>;

struct SeqResult {
  Mesh mesh;
  InsertionLog log;
  std::size_t slivers_skipped = 0;
};

/// Sequential refinement. The default picker is MeshState::next_sequential.
SeqResult seq_refine(const Pslg& domain, QualityRule rule, const Picker& picker = {},
                     EngineOptions options = {});
SeqResult seq_refine(const PeriodicPointSet& points, QualityRule rule, const Picker& picker = {},
                     EngineOptions options = {});

/// Re-executes a log, validating every entry against the sequential rules.
Mesh replay(const Pslg& domain, QualityRule rule, const InsertionLog& log, EngineOptions options = {});
Mesh replay(const PeriodicPointSet& points, QualityRule rule, const InsertionLog& log,
            EngineOptions options = {});

}  // namespace pdr
