#include <algorithm>
#include <cmath>
#include <string>

#include "pdr/error.hpp"
#include "pdr/refine.hpp"

namespace pdr {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kBetaSlack = 1e-6;

const std::vector<Point>& checked_vertices(const Pslg& d) {
  const ValidationReport report = validate_pslg(d);
  if (!report.ok()) throw Error(ErrorCode::InvalidDomain, "PSLG failed validation");
  if (!boundary_covers_hull(d)) {
    throw Error(ErrorCode::InvalidDomain, "convex hull boundary is not covered by segments");
  }
  return d.vertices();
}

int grid_level(double len) {
  int k = -static_cast<int>(std::ceil(std::log2(len)));
  while (std::ldexp(1.0, -k) < len) --k;
  while (std::ldexp(1.0, -(k + 1)) >= len) ++k;
  return k;
}

std::uint64_t cell_key(int level, std::int64_t cx, std::int64_t cy) {
  std::uint64_t h = static_cast<std::uint64_t>(level + 1100);
  h = h * 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(cx);
  h = h * 0xbf58476d1ce4e5b9ULL ^ static_cast<std::uint64_t>(cy);
  return h * 0x94d049bb133111ebULL;
}

std::int64_t cell_of(double v, int level) { return static_cast<std::int64_t>(std::floor(std::ldexp(v, level))); }

}  // namespace

QualityRule QualityRule::make(RuleKind kind, double beta) {
  if (!std::isfinite(beta) || beta < kSqrt2 * (1.0 - kBetaSlack)) {
    throw Error(ErrorCode::InvalidConfig, "beta must be at least sqrt(2), got " + std::to_string(beta));
  }
  if (std::fabs(beta - kSqrt2) <= kSqrt2 * kBetaSlack) beta = kSqrt2;
  return {kind, beta};
}

double QualityRule::beta_sq() const {
  if (std::fabs(beta - kSqrt2) <= kSqrt2 * kBetaSlack) return 2.0;
  return beta * beta;
}

std::string_view to_string(CandidateKind k) {
  switch (k) {
    case CandidateKind::D_T: return "D_T";
    case CandidateKind::D_B: return "D_B";
    case CandidateKind::C: return "C";
    case CandidateKind::B: return "B";
  }
  return "?";
}

std::array<Point, 3> Mesh::corners(const TriKey& t) const {
  std::array<Point, 3> out;
  for (std::size_t i = 0; i < 3; ++i) {
    const Point p = vertices[static_cast<std::size_t>(t.v[i].id)];
    out[i] = {p.x + t.v[i].dx, p.y + t.v[i].dy};
  }
  return out;
}

// ---------------------------------------------------------------------------

bool MeshState::EdgeLess::operator()(const EdgeKey& a, const EdgeKey& b) const {
  const Triangulation& t = self->tri_;
  const int c = compare_squared_lengths(t.position(a.a), t.position(a.b), t.position(b.a), t.position(b.b));
  if (c != 0) return c < 0;
  return a < b;
}

MeshState::MeshState(const Pslg& domain, QualityRule rule, EngineOptions options)
    : rule_(rule), options_(options), tri_(Triangulation::build(checked_vertices(domain), Mode::planar)) {
  s_ref_ = min_vertex_lfs(domain);
  vertex_origins_.resize(domain.vertices().size());
  int max_origin = -1;
  for (SegmentId id : domain.live_segments()) {
    const Segment& s = domain.segment(id);
    const SegmentId local = static_cast<SegmentId>(segs_.size());
    segs_.push_back({s.a, s.b, s.origin, -1});
    live_.push_back(1);
    in_dt_.push_back(0);
    in_db_.push_back(0);
    seg_by_edge_[pair_key(s.a, s.b)] = local;
    index_segment(local);
    for (int v : {s.a, s.b}) {
      auto& o = vertex_origins_[static_cast<std::size_t>(v)];
      if (std::find(o.begin(), o.end(), s.origin) == o.end()) o.push_back(s.origin);
    }
    max_origin = std::max(max_origin, s.origin);
  }
  splits_.assign(static_cast<std::size_t>(max_origin + 1), 0);
  init_tables();
  for (SegmentId id = 0; id < static_cast<SegmentId>(segs_.size()); ++id) recheck_dt(id);
}

MeshState::MeshState(const PeriodicPointSet& points, QualityRule rule, EngineOptions options)
    : rule_(rule), options_(options), tri_(Triangulation::build(points.points(), Mode::periodic)) {
  vertex_origins_.resize(points.size());
  init_tables();
  s_ref_ = edge_length(*edge_order_.begin());
}

void MeshState::init_tables() {
  const std::vector<TriKey> all = tri_.triangles();
  for (const TriKey& t : all) add_edges(t);
  for (const TriKey& t : all) set_info(t, compute_info(t));
}

std::uint64_t MeshState::pair_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

bool MeshState::segment_live(SegmentId id) const {
  return id >= 0 && static_cast<std::size_t>(id) < segs_.size() && live_[static_cast<std::size_t>(id)];
}

const Segment& MeshState::segment(SegmentId id) const {
  if (!segment_live(id)) throw Error(ErrorCode::NoSuchSegment, "segment " + std::to_string(id));
  return segs_[static_cast<std::size_t>(id)];
}

std::vector<SegmentId> MeshState::live_segments() const {
  std::vector<SegmentId> out;
  for (std::size_t i = 0; i < segs_.size(); ++i) {
    if (live_[i]) out.push_back(static_cast<SegmentId>(i));
  }
  return out;
}

Circle MeshState::diametral(SegmentId id) const {
  const Segment& s = segment(id);
  return diametral_circle(pos(s.a), pos(s.b));
}

std::size_t MeshState::splits_of(int origin) const {
  if (origin < 0 || static_cast<std::size_t>(origin) >= splits_.size()) return 0;
  return splits_[static_cast<std::size_t>(origin)];
}

void MeshState::index_segment(SegmentId id) {
  const Segment& s = segs_[static_cast<std::size_t>(id)];
  const Point a = pos(s.a), b = pos(s.b);
  const int level = grid_level(distance(a, b));
  const Point m = midpoint(a, b);
  seg_grid_[cell_key(level, cell_of(m.x, level), cell_of(m.y, level))].push_back(id);
  if (seg_level_.size() <= static_cast<std::size_t>(id)) seg_level_.resize(static_cast<std::size_t>(id) + 1, 0);
  seg_level_[static_cast<std::size_t>(id)] = level;
  levels_.insert(level);
}

void MeshState::unindex_segment(SegmentId id) {
  const Segment& s = segs_[static_cast<std::size_t>(id)];
  const int level = seg_level_[static_cast<std::size_t>(id)];
  const Point m = midpoint(pos(s.a), pos(s.b));
  auto& bucket = seg_grid_[cell_key(level, cell_of(m.x, level), cell_of(m.y, level))];
  bucket.erase(std::find(bucket.begin(), bucket.end(), id));
}

std::vector<SegmentId> MeshState::encroached_segments(Point p) const {
  std::vector<SegmentId> out;
  if (periodic()) return out;
  for (int level : levels_) {
    const std::int64_t cx = cell_of(p.x, level), cy = cell_of(p.y, level);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        const auto it = seg_grid_.find(cell_key(level, cx + dx, cy + dy));
        if (it == seg_grid_.end()) continue;
        for (SegmentId id : it->second) {
          const Segment& s = segs_[static_cast<std::size_t>(id)];
          if (encroaches_segment(p, pos(s.a), pos(s.b))) out.push_back(id);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MeshState::SKey MeshState::skey(SegmentId id) const {
  const Segment& s = segs_[static_cast<std::size_t>(id)];
  const Circle d = diametral_circle(pos(s.a), pos(s.b));
  return {-d.radius, d.center, id};
}

void MeshState::recheck_dt(SegmentId id) {
  if (!segment_live(id)) return;
  const Segment& s = segs_[static_cast<std::size_t>(id)];
  const auto apices = tri_.edge_apices(s.a, s.b);
  bool encroached = !apices.has_value();
  if (apices) {
    for (int v : *apices) {
      if (v >= 0 && encroaches_segment(pos(v), pos(s.a), pos(s.b))) encroached = true;
    }
  }
  auto& flag = in_dt_[static_cast<std::size_t>(id)];
  if (encroached && !flag) {
    dt_order_.insert(skey(id));
    flag = 1;
  } else if (!encroached && flag) {
    dt_order_.erase(skey(id));
    flag = 0;
  }
}

void MeshState::mark_db(SegmentId id) {
  auto& flag = in_db_[static_cast<std::size_t>(id)];
  if (flag) return;
  db_order_.insert(skey(id));
  flag = 1;
}

void MeshState::unmark(SegmentId id) {
  if (in_dt_[static_cast<std::size_t>(id)]) dt_order_.erase(skey(id));
  if (in_db_[static_cast<std::size_t>(id)]) db_order_.erase(skey(id));
  in_dt_[static_cast<std::size_t>(id)] = 0;
  in_db_[static_cast<std::size_t>(id)] = 0;
}

bool MeshState::in_dt(SegmentId id) const {
  return segment_live(id) && in_dt_[static_cast<std::size_t>(id)];
}

bool MeshState::in_db(SegmentId id) const {
  return segment_live(id) && in_db_[static_cast<std::size_t>(id)];
}

std::vector<SegmentId> MeshState::dt_segments() const {
  std::vector<SegmentId> out;
  for (const SKey& k : dt_order_) out.push_back(k.id);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SegmentId> MeshState::db_segments() const {
  std::vector<SegmentId> out;
  for (const SKey& k : db_order_) out.push_back(k.id);
  std::sort(out.begin(), out.end());
  return out;
}

bool MeshState::is_sliver(const TriKey& t) const {
  if (periodic()) return false;
  const auto& o0 = vertex_origins_[static_cast<std::size_t>(t.v[0].id)];
  const auto& o1 = vertex_origins_[static_cast<std::size_t>(t.v[1].id)];
  const auto& o2 = vertex_origins_[static_cast<std::size_t>(t.v[2].id)];
  for (int o : o0) {
    if (std::find(o1.begin(), o1.end(), o) != o1.end() && std::find(o2.begin(), o2.end(), o) != o2.end()) {
      return true;
    }
  }
  return false;
}

Circle MeshState::circumcircle_of(const TriKey& t) const {
  const auto c = tri_.corners(t);
  Circle cc = circumcircle(c[0], c[1], c[2]);
  if (periodic()) cc.center = snap_periodic(cc.center);
  return cc;
}

MeshState::TriInfo MeshState::compute_info(const TriKey& t) const {
  TriInfo info;
  const auto c = tri_.corners(t);
  info.circle = circumcircle_of(t);
  std::pair<Point, Point> shortest{c[0], c[1]};
  for (int k = 1; k < 3; ++k) {
    const Point a = c[static_cast<std::size_t>(k)], b = c[static_cast<std::size_t>((k + 1) % 3)];
    if (compare_squared_lengths(a, b, shortest.first, shortest.second) < 0) shortest = {a, b};
  }
  info.ratio = info.circle.radius / distance(shortest.first, shortest.second);
  if (is_sliver(t)) {
    info.sliver = true;
    return info;
  }
  const std::pair<Point, Point> e = rule_.kind == RuleKind::ruppert ? shortest : shortest_edge();
  info.poor = ratio_exceeds(c[0], c[1], c[2], e.first, e.second, rule_.beta_sq());
  if (info.poor) info.encroached = encroached_segments(info.circle.center);
  return info;
}

void MeshState::set_info(const TriKey& t, TriInfo info) {
  radii_.insert(info.circle.radius);
  if (info.sliver) ++sliver_count_;
  if (info.poor) {
    if (info.encroached.empty()) {
      c_order_.insert(CKey{-info.circle.radius, info.circle.center, t});
    } else {
      b_set_.insert(t);
      for (SegmentId s : info.encroached) {
        b_by_seg_[s].push_back(t);
        mark_db(s);
      }
    }
  }
  info_[t] = std::move(info);
}

void MeshState::clear_info(const TriKey& t) {
  const auto it = info_.find(t);
  if (it == info_.end()) return;
  const TriInfo& info = it->second;
  radii_.erase(radii_.find(info.circle.radius));
  if (info.sliver) --sliver_count_;
  if (info.poor) {
    if (info.encroached.empty()) {
      c_order_.erase(CKey{-info.circle.radius, info.circle.center, t});
    } else {
      b_set_.erase(t);
    }
  }
  info_.erase(it);
}

void MeshState::add_edges(const TriKey& t) {
  for (const EdgeKey& e : edges_of(t)) {
    auto [it, fresh] = edges_.try_emplace(e);
    EdgeInfo& ei = it->second;
    if (ei.count < 2) ei.tris[static_cast<std::size_t>(ei.count)] = t;
    ++ei.count;
    if (fresh) edge_order_.insert(e);
  }
}

void MeshState::drop_edges(const TriKey& t) {
  for (const EdgeKey& e : edges_of(t)) {
    const auto it = edges_.find(e);
    if (it == edges_.end()) continue;
    EdgeInfo& ei = it->second;
    if (ei.count >= 1 && ei.tris[0] == t) {
      ei.tris[0] = ei.tris[1];
    }
    --ei.count;
    if (ei.count <= 0) {
      edge_order_.erase(e);
      edges_.erase(it);
    }
  }
}

void MeshState::reclassify_all() {
  for (const TriKey& t : tri_.triangles()) {
    clear_info(t);
    set_info(t, compute_info(t));
  }
}

void MeshState::after_insertion(const InsertionOutcome& o) {
  for (const TriKey& t : o.removed) {
    clear_info(t);
    drop_edges(t);
  }
  const bool had_edges = !edge_order_.empty();
  const EdgeKey before = had_edges ? *edge_order_.begin() : EdgeKey{};
  for (const TriKey& t : o.created) add_edges(t);

  const double floor = stall_floor();
  for (const TriKey& t : o.created) {
    for (const EdgeKey& e : edges_of(t)) {
      if (edge_length(e) < floor) {
        throw Error(ErrorCode::RefinementStalled,
                    "edge of length " + std::to_string(edge_length(e)) + " is below the stall floor " +
                        std::to_string(floor));
      }
    }
  }
  if (tri_.num_vertices() > options_.max_vertices) {
    throw Error(ErrorCode::RefinementStalled, "vertex budget exceeded");
  }

  const bool shortest_changed = edge_order_.empty() || !had_edges || before != *edge_order_.begin();
  if (rule_.kind == RuleKind::chew && shortest_changed) {
    reclassify_all();
  } else {
    for (const TriKey& t : o.created) set_info(t, compute_info(t));
  }

  if (periodic()) return;
  std::vector<SegmentId> touched;
  const auto collect = [&](const TriKey& t) {
    for (int k = 0; k < 3; ++k) {
      const auto it = seg_by_edge_.find(pair_key(t.v[static_cast<std::size_t>(k)].id,
                                                 t.v[static_cast<std::size_t>((k + 1) % 3)].id));
      if (it != seg_by_edge_.end()) touched.push_back(it->second);
    }
  };
  for (const TriKey& t : o.removed) collect(t);
  for (const TriKey& t : o.created) collect(t);
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  for (SegmentId id : touched) recheck_dt(id);
}

MeshState::Applied MeshState::apply(const Candidate& c) {
  InsertionOutcome o;
  if (!is_midpoint(c.kind)) {
    if (c.kind == CandidateKind::B) {
      throw Error(ErrorCode::InvariantViolation, "encroaching circumcenters are never inserted");
    }
    if (!periodic()) {
      try {
        if (tri_.locate(c.location).kind == Location::Kind::on_vertex) {
          throw Error(ErrorCode::InvariantViolation, "circumcenter coincides with a vertex");
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::OutsideHull) throw;
        throw Error(ErrorCode::InvariantViolation, "circumcenter lies outside the domain");
      }
      if (options_.check_protection && !encroached_segments(c.location).empty()) {
        throw Error(ErrorCode::InvariantViolation, "circumcenter inside a diametral circle");
      }
    }
    try {
      o = tri_.insert(c.location);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DuplicateVertex) throw;
      throw Error(ErrorCode::InvariantViolation, e.what());
    }
    vertex_origins_.emplace_back();
    std::vector<double> ratios = removed_ratios(o);
    after_insertion(o);
    return {o.vertex, std::move(o.removed), std::move(ratios), std::move(o.created)};
  }

  const SegmentId id = c.segment;
  if (!segment_live(id)) throw Error(ErrorCode::NoSuchSegment, "segment " + std::to_string(id));
  const Segment s = segs_[static_cast<std::size_t>(id)];
  const Point m = midpoint(pos(s.a), pos(s.b));
  const int v = static_cast<int>(tri_.num_vertices());

  unmark(id);
  unindex_segment(id);
  live_[static_cast<std::size_t>(id)] = 0;
  seg_by_edge_.erase(pair_key(s.a, s.b));
  const SegmentId h1 = static_cast<SegmentId>(segs_.size());
  const SegmentId h2 = h1 + 1;
  segs_.push_back({s.a, v, s.origin, id});
  segs_.push_back({v, s.b, s.origin, id});
  for (int k = 0; k < 2; ++k) {
    live_.push_back(1);
    in_dt_.push_back(0);
    in_db_.push_back(0);
  }
  vertex_origins_.push_back({s.origin});
  ++splits_[static_cast<std::size_t>(s.origin)];

  try {
    o = tri_.insert(m);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DuplicateVertex) throw;
    throw Error(ErrorCode::InvariantViolation, e.what());
  }
  seg_by_edge_[pair_key(s.a, v)] = h1;
  seg_by_edge_[pair_key(v, s.b)] = h2;
  index_segment(h1);
  index_segment(h2);

  std::vector<double> ratios = removed_ratios(o);
  after_insertion(o);
  recheck_dt(h1);
  recheck_dt(h2);

  // Poor triangles whose circumcenter encroached the retired segment.
  if (const auto it = b_by_seg_.find(id); it != b_by_seg_.end()) {
    std::vector<TriKey> tris = std::move(it->second);
    b_by_seg_.erase(it);
    std::sort(tris.begin(), tris.end());
    tris.erase(std::unique(tris.begin(), tris.end()), tris.end());
    for (const TriKey& t : tris) {
      const auto ii = info_.find(t);
      if (ii == info_.end() || !ii->second.poor) continue;
      const auto& enc = ii->second.encroached;
      if (std::find(enc.begin(), enc.end(), id) == enc.end()) continue;
      TriInfo fresh = compute_info(t);
      clear_info(t);
      set_info(t, std::move(fresh));
    }
  }
  return {o.vertex, std::move(o.removed), std::move(ratios), std::move(o.created)};
}

std::vector<double> MeshState::removed_ratios(const InsertionOutcome& o) const {
  std::vector<double> out;
  out.reserve(o.removed.size());
  for (const TriKey& t : o.removed) out.push_back(info_.at(t).ratio);
  return out;
}

bool MeshState::is_poor(const TriKey& t) const {
  const auto it = info_.find(t);
  return it != info_.end() && it->second.poor;
}

std::vector<TriKey> MeshState::poor_triangles() const {
  std::vector<TriKey> out;
  out.reserve(poor_count());
  for (const CKey& k : c_order_) out.push_back(k.tri);
  out.insert(out.end(), b_set_.begin(), b_set_.end());
  std::sort(out.begin(), out.end());
  return out;
}

Candidate MeshState::circumcenter_candidate(const TriKey& t) const {
  const auto it = info_.find(t);
  if (it == info_.end() || !it->second.poor) {
    throw Error(ErrorCode::InvariantViolation, "triangle is not a poor triangle of the mesh");
  }
  Candidate c;
  c.location = it->second.circle.center;
  c.circle = it->second.circle;
  c.kind = it->second.encroached.empty() ? CandidateKind::C : CandidateKind::B;
  c.triangle = t;
  return c;
}

std::vector<Candidate> MeshState::circumcenter_candidates() const {
  std::vector<Candidate> out;
  for (const TriKey& t : poor_triangles()) out.push_back(circumcenter_candidate(t));
  return out;
}

const std::vector<SegmentId>& MeshState::encroached_by(const TriKey& t) const {
  const auto it = info_.find(t);
  if (it == info_.end()) throw Error(ErrorCode::InvariantViolation, "unknown triangle");
  return it->second.encroached;
}

Candidate MeshState::midpoint_candidate(SegmentId id, CandidateKind kind) const {
  Candidate c;
  c.circle = diametral(id);
  c.location = c.circle.center;
  c.kind = kind;
  c.segment = id;
  return c;
}

std::optional<Candidate> MeshState::next_sequential() const {
  if (!dt_order_.empty()) return midpoint_candidate(dt_order_.begin()->id, CandidateKind::D_T);
  if (!db_order_.empty()) return midpoint_candidate(db_order_.begin()->id, CandidateKind::D_B);
  if (!c_order_.empty()) return circumcenter_candidate(c_order_.begin()->tri);
  return std::nullopt;
}

void MeshState::validate(const Candidate& c, std::size_t step) const {
  if (auto why = invalid_reason(c)) {
    throw Error(ErrorCode::NotSequentializable, "step " + std::to_string(step) + ": " + *why);
  }
}

std::optional<std::string> MeshState::invalid_reason(const Candidate& c) const {
  switch (c.kind) {
    case CandidateKind::B:
      return "encroaching circumcenter";
    case CandidateKind::C: {
      const auto it = info_.find(c.triangle);
      if (it == info_.end()) return "triangle no longer exists";
      const TriInfo& info = it->second;
      if (!info.poor) return "triangle is not poor";
      if (!info.encroached.empty()) return "circumcenter encroaches a subsegment";
      if (!(info.circle.center == c.location) || info.circle.radius != c.circle.radius) {
        return "circumcenter differs from the recorded one";
      }
      break;
    }
    case CandidateKind::D_T:
    case CandidateKind::D_B:
      if (!segment_live(c.segment)) return "subsegment " + std::to_string(c.segment) + " is not live";
      if (!in_dt(c.segment) && !in_db(c.segment)) {
        return "subsegment " + std::to_string(c.segment) + " is neither in D_T nor in D_B";
      }
      break;
  }
  return std::nullopt;
}

double MeshState::max_circumradius() const { return radii_.empty() ? 0.0 : *radii_.rbegin(); }

std::pair<Point, Point> MeshState::shortest_edge() const {
  const EdgeKey& e = *edge_order_.begin();
  return {tri_.position(e.a), tri_.position(e.b)};
}

std::vector<EdgeKey> MeshState::edges() const {
  std::vector<EdgeKey> out;
  out.reserve(edges_.size());
  for (const auto& [e, _] : edges_) out.push_back(e);
  std::sort(out.begin(), out.end());
  return out;
}

double MeshState::edge_length(const EdgeKey& e) const { return distance(tri_.position(e.a), tri_.position(e.b)); }

double MeshState::ratio(const TriKey& t) const { return info_.at(t).ratio; }

double MeshState::max_incident_ratio(const EdgeKey& e) const {
  const EdgeInfo& ei = edges_.at(e);
  double r = 0.0;
  for (int i = 0; i < std::min(ei.count, 2); ++i) r = std::max(r, ratio(ei.tris[static_cast<std::size_t>(i)]));
  return r;
}

std::vector<TriKey> MeshState::incident_triangles(const EdgeKey& e) const {
  const EdgeInfo& ei = edges_.at(e);
  return {ei.tris.begin(), ei.tris.begin() + std::min(ei.count, 2)};
}

Mesh MeshState::mesh() const {
  Mesh m;
  m.mode = tri_.mode();
  m.vertices = tri_.vertices();
  m.triangles = tri_.triangles();
  for (SegmentId id : live_segments()) {
    const Segment& s = segs_[static_cast<std::size_t>(id)];
    m.segments.emplace_back(s.a, s.b);
  }
  return m;
}

}  // namespace pdr
