#include "pdr/triangulation.hpp"

#include <algorithm>
#include <cassert>
#include <string>

#include "pdr/domain.hpp"
#include "pdr/error.hpp"

namespace pdr {

namespace {

VertexRef translated(VertexRef u, int dx, int dy) {
  return {u.id, static_cast<std::int8_t>(u.dx - dx), static_cast<std::int8_t>(u.dy - dy)};
}

// Returns the canonical key and whether the input already is the canonical
// translate (zero translation).
std::pair<TriKey, bool> normalize(const std::array<VertexRef, 3>& v) {
  const int min_id = std::min({v[0].id, v[1].id, v[2].id});
  std::optional<TriKey> best;
  bool best_zero = false;
  for (int r = 0; r < 3; ++r) {
    if (v[static_cast<std::size_t>(r)].id != min_id) continue;
    const VertexRef o = v[static_cast<std::size_t>(r)];
    TriKey cand{{translated(o, o.dx, o.dy), translated(v[static_cast<std::size_t>((r + 1) % 3)], o.dx, o.dy),
                 translated(v[static_cast<std::size_t>((r + 2) % 3)], o.dx, o.dy)}};
    if (!best || cand < *best) {
      best = cand;
      best_zero = o.dx == 0 && o.dy == 0;
    }
  }
  return {*best, best_zero};
}

bool strictly_between(Point p, Point a, Point b) {
  if (a.x != b.x) return (a.x < p.x && p.x < b.x) || (b.x < p.x && p.x < a.x);
  return (a.y < p.y && p.y < b.y) || (b.y < p.y && p.y < a.y);
}

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t hash_ref(VertexRef v) {
  return (static_cast<std::size_t>(static_cast<std::uint32_t>(v.id)) << 16) ^
         (static_cast<std::size_t>(static_cast<std::uint8_t>(v.dx)) << 8) ^
         static_cast<std::size_t>(static_cast<std::uint8_t>(v.dy));
}

}  // namespace

std::size_t TriKeyHash::operator()(const TriKey& k) const noexcept {
  std::size_t h = 0;
  for (const VertexRef& v : k.v) h = mix(h, hash_ref(v));
  return h;
}

std::size_t EdgeKeyHash::operator()(const EdgeKey& k) const noexcept {
  return mix(hash_ref(k.a), hash_ref(k.b));
}

TriKey make_tri_key(const std::array<VertexRef, 3>& ccw) { return normalize(ccw).first; }

EdgeKey make_edge_key(VertexRef a, VertexRef b) {
  std::optional<EdgeKey> best;
  const auto consider = [&](VertexRef o, VertexRef other) {
    EdgeKey cand{translated(o, o.dx, o.dy), translated(other, o.dx, o.dy)};
    if (!best || cand < *best) best = cand;
  };
  if (a.id <= b.id) consider(a, b);
  if (b.id <= a.id) consider(b, a);
  return *best;
}

std::array<EdgeKey, 3> edges_of(const TriKey& t) {
  return {make_edge_key(t.v[0], t.v[1]), make_edge_key(t.v[1], t.v[2]),
          make_edge_key(t.v[2], t.v[0])};
}

// ---------------------------------------------------------------------------

Point Triangulation::position(VertexRef v) const {
  const Point p = points_[static_cast<std::size_t>(v.id)];
  return {p.x + v.dx, p.y + v.dy};
}

std::array<Point, 3> Triangulation::corners(const TriKey& t) const {
  return {position(t.v[0]), position(t.v[1]), position(t.v[2])};
}

std::vector<TriKey> Triangulation::triangles() const {
  std::vector<TriKey> out;
  out.reserve(canon_.size());
  for (const auto& [k, _] : canon_) out.push_back(k);
  std::sort(out.begin(), out.end());
  return out;
}

int Triangulation::lifted_index(VertexRef v) const {
  if (mode_ == Mode::planar) return v.id;
  const int k = side();
  return v.id * k * k + (v.dx + lift_) * k + (v.dy + lift_);
}

void Triangulation::reset_lifted() {
  pos_.clear();
  label_.clear();
  vtri_.clear();
  tris_.clear();
  free_.clear();
  canon_.clear();
  mark_.clear();
  hint_ = -1;
  big_count_ = 0;
}

void Triangulation::add_lifted_copies(int id) {
  const Point p = points_[static_cast<std::size_t>(id)];
  for (int dx = -lift_; dx <= lift_; ++dx) {
    for (int dy = -lift_; dy <= lift_; ++dy) {
      pos_.push_back({p.x + dx, p.y + dy});
      label_.push_back({id, static_cast<std::int8_t>(dx), static_cast<std::int8_t>(dy)});
      vtri_.push_back(-1);
    }
  }
}

int Triangulation::alloc_tri() {
  int t;
  if (!free_.empty()) {
    t = free_.back();
    free_.pop_back();
  } else {
    t = static_cast<int>(tris_.size());
    tris_.emplace_back();
    mark_.push_back(0);
  }
  tris_[static_cast<std::size_t>(t)].alive = true;
  return t;
}

std::optional<TriKey> Triangulation::canonical_key(int t) const {
  const Tri& T = tris_[static_cast<std::size_t>(t)];
  if (T.v[0] < 0 || T.v[1] < 0 || T.v[2] < 0) return std::nullopt;
  const auto [key, zero] = normalize({label_[static_cast<std::size_t>(T.v[0])],
                                      label_[static_cast<std::size_t>(T.v[1])],
                                      label_[static_cast<std::size_t>(T.v[2])]});
  if (!zero) return std::nullopt;
  return key;
}

void Triangulation::on_created(int t) {
  const auto key = canonical_key(t);
  if (!key) return;
  canon_.emplace(*key, t);
  if (mode_ == Mode::periodic) {
    const auto c = corners(*key);
    if (circumcircle(c[0], c[1], c[2]).radius >= 0.5) ++big_count_;
  }
}

void Triangulation::kill_tri(int t) {
  if (const auto key = canonical_key(t)) {
    canon_.erase(*key);
    if (mode_ == Mode::periodic) {
      const auto c = corners(*key);
      if (circumcircle(c[0], c[1], c[2]).radius >= 0.5) --big_count_;
    }
    removed_scratch_.push_back(*key);
  }
  tris_[static_cast<std::size_t>(t)].alive = false;
  free_.push_back(t);
}

void Triangulation::make_first_triangle(int a, int b, int c) {
  if (orientation(pos_[static_cast<std::size_t>(a)], pos_[static_cast<std::size_t>(b)],
                  pos_[static_cast<std::size_t>(c)]) == Orientation::negative) {
    std::swap(b, c);
  }
  const std::array<std::array<int, 3>, 4> verts{{{a, b, c}, {c, b, -1}, {a, c, -1}, {b, a, -1}}};
  std::array<int, 4> ids{};
  for (std::size_t i = 0; i < 4; ++i) {
    ids[i] = alloc_tri();
    tris_[static_cast<std::size_t>(ids[i])].v = verts[i];
  }
  for (std::size_t i = 0; i < 4; ++i) {
    Tri& T = tris_[static_cast<std::size_t>(ids[i])];
    for (int k = 0; k < 3; ++k) {
      const int p = T.v[static_cast<std::size_t>((k + 1) % 3)];
      const int q = T.v[static_cast<std::size_t>((k + 2) % 3)];
      for (std::size_t j = 0; j < 4; ++j) {
        if (j == i) continue;
        const auto& U = verts[j];
        for (int m = 0; m < 3; ++m) {
          if (U[static_cast<std::size_t>((m + 1) % 3)] == q && U[static_cast<std::size_t>((m + 2) % 3)] == p) {
            T.n[static_cast<std::size_t>(k)] = ids[j];
          }
        }
      }
    }
  }
  for (int v : {a, b, c}) vtri_[static_cast<std::size_t>(v)] = ids[0];
  for (int id : ids) on_created(id);
  hint_ = ids[0];
}

bool Triangulation::conflicts(int t, Point p) const {
  const Tri& T = tris_[static_cast<std::size_t>(t)];
  int g = -1;
  for (int k = 0; k < 3; ++k) {
    if (T.v[static_cast<std::size_t>(k)] < 0) g = k;
  }
  if (g < 0) {
    return in_circle_perturbed(pos_[static_cast<std::size_t>(T.v[0])], pos_[static_cast<std::size_t>(T.v[1])],
                               pos_[static_cast<std::size_t>(T.v[2])], p) == Orientation::positive;
  }
  const Point a = pos_[static_cast<std::size_t>(T.v[static_cast<std::size_t>((g + 1) % 3)])];
  const Point b = pos_[static_cast<std::size_t>(T.v[static_cast<std::size_t>((g + 2) % 3)])];
  const Orientation o = orientation(a, b, p);
  if (o == Orientation::positive) return true;
  return o == Orientation::zero && strictly_between(p, a, b);
}

int Triangulation::walk(Point p) const {
  int t = hint_;
  if (t < 0 || !tris_[static_cast<std::size_t>(t)].alive) {
    t = -1;
    for (std::size_t i = 0; i < tris_.size(); ++i) {
      if (tris_[i].alive) {
        t = static_cast<int>(i);
        break;
      }
    }
  }
  const auto ghost_slot = [&](int tri) {
    const Tri& T = tris_[static_cast<std::size_t>(tri)];
    for (int k = 0; k < 3; ++k) {
      if (T.v[static_cast<std::size_t>(k)] < 0) return k;
    }
    return -1;
  };
  if (const int g = ghost_slot(t); g >= 0) t = tris_[static_cast<std::size_t>(t)].n[static_cast<std::size_t>(g)];

  const std::size_t cap = 4 * tris_.size() + 64;
  int rot = 0;
  for (std::size_t step = 0; step < cap; ++step) {
    if (ghost_slot(t) >= 0) return t;
    const Tri& T = tris_[static_cast<std::size_t>(t)];
    bool moved = false;
    for (int j = 0; j < 3; ++j) {
      const int k = (rot + j) % 3;
      const Point a = pos_[static_cast<std::size_t>(T.v[static_cast<std::size_t>((k + 1) % 3)])];
      const Point b = pos_[static_cast<std::size_t>(T.v[static_cast<std::size_t>((k + 2) % 3)])];
      if (orientation(a, b, p) == Orientation::negative) {
        t = T.n[static_cast<std::size_t>(k)];
        moved = true;
        break;
      }
    }
    if (!moved) return t;
    rot = (rot + 1) % 3;
  }

  // Fallback: exhaustive search.
  for (std::size_t i = 0; i < tris_.size(); ++i) {
    const Tri& T = tris_[i];
    if (!T.alive || ghost_slot(static_cast<int>(i)) >= 0) continue;
    bool inside = true;
    for (int k = 0; k < 3 && inside; ++k) {
      inside = orientation(pos_[static_cast<std::size_t>(T.v[static_cast<std::size_t>((k + 1) % 3)])],
                           pos_[static_cast<std::size_t>(T.v[static_cast<std::size_t>((k + 2) % 3)])],
                           p) != Orientation::negative;
    }
    if (inside) return static_cast<int>(i);
  }
  for (std::size_t i = 0; i < tris_.size(); ++i) {
    if (tris_[i].alive && ghost_slot(static_cast<int>(i)) >= 0 && conflicts(static_cast<int>(i), p)) {
      return static_cast<int>(i);
    }
  }
  throw Error(ErrorCode::InvariantViolation, "point location failed");
}

void Triangulation::insert_lifted(int li) {
  const Point p = pos_[static_cast<std::size_t>(li)];
  const int start = walk(p);
  {
    const Tri& T = tris_[static_cast<std::size_t>(start)];
    for (int v : T.v) {
      if (v >= 0 && pos_[static_cast<std::size_t>(v)] == p) {
        throw Error(ErrorCode::DuplicateVertex,
                    "point (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ") already present");
      }
    }
  }

  if (++epoch_ == 0) {
    std::fill(mark_.begin(), mark_.end(), 0);
    epoch_ = 1;
  }
  std::vector<int> cavity{start};
  mark_[static_cast<std::size_t>(start)] = epoch_;
  for (std::size_t i = 0; i < cavity.size(); ++i) {
    const Tri& T = tris_[static_cast<std::size_t>(cavity[i])];
    for (int nb : T.n) {
      if (mark_[static_cast<std::size_t>(nb)] == epoch_) continue;
      if (conflicts(nb, p)) {
        mark_[static_cast<std::size_t>(nb)] = epoch_;
        cavity.push_back(nb);
      }
    }
  }

  struct BoundaryEdge {
    int a, b, outside, outside_slot;
  };
  std::vector<BoundaryEdge> boundary;
  for (int c : cavity) {
    const Tri& T = tris_[static_cast<std::size_t>(c)];
    for (int k = 0; k < 3; ++k) {
      const int nb = T.n[static_cast<std::size_t>(k)];
      if (mark_[static_cast<std::size_t>(nb)] == epoch_) continue;
      const Tri& N = tris_[static_cast<std::size_t>(nb)];
      int slot = 0;
      while (N.n[static_cast<std::size_t>(slot)] != c) ++slot;
      boundary.push_back({T.v[static_cast<std::size_t>((k + 1) % 3)], T.v[static_cast<std::size_t>((k + 2) % 3)], nb,
                          slot});
    }
  }

  for (int c : cavity) kill_tri(c);

  std::vector<std::pair<int, int>> first_of, second_of;  // vertex -> new triangle
  std::vector<int> created;
  created.reserve(boundary.size());
  for (const BoundaryEdge& e : boundary) {
    const int nt = alloc_tri();
    Tri& T = tris_[static_cast<std::size_t>(nt)];
    T.v = {e.a, e.b, li};
    T.n = {-1, -1, e.outside};
    tris_[static_cast<std::size_t>(e.outside)].n[static_cast<std::size_t>(e.outside_slot)] = nt;
    first_of.emplace_back(e.a, nt);
    second_of.emplace_back(e.b, nt);
    created.push_back(nt);
  }
  const auto lookup = [](const std::vector<std::pair<int, int>>& m, int key) {
    for (const auto& [k, v] : m) {
      if (k == key) return v;
    }
    throw Error(ErrorCode::InvariantViolation, "cavity boundary is not a closed cycle");
  };
  for (int nt : created) {
    Tri& T = tris_[static_cast<std::size_t>(nt)];
    T.n[0] = lookup(first_of, T.v[1]);
    T.n[1] = lookup(second_of, T.v[0]);
    for (int v : T.v) {
      if (v >= 0) vtri_[static_cast<std::size_t>(v)] = nt;
    }
  }
  for (int nt : created) {
    on_created(nt);
    if (const auto key = canonical_key(nt)) created_scratch_.push_back(*key);
  }
  hint_ = created.back();
}

bool Triangulation::lifting_valid() const {
  return big_count_ == 0 && canon_.size() == 2 * points_.size();
}

void Triangulation::rebuild(int lift) {
  lift_ = lift;
  reset_lifted();
  for (std::size_t id = 0; id < points_.size(); ++id) add_lifted_copies(static_cast<int>(id));
  // Seed with the first three non-collinear lifted points (in index order).
  const int n = static_cast<int>(pos_.size());
  const int a = 0, b = 1;
  int c = -1;
  for (int i = 2; i < n && c < 0; ++i) {
    if (orientation(pos_[0], pos_[1], pos_[static_cast<std::size_t>(i)]) != Orientation::zero) c = i;
  }
  make_first_triangle(a, b, c);
  for (int i = 0; i < n; ++i) {
    if (vtri_[static_cast<std::size_t>(i)] < 0) insert_lifted(i);
  }
  removed_scratch_.clear();
  created_scratch_.clear();
}

Triangulation Triangulation::build(std::span<const Point> points, Mode mode) {
  Triangulation t;
  t.mode_ = mode;
  if (mode == Mode::periodic) {
    if (points.empty()) throw Error(ErrorCode::DegenerateInput, "empty periodic point set");
    for (const Point& p : points) t.points_.push_back(snap_periodic(p));
  } else {
    t.points_.assign(points.begin(), points.end());
  }
  {
    std::vector<Point> sorted = t.points_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorCode::DuplicateVertex, "input contains duplicate points");
    }
  }

  if (mode == Mode::periodic) {
    t.rebuild(1);
    if (!t.lifting_valid()) t.rebuild(2);
    return t;
  }

  const auto& P = t.points_;
  const int n = static_cast<int>(P.size());
  if (n < 3) throw Error(ErrorCode::DegenerateInput, "planar triangulation needs at least 3 points");
  int c = -1;
  for (int i = 2; i < n && c < 0; ++i) {
    if (orientation(P[0], P[1], P[static_cast<std::size_t>(i)]) != Orientation::zero) c = i;
  }
  if (c < 0) throw Error(ErrorCode::DegenerateInput, "all points are collinear");
  t.pos_ = P;
  for (int i = 0; i < n; ++i) t.label_.push_back({i, 0, 0});
  t.vtri_.assign(P.size(), -1);
  t.make_first_triangle(0, 1, c);
  for (int i = 0; i < n; ++i) {
    if (t.vtri_[static_cast<std::size_t>(i)] < 0) t.insert_lifted(i);
  }
  t.removed_scratch_.clear();
  t.created_scratch_.clear();
  return t;
}

InsertionOutcome Triangulation::insert(Point p) {
  removed_scratch_.clear();
  created_scratch_.clear();
  const int id = static_cast<int>(points_.size());
  if (mode_ == Mode::planar) {
    points_.push_back(p);
    pos_.push_back(p);
    label_.push_back({id, 0, 0});
    vtri_.push_back(-1);
    try {
      insert_lifted(id);
    } catch (const Error&) {
      points_.pop_back();
      pos_.pop_back();
      label_.pop_back();
      vtri_.pop_back();
      throw;
    }
  } else {
    p = snap_periodic(p);
    points_.push_back(p);
    const std::size_t first = pos_.size();
    add_lifted_copies(id);
    try {
      // Every copy of an existing point is present, so a duplicate is caught
      // by the first copy before anything changes.
      for (std::size_t li = first; li < pos_.size(); ++li) insert_lifted(static_cast<int>(li));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DuplicateVertex || vtri_[first] >= 0) throw;
      points_.pop_back();
      pos_.resize(first);
      label_.resize(first);
      vtri_.resize(first);
      throw;
    }
  }

  InsertionOutcome out;
  out.vertex = id;
  std::sort(removed_scratch_.begin(), removed_scratch_.end());
  std::sort(created_scratch_.begin(), created_scratch_.end());
  std::set_difference(removed_scratch_.begin(), removed_scratch_.end(), created_scratch_.begin(),
                      created_scratch_.end(), std::back_inserter(out.removed));
  std::set_difference(created_scratch_.begin(), created_scratch_.end(), removed_scratch_.begin(),
                      removed_scratch_.end(), std::back_inserter(out.created));
  removed_scratch_.clear();
  created_scratch_.clear();

  if (mode_ == Mode::periodic) {
    if (lift_ == 2 && big_count_ == 0) rebuild(1);
    if (!lifting_valid()) rebuild(2);
  }
  return out;
}

std::vector<InsertionOutcome> Triangulation::insert_batch(std::span<const Point> points) {
  std::vector<InsertionOutcome> out;
  out.reserve(points.size());
  for (const Point& p : points) out.push_back(insert(p));
  return out;
}

Location Triangulation::locate(Point p) const {
  if (mode_ == Mode::periodic) p = snap_periodic(p);
  const int t = walk(p);
  const Tri& T = tris_[static_cast<std::size_t>(t)];
  if (T.v[0] < 0 || T.v[1] < 0 || T.v[2] < 0) {
    throw Error(ErrorCode::OutsideHull, "point lies outside the triangulated region");
  }
  std::array<VertexRef, 3> labels{label_[static_cast<std::size_t>(T.v[0])], label_[static_cast<std::size_t>(T.v[1])],
                                  label_[static_cast<std::size_t>(T.v[2])]};
  Location loc;
  loc.triangle = make_tri_key(labels);
  for (int k = 0; k < 3; ++k) {
    if (pos_[static_cast<std::size_t>(T.v[static_cast<std::size_t>(k)])] == p) {
      loc.kind = Location::Kind::on_vertex;
      loc.vertex = labels[static_cast<std::size_t>(k)].id;
      return loc;
    }
  }
  for (int k = 0; k < 3; ++k) {
    const int a = T.v[static_cast<std::size_t>((k + 1) % 3)], b = T.v[static_cast<std::size_t>((k + 2) % 3)];
    if (orientation(pos_[static_cast<std::size_t>(a)], pos_[static_cast<std::size_t>(b)], p) == Orientation::zero) {
      loc.kind = Location::Kind::on_edge;
      loc.edge = make_edge_key(label_[static_cast<std::size_t>(a)], label_[static_cast<std::size_t>(b)]);
      return loc;
    }
  }
  return loc;
}

std::optional<std::array<int, 2>> Triangulation::edge_apices(int a, int b) const {
  if (mode_ != Mode::planar) throw Error(ErrorCode::InvariantViolation, "edge_apices is planar only");
  if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= vtri_.size() ||
      static_cast<std::size_t>(b) >= vtri_.size()) {
    return std::nullopt;
  }
  const int start = vtri_[static_cast<std::size_t>(a)];
  if (start < 0) return std::nullopt;
  int t = start;
  do {
    const Tri& T = tris_[static_cast<std::size_t>(t)];
    int i = 0;
    while (T.v[static_cast<std::size_t>(i)] != a) ++i;
    const int x = T.v[static_cast<std::size_t>((i + 1) % 3)];
    const int y = T.v[static_cast<std::size_t>((i + 2) % 3)];
    if (x == b) {
      // Triangle (a, b, y); its neighbour across ab holds the other apex.
      const Tri& N = tris_[static_cast<std::size_t>(T.n[static_cast<std::size_t>((i + 2) % 3)])];
      int other = -1;
      for (int v : N.v) {
        if (v != a && v != b) other = v;
      }
      return std::array<int, 2>{y, other};
    }
    t = T.n[static_cast<std::size_t>((i + 2) % 3)];
  } while (t != start);
  return std::nullopt;
}

std::size_t Triangulation::hull_size() const {
  std::size_t h = 0;
  for (const Tri& T : tris_) {
    if (T.alive && (T.v[0] < 0 || T.v[1] < 0 || T.v[2] < 0)) ++h;
  }
  return h;
}

void Triangulation::flip_edge_for_testing(int a, int b) {
  for (std::size_t t1 = 0; t1 < tris_.size(); ++t1) {
    Tri& T1 = tris_[t1];
    if (!T1.alive || T1.v[0] < 0 || T1.v[1] < 0 || T1.v[2] < 0) continue;
    for (int i = 0; i < 3; ++i) {
      if (T1.v[static_cast<std::size_t>(i)] != a || T1.v[static_cast<std::size_t>((i + 1) % 3)] != b) continue;
      const int c = T1.v[static_cast<std::size_t>((i + 2) % 3)];
      const int t2 = T1.n[static_cast<std::size_t>((i + 2) % 3)];
      Tri& T2 = tris_[static_cast<std::size_t>(t2)];
      int j = 0;
      while (T2.v[static_cast<std::size_t>(j)] != b) ++j;
      const int d = T2.v[static_cast<std::size_t>((j + 2) % 3)];
      if (d < 0) throw Error(ErrorCode::InvariantViolation, "cannot flip a hull edge");
      const int n1a = T1.n[static_cast<std::size_t>(i)];
      const int n1b = T1.n[static_cast<std::size_t>((i + 1) % 3)];
      const int n2b = T2.n[static_cast<std::size_t>(j)];
      const int n2a = T2.n[static_cast<std::size_t>((j + 1) % 3)];
      if (auto k = canonical_key(static_cast<int>(t1))) canon_.erase(*k);
      if (auto k = canonical_key(t2)) canon_.erase(*k);
      T1.v = {c, a, d};
      T1.n = {n2b, t2, n1b};
      T2.v = {d, b, c};
      T2.n = {n1a, static_cast<int>(t1), n2a};
      for (int k = 0; k < 3; ++k) {
        if (tris_[static_cast<std::size_t>(n2b)].n[static_cast<std::size_t>(k)] == t2)
          tris_[static_cast<std::size_t>(n2b)].n[static_cast<std::size_t>(k)] = static_cast<int>(t1);
        if (tris_[static_cast<std::size_t>(n1a)].n[static_cast<std::size_t>(k)] == static_cast<int>(t1))
          tris_[static_cast<std::size_t>(n1a)].n[static_cast<std::size_t>(k)] = t2;
      }
      for (int v : {a, c, d}) vtri_[static_cast<std::size_t>(v)] = static_cast<int>(t1);
      vtri_[static_cast<std::size_t>(b)] = t2;
      if (auto k = canonical_key(static_cast<int>(t1))) canon_.emplace(*k, static_cast<int>(t1));
      if (auto k = canonical_key(t2)) canon_.emplace(*k, t2);
      return;
    }
  }
  throw Error(ErrorCode::InvariantViolation, "no such interior edge");
}

bool delaunay_check(const Triangulation& t) {
  using Tri = Triangulation::Tri;
  for (const auto& [key, idx] : t.canon_) {
    const Tri& T = t.tris_[static_cast<std::size_t>(idx)];
    if (!T.alive) return false;
    const auto c = t.corners(key);
    if (orientation(c[0], c[1], c[2]) != Orientation::positive) return false;
    for (int nb : T.n) {
      const Tri& N = t.tris_[static_cast<std::size_t>(nb)];
      if (!N.alive || std::find(N.n.begin(), N.n.end(), idx) == N.n.end()) return false;
    }
    for (std::size_t li = 0; li < t.pos_.size(); ++li) {
      if (t.vtri_[li] < 0) continue;
      const int lv = static_cast<int>(li);
      if (lv == T.v[0] || lv == T.v[1] || lv == T.v[2]) continue;
      if (in_circle(c[0], c[1], c[2], t.pos_[li]) == Orientation::positive) return false;
    }
  }
  return true;
}

}  // namespace pdr
