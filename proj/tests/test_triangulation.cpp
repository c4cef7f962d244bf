#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "pdr/triangulation.hpp"
#include "support.hpp"

using namespace pdr;
using testing_util::throws_code;

namespace {

Mesh as_mesh(const Triangulation& t) { return Mesh{t.mode(), t.vertices(), t.triangles(), {}}; }

std::vector<Point> random_points(std::size_t n, std::uint64_t seed, double lo = 0, double hi = 1) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<Point> pts;
  while (pts.size() < n) pts.push_back(snap_periodic({u(gen), u(gen)}));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::shuffle(pts.begin(), pts.end(), gen);
  return pts;
}

std::vector<Point> grid_points(int k) {
  std::vector<Point> pts;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) pts.push_back({i / double(k), j / double(k)});
  }
  return pts;
}

/// Triangles as sets of corner coordinates, independent of vertex ids.
std::set<std::array<Point, 3>> geometric_triangles(const Triangulation& t) {
  std::set<std::array<Point, 3>> out;
  for (const TriKey& k : t.triangles()) {
    if (t.mode() == Mode::planar) {
      auto c = t.corners(k);
      std::sort(c.begin(), c.end());
      out.insert(c);
    } else {
      // one point per orbit: ids only, wrapped coordinates
      std::array<Point, 3> c;
      for (std::size_t i = 0; i < 3; ++i) c[i] = t.vertex(k.v[i].id);
      std::sort(c.begin(), c.end());
      out.insert(c);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("build rejects degenerate input") {
  const std::vector<Point> two{{0, 0}, {1, 0}};
  CHECK(throws_code([&] { Triangulation::build(two, Mode::planar); }, ErrorCode::DegenerateInput));
  const std::vector<Point> line{{0, 0}, {1, 0}, {2, 0}};
  CHECK(throws_code([&] { Triangulation::build(line, Mode::planar); }, ErrorCode::DegenerateInput));
  const std::vector<Point> dup{{0, 0}, {1, 0}, {0, 1}, {1, 0}};
  CHECK(throws_code([&] { Triangulation::build(dup, Mode::planar); }, ErrorCode::DuplicateVertex));
  const std::vector<Point> none;
  CHECK(throws_code([&] { Triangulation::build(none, Mode::periodic); }, ErrorCode::DegenerateInput));
}

TEST_CASE("unit square triangulates into two triangles") {
  const std::vector<Point> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const Triangulation t = Triangulation::build(sq, Mode::planar);
  CHECK(t.num_triangles() == 2);
  CHECK(t.hull_size() == 4);
  CHECK(delaunay_check(t));
  CHECK(oracle::empty_circles(as_mesh(t)));
  for (const TriKey& k : t.triangles()) {
    const auto c = t.corners(k);
    CHECK(oracle::orient(c[0], c[1], c[2]) > 0);
  }
}

TEST_CASE("insert reports the cavity") {
  const std::vector<Point> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  Triangulation t = Triangulation::build(sq, Mode::planar);
  const auto before = t.triangles();
  const InsertionOutcome o = t.insert({0.5, 0.4});
  CHECK(o.vertex == 4);
  CHECK(std::is_sorted(o.removed.begin(), o.removed.end()));
  CHECK(std::is_sorted(o.created.begin(), o.created.end()));
  CHECK(o.created.size() == 4);
  CHECK(t.num_triangles() == 4);
  std::vector<TriKey> expect;
  std::set_difference(before.begin(), before.end(), o.removed.begin(), o.removed.end(), std::back_inserter(expect));
  expect.insert(expect.end(), o.created.begin(), o.created.end());
  std::sort(expect.begin(), expect.end());
  CHECK(expect == t.triangles());
  CHECK(delaunay_check(t));
}

TEST_CASE("duplicate insertion leaves the triangulation unchanged") {
  const std::vector<Point> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  Triangulation t = Triangulation::build(sq, Mode::planar);
  const auto before = t.triangles();
  CHECK(throws_code([&] { t.insert({1, 1}); }, ErrorCode::DuplicateVertex));
  CHECK(t.triangles() == before);
  CHECK(t.num_vertices() == 4);
}

TEST_CASE("insertion outside the hull extends it") {
  const std::vector<Point> tri{{0, 0}, {1, 0}, {0, 1}};
  Triangulation t = Triangulation::build(tri, Mode::planar);
  t.insert({2, 2});
  CHECK(t.hull_size() == 4);
  CHECK(t.num_triangles() == 2);
  CHECK(delaunay_check(t));
}

TEST_CASE("insert_batch folds insert") {
  const auto pts = random_points(60, 21);
  const std::vector<Point> seed{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  Triangulation a = Triangulation::build(seed, Mode::planar);
  Triangulation b = a;
  const auto outs = a.insert_batch(pts);
  std::vector<InsertionOutcome> manual;
  for (const Point& p : pts) manual.push_back(b.insert(p));
  REQUIRE(outs.size() == manual.size());
  for (std::size_t i = 0; i < outs.size(); ++i) {
    CHECK(outs[i].vertex == manual[i].vertex);
    CHECK(outs[i].removed == manual[i].removed);
    CHECK(outs[i].created == manual[i].created);
  }
  CHECK(a.triangles() == b.triangles());
}

TEST_CASE("locate classifies interior, edge, vertex and outside points") {
  const std::vector<Point> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const Triangulation t = Triangulation::build(sq, Mode::planar);
  Location l = t.locate({0.9, 0.1});
  CHECK(l.kind == Location::Kind::in_triangle);
  CHECK(t.contains(l.triangle));
  l = t.locate({0.5, 0});
  CHECK(l.kind == Location::Kind::on_edge);
  REQUIRE(l.edge.has_value());
  CHECK(l.edge == make_edge_key({0, 0, 0}, {1, 0, 0}));
  l = t.locate({1, 1});
  CHECK(l.kind == Location::Kind::on_vertex);
  CHECK(l.vertex == 2);
  CHECK(throws_code([&] { t.locate({2, 2}); }, ErrorCode::OutsideHull));
}

TEST_CASE("delaunay_check catches a flipped edge") {
  // the circle through (0,0),(2,0),(1,0.5) contains (1,-0.5): the diagonal
  // must join the two middle points
  const std::vector<Point> kite{{0, 0}, {2, 0}, {1, 0.5}, {1, -0.5}};
  Triangulation t = Triangulation::build(kite, Mode::planar);
  CHECK(delaunay_check(t));
  REQUIRE(t.edge_apices(2, 3).has_value());
  CHECK_FALSE(t.edge_apices(0, 1).has_value());
  t.flip_edge_for_testing(2, 3);
  CHECK(t.edge_apices(0, 1).has_value());
  CHECK_FALSE(delaunay_check(t));
  CHECK_FALSE(oracle::empty_circles(as_mesh(t)));
}

TEST_CASE("planar Euler count and empty circles on random and cocircular sets") {
  for (std::uint64_t seed : {31, 32, 33}) {
    const auto pts = random_points(300, seed);
    const Triangulation t = Triangulation::build(pts, Mode::planar);
    CHECK(t.num_triangles() == 2 * pts.size() - 2 - t.hull_size());
    CHECK(delaunay_check(t));
    CHECK(oracle::empty_circles(as_mesh(t)));
  }
  const auto grid = grid_points(9);
  const Triangulation g = Triangulation::build(grid, Mode::planar);
  CHECK(g.hull_size() == 32);
  CHECK(g.num_triangles() == 2 * 64);
  CHECK(oracle::empty_circles(as_mesh(g)));
}

TEST_CASE("periodic Euler count and empty circles") {
  const std::vector<Point> one{{0.5, 0.5}};
  const Triangulation single = Triangulation::build(one, Mode::periodic);
  CHECK(single.num_triangles() == 2);
  CHECK(single.lifting() == 2);
  for (std::uint64_t seed : {41, 42}) {
    const auto pts = random_points(150, seed);
    const Triangulation t = Triangulation::build(pts, Mode::periodic);
    CHECK(t.num_triangles() == 2 * pts.size());
    CHECK(t.lifting() == 1);
    CHECK(delaunay_check(t));
    CHECK(oracle::empty_circles(as_mesh(t)));
  }
  for (const std::string& name : fixtures::periodic_names()) {
    CAPTURE(name);
    const auto pts = fixtures::periodic(name).points();
    const Triangulation t = Triangulation::build(pts, Mode::periodic);
    CHECK(t.num_triangles() == 2 * pts.size());
    CHECK(oracle::empty_circles(as_mesh(t)));
  }
}

TEST_CASE("periodic triangulation commutes with translation") {
  const auto pts = random_points(80, 51);
  const Point shift{0.375, 0.8125};
  std::vector<Point> moved;
  for (const Point& p : pts) moved.push_back(snap_periodic({p.x + shift.x, p.y + shift.y}));
  const Triangulation a = Triangulation::build(pts, Mode::periodic);
  const Triangulation b = Triangulation::build(moved, Mode::periodic);
  // same combinatorics under the id correspondence
  std::multiset<std::array<int, 3>> ta, tb;
  for (const TriKey& k : a.triangles()) {
    std::array<int, 3> ids{k.v[0].id, k.v[1].id, k.v[2].id};
    std::sort(ids.begin(), ids.end());
    ta.insert(ids);
  }
  for (const TriKey& k : b.triangles()) {
    std::array<int, 3> ids{k.v[0].id, k.v[1].id, k.v[2].id};
    std::sort(ids.begin(), ids.end());
    tb.insert(ids);
  }
  CHECK(ta == tb);
}

TEST_CASE("result does not depend on insertion order") {
  std::mt19937_64 gen(61);
  for (Mode mode : {Mode::planar, Mode::periodic}) {
    for (auto pts : {random_points(120, 62), grid_points(6)}) {
      const Triangulation a = Triangulation::build(pts, mode);
      std::shuffle(pts.begin(), pts.end(), gen);
      const Triangulation b = Triangulation::build(pts, mode);
      CHECK(geometric_triangles(a) == geometric_triangles(b));
    }
  }
}

TEST_CASE("building twice gives identical keys") {
  const auto pts = random_points(200, 71);
  CHECK(Triangulation::build(pts, Mode::periodic).triangles() ==
        Triangulation::build(pts, Mode::periodic).triangles());
  CHECK(Triangulation::build(pts, Mode::planar).triangles() == Triangulation::build(pts, Mode::planar).triangles());
}

TEST_CASE("canonical keys") {
  const TriKey k = make_tri_key({VertexRef{2, 0, 0}, VertexRef{0, 0, 0}, VertexRef{1, 0, 0}});
  CHECK(k.v[0].id == 0);
  CHECK(k.v[1].id == 1);
  CHECK(k.v[2].id == 2);
  // translating a periodic triangle does not change its key
  const TriKey p = make_tri_key({VertexRef{3, 1, 0}, VertexRef{1, 1, 1}, VertexRef{2, 0, 1}});
  const TriKey q = make_tri_key({VertexRef{3, 0, -1}, VertexRef{1, 0, 0}, VertexRef{2, -1, 0}});
  CHECK(p == q);
  CHECK(p.v[0] == VertexRef{1, 0, 0});
  CHECK(make_edge_key({4, 0, 0}, {2, 1, 0}) == make_edge_key({2, 0, 0}, {4, -1, 0}));
  CHECK(edges_of(k).size() == 3);
}
