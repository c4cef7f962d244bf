#include <random>
#include <set>

#include "doctest.h"
#include "pdr/preprocess.hpp"
#include "pdr/refine.hpp"
#include "support.hpp"

using namespace pdr;
using testing_util::throws_code;

namespace {

const QualityRule kRuppert = QualityRule::make(RuleKind::ruppert, std::sqrt(2.0));
const QualityRule kChew = QualityRule::make(RuleKind::chew, std::sqrt(2.0));

bool ruppert_quality_exact(const Mesh& m) {
  for (const TriKey& t : m.triangles) {
    const auto c = m.corners(t);
    if (!oracle::ratio_at_most(c[0], c[1], c[2], oracle::Q(2))) return false;
  }
  return true;
}

/// Every circumradius is at most sqrt(2) times the shortest mesh edge.
bool chew_quality_exact(const Mesh& m) {
  oracle::Q shortest = -1, worst = 0;
  for (const TriKey& t : m.triangles) {
    const auto c = m.corners(t);
    for (int i = 0; i < 3; ++i) {
      const oracle::Q e = oracle::sqdist(c[static_cast<std::size_t>(i)], c[static_cast<std::size_t>((i + 1) % 3)]);
      if (shortest < 0 || e < shortest) shortest = e;
    }
    worst = std::max(worst, oracle::circumradius_sq(c[0], c[1], c[2]));
  }
  return worst <= 2 * shortest;
}

/// No mesh vertex lies strictly inside the diametral circle of a segment.
bool segments_unencroached(const Mesh& m) {
  for (const auto& [a, b] : m.segments) {
    const Point pa = m.vertices[static_cast<std::size_t>(a)], pb = m.vertices[static_cast<std::size_t>(b)];
    for (const Point& v : m.vertices) {
      // angle avb is obtuse iff (a - v).(b - v) < 0
      const oracle::Q dot = (oracle::q(pa.x) - oracle::q(v.x)) * (oracle::q(pb.x) - oracle::q(v.x)) +
                            (oracle::q(pa.y) - oracle::q(v.y)) * (oracle::q(pb.y) - oracle::q(v.y));
      if (dot < 0) return false;
    }
  }
  return true;
}

std::vector<Point> corners_of(const Triangulation& t, const TriKey& k) {
  const auto c = t.corners(k);
  return {c[0], c[1], c[2]};
}

}  // namespace

TEST_CASE("QualityRule::make") {
  CHECK(throws_code([] { QualityRule::make(RuleKind::ruppert, 1.0); }, ErrorCode::InvalidConfig));
  CHECK(throws_code([] { QualityRule::make(RuleKind::chew, 1.4); }, ErrorCode::InvalidConfig));
  CHECK(QualityRule::make(RuleKind::ruppert, 1.41421356).beta_sq() == 2.0);
  CHECK(QualityRule::make(RuleKind::ruppert, std::sqrt(2.0)).beta_sq() == 2.0);
  CHECK(QualityRule::make(RuleKind::ruppert, 2.0).beta_sq() == 4.0);
}

TEST_CASE("is_poor on hand-made triangles") {
  const double h = std::sqrt(3.0) / 2;
  const std::vector<Point> flat{{0, 0}, {1, 0}, {0.5, 0.05}};
  const Triangulation tf = Triangulation::build(flat, Mode::planar);
  CHECK(is_poor(tf, tf.triangles()[0], kRuppert));
  const std::vector<Point> eq{{0, 0}, {1, 0}, {0.5, h}};
  const Triangulation te = Triangulation::build(eq, Mode::planar);
  CHECK_FALSE(is_poor(te, te.triangles()[0], kRuppert));
  CHECK_FALSE(is_poor(te, te.triangles()[0], kChew));

  // A well-shaped big triangle next to a tiny edge: fine for Ruppert, poor for
  // Chew, whose yardstick is the shortest edge anywhere.
  const std::vector<Point> mixed{{0, 0}, {1, 0}, {0.5, h}, {1.01, 0}};
  const Triangulation tm = Triangulation::build(mixed, Mode::planar);
  bool found = false;
  for (const TriKey& k : tm.triangles()) {
    const auto c = corners_of(tm, k);
    if (std::find(c.begin(), c.end(), Point{1.01, 0}) != c.end()) continue;
    found = true;
    CHECK_FALSE(is_poor(tm, k, kRuppert));
    CHECK(is_poor(tm, k, kChew));
  }
  CHECK(found);
}

TEST_CASE("is_poor agrees with the exact oracle") {
  std::mt19937_64 gen(81);
  std::uniform_int_distribution<int> u(0, 256);
  std::vector<Point> pts;
  std::set<Point> seen;
  while (pts.size() < 150) {
    const Point p{u(gen) / 256.0, u(gen) / 256.0};
    if (seen.insert(p).second) pts.push_back(p);
  }
  const Triangulation t = Triangulation::build(pts, Mode::planar);
  oracle::Q shortest = -1;
  for (const TriKey& k : t.triangles()) {
    const auto c = t.corners(k);
    for (int i = 0; i < 3; ++i) {
      const oracle::Q e = oracle::sqdist(c[static_cast<std::size_t>(i)], c[static_cast<std::size_t>((i + 1) % 3)]);
      if (shortest < 0 || e < shortest) shortest = e;
    }
  }
  for (const TriKey& k : t.triangles()) {
    const auto c = t.corners(k);
    CHECK(is_poor(t, k, kRuppert) == !oracle::ratio_at_most(c[0], c[1], c[2], oracle::Q(2)));
    CHECK(is_poor(t, k, kChew) == (oracle::circumradius_sq(c[0], c[1], c[2]) > 2 * shortest));
  }
}

TEST_CASE("the unit square needs no refinement") {
  const SeqResult r = seq_refine(fixtures::unit_square(), kRuppert);
  CHECK(r.log.empty());
  CHECK(r.mesh.triangles.size() == 2);
  CHECK(r.mesh.segments.size() == 4);
  MeshState st(fixtures::unit_square(), kRuppert);
  const CandidateSets cs = classify_candidates(st);
  CHECK(cs.B.empty());
  CHECK(cs.C.empty());
  CHECK(cs.D_T.empty());
  CHECK(cs.D_B.empty());
  CHECK(st.done());
  CHECK_FALSE(st.next_sequential().has_value());
}

TEST_CASE("MeshState rejects invalid domains") {
  const Pslg crossing({{0, 0}, {1, 1}, {1, 0}, {0, 1}}, {{0, 1}, {2, 3}, {0, 2}, {2, 1}, {1, 3}, {3, 0}});
  CHECK(throws_code([&] { MeshState st(crossing, kRuppert); }, ErrorCode::InvalidDomain));
  const Pslg open({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(throws_code([&] { MeshState st(open, kRuppert); }, ErrorCode::InvalidDomain));
}

TEST_CASE("classify_candidates partitions the poor triangles") {
  for (const std::string& name : {"graded", "plus", "octagon"}) {
    CAPTURE(name);
    MeshState st(fixtures::prepared(fixtures::pslg(name)), kRuppert);
    const CandidateSets cs = classify_candidates(st);
    CHECK(cs.B.size() + cs.C.size() == st.poor_triangles().size());
    std::set<TriKey> covered;
    for (const Candidate& c : cs.B) {
      CHECK(c.kind == CandidateKind::B);
      CHECK_FALSE(st.encroached_by(c.triangle).empty());
      covered.insert(c.triangle);
    }
    for (const Candidate& c : cs.C) {
      CHECK(c.kind == CandidateKind::C);
      CHECK(st.encroached_segments(c.location).empty());
      covered.insert(c.triangle);
    }
    CHECK(covered.size() == st.poor_triangles().size());
    for (const Candidate& c : cs.D_T) CHECK(st.in_dt(c.segment));
    for (const Candidate& c : cs.D_B) CHECK(st.in_db(c.segment));
    CHECK(st.poor_count() > 0);
  }
}

TEST_CASE("sequential order puts D_T first and larger circles before smaller") {
  MeshState st(fixtures::prepared(fixtures::pslg("graded")), kRuppert);
  const auto next = st.next_sequential();
  REQUIRE(next.has_value());
  const CandidateSets cs = classify_candidates(st);
  if (!cs.D_T.empty()) {
    CHECK(next->kind == CandidateKind::D_T);
  } else if (!cs.D_B.empty()) {
    CHECK(next->kind == CandidateKind::D_B);
  } else {
    CHECK(next->kind == CandidateKind::C);
    for (const Candidate& c : cs.C) CHECK(c.circle.radius <= next->circle.radius);
  }
}

TEST_CASE("sequential Ruppert meets the bound on the corpus") {
  for (const std::string& name : fixtures::pslg_names()) {
    CAPTURE(name);
    const Pslg d = fixtures::prepared(fixtures::pslg(name));
    const SeqResult r = seq_refine(d, kRuppert);
    CHECK(ruppert_quality_exact(r.mesh));
    CHECK(oracle::empty_circles(r.mesh));
    CHECK(segments_unencroached(r.mesh));
    CHECK(replay(d, kRuppert, r.log) == r.mesh);
  }
}

TEST_CASE("sequential Chew meets its bound on the corpus") {
  for (const std::string& name : {"square", "rectangle", "slit", "plus", "points"}) {
    CAPTURE(name);
    const Pslg d = preprocess_boundary(fixtures::pslg(name)).first;
    const SeqResult r = seq_refine(d, kChew);
    CHECK(chew_quality_exact(r.mesh));
    CHECK(oracle::empty_circles(r.mesh));
    CHECK(replay(d, kChew, r.log) == r.mesh);
  }
}

TEST_CASE("sequential refinement of periodic point sets") {
  for (const std::string& name : fixtures::periodic_names()) {
    CAPTURE(name);
    const PeriodicPointSet p = fixtures::periodic(name);
    const SeqResult rr = seq_refine(p, kRuppert);
    CHECK(ruppert_quality_exact(rr.mesh));
    CHECK(oracle::empty_circles(rr.mesh));
    CHECK(rr.mesh.triangles.size() == 2 * rr.mesh.vertices.size());
    CHECK(replay(p, kRuppert, rr.log) == rr.mesh);
    const SeqResult rc = seq_refine(p, kChew);
    CHECK(chew_quality_exact(rc.mesh));
    CHECK(replay(p, kChew, rc.log) == rc.mesh);
  }
}

TEST_CASE("a fabricated log entry is not sequentializable") {
  const Pslg d = fixtures::prepared(fixtures::pslg("graded"));
  SeqResult r = seq_refine(d, kRuppert);
  REQUIRE(r.log.size() > 2);
  InsertionLog bogus = r.log;
  bogus[1].candidate.location = {0.123, 0.0456};
  bogus[1].candidate.circle.center = {0.123, 0.0456};
  CHECK(throws_code([&] { replay(d, kRuppert, bogus); }, ErrorCode::NotSequentializable));
  bogus = r.log;
  bogus.insert(bogus.begin(), r.log.back());
  CHECK(throws_code([&] { replay(d, kRuppert, bogus); }, ErrorCode::NotSequentializable));
}

TEST_CASE("Chew needs far more triangles than Ruppert on a graded domain") {
  const Pslg raw = fixtures::pslg("graded");
  const SeqResult rup = seq_refine(fixtures::prepared(raw), kRuppert);
  const SeqResult chew = seq_refine(preprocess_boundary(raw).first, kChew);
  CHECK(chew.mesh.triangles.size() >= 5 * rup.mesh.triangles.size());
}

TEST_CASE("D_B marks persist until their segment is split") {
  for (const std::string& name : {"graded", "slit", "nested", "lpartition"}) {
    CAPTURE(name);
    int violations = 0;
    std::set<SegmentId> marked;
    const Picker picker = [&](const MeshState& st) {
      for (SegmentId s : marked) {
        if (st.segment_live(s) && !st.in_db(s)) ++violations;
      }
      const auto db = st.db_segments();
      marked.insert(db.begin(), db.end());
      return *st.next_sequential();
    };
    seq_refine(fixtures::prepared(fixtures::pslg(name)), kRuppert, picker);
    CHECK(violations == 0);
  }
}

TEST_CASE("circumcenters never land inside a diametral circle") {
  EngineOptions opts;
  opts.check_protection = true;
  for (const std::string& name : fixtures::pslg_names()) {
    CAPTURE(name);
    int bad = 0;
    const Picker picker = [&](const MeshState& st) {
      const Candidate c = *st.next_sequential();
      if (c.kind == CandidateKind::C && !st.encroached_segments(c.location).empty()) ++bad;
      return c;
    };
    CHECK_NOTHROW(seq_refine(fixtures::prepared(fixtures::pslg(name)), kRuppert, picker, opts));
    CHECK(bad == 0);
  }
}

TEST_CASE("inserting an encroaching circumcenter is rejected") {
  // without preprocessing, (0.5,0.1) encroaches the bottom side from the start
  const Pslg d({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  int b_seen = 0;
  const Picker picker = [&](const MeshState& st) {
    const CandidateSets cs = classify_candidates(st);
    if (!cs.B.empty()) {
      ++b_seen;
      return cs.B.front();
    }
    return *st.next_sequential();
  };
  bool refused = false;
  try {
    seq_refine(d, kRuppert, picker);
  } catch (const Error& e) {
    refused = e.code() == ErrorCode::NotSequentializable;
  }
  CHECK(b_seen > 0);
  CHECK(refused);
}

TEST_CASE("the vertex budget guards runaway refinement") {
  EngineOptions opts;
  opts.max_vertices = 10;
  CHECK(throws_code([&] { seq_refine(fixtures::prepared(fixtures::pslg("graded")), kRuppert, {}, opts); },
                    ErrorCode::RefinementStalled));
}
