#include <algorithm>

#include "pdr/error.hpp"
#include "pdr/refine.hpp"

namespace pdr {

bool is_poor(const Triangulation& t, const TriKey& tri, const QualityRule& rule) {
  const auto c = t.corners(tri);
  std::pair<Point, Point> e{c[0], c[1]};
  const auto consider = [&](Point a, Point b) {
    if (compare_squared_lengths(a, b, e.first, e.second) < 0) e = {a, b};
  };
  if (rule.kind == RuleKind::ruppert) {
    consider(c[1], c[2]);
    consider(c[2], c[0]);
  } else {
    for (const TriKey& k : t.triangles()) {
      const auto d = t.corners(k);
      for (int i = 0; i < 3; ++i) consider(d[static_cast<std::size_t>(i)], d[static_cast<std::size_t>((i + 1) % 3)]);
    }
  }
  return ratio_exceeds(c[0], c[1], c[2], e.first, e.second, rule.beta_sq());
}

CandidateSets classify_candidates(const MeshState& state) {
  CandidateSets out;
  for (Candidate& c : state.circumcenter_candidates()) {
    (c.kind == CandidateKind::B ? out.B : out.C).push_back(std::move(c));
  }
  for (SegmentId id : state.dt_segments()) out.D_T.push_back(state.midpoint_candidate(id, CandidateKind::D_T));
  for (SegmentId id : state.db_segments()) out.D_B.push_back(state.midpoint_candidate(id, CandidateKind::D_B));
  return out;
}

namespace {

SeqResult run_sequential(MeshState& st, const Picker& picker) {
  SeqResult r;
  while (!st.done()) {
    const std::size_t step = r.log.size();
    Candidate c = picker ? picker(st) : *st.next_sequential();
    st.validate(c, step);
    c.birth_round = static_cast<int>(step);
    r.log.push_back({c, static_cast<int>(step)});
    st.apply(c);
  }
  r.mesh = st.mesh();
  r.slivers_skipped = st.sliver_count();
  return r;
}

Mesh run_replay(MeshState& st, const InsertionLog& log) {
  for (std::size_t i = 0; i < log.size(); ++i) {
    st.validate(log[i].candidate, i);
    st.apply(log[i].candidate);
  }
  return st.mesh();
}

}  // namespace

SeqResult seq_refine(const Pslg& domain, QualityRule rule, const Picker& picker, EngineOptions options) {
  MeshState st(domain, rule, options);
  return run_sequential(st, picker);
}

SeqResult seq_refine(const PeriodicPointSet& points, QualityRule rule, const Picker& picker,
                     EngineOptions options) {
  MeshState st(points, rule, options);
  return run_sequential(st, picker);
}

Mesh replay(const Pslg& domain, QualityRule rule, const InsertionLog& log, EngineOptions options) {
  MeshState st(domain, rule, options);
  return run_replay(st, log);
}

Mesh replay(const PeriodicPointSet& points, QualityRule rule, const InsertionLog& log, EngineOptions options) {
  MeshState st(points, rule, options);
  return run_replay(st, log);
}

}  // namespace pdr
