#include "pdr/parallel_refine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "pdr/classes.hpp"
#include "pdr/error.hpp"
#include "pdr/preprocess.hpp"

namespace pdr {

namespace {

bool is_circum(CandidateKind k) { return k == CandidateKind::B || k == CandidateKind::C; }

bool insertion_before(const Candidate& a, const Candidate& b) {
  if (a.circle.radius != b.circle.radius) return a.circle.radius > b.circle.radius;
  if (a.location != b.location) return a.location < b.location;
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.triangle != b.triangle) return a.triangle < b.triangle;
  return a.segment < b.segment;
}

double shortest_side(const std::array<Point, 3>& c) {
  return std::min({distance(c[0], c[1]), distance(c[1], c[2]), distance(c[2], c[0])});
}

class Driver {
 public:
  Driver(MeshState& st, const ParallelOptions& opt, Trace& tr) : st_(st), opt_(opt), tr_(tr) {}

  /// Ruppert drivers: edge classes over reference size s up to imax.
  void enable_classes(int imax) {
    imax_ = imax;
    track_lemmas_ = true;
  }

  int triangle_class(const TriKey& t) {
    const double len = shortest_side(st_.triangulation().corners(t));
    if (len < tr_.s) ++tr_.sub_s_edges;
    return edge_class_of(len);
  }

  int edge_class_of(double len) const { return std::min(edge_class(len, tr_.s, false), imax_); }

  /// Runs rounds until no poor triangle passes `filter`.
  template <class Filter>
  void run_until_empty(Filter filter, int edge_class, bool sweep) {
    current_class_ = edge_class;
    splits_this_class_.clear();
    for (int inner = 0;; ++inner) {
      std::vector<Candidate> cands;
      for (Candidate& c : st_.circumcenter_candidates()) {
        if (filter(c)) cands.push_back(std::move(c));
      }
      if (cands.empty()) return;
      RoundRecord rec;
      rec.index = static_cast<int>(tr_.rounds.size());
      rec.edge_class = edge_class;
      rec.inner = inner;
      rec.sweep = sweep;
      run_round(std::move(cands), rec);
      if (sweep) ++tr_.sweep_rounds;
      tr_.rounds.push_back(std::move(rec));
      if (tr_.rounds.size() > opt_.max_rounds) {
        throw Error(ErrorCode::RefinementStalled, "round budget exceeded");
      }
    }
  }

 private:
  void run_round(std::vector<Candidate> cands, RoundRecord& rec) {
    const bool periodic = st_.periodic();
    if (!periodic && st_.has_dt()) {
      throw Error(ErrorCode::InvariantViolation, "a diametral circle contains a mesh vertex at round start");
    }
    rec.candidate_count = cands.size();

    for (const Candidate& c : cands) {
      if (c.kind != CandidateKind::B) continue;
      for (SegmentId s : st_.encroached_by(c.triangle)) {
        const double rd = st_.diametral(s).radius;
        rec.encroachments.push_back({c.circle.radius, rd});
        tr_.max_encroach_ratio = std::max(tr_.max_encroach_ratio, c.circle.radius / rd);
      }
    }

    // Candidates taking part in the MIS.
    std::vector<Candidate> pool;
    if (opt_.policy == MisPolicy::any_independent) {
      int top = radius_class_unbounded(cands.front().circle.radius, tr_.L);
      for (const Candidate& c : cands) top = std::min(top, radius_class_unbounded(c.circle.radius, tr_.L));
      for (const Candidate& c : cands) {
        if (radius_class_unbounded(c.circle.radius, tr_.L) == top) pool.push_back(c);
      }
    } else {
      pool = std::move(cands);
    }

    const MisResult mis = grid_mis(pool, tr_.L, {periodic, opt_.threads});
    if (opt_.strict_checks) {
      if (!mis_is_independent(pool, mis.chosen, periodic) || !mis_is_maximal(pool, mis.chosen, periodic)) {
        throw Error(ErrorCode::InvariantViolation, "grid MIS is not a maximal independent set");
      }
    }
    for (const ConflictPair& p : mis.conflicts) {
      const Candidate& a = pool[p.leader];
      const Candidate& b = pool[p.other];
      if (is_circum(a.kind) && is_circum(b.kind)) {
        rec.conflicts.push_back({a.circle.radius, b.circle.radius, a.kind, b.kind});
      }
    }

    std::vector<Candidate> chosen;
    if (periodic) {
      for (std::size_t i : mis.chosen) chosen.push_back(pool[i]);
    } else {
      // D: diametral circles encroached by the chosen B centers.
      std::vector<SegmentId> dsegs;
      std::vector<Candidate> cs;
      for (std::size_t i : mis.chosen) {
        const Candidate& c = pool[i];
        if (c.kind == CandidateKind::B) {
          const auto& enc = st_.encroached_by(c.triangle);
          dsegs.insert(dsegs.end(), enc.begin(), enc.end());
        } else {
          cs.push_back(c);
        }
      }
      std::sort(dsegs.begin(), dsegs.end());
      dsegs.erase(std::unique(dsegs.begin(), dsegs.end()), dsegs.end());
      std::vector<Candidate> ds;
      for (SegmentId s : dsegs) ds.push_back(st_.midpoint_candidate(s, CandidateKind::D_B));
      if (opt_.strict_checks) {
        for (std::size_t i = 0; i < ds.size(); ++i) {
          for (std::size_t j = i + 1; j < ds.size(); ++j) {
            if (candidates_conflict(ds[i], ds[j], false)) {
              throw Error(ErrorCode::InvariantViolation, "two chosen diametral circles conflict");
            }
          }
        }
      }
      chosen = ds;
      for (const Candidate& c : cs) {
        bool clash = false;
        for (const Candidate& d : ds) {
          if (candidates_conflict(c, d, false)) {
            clash = true;
            break;
          }
        }
        if (!clash) chosen.push_back(c);
      }
    }

    std::sort(chosen.begin(), chosen.end(), insertion_before);
    std::map<EdgeKey, int> delta;
    for (Candidate& c : chosen) {
      c.birth_round = rec.index;
      if (st_.invalid_reason(c)) {
        ++rec.deferred;
        continue;
      }
      int origin = -1;
      if (is_midpoint(c.kind)) origin = st_.segment(c.segment).origin;
      const MeshState::Applied applied = st_.apply(c);
      if (origin >= 0 && current_class_ > 0) {
        const std::size_t n = ++splits_this_class_[origin];
        tr_.max_splits_per_class = std::max(tr_.max_splits_per_class, n);
      }
      if (track_lemmas_ && current_class_ > 0) check_lemmas(applied, delta, rec);
      rec.chosen.push_back(c);
    }
    if (track_lemmas_ && current_class_ > 0) {
      for (const auto& [e, d] : delta) {
        if (d == 0) continue;
        const Point a = st_.triangulation().position(e.a), b = st_.triangulation().position(e.b);
        if (edge_class_of(distance(a, b)) == current_class_) ++rec.conservation_violations;
      }
    }
    rec.inserted = rec.chosen.size();
    rec.max_circumradius_after = st_.max_circumradius();
  }

  void check_lemmas(const MeshState::Applied& ap, std::map<EdgeKey, int>& delta, RoundRecord& rec) {
    std::map<EdgeKey, double> before;  // edges of removed triangles -> max removed ratio
    for (std::size_t k = 0; k < ap.removed.size(); ++k) {
      for (const EdgeKey& e : edges_of(ap.removed[k])) {
        double& r = before[e];
        r = std::max(r, ap.removed_ratios[k]);
      }
    }
    std::map<EdgeKey, int> created_edges;
    for (const TriKey& t : ap.created) {
      for (const EdgeKey& e : edges_of(t)) created_edges[e] = 1;
    }
    for (const auto& [e, _] : created_edges) {
      if (!before.contains(e)) ++delta[e];
    }
    for (const auto& [e, r_removed] : before) {
      if (!created_edges.contains(e)) {
        --delta[e];
        continue;
      }
      const Point a = st_.triangulation().position(e.a), b = st_.triangulation().position(e.b);
      if (edge_class_of(distance(a, b)) > current_class_) continue;
      double r_before = r_removed;
      for (const TriKey& t : st_.incident_triangles(e)) {
        if (!std::binary_search(ap.created.begin(), ap.created.end(), t)) {
          r_before = std::max(r_before, st_.ratio(t));
        }
      }
      if (st_.max_incident_ratio(e) > r_before * (1.0 + 1e-12)) ++rec.upgrade_violations;
    }
  }

  MeshState& st_;
  const ParallelOptions& opt_;
  Trace& tr_;
  int imax_ = 1 << 20;
  bool track_lemmas_ = false;
  int current_class_ = 0;
  std::map<int, std::size_t> splits_this_class_;
};

Trace start_trace(const MeshState& st, std::string algorithm, double L, double s, double beta) {
  Trace tr;
  tr.algorithm = std::move(algorithm);
  tr.mode = st.triangulation().mode();
  tr.L = L;
  tr.s = s;
  tr.beta = beta;
  tr.initial_max_circumradius = st.max_circumradius();
  return tr;
}

void require_strongly_conforming(const Pslg& d) {
  if (!is_strongly_conforming(d)) {
    throw Error(ErrorCode::InvalidDomain, "domain is not strongly conforming; run boundary preprocessing first");
  }
}

ParallelResult run_generic(MeshState& st, Trace tr, const ParallelOptions& opt) {
  Driver drv(st, opt, tr);
  drv.run_until_empty([](const Candidate&) { return true; }, 0, false);
  return {st.mesh(), std::move(tr)};
}

ParallelResult run_ruppert(MeshState& st, Trace tr, const ParallelOptions& opt) {
  const int imax = max_edge_class(tr.L, tr.s);
  Driver drv(st, opt, tr);
  drv.enable_classes(imax);
  for (int i = 1; i <= imax; ++i) {
    drv.run_until_empty([&](const Candidate& c) { return drv.triangle_class(c.triangle) == i; }, i, false);
  }
  drv.run_until_empty([](const Candidate&) { return true; }, 0, true);
  return {st.mesh(), std::move(tr)};
}

const char* policy_suffix(MisPolicy p) { return p == MisPolicy::maximal ? "" : "-any"; }

}  // namespace

std::vector<double> Trace::max_circumradius_series() const {
  std::vector<double> out;
  out.reserve(rounds.size());
  for (const RoundRecord& r : rounds) out.push_back(r.max_circumradius_after);
  return out;
}

double periodic_diameter() { return PeriodicPointSet::diameter(); }

ParallelResult parallel_generic_pps(const PeriodicPointSet& points, QualityRule rule, const ParallelOptions& opt) {
  MeshState st(points, rule, opt.engine);
  Trace tr = start_trace(st, std::string("par-generic-pps") + policy_suffix(opt.policy), periodic_diameter(),
                         st.reference_size(), rule.beta);
  return run_generic(st, std::move(tr), opt);
}

ParallelResult parallel_chew_pps(const PeriodicPointSet& points, double beta, const ParallelOptions& opt) {
  ParallelOptions o = opt;
  o.policy = MisPolicy::maximal;
  const QualityRule rule = QualityRule::make(RuleKind::chew, beta);
  MeshState st(points, rule, o.engine);
  Trace tr = start_trace(st, "par-chew-pps", periodic_diameter(), st.reference_size(), rule.beta);
  return run_generic(st, std::move(tr), o);
}

ParallelResult parallel_ruppert_pps(const PeriodicPointSet& points, double beta, const ParallelOptions& opt) {
  ParallelOptions o = opt;
  o.policy = MisPolicy::maximal;
  const QualityRule rule = QualityRule::make(RuleKind::ruppert, beta);
  MeshState st(points, rule, o.engine);
  Trace tr = start_trace(st, "par-ruppert-pps", periodic_diameter(), st.reference_size(), rule.beta);
  return run_ruppert(st, std::move(tr), o);
}

ParallelResult parallel_generic_pslg(const Pslg& domain, QualityRule rule, const ParallelOptions& opt) {
  require_strongly_conforming(domain);
  ParallelOptions o = opt;
  o.policy = MisPolicy::maximal;
  MeshState st(domain, rule, o.engine);
  Trace tr = start_trace(st, "par-generic-pslg", pslg_diameter(domain), st.reference_size(), rule.beta);
  return run_generic(st, std::move(tr), o);
}

ParallelResult parallel_chew_pslg(const Pslg& domain, double beta, const ParallelOptions& opt) {
  require_strongly_conforming(domain);
  ParallelOptions o = opt;
  o.policy = MisPolicy::maximal;
  const QualityRule rule = QualityRule::make(RuleKind::chew, beta);
  MeshState st(domain, rule, o.engine);
  Trace tr = start_trace(st, "par-chew-pslg", pslg_diameter(domain), st.reference_size(), rule.beta);
  return run_generic(st, std::move(tr), o);
}

ParallelResult parallel_ruppert_pslg(const Pslg& domain, double beta, const ParallelOptions& opt) {
  require_strongly_conforming(domain);
  ParallelOptions o = opt;
  o.policy = MisPolicy::maximal;
  const QualityRule rule = QualityRule::make(RuleKind::ruppert, beta);
  MeshState st(domain, rule, o.engine);
  Trace tr = start_trace(st, "par-ruppert-pslg", pslg_diameter(domain), st.reference_size(), rule.beta);
  return run_ruppert(st, std::move(tr), o);
}

InsertionLog flatten(const Trace& trace) {
  InsertionLog log;
  for (const RoundRecord& r : trace.rounds) {
    for (const Candidate& c : r.chosen) log.push_back({c, r.index});
  }
  return log;
}

bool mis_is_independent(std::span<const Candidate> cands, std::span<const std::size_t> chosen, bool periodic) {
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    for (std::size_t j = i + 1; j < chosen.size(); ++j) {
      if (candidates_conflict(cands[chosen[i]], cands[chosen[j]], periodic)) return false;
    }
  }
  return true;
}

bool mis_is_maximal(std::span<const Candidate> cands, std::span<const std::size_t> chosen, bool periodic) {
  std::vector<char> in(cands.size(), 0);
  for (std::size_t i : chosen) in[i] = 1;
  for (std::size_t k = 0; k < cands.size(); ++k) {
    if (in[k]) continue;
    bool covered = false;
    for (std::size_t i : chosen) {
      if (candidates_conflict(cands[k], cands[i], periodic)) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

}  // namespace pdr
