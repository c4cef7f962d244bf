#pragma once

#include <string>
#include <vector>

#include "pdr/mis.hpp"
#include "pdr/refine.hpp"

namespace pdr {

enum class MisPolicy { maximal, any_independent };

struct ConflictRecord {
  double r_leader = 0.0;
  double r_other = 0.0;
  CandidateKind leader_kind = CandidateKind::C;
  CandidateKind other_kind = CandidateKind::C;
};

/// A circumcircle of radius r_c whose center lies strictly inside a
/// diametral circle of radius r_d.
struct EncroachRecord {
  double r_c = 0.0;
  double r_d = 0.0;
};

struct RoundRecord {
  int index = 0;
  int edge_class = 0;  // outer class of Ruppert drivers, 0 otherwise
  int inner = 0;
  bool sweep = false;  // clean-up round after the class loop
  std::size_t candidate_count = 0;
  std::vector<Candidate> chosen;  // in insertion order
  std::vector<ConflictRecord> conflicts;
  std::vector<EncroachRecord> encroachments;
  std::size_t inserted = 0;
  // Chosen points whose source vanished before their turn (cocircular ties
  // the constructed-value conflict test calls independent); retried next round.
  std::size_t deferred = 0;
  double max_circumradius_after = 0.0;
  std::size_t conservation_violations = 0;
  std::size_t upgrade_violations = 0;
};

struct Trace {
  std::string algorithm;
  Mode mode = Mode::planar;
  double L = 0.0;
  double s = 0.0;  // reference size the edge classes are built on
  double beta = 0.0;
  double initial_max_circumradius = 0.0;
  std::vector<RoundRecord> rounds;
  std::size_t sweep_rounds = 0;
  std::size_t sub_s_edges = 0;           // edges shorter than s met by the class loop
  std::size_t max_splits_per_class = 0;  // per input segment and outer class
  double max_encroach_ratio = 0.0;       // largest r_c / r_d

  std::vector<double> max_circumradius_series() const;
};

struct ParallelOptions {
  int threads = 1;
  MisPolicy policy = MisPolicy::maximal;
  /// Per-round brute-force verification of the MIS, of the D_T invariant and
  /// of every insertion against the sequential rules.
  bool strict_checks = false;
  EngineOptions engine;
  std::size_t max_rounds = 100'000;
};

struct ParallelResult {
  Mesh mesh;
  Trace trace;
};

/// L for periodic point sets: the diameter bound of the unit square.
double periodic_diameter();

ParallelResult parallel_generic_pps(const PeriodicPointSet& points, QualityRule rule,
                                    const ParallelOptions& options = {});
ParallelResult parallel_chew_pps(const PeriodicPointSet& points, double beta, const ParallelOptions& options = {});
ParallelResult parallel_ruppert_pps(const PeriodicPointSet& points, double beta,
                                    const ParallelOptions& options = {});

/// The PSLG drivers require a strongly conforming domain (InvalidDomain
/// otherwise); Ruppert additionally expects it to be feature conforming.
ParallelResult parallel_generic_pslg(const Pslg& domain, QualityRule rule, const ParallelOptions& options = {});
ParallelResult parallel_chew_pslg(const Pslg& domain, double beta, const ParallelOptions& options = {});
ParallelResult parallel_ruppert_pslg(const Pslg& domain, double beta, const ParallelOptions& options = {});

/// Rounds in order, each already in decreasing-radius insertion order.
InsertionLog flatten(const Trace& trace);

/// Brute-force checks used by strict mode.
bool mis_is_independent(std::span<const Candidate> cands, std::span<const std::size_t> chosen, bool periodic);
bool mis_is_maximal(std::span<const Candidate> cands, std::span<const std::size_t> chosen, bool periodic);

}  // namespace pdr
