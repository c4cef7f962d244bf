// Empirical constants measured on the fixture corpus and pinned so that a
// behavioural change shows up as a failing test rather than a silent drift.
#include <cmath>
#include <map>

#include "doctest.h"
#include "pdr/analysis.hpp"
#include "pdr/parallel_refine.hpp"
#include "pdr/preprocess.hpp"
#include "pdr/refine.hpp"
#include "support.hpp"

using namespace pdr;
using fixtures::kSqrt2;

namespace {

// Observed edge/lfs ratios stay within [0.41, 2.83]; 2.83 is 2*sqrt(2).
constexpr double kGrading = 3.0;
// Observed par-chew rounds / ln(L/s) peaks at 2.89 (graded).
constexpr double kChewPslgRounds = 3.0;

const std::map<std::string, std::size_t> kRuppertPslgRounds = {
    {"square", 0}, {"rectangle", 0}, {"graded", 18}, {"slit", 5},       {"parallel", 2},
    {"nested", 6}, {"plus", 4},      {"octagon", 2}, {"lpartition", 0}, {"points", 4}};
const std::map<std::string, std::size_t> kChewPslgRoundCounts = {
    {"square", 0}, {"rectangle", 0}, {"graded", 15}, {"slit", 9},       {"parallel", 3},
    {"nested", 7}, {"plus", 7},      {"octagon", 8}, {"lpartition", 0}, {"points", 8}};
const std::map<std::string, std::pair<std::size_t, std::size_t>> kPeriodicRounds = {
    {"periodic_single", {0, 0}},    {"periodic_pair", {0, 0}},      {"periodic_lattice", {0, 0}},
    {"periodic_random10", {4, 4}},  {"periodic_random50", {6, 3}},  {"periodic_random200", {5, 4}},
    {"periodic_cluster", {12, 16}}};

void check_grading(const Mesh& m, const Pslg& d) {
  const LfsProfile p = edge_lfs_profile(m, d);
  CHECK(p.min >= 1.0 / kGrading);
  CHECK(p.max <= kGrading);
}

}  // namespace

TEST_CASE("Ruppert meshes are graded to lfs within the pinned constant") {
  const QualityRule rule = QualityRule::make(RuleKind::ruppert, kSqrt2);
  for (const std::string& name : fixtures::pslg_names()) {
    CAPTURE(name);
    const Pslg d = fixtures::prepared(fixtures::pslg(name));
    check_grading(parallel_ruppert_pslg(d, kSqrt2).mesh, d);
    check_grading(seq_refine(d, rule).mesh, d);
  }
}

TEST_CASE("PSLG round counts match the pinned values") {
  for (const std::string& name : fixtures::pslg_names()) {
    CAPTURE(name);
    const ParallelResult r = parallel_ruppert_pslg(fixtures::prepared(fixtures::pslg(name)), kSqrt2);
    CHECK(r.trace.rounds.size() == kRuppertPslgRounds.at(name));
    CHECK(r.trace.sub_s_edges == 0);

    const ParallelResult c = parallel_chew_pslg(preprocess_boundary(fixtures::pslg(name)).first, kSqrt2);
    CHECK(c.trace.rounds.size() == kChewPslgRoundCounts.at(name));
    const QualityReport q = quality_report(c.mesh);
    CHECK(q.quasi_uniformity <= 4 * kSqrt2);
    const double spread = std::log(c.trace.L / q.shortest_edge);
    if (spread > 1.0) CHECK(static_cast<double>(c.trace.rounds.size()) <= kChewPslgRounds * spread);
  }
}

TEST_CASE("periodic round counts match the pinned values and stay below the ceilings") {
  for (const std::string& name : fixtures::periodic_names()) {
    CAPTURE(name);
    const PeriodicPointSet p = fixtures::periodic(name);
    const ParallelResult c = parallel_chew_pps(p, kSqrt2);
    const ParallelResult r = parallel_ruppert_pps(p, kSqrt2);
    CHECK(c.trace.rounds.size() == kPeriodicRounds.at(name).first);
    CHECK(r.trace.rounds.size() == kPeriodicRounds.at(name).second);
    CHECK(r.trace.sub_s_edges == 0);
    const double s = quality_report(c.mesh).shortest_edge;
    CHECK(c.trace.rounds.size() <= chew_round_ceiling(periodic_diameter(), s));
    CHECK(quality_report(c.mesh).quasi_uniformity <= 4 * kSqrt2);
  }
}
