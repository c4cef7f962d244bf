#pragma once

#include <utility>
#include <vector>

#include "pdr/domain.hpp"

namespace pdr {

struct LfsSample {
  Point x;
  double before = 0.0;
  double after = 0.0;
};

struct PreprocessReport {
  int iterations = 0;
  int iteration_cap = 0;
  std::size_t segments_split = 0;
  std::vector<LfsSample> samples;
};

struct PreprocessOptions {
  int threads = 1;
  /// Points at which lfs is evaluated before and after; copied into the
  /// report.
  std::vector<Point> lfs_samples;
};

/// 4 * ceil(log2(L / s_min)) + 16 with s_min the smallest vertex lfs.
int preprocess_iteration_cap(const Pslg& d);

/// Live segments whose closed diametral disk meets a feature (vertex or
/// segment) not incident to them; sorted.
std::vector<SegmentId> conformity_violations(const Pslg& d, int threads = 1);

bool is_strongly_conforming(const Pslg& d);

/// Live segments longer than alpha * lfs(midpoint); sorted.
std::vector<SegmentId> feature_violations(const Pslg& d, double alpha, int threads = 1);

bool is_strongly_feature_conforming(const Pslg& d, double alpha);

/// Splits every violating segment at its midpoint, all at once, until none
/// is left. Throws PreprocessDiverged past the iteration cap.
std::pair<Pslg, PreprocessReport> preprocess_boundary(const Pslg& d, const PreprocessOptions& options = {});

/// Additionally splits segments longer than alpha times the lfs of their
/// midpoint (lfs of the evolving domain). alpha must exceed 2.
Pslg preprocess_feature_conforming(const Pslg& d, double alpha = 3.0, int threads = 1);

/// Splits each listed live segment once, in the given order.
Pslg split_all(const Pslg& d, const std::vector<SegmentId>& segments);

}  // namespace pdr
