#include "pdr/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pdr/error.hpp"
#include "pdr/parallel.hpp"

namespace pdr {

int preprocess_iteration_cap(const Pslg& d) {
  const double L = pslg_diameter(d);
  const double s = min_vertex_lfs(d);
  return 4 * static_cast<int>(std::ceil(std::log2(L / s))) + 16;
}

std::vector<SegmentId> conformity_violations(const Pslg& d, int threads) {
  const std::vector<SegmentId> segs = d.live_segments();
  std::vector<char> bad(segs.size(), 0);
  parallel_for(segs.size(), threads, [&](std::size_t i) {
    const Segment& s = d.segment(segs[i]);
    const Circle c = diametral_circle(d.vertex(s.a), d.vertex(s.b));
    for (std::size_t v = 0; v < d.vertices().size(); ++v) {
      const int vi = static_cast<int>(v);
      if (vi == s.a || vi == s.b) continue;
      if (distance(c.center, d.vertices()[v]) <= c.radius) {
        bad[i] = 1;
        return;
      }
    }
    for (SegmentId other : segs) {
      const Segment& t = d.segment(other);
      if (t.a == s.a || t.a == s.b || t.b == s.a || t.b == s.b) continue;
      if (point_segment_distance(c.center, d.vertex(t.a), d.vertex(t.b)) <= c.radius) {
        bad[i] = 1;
        return;
      }
    }
  });
  std::vector<SegmentId> out;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (bad[i]) out.push_back(segs[i]);
  }
  return out;
}

bool is_strongly_conforming(const Pslg& d) { return conformity_violations(d).empty(); }

std::vector<SegmentId> feature_violations(const Pslg& d, double alpha, int threads) {
  const std::vector<SegmentId> segs = d.live_segments();
  std::vector<char> bad(segs.size(), 0);
  parallel_for(segs.size(), threads, [&](std::size_t i) {
    const Segment& s = d.segment(segs[i]);
    const Point a = d.vertex(s.a), b = d.vertex(s.b);
    bad[i] = distance(a, b) > alpha * local_feature_size(d, midpoint(a, b));
  });
  std::vector<SegmentId> out;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (bad[i]) out.push_back(segs[i]);
  }
  return out;
}

bool is_strongly_feature_conforming(const Pslg& d, double alpha) {
  return is_strongly_conforming(d) && feature_violations(d, alpha).empty();
}

Pslg split_all(const Pslg& d, const std::vector<SegmentId>& segments) {
  Pslg out = d;
  for (SegmentId s : segments) out = split_segment(out, s).first;
  return out;
}

std::pair<Pslg, PreprocessReport> preprocess_boundary(const Pslg& d, const PreprocessOptions& options) {
  PreprocessReport report;
  report.iteration_cap = preprocess_iteration_cap(d);
  Pslg cur = d;
  for (;;) {
    const std::vector<SegmentId> g = conformity_violations(cur, options.threads);
    if (g.empty()) break;
    if (report.iterations >= report.iteration_cap) {
      throw Error(ErrorCode::PreprocessDiverged,
                  "boundary preprocessing exceeded " + std::to_string(report.iteration_cap) + " iterations");
    }
    cur = split_all(cur, g);
    report.segments_split += g.size();
    ++report.iterations;
  }
  report.samples.resize(options.lfs_samples.size());
  parallel_for(options.lfs_samples.size(), options.threads, [&](std::size_t i) {
    const Point x = options.lfs_samples[i];
    report.samples[i] = {x, local_feature_size(d, x), local_feature_size(cur, x)};
  });
  return {std::move(cur), std::move(report)};
}

Pslg preprocess_feature_conforming(const Pslg& d, double alpha, int threads) {
  if (!(alpha > 2.0)) throw Error(ErrorCode::InvalidConfig, "alpha must exceed 2");
  const int cap = preprocess_iteration_cap(d);
  Pslg cur = d;
  for (int it = 0;; ++it) {
    const std::vector<SegmentId> bad = feature_violations(cur, alpha, threads);
    if (bad.empty()) return cur;
    if (it >= cap) {
      throw Error(ErrorCode::PreprocessDiverged,
                  "feature preprocessing exceeded " + std::to_string(cap) + " iterations");
    }
    cur = split_all(cur, bad);
  }
}

}  // namespace pdr
