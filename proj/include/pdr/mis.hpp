#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pdr/refine.hpp"

namespace pdr {

/// Conflict between two candidates: circles_conflict for two circumcircles
/// or two diametral circles, circumcenter_diametral_conflict for a mixed
/// pair. In periodic mode centers are compared through the nearest lattice
/// translate.
bool candidates_conflict(const Candidate& a, const Candidate& b, bool periodic);

struct MisOptions {
  bool periodic = false;
  int threads = 1;
};

struct ConflictPair {
  std::size_t leader = 0;
  std::size_t other = 0;
};

struct MisResult {
  std::vector<std::size_t> chosen;      // ascending indices
  std::vector<ConflictPair> conflicts;  // every conflict a leader saw
};

/// Maximal independent set by radius classes and a 3-colored grid. Classes
/// are processed even first, then odd; inside a class the nine colors run
/// one after the other and buckets of one color run concurrently. Each
/// bucket repeatedly elects its lexicographically smallest live candidate
/// (x, y, radius, kind) and eliminates everything conflicting with it.
/// The result does not depend on the thread count.
MisResult grid_mis(std::span<const Candidate> candidates, double L, const MisOptions& options = {});

}  // namespace pdr
