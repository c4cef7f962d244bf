#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <unordered_map>

#include "pdr/classes.hpp"
#include "pdr/mis.hpp"
#include "pdr/parallel.hpp"

namespace pdr {

namespace {

bool is_circum(CandidateKind k) { return k == CandidateKind::B || k == CandidateKind::C; }

struct CellKey {
  int h;
  int g;
  std::int64_t cx, cy;
  friend bool operator==(const CellKey&, const CellKey&) = default;
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const noexcept {
    std::uint64_t x = static_cast<std::uint64_t>(k.h + 4096) * 0x9e3779b97f4a7c15ULL;
    x ^= static_cast<std::uint64_t>(k.g + 4096) + 0x632be59bd9b4e019ULL + (x << 6) + (x >> 2);
    x ^= static_cast<std::uint64_t>(k.cx) + 0x9e3779b97f4a7c15ULL + (x << 6) + (x >> 2);
    x ^= static_cast<std::uint64_t>(k.cy) + 0x9e3779b97f4a7c15ULL + (x << 6) + (x >> 2);
    return static_cast<std::size_t>(x);
  }
};

std::int64_t mod3(std::int64_t v) { return ((v % 3) + 3) % 3; }

class Grid {
 public:
  Grid(double L, bool periodic) : L_(L), periodic_(periodic) {}

  // Number of cells per axis on the unit torus at level g (periodic only).
  std::int64_t torus_cells(int g) const {
    const double k = std::floor(std::ldexp(1.0, g) / L_);
    if (k < 3.0) return 1;
    return 3 * static_cast<std::int64_t>(std::floor(k / 3.0));
  }

  std::pair<std::int64_t, std::int64_t> cell(Point p, int g) const {
    if (periodic_) {
      const std::int64_t n = torus_cells(g);
      const auto c = [&](double v) {
        return std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor(v * static_cast<double>(n))), 0, n - 1);
      };
      return {c(p.x), c(p.y)};
    }
    const double cs = std::ldexp(L_, -g);
    return {static_cast<std::int64_t>(std::floor(p.x / cs)), static_cast<std::int64_t>(std::floor(p.y / cs))};
  }

  // The 3x3 neighbourhood, wrapped and deduplicated on the torus.
  std::vector<std::pair<std::int64_t, std::int64_t>> neighbourhood(std::int64_t cx, std::int64_t cy, int g) const {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        std::int64_t x = cx + dx, y = cy + dy;
        if (periodic_) {
          const std::int64_t n = torus_cells(g);
          x = ((x % n) + n) % n;
          y = ((y % n) + n) % n;
        }
        out.emplace_back(x, y);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  double L_;
  bool periodic_;
};

}  // namespace

bool candidates_conflict(const Candidate& a, const Candidate& b, bool periodic) {
  Circle ca = a.circle;
  Circle cb = b.circle;
  if (periodic) {
    const TorusDisplacement d = torus_displacement(ca.center, cb.center);
    cb.center = {ca.center.x + d.vector.x, ca.center.y + d.vector.y};
  }
  const bool ac = is_circum(a.kind), bc = is_circum(b.kind);
  if (ac == bc) return circles_conflict(ca, cb);
  return ac ? circumcenter_diametral_conflict(ca, cb) : circumcenter_diametral_conflict(cb, ca);
}

MisResult grid_mis(std::span<const Candidate> cands, double L, const MisOptions& options) {
  MisResult result;
  const std::size_t n = cands.size();
  if (n == 0) return result;

  std::vector<int> cls(n);
  for (std::size_t i = 0; i < n; ++i) cls[i] = radius_class_unbounded(cands[i].circle.radius, L);
  const int hmin = *std::min_element(cls.begin(), cls.end());

  const Grid grid(L, options.periodic);
  std::unordered_map<CellKey, std::vector<std::size_t>, CellKeyHash> index;
  std::map<int, std::vector<std::pair<std::int64_t, std::int64_t>>> own_cells;  // class -> cells at its level
  for (std::size_t i = 0; i < n; ++i) {
    const int h = cls[i];
    for (int g = hmin; g <= h; ++g) {
      const auto [cx, cy] = grid.cell(cands[i].circle.center, g);
      index[{h, g, cx, cy}].push_back(i);
      if (g == h) own_cells[h].emplace_back(cx, cy);
    }
  }
  for (auto& [h, cells] : own_cells) {
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  }
  std::vector<int> classes;
  for (const auto& [h, _] : own_cells) classes.push_back(h);
  std::stable_partition(classes.begin(), classes.end(), [](int h) { return h % 2 == 0; });

  enum : std::uint8_t { kAlive = 0, kChosen = 1, kGone = 2 };
  std::vector<std::atomic<std::uint8_t>> status(n);
  for (auto& s : status) s.store(kAlive, std::memory_order_relaxed);

  const auto less = [&](std::size_t a, std::size_t b) {
    const Candidate& x = cands[a];
    const Candidate& y = cands[b];
    if (x.circle.center.x != y.circle.center.x) return x.circle.center.x < y.circle.center.x;
    if (x.circle.center.y != y.circle.center.y) return x.circle.center.y < y.circle.center.y;
    if (x.circle.radius != y.circle.radius) return x.circle.radius < y.circle.radius;
    if (x.kind != y.kind) return x.kind < y.kind;
    return a < b;
  };

  struct BucketLog {
    std::vector<std::size_t> chosen;
    std::vector<ConflictPair> conflicts;
  };

  for (int h : classes) {
    const auto& cells = own_cells[h];
    std::array<std::vector<std::pair<std::int64_t, std::int64_t>>, 9> by_color;
    for (const auto& c : cells) by_color[static_cast<std::size_t>(mod3(c.first) * 3 + mod3(c.second))].push_back(c);
    for (const auto& color_cells : by_color) {
      std::vector<BucketLog> logs(color_cells.size());
      parallel_for(color_cells.size(), options.threads, [&](std::size_t ci) {
        const auto [cx, cy] = color_cells[ci];
        std::vector<std::size_t> bucket = index.at({h, h, cx, cy});
        std::sort(bucket.begin(), bucket.end(), less);
        BucketLog& log = logs[ci];
        for (std::size_t leader : bucket) {
          if (status[leader].load() != kAlive) continue;
          status[leader].store(kChosen);
          log.chosen.push_back(leader);
          for (int h2 : classes) {
            const int g = std::min(h, h2);
            const auto [lx, ly] = grid.cell(cands[leader].circle.center, g);
            for (const auto& [nx, ny] : grid.neighbourhood(lx, ly, g)) {
              const auto it = index.find({h2, g, nx, ny});
              if (it == index.end()) continue;
              for (std::size_t j : it->second) {
                if (j == leader || status[j].load() == kChosen) continue;
                if (!candidates_conflict(cands[leader], cands[j], options.periodic)) continue;
                log.conflicts.push_back({leader, j});
                std::uint8_t expected = kAlive;
                status[j].compare_exchange_strong(expected, kGone);
              }
            }
          }
        }
      });
      for (BucketLog& log : logs) {
        result.chosen.insert(result.chosen.end(), log.chosen.begin(), log.chosen.end());
        result.conflicts.insert(result.conflicts.end(), log.conflicts.begin(), log.conflicts.end());
      }
    }
  }
  std::sort(result.chosen.begin(), result.chosen.end());
  return result;
}

}  // namespace pdr
