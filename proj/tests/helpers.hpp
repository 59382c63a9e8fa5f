#ifndef HOTOPO_TESTS_HELPERS_HPP
#define HOTOPO_TESTS_HELPERS_HPP

#include <algorithm>
#include <random>
#include <tuple>
#include <vector>

#include "hotopo/grid.hpp"
#include "hotopo/topology.hpp"

namespace hotopo_tests {

inline hotopo::ScalarGrid random_grid(int nx, int ny, std::uint64_t seed) {
  hotopo::ScalarGrid g;
  g.nx = nx;
  g.ny = ny;
  g.dx = 1.0 / (nx - 1);
  g.dy = 1.0 / (ny - 1);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  g.values.resize(g.size());
  for (auto& v : g.values) v = dist(rng);
  return g;
}

// Brute-force elder-rule pairing by re-deriving sublevel components with BFS
// from scratch after every vertex insertion (independent of the union-find
// implementation under test).
inline std::vector<std::tuple<int, int, int>> brute_pairs(const hotopo::TriangulatedField& tf) {
  using hotopo::TriangulatedField;
  const int n = tf.num_vertices();
  std::vector<std::tuple<int, int, int>> out;  // (birth vertex, death vertex, kind 0/1/2)
  for (int dir = 0; dir < 2; ++dir) {
    const bool ascending = dir == 0;
    std::vector<int> order = tf.sorted_vertices();
    if (!ascending) std::reverse(order.begin(), order.end());
    std::vector<char> active(n, 0);
    auto components = [&]() {
      std::vector<int> comp(n, -1);
      int nc = 0;
      for (int s = 0; s < n; ++s) {
        if (!active[s] || comp[s] >= 0) continue;
        std::vector<int> stack{s};
        comp[s] = nc;
        while (!stack.empty()) {
          const int v = stack.back();
          stack.pop_back();
          for (int u : tf.neighbors(v)) {
            if (active[u] && comp[u] < 0) {
              comp[u] = nc;
              stack.push_back(u);
            }
          }
        }
        ++nc;
      }
      return std::pair<std::vector<int>, int>(std::move(comp), nc);
    };
    for (int v : order) {
      auto [before, nb] = components();
      active[v] = 1;
      // Distinct old components adjacent to v merge here.
      std::vector<int> merged;
      for (int u : tf.neighbors(v)) {
        if (!active[u] || u == v) continue;
        if (std::find(merged.begin(), merged.end(), before[u]) == merged.end()) {
          merged.push_back(before[u]);
        }
      }
      if (merged.size() < 2) continue;
      // Extremum of each merged component = its first vertex in sweep order.
      std::vector<int> extrema;
      for (int c : merged) {
        int best = -1;
        for (int u = 0; u < n; ++u) {
          if (u == v || !active[u] || before[u] != c) continue;
          if (best < 0 || (ascending ? tf.less(u, best) : tf.less(best, u))) best = u;
        }
        extrema.push_back(best);
      }
      int eldest = extrema[0];
      for (int e : extrema) {
        if (ascending ? tf.less(e, eldest) : tf.less(eldest, e)) eldest = e;
      }
      for (int e : extrema) {
        if (e == eldest) continue;
        if (ascending) {
          out.emplace_back(e, v, 0);
        } else {
          out.emplace_back(v, e, 1);
        }
      }
      (void)nb;
    }
  }
  const std::vector<int> order = tf.sorted_vertices();
  out.emplace_back(order.front(), order.back(), 2);
  return out;
}

}  // namespace hotopo_tests

#endif
