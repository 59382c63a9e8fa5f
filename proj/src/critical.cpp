#include <algorithm>
#include <functional>
#include <vector>

#include "hotopo/topology.hpp"

namespace hotopo {

namespace {

// Connected components of the lower (or upper) link of v: neighbours on the
// chosen side, connected when they share a cell with v.
int link_components(const TriangulatedField& tf, int v, bool lower) {
  const auto& nbrs = tf.neighbors(v);
  std::vector<int> side;
  for (int u : nbrs) {
    if (tf.less(u, v) == lower) side.push_back(u);
  }
  if (side.empty()) return 0;
  auto rank = [&](int u) {
    return static_cast<int>(std::lower_bound(side.begin(), side.end(), u) - side.begin());
  };
  std::vector<int> parent(side.size());
  for (size_t i = 0; i < side.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int c : tf.vertex_cells(v)) {
    const auto& cell = tf.cells()[c];
    int prev = -1;
    for (int u : cell) {
      if (u == v) continue;
      if (tf.less(u, v) != lower) continue;
      const int r = rank(u);
      if (r >= static_cast<int>(side.size()) || side[r] != u) continue;
      if (prev >= 0) parent[find(prev)] = find(r);
      prev = r;
    }
  }
  int comps = 0;
  for (size_t i = 0; i < side.size(); ++i) {
    if (find(static_cast<int>(i)) == static_cast<int>(i)) ++comps;
  }
  return comps;
}

}  // namespace

std::vector<CriticalPoint> classify_critical_points(const TriangulatedField& tf) {
  std::vector<CriticalPoint> out;
  const int d = tf.dim();
  for (int v = 0; v < tf.num_vertices(); ++v) {
    const int lo = link_components(tf, v, true);
    const int hi = link_components(tf, v, false);
    if (lo == 0) {
      out.push_back({v, tf.value(v), CriticalType::Minimum, 0, 1});
    } else if (hi == 0) {
      out.push_back({v, tf.value(v), CriticalType::Maximum, d, 1});
    } else if (d == 2) {
      if (lo >= 2) out.push_back({v, tf.value(v), CriticalType::Saddle, 1, lo - 1});
    } else {
      if (lo >= 2) out.push_back({v, tf.value(v), CriticalType::OneSaddle, 1, lo - 1});
      if (hi >= 2) out.push_back({v, tf.value(v), CriticalType::TwoSaddle, 2, hi - 1});
    }
  }
  return out;
}

}  // namespace hotopo
