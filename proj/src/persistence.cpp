#include <algorithm>
#include <vector>

#include "hotopo/errors.hpp"
#include "hotopo/topology.hpp"

namespace hotopo {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// One sublevel (ascending = true) or superlevel sweep; emits the elder-rule
// pairs of that direction and returns the surviving extremum (global min or
// max).
int sweep(const TriangulatedField& tf, bool ascending, std::vector<PersistencePair>& out) {
  const std::vector<int> order = [&] {
    std::vector<int> o = tf.sorted_vertices();
    if (!ascending) std::reverse(o.begin(), o.end());
    return o;
  }();
  const int n = tf.num_vertices();
  std::vector<char> seen(n, 0);
  UnionFind uf(n);
  // Per-component extremum (the eldest vertex in sweep order).
  std::vector<int> extremum(n, -1);
  auto elder = [&](int a, int b) {
    // a is elder than b when it comes earlier in the sweep.
    return ascending ? tf.less(a, b) : tf.less(b, a);
  };
  for (int v : order) {
    std::vector<int> roots;
    for (int u : tf.neighbors(v)) {
      if (!seen[u]) continue;
      const int r = uf.find(u);
      if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    }
    seen[v] = 1;
    if (roots.empty()) {
      extremum[uf.find(v)] = v;
      continue;
    }
    // Merge all components at v; every younger extremum pairs with v.
    int eldest = extremum[roots[0]];
    for (size_t i = 1; i < roots.size(); ++i) {
      if (elder(extremum[roots[i]], eldest)) eldest = extremum[roots[i]];
    }
    for (int r : roots) {
      const int e = extremum[r];
      if (e != eldest) {
        if (ascending) {
          out.push_back({e, tf.value(e), v, tf.value(v), PairKind::MinSaddle});
        } else {
          out.push_back({v, tf.value(v), e, tf.value(e), PairKind::SaddleMax});
        }
      }
    }
    int root = roots[0];
    for (size_t i = 1; i < roots.size(); ++i) uf.unite(roots[i], root);
    uf.unite(v, root);
    extremum[uf.find(root)] = eldest;
  }
  return extremum[uf.find(order.back())];
}

}  // namespace

std::vector<PersistencePair> persistence_pairs(const TriangulatedField& tf) {
  std::vector<PersistencePair> pairs;
  const int gmin = sweep(tf, true, pairs);
  std::vector<PersistencePair> desc;
  const int gmax = sweep(tf, false, desc);
  // On 1-complexes a vertex can act as a join saddle and a local maximum at
  // once (a hump on a path); the descending sweep then re-reports the same
  // two vertices with the roles swapped.  Pairing is a partial matching, so
  // such duplicates are dropped.  On generic 2-complexes the lower link of a
  // maximum is a connected ring and the situation cannot arise.
  for (const auto& d : desc) {
    const bool dup = std::any_of(pairs.begin(), pairs.end(), [&](const PersistencePair& a) {
      return (a.birth_vertex == d.birth_vertex && a.death_vertex == d.death_vertex) ||
             (a.birth_vertex == d.death_vertex && a.death_vertex == d.birth_vertex);
    });
    if (!dup) pairs.push_back(d);
  }
  pairs.push_back({gmin, tf.value(gmin), gmax, tf.value(gmax), PairKind::Essential});
  std::sort(pairs.begin(), pairs.end(), [](const PersistencePair& a, const PersistencePair& b) {
    if (a.persistence() != b.persistence()) return a.persistence() > b.persistence();
    if (a.birth_vertex != b.birth_vertex) return a.birth_vertex < b.birth_vertex;
    return a.death_vertex < b.death_vertex;
  });
  return pairs;
}

std::vector<CurvePoint> persistence_curve(const std::vector<PersistencePair>& pairs,
                                          const std::vector<double>& thresholds) {
  std::vector<CurvePoint> out;
  out.reserve(thresholds.size());
  for (double tau : thresholds) {
    long long leq = 0, gt = 0;
    for (const auto& p : pairs) {
      const long long w = p.kind == PairKind::Essential ? 2 : 1;
      if (p.persistence() <= tau) {
        leq += w;
      } else {
        gt += w;
      }
    }
    out.push_back({tau, leq, gt});
  }
  return out;
}

}  // namespace hotopo
