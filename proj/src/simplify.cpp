#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <queue>
#include <tuple>
#include <utility>
#include <vector>

#include "hotopo/errors.hpp"
#include "hotopo/topology.hpp"

namespace hotopo {

namespace {

struct UnionFind {
  std::vector<int> parent;
  std::vector<std::vector<int>> members;
  explicit UnionFind(int n) : parent(n), members(n) {
    for (int i = 0; i < n; ++i) {
      parent[i] = i;
      members[i] = {i};
    }
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  // Small-to-large merge keeping member lists on the surviving root.
  int unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (members[a].size() < members[b].size()) std::swap(a, b);
    parent[b] = a;
    members[a].insert(members[a].end(), members[b].begin(), members[b].end());
    members[b].clear();
    members[b].shrink_to_fit();
    return a;
  }
};

struct Cancellation {
  int saddle;
  int extremum;
  double persistence;
  bool min_side;
  std::vector<int> basin;  // vertices of the younger component at merge time
};

// One sweep direction; records the basins of all pairs with persistence <=
// epsilon so they can be cancelled.
std::vector<Cancellation> collect_cancellations(const TriangulatedField& tf, bool ascending,
                                                double epsilon) {
  std::vector<int> order = tf.sorted_vertices();
  if (!ascending) std::reverse(order.begin(), order.end());
  const int n = tf.num_vertices();
  std::vector<char> seen(n, 0);
  UnionFind uf(n);
  std::vector<int> extremum(n, -1);
  auto elder = [&](int a, int b) { return ascending ? tf.less(a, b) : tf.less(b, a); };
  std::vector<Cancellation> out;
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
    int eldest = extremum[roots[0]];
    for (size_t i = 1; i < roots.size(); ++i) {
      if (elder(extremum[roots[i]], eldest)) eldest = extremum[roots[i]];
    }
    for (int r : roots) {
      const int e = extremum[r];
      if (e == eldest) continue;
      const double p = std::abs(tf.value(v) - tf.value(e));
      if (p <= epsilon) {
        out.push_back({v, e, p, ascending, uf.members[r]});
      }
    }
    int root = roots[0];
    for (size_t i = 1; i < roots.size(); ++i) root = uf.unite(roots[i], root);
    root = uf.unite(v, root);
    extremum[root] = eldest;
  }
  return out;
}

// Fill: flatten the basin to the saddle value.  The plateau must stay free
// of critical points, so its internal order has to give every vertex both a
// link toward the saddle side (a plateau neighbor placed closer to the
// saddle, or the saddle itself) and a link toward the far side (a plateau
// neighbor placed farther out, or an escape neighbor outside the basin that
// is strictly beyond the saddle).  Vertices are placed greedily from the far
// end inward, farthest-from-saddle first; returns false when no such order
// exists, in which case carving is the only option.
bool fill(TriangulatedField& tf, const Cancellation& c) {
  const int n = tf.num_vertices();
  const int m = static_cast<int>(c.basin.size());
  std::vector<char> in_basin(n, 0);
  for (int v : c.basin) in_basin[v] = 1;

  std::vector<char> near_saddle(n, 0), escape(n, 0), placed(n, 0);
  std::vector<int> rem(n, 0);  // unplaced basin neighbors
  for (int u : tf.neighbors(c.saddle)) {
    if (in_basin[u]) near_saddle[u] = 1;
  }
  for (int v : c.basin) {
    for (int u : tf.neighbors(v)) {
      if (in_basin[u]) {
        ++rem[v];
      } else if (u != c.saddle) {
        // Outside neighbors strictly beyond the saddle can anchor the far
        // end of the plateau.
        if (c.min_side ? tf.less(c.saddle, u) : tf.less(u, c.saddle)) escape[v] = 1;
      }
    }
  }

  // Distance from the saddle within the basin; far vertices are placed first.
  std::vector<int> depth(n, -1);
  std::deque<int> queue;
  for (int u : tf.neighbors(c.saddle)) {
    if (in_basin[u] && depth[u] < 0) {
      depth[u] = 1;
      queue.push_back(u);
    }
  }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int u : tf.neighbors(v)) {
      if (in_basin[u] && depth[u] < 0) {
        depth[u] = depth[v] + 1;
        queue.push_back(u);
      }
    }
  }

  std::vector<int> seq;
  seq.reserve(m);
  std::vector<char> anchored(n, 0);  // has a placed neighbor
  for (int step = 0; step < m; ++step) {
    int pick = -1;
    for (int v : c.basin) {
      if (placed[v]) continue;
      if (!escape[v] && !anchored[v]) continue;      // no far-side link yet
      if (!near_saddle[v] && rem[v] == 0) continue;  // no saddle-side link left
      if (pick < 0 || depth[v] > depth[pick]) pick = v;
    }
    if (pick < 0) return false;
    placed[pick] = 1;
    seq.push_back(pick);
    for (int u : tf.neighbors(pick)) {
      if (in_basin[u]) {
        anchored[u] = 1;
        --rem[u];
      }
    }
  }

  const double val = tf.value(c.saddle);
  const long long base = tf.offset(c.saddle);
  for (int i = 0; i < m; ++i) {
    const long long d = m - i;
    tf.set_value(seq[i], val);
    tf.set_offset(seq[i], c.min_side ? base + d : base - d);
  }
  return true;
}

// Carve: instead of flattening the basin, cut a monotone channel from the
// extremum to some vertex already past it in the total order.  The channel
// takes the extremum's value with offsets stepping away from it, so the
// extremum stops being critical while everything off the channel keeps its
// value; this spares pairs whose pass threads the basin.  Routes are found
// by Dijkstra over vertices within the budget, cheapest total perturbation
// first; one channel per reachable endpoint, cheapest first.
std::vector<std::vector<int>> carve_channels(const TriangulatedField& tf,
                                             const TriangulatedField& original,
                                             const std::vector<char>& keep, const Cancellation& c,
                                             double epsilon) {
  const int n = tf.num_vertices();
  auto past = [&](int v) { return c.min_side ? tf.less(v, c.extremum) : tf.less(c.extremum, v); };
  // Perturbation of v if carved through, relative to the input field so the
  // budget holds after accumulated edits.
  auto cost = [&](int v) { return std::abs(tf.value(c.extremum) - original.value(v)); };
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<int> parent(n, -1);
  std::vector<char> done(n, 0);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  dist[c.extremum] = 0.0;
  heap.push({0.0, c.extremum});
  std::vector<std::pair<double, int>> targets;
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (done[v]) continue;
    done[v] = 1;
    if (v != c.extremum && past(v)) {
      targets.push_back({d, v});
      continue;  // endpoints are not carved through
    }
    // Interior vertices must stay within budget when moved, and must not be
    // a birth or death vertex of a surviving pair.
    if (v != c.extremum && (keep[v] || cost(v) > epsilon)) continue;
    for (int u : tf.neighbors(v)) {
      const double du = d + cost(u);
      if (!done[u] && du < dist[u]) {
        dist[u] = du;
        parent[u] = v;
        heap.push({du, u});
      }
    }
  }
  std::sort(targets.begin(), targets.end());
  std::vector<std::vector<int>> channels;
  for (const auto& [d, w] : targets) {
    std::vector<int> channel;  // extremum exclusive -> endpoint exclusive
    for (int v = parent[w]; v != c.extremum; v = parent[v]) channel.push_back(v);
    std::reverse(channel.begin(), channel.end());
    channels.push_back(std::move(channel));
  }
  return channels;
}

void apply_channel(TriangulatedField& tf, const Cancellation& c, const std::vector<int>& channel) {
  const double val = tf.value(c.extremum);
  const long long base = tf.offset(c.extremum);
  for (size_t i = 0; i < channel.size(); ++i) {
    const long long d = static_cast<long long>(i) + 1;
    tf.set_value(channel[i], val);
    tf.set_offset(channel[i], c.min_side ? base - d : base + d);
  }
}

// Leave gaps of n between consecutive offsets so a fill or carve can insert
// a whole plateau between two vertices without colliding with offsets left
// behind by earlier operations.  Ranks preserve the total order exactly.
void respace_offsets(TriangulatedField& tf) {
  const std::vector<int> order = tf.sorted_vertices();
  const long long gap = tf.num_vertices() + 1;
  for (size_t i = 0; i < order.size(); ++i) {
    tf.set_offset(order[i], static_cast<long long>(i + 1) * gap);
  }
}

using PairKey = std::tuple<double, double, int>;

std::vector<PairKey> pair_keys(const TriangulatedField& tf) {
  std::vector<PairKey> keys;
  for (const auto& p : persistence_pairs(tf)) {
    keys.emplace_back(p.birth_value, p.death_value, static_cast<int>(p.kind));
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

}  // namespace

TriangulatedField simplify(const TriangulatedField& tf, double epsilon) {
  if (epsilon < 0.0) throw Error("simplify: epsilon must be >= 0");
  TriangulatedField g = tf;
  const size_t initial_pairs = persistence_pairs(tf).size();

  // The surviving pairs of the input; the loop terminates when the diagram
  // matches this multiset exactly.
  std::vector<PairKey> target;
  for (const PairKey& k : pair_keys(tf)) {
    const bool essential = std::get<2>(k) == static_cast<int>(PairKind::Essential);
    if (essential || std::get<1>(k) - std::get<0>(k) > epsilon) target.push_back(k);
  }

  auto within_budget = [&](const TriangulatedField& h) {
    for (int v = 0; v < h.num_vertices(); ++v) {
      if (std::abs(h.value(v) - tf.value(v)) > epsilon) return false;
    }
    return true;
  };
  // A step is acceptable when every surviving pair is present with its exact
  // values and everything else in the diagram is still cancellable.  Filling
  // one basin may shift the saddle of another low pair (its pass can thread
  // the basin); that is fine as long as the shifted pair stays below the
  // threshold so a later step removes it.  Returns the number of extra
  // pairs, or -1 if the step is invalid.
  // pair: (number of extra pairs, their total persistence); {-1, 0} if the
  // step is invalid.  Steps are accepted on a strict lexicographic decrease,
  // so a step may trade an extra pair for an easier one of the same count.
  // Score of a state: the persistences of its extra pairs, sorted
  // descending; an empty score means the diagram matches the target.  States
  // that lose a target key or gain an inadmissible extra are invalid.
  using Score = std::vector<double>;
  const Score invalid{std::numeric_limits<double>::infinity()};
  auto extras = [&](const std::vector<PairKey>& keys) -> Score {
    std::vector<PairKey> extra;
    std::set_difference(keys.begin(), keys.end(), target.begin(), target.end(),
                        std::back_inserter(extra));
    if (keys.size() - extra.size() != target.size()) return invalid;  // target not contained
    Score score;
    for (const PairKey& k : extra) {
      if (std::get<2>(k) == static_cast<int>(PairKind::Essential)) return invalid;
      const double p = std::get<1>(k) - std::get<0>(k);
      if (p > epsilon) return invalid;
      score.push_back(p);
    }
    std::sort(score.begin(), score.end(), std::greater<double>());
    return score;
  };
  // Accept a step when the extras strictly drop in the multiset ordering:
  // compared largest-first, trading an extra for any number of strictly
  // smaller ones counts as progress.  All assigned values come from the
  // finite original value set, so this descent terminates.
  auto improves = [&](const Score& after, const Score& before) {
    if (after == invalid) return false;
    if (std::lexicographical_compare(after.begin(), after.end(), before.begin(),
                                     before.end())) {
      return true;
    }
    const double after_total = std::accumulate(after.begin(), after.end(), 0.0);
    const double before_total = std::accumulate(before.begin(), before.end(), 0.0);
    if (after_total != before_total) return after_total < before_total;
    return after.size() < before.size();
  };

  // Greedy descent can dead-end when an early acceptance strands a pass
  // behind an undrainable barrier; retry the whole descent under different
  // candidate orderings before giving up.
  for (int strategy = 0; strategy < 4; ++strategy) {
  g = tf;
  bool stuck = false;
  for (size_t iter = 0; !stuck && iter <= initial_pairs + 1; ++iter) {
    respace_offsets(g);
    auto cands = collect_cancellations(g, true, epsilon);
    auto max_side = collect_cancellations(g, false, epsilon);
    cands.insert(cands.end(), max_side.begin(), max_side.end());
    if (cands.empty()) return g;
    std::sort(cands.begin(), cands.end(), [strategy](const Cancellation& a, const Cancellation& b) {
      if (a.persistence != b.persistence)
        return strategy == 3 ? a.persistence > b.persistence : a.persistence < b.persistence;
      if (a.saddle != b.saddle) return strategy == 2 ? a.saddle > b.saddle : a.saddle < b.saddle;
      return strategy == 1 ? !a.min_side && b.min_side : a.min_side && !b.min_side;
    });
    const Score before = extras(pair_keys(g));

    // Vertices carrying the birth or death value of a surviving pair must
    // not be moved.
    std::vector<char> keep(g.num_vertices(), 0);
    for (const auto& p : persistence_pairs(g)) {
      if (p.kind == PairKind::Essential || p.persistence() > epsilon) {
        keep[p.birth_vertex] = 1;
        keep[p.death_vertex] = 1;
      }
    }
    // Protection is tied to the value a vertex held when keep was computed;
    // once a step has displaced that value the vertex anchors nothing.
    std::vector<double> keep_value(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) keep_value[v] = g.value(v);
    auto movable = [&](const Cancellation& c) {
      for (int v : c.basin) {
        if (keep[v]) return false;
      }
      return true;
    };

    // Fast path: fill every basin whose footprint is disjoint from the ones
    // already filled this sweep.
    TriangulatedField batch = g;
    std::vector<char> touched(g.num_vertices(), 0);
    for (const auto& c : cands) {
      bool clear = !touched[c.saddle];
      for (int v : c.basin) {
        if (touched[v]) clear = false;
      }
      if (!clear || !movable(c)) continue;
      if (!fill(batch, c)) continue;
      touched[c.saddle] = 1;
      for (int v : c.basin) touched[v] = 1;
    }
    if (within_budget(batch)) {
      const Score after = extras(pair_keys(batch));
      if (improves(after, before)) {
        g = std::move(batch);
        continue;
      }
    }

    // Restore one missing surviving pair on h: recreate its pass at the
    // exact lost value on a vertex at the edge of the displaced region, with
    // a monotone escape channel so the moved vertex is not critical.
    // Minimum vertex cut separating src from all sink vertices, where only
    // vertices with cuttable[v] may be removed. Vertex-split unit-capacity
    // max flow; gives up (empty result) past max_cut.
    auto min_vertex_cut = [](const TriangulatedField& h, const std::vector<char>& in_graph,
                             const std::vector<char>& cuttable, int src,
                             const std::vector<char>& sink, int max_cut) -> std::vector<int> {
      const int n = h.num_vertices();
      const int sink_node = 2 * n;
      const int inf = 1 << 28;
      struct FlowEdge {
        int to;
        int cap;
        int rev;
      };
      std::vector<std::vector<FlowEdge>> adj(2 * n + 1);
      auto add_edge = [&](int a, int b, int cap) {
        adj[a].push_back({b, cap, static_cast<int>(adj[b].size())});
        adj[b].push_back({a, 0, static_cast<int>(adj[a].size()) - 1});
      };
      for (int v = 0; v < n; ++v) {
        if (!in_graph[v]) continue;
        add_edge(2 * v, 2 * v + 1, cuttable[v] && v != src && !sink[v] ? 1 : inf);
        if (sink[v]) add_edge(2 * v + 1, sink_node, inf);
        for (int u : h.neighbors(v)) {
          if (in_graph[u]) add_edge(2 * v + 1, 2 * u, inf);
        }
      }
      // BFS augmenting paths; unit cut capacities keep the iteration count
      // at the cut size.
      int flow = 0;
      std::vector<int> prev_node(2 * n + 1), prev_edge(2 * n + 1);
      while (flow <= max_cut) {
        std::fill(prev_node.begin(), prev_node.end(), -2);
        prev_node[2 * src + 1] = -1;
        std::deque<int> bfs = {2 * src + 1};
        while (!bfs.empty() && prev_node[sink_node] == -2) {
          const int x = bfs.front();
          bfs.pop_front();
          for (size_t i = 0; i < adj[x].size(); ++i) {
            const FlowEdge& e = adj[x][i];
            if (e.cap > 0 && prev_node[e.to] == -2) {
              prev_node[e.to] = x;
              prev_edge[e.to] = static_cast<int>(i);
              bfs.push_back(e.to);
            }
          }
        }
        if (prev_node[sink_node] == -2) break;
        for (int x = sink_node; prev_node[x] != -1; x = prev_node[x]) {
          FlowEdge& e = adj[prev_node[x]][prev_edge[x]];
          e.cap -= 1;
          adj[x][e.rev].cap += 1;
        }
        ++flow;
      }
      if (flow > max_cut) return {};
      // Cut = cuttable vertices whose in-node is residual-reachable but
      // whose out-node is not.
      std::vector<char> reach(2 * n + 1, 0);
      reach[2 * src + 1] = 1;
      std::deque<int> bfs = {2 * src + 1};
      while (!bfs.empty()) {
        const int x = bfs.front();
        bfs.pop_front();
        for (const FlowEdge& e : adj[x]) {
          if (e.cap > 0 && !reach[e.to]) {
            reach[e.to] = 1;
            bfs.push_back(e.to);
          }
        }
      }
      std::vector<int> cut;
      for (int v = 0; v < n; ++v) {
        if (in_graph[v] && reach[2 * v] && !reach[2 * v + 1]) cut.push_back(v);
      }
      return cut;
    };
    // Returns 0 on failure, 1 when the missing-key count strictly dropped,
    // 2 when an equal-count sideways move was taken (a displaced key traded
    // for a different one, left for a later round).
    auto restore_pass = [&](TriangulatedField& h, bool allow_equal) -> int {
      const std::vector<PairKey> got = pair_keys(h);
      std::vector<PairKey> missing, surplus;
      std::set_difference(target.begin(), target.end(), got.begin(), got.end(),
                          std::back_inserter(missing));
      std::set_difference(got.begin(), got.end(), target.begin(), target.end(),
                          std::back_inserter(surplus));
      if (missing.empty()) return 0;
      const auto [mb, md, mkind] = missing[0];
      const bool split_pass = mkind == static_cast<int>(PairKind::SaddleMax);
      const double s = split_pass ? mb : md;     // the lost pass value
      const double peak = split_pass ? md : mb;  // the surviving extremum value
      // The displaced copy of the pair, if present, tells where the merge
      // happens now; the extremum's component just beyond that level is the
      // region that must be re-isolated down to the lost value.
      double level = s;
      for (const auto& e : surplus) {
        if (std::get<2>(e) != mkind) continue;
        if ((split_pass ? std::get<1>(e) : std::get<0>(e)) == peak) {
          level = split_pass ? std::get<0>(e) : std::get<1>(e);
        }
      }
      const int n = h.num_vertices();
      int pv = -1;
      for (int v = 0; v < n; ++v) {
        if (h.value(v) == peak) pv = v;
      }
      if (pv < 0) return 0;
      std::vector<char> kp(n, 0);
      for (int v = 0; v < n; ++v) kp[v] = keep[v] && h.value(v) == keep_value[v];
      std::vector<char> in_region(n, 0), near_region(n, 0);
      auto beyond = [&](int v) {
        return split_pass ? h.value(v) > level : h.value(v) < level;
      };
      std::deque<int> queue = {pv};
      in_region[pv] = 1;
      while (!queue.empty()) {
        const int x = queue.front();
        queue.pop_front();
        for (int u : h.neighbors(x)) {
          if (in_region[u]) continue;
          if (beyond(u)) {
            in_region[u] = 1;
            queue.push_back(u);
          } else {
            near_region[u] = 1;
          }
        }
      }
      // Candidate sites for the recreated pass: on or next to that region,
      // within budget of the lost value.
      std::vector<std::pair<double, int>> sites;
      for (int w = 0; w < n; ++w) {
        if (kp[w] || w == pv) continue;
        if (!in_region[w] && !near_region[w]) continue;
        if (std::abs(s - tf.value(w)) > epsilon) continue;
        sites.push_back({std::abs(s - h.value(w)), w});
      }
      std::sort(sites.begin(), sites.end());
      if (sites.size() > 16) sites.resize(16);
      TriangulatedField sideways = h;
      bool have_sideways = false;
      for (const auto& [site_cost, w] : sites) {
        TriangulatedField moved = h;
        moved.set_value(w, s);
        Cancellation drain{-1, w, 0.0, split_pass, {}};
        std::vector<std::vector<int>> channels = {{}};
        for (auto& ch : carve_channels(moved, tf, kp, drain, epsilon)) {
          channels.push_back(std::move(ch));
          if (channels.size() > 4) break;
        }
        for (const auto& channel : channels) {
          TriangulatedField repaired = moved;
          apply_channel(repaired, drain, channel);
          if (!within_budget(repaired)) continue;
          const std::vector<PairKey> rgot = pair_keys(repaired);
          std::vector<PairKey> rmissing;
          std::set_difference(target.begin(), target.end(), rgot.begin(), rgot.end(),
                              std::back_inserter(rmissing));
          if (rmissing.size() < missing.size()) {
            h = std::move(repaired);
            return 1;
          }
          if (!have_sideways && rmissing.size() == missing.size() && rmissing != missing) {
            sideways = repaired;
            have_sideways = true;
          }
        }
      }
      // Corridor repair: no single site suffices when the region touches the
      // rest along a wide front. Re-isolate the peak with a separating vertex
      // cut held at the lost value s, drained monotonically past s, so the
      // two sides meet exactly at s again.
      auto beyond_s = [&](double x) { return split_pass ? x > s : x < s; };
      auto past_s = [&](double x) { return split_pass ? x < s : x > s; };
      std::vector<char> in_graph(n, 0), cuttable(n, 0), sink(n, 0);
      for (int v = 0; v < n; ++v) {
        if (!beyond_s(h.value(v))) continue;
        in_graph[v] = 1;
        cuttable[v] = !kp[v] && std::abs(s - tf.value(v)) <= epsilon;
        sink[v] = split_pass ? h.value(v) > peak : h.value(v) < peak;
      }
      auto take_sideways = [&]() -> int {
        if (allow_equal && have_sideways) {
          h = std::move(sideways);
          return 2;
        }
        return 0;
      };
      // A corridor component with no monotone drain still works, at the cost
      // of one small extra pair rooted at its deepest vertex; prefer a fully
      // drained cut, retrying with undrained components excluded so the flow
      // can route elsewhere.
      bool have_candidate = false, candidate_drained = false;
      TriangulatedField candidate = h;
      std::vector<PairKey> candidate_missing;
      for (int attempt = 0; attempt < 3; ++attempt) {
        const std::vector<int> cut = min_vertex_cut(h, in_graph, cuttable, pv, sink, 12);
        if (cut.empty()) break;
        std::vector<char> lowered(n, 0);
        for (int v : cut) lowered[v] = 1;
        std::vector<int> undrained;
        std::vector<char> seen(n, 0);
        for (int v : cut) {
          if (seen[v]) continue;
          std::vector<int> comp;
          std::deque<int> walk = {v};
          seen[v] = 1;
          bool has_exit = false;
          while (!walk.empty()) {
            const int x = walk.front();
            walk.pop_front();
            comp.push_back(x);
            for (int u : h.neighbors(x)) {
              if (lowered[u] && !seen[u]) {
                seen[u] = 1;
                walk.push_back(u);
              } else if (!lowered[u] && past_s(h.value(u))) {
                has_exit = true;
              }
            }
          }
          if (has_exit) continue;
          // Cheapest monotone channel from the component past s.
          using QItem = std::pair<double, int>;
          std::priority_queue<QItem, std::vector<QItem>, std::greater<QItem>> heap;
          std::vector<double> dist(n, std::numeric_limits<double>::infinity());
          std::vector<int> from(n, -1);
          for (int x : comp) {
            dist[x] = 0.0;
            heap.push({0.0, x});
          }
          int exit_vertex = -1;
          while (!heap.empty() && exit_vertex < 0) {
            const auto [d, x] = heap.top();
            heap.pop();
            if (d > dist[x]) continue;
            for (int u : h.neighbors(x)) {
              if (lowered[u]) continue;
              if (past_s(h.value(u))) {
                exit_vertex = x;
                break;
              }
              if (!beyond_s(h.value(u)) || kp[u] ||
                  std::abs(s - tf.value(u)) > epsilon) {
                continue;
              }
              const double nd = d + std::abs(s - h.value(u));
              if (nd < dist[u]) {
                dist[u] = nd;
                from[u] = x;
                heap.push({nd, u});
              }
            }
          }
          if (exit_vertex < 0) {
            undrained.insert(undrained.end(), comp.begin(), comp.end());
            continue;
          }
          for (int x = exit_vertex; x >= 0 && !lowered[x]; x = from[x]) {
            lowered[x] = 1;
            seen[x] = 1;
          }
        }
        // Order the corridor by distance to its exits so every vertex keeps
        // a monotone link past s.
        std::vector<int> depth(n, -1);
        std::deque<int> bfs;
        for (int v = 0; v < n; ++v) {
          if (!lowered[v]) continue;
          for (int u : h.neighbors(v)) {
            if (!lowered[u] && past_s(h.value(u))) {
              depth[v] = 0;
              bfs.push_back(v);
              break;
            }
          }
        }
        int max_depth = 0;
        auto run_depth_bfs = [&]() {
          while (!bfs.empty()) {
            const int x = bfs.front();
            bfs.pop_front();
            max_depth = std::max(max_depth, depth[x]);
            for (int u : h.neighbors(x)) {
              if (lowered[u] && depth[u] < 0) {
                depth[u] = depth[x] + 1;
                bfs.push_back(u);
              }
            }
          }
        };
        run_depth_bfs();
        // Undrained components are rooted at an arbitrary member, which ends
        // up as their single extra critical point.
        for (int v = 0; v < n; ++v) {
          if (lowered[v] && depth[v] < 0) {
            depth[v] = max_depth + 1;
            bfs.push_back(v);
            run_depth_bfs();
          }
        }
        TriangulatedField carved = h;
        for (int v = 0; v < n; ++v) {
          if (!lowered[v]) continue;
          carved.set_value(v, s);
          carved.set_offset(v, split_pass ? depth[v] + 1 : max_depth - depth[v] + 1);
        }
        const bool drained = undrained.empty();
        if (within_budget(carved)) {
          const std::vector<PairKey> cgot = pair_keys(carved);
          std::vector<PairKey> cmissing;
          std::set_difference(target.begin(), target.end(), cgot.begin(), cgot.end(),
                              std::back_inserter(cmissing));
          const bool better =
              !have_candidate || cmissing.size() < candidate_missing.size() ||
              (cmissing.size() == candidate_missing.size() && drained && !candidate_drained);
          if (better) {
            candidate = std::move(carved);
            candidate_missing = std::move(cmissing);
            candidate_drained = drained;
            have_candidate = true;
          }
        }
        if (drained) break;
        for (int v : undrained) cuttable[v] = 0;
      }
      if (have_candidate) {
        if (candidate_missing.size() < missing.size()) {
          h = std::move(candidate);
          return 1;
        }
        if (!have_sideways && candidate_missing.size() == missing.size() &&
            candidate_missing != missing) {
          sideways = std::move(candidate);
          have_sideways = true;
        }
      }
      return take_sideways();
    };
    // A base step is committed if it improves the score, possibly after a
    // few rounds of restoring surviving pairs it displaced.
    auto consider = [&](TriangulatedField h) -> bool {
      if (!within_budget(h)) return false;
      int slack = 2;
      for (int round = 0; round < 8; ++round) {
        const Score after = extras(pair_keys(h));
        if (improves(after, before)) {
          g = std::move(h);
          return true;
        }
        const int step = restore_pass(h, slack > 0);
        if (step == 0) return false;
        if (step == 2) --slack;
      }
      return false;
    };

    // Slow path: single cancellations, carving where filling fails.
    bool accepted = false;
    for (const auto& c : cands) {
      TriangulatedField filled = g;
      if (fill(filled, c) && consider(std::move(filled))) {
        accepted = true;
        break;
      }
      size_t routes = 0;
      for (const auto& channel : carve_channels(g, tf, keep, c, epsilon)) {
        if (++routes > 8) break;
        TriangulatedField carved = g;
        apply_channel(carved, c, channel);
        if (consider(std::move(carved))) {
          accepted = true;
          break;
        }
      }
      if (accepted) break;
    }
    if (!accepted) {
      stuck = true;
    }
  }
  }
  throw ConvergenceFailure("simplify: cancellation did not converge");
}

}  // namespace hotopo
