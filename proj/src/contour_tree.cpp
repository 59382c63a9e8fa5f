#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <limits>
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

// Augmented merge trees (Carr-Snoeyink).  In the join tree every vertex has
// at most one up-neighbour (the vertex its sublevel component merged into)
// and a list of down-neighbours; the split tree is the mirror image.
struct MergeTrees {
  std::vector<int> jt_up;                 // -1 for the global maximum
  std::vector<std::vector<int>> jt_down;  // components merging at the vertex
  std::vector<int> st_down;               // -1 for the global minimum
  std::vector<std::vector<int>> st_up;
};

MergeTrees build_merge_trees(const TriangulatedField& tf) {
  const int n = tf.num_vertices();
  MergeTrees mt;
  mt.jt_up.assign(n, -1);
  mt.jt_down.assign(n, {});
  mt.st_down.assign(n, -1);
  mt.st_up.assign(n, {});
  {
    std::vector<int> order = tf.sorted_vertices();
    std::vector<char> seen(n, 0);
    UnionFind uf(n);
    std::vector<int> top(n, -1);  // highest vertex of each component
    for (int v : order) {
      std::vector<int> roots;
      for (int u : tf.neighbors(v)) {
        if (!seen[u]) continue;
        const int r = uf.find(u);
        if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
      }
      seen[v] = 1;
      for (int r : roots) {
        mt.jt_up[top[r]] = v;
        mt.jt_down[v].push_back(top[r]);
        uf.unite(r, v);
      }
      top[uf.find(v)] = v;
    }
  }
  {
    std::vector<int> order = tf.sorted_vertices();
    std::reverse(order.begin(), order.end());
    std::vector<char> seen(n, 0);
    UnionFind uf(n);
    std::vector<int> bottom(n, -1);
    for (int v : order) {
      std::vector<int> roots;
      for (int u : tf.neighbors(v)) {
        if (!seen[u]) continue;
        const int r = uf.find(u);
        if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
      }
      seen[v] = 1;
      for (int r : roots) {
        mt.st_down[bottom[r]] = v;
        mt.st_up[v].push_back(bottom[r]);
        uf.unite(r, v);
      }
      bottom[uf.find(v)] = v;
    }
  }
  return mt;
}

}  // namespace

ContourTree contour_tree(const TriangulatedField& tf) {
  const int n = tf.num_vertices();
  MergeTrees mt = build_merge_trees(tf);

  // Degree bookkeeping for the leaf-pruning merge.  A vertex is reducible
  // when jt_down-degree + st_up-degree == 1 (an upper or lower leaf).
  std::vector<int> jt_down_deg(n), st_up_deg(n);
  for (int v = 0; v < n; ++v) {
    jt_down_deg[v] = static_cast<int>(mt.jt_down[v].size());
    st_up_deg[v] = static_cast<int>(mt.st_up[v].size());
  }
  std::vector<char> removed(n, 0);
  std::deque<int> queue;
  for (int v = 0; v < n; ++v) {
    if (jt_down_deg[v] + st_up_deg[v] == 1) queue.push_back(v);
  }

  // Augmented contour tree adjacency.  Every pruned vertex records the edge
  // it created; that edge later decides which reduced arc the vertex joins.
  std::vector<std::vector<int>> ct_adj(n);
  std::vector<int> owned_partner(n, -1);

  auto jt_remove = [&](int v) {
    // v has at most one down and one up arc here (regular or leaf in JT).
    const int up = mt.jt_up[v];
    int down = -1;
    if (!mt.jt_down[v].empty()) down = mt.jt_down[v][0];
    if (down >= 0) {
      mt.jt_up[down] = up;
      if (up >= 0) {
        std::replace(mt.jt_down[up].begin(), mt.jt_down[up].end(), v, down);
      }
    } else if (up >= 0) {
      auto& d = mt.jt_down[up];
      d.erase(std::remove(d.begin(), d.end(), v), d.end());
      jt_down_deg[up] = static_cast<int>(d.size());
    }
    mt.jt_down[v].clear();
    mt.jt_up[v] = -1;
  };
  auto st_remove = [&](int v) {
    const int down = mt.st_down[v];
    int up = -1;
    if (!mt.st_up[v].empty()) up = mt.st_up[v][0];
    if (up >= 0) {
      mt.st_down[up] = down;
      if (down >= 0) {
        std::replace(mt.st_up[down].begin(), mt.st_up[down].end(), v, up);
      }
    } else if (down >= 0) {
      auto& u = mt.st_up[down];
      u.erase(std::remove(u.begin(), u.end(), v), u.end());
      st_up_deg[down] = static_cast<int>(u.size());
    }
    mt.st_up[v].clear();
    mt.st_down[v] = -1;
  };

  int remaining = n;
  while (!queue.empty() && remaining > 1) {
    const int v = queue.front();
    queue.pop_front();
    if (removed[v]) continue;
    if (jt_down_deg[v] + st_up_deg[v] != 1) continue;
    int partner;
    if (st_up_deg[v] == 0) {
      // Upper leaf: arc to the vertex below it in the split tree.
      partner = mt.st_down[v];
      if (partner < 0) break;  // only one vertex left in this direction
      st_remove(v);
      jt_remove(v);
    } else {
      // Lower leaf: arc to the vertex above it in the join tree.
      partner = mt.jt_up[v];
      if (partner < 0) break;
      jt_remove(v);
      st_remove(v);
    }
    owned_partner[v] = partner;
    ct_adj[v].push_back(partner);
    ct_adj[partner].push_back(v);
    removed[v] = 1;
    --remaining;
    if (!removed[partner] && jt_down_deg[partner] + st_up_deg[partner] == 1) {
      queue.push_back(partner);
    }
  }
  if (remaining != 1) {
    throw NotSimplyConnected("contour tree: join/split merge did not consume all vertices");
  }

  // Reduce: contour-tree nodes are the vertices of degree != 2; every
  // degree-2 chain becomes one arc and labels its interior vertices.
  ContourTree tree;
  std::vector<int> node_of(n, -1);
  for (int v = 0; v < n; ++v) {
    if (ct_adj[v].size() != 2) {
      node_of[v] = static_cast<int>(tree.nodes.size());
      tree.nodes.push_back({v, tf.value(v), ct_adj[v].size() == 1});
    }
  }
  tree.vertex_arc.assign(n, -1);
  std::vector<char> arc_done(n, 0);
  std::map<std::pair<int, int>, int> direct_arc;  // node-node edges by vertex id
  for (int v = 0; v < n; ++v) {
    if (node_of[v] < 0) continue;
    for (int start : ct_adj[v]) {
      // Walk the chain leaving v through start.
      int prev = v, cur = start;
      std::vector<int> chain;
      while (node_of[cur] < 0) {
        chain.push_back(cur);
        const auto& adj = ct_adj[cur];
        const int next = adj[0] == prev ? adj[1] : adj[0];
        prev = cur;
        cur = next;
      }
      // Each chain is seen from both ends; keep the first visit.
      if (!chain.empty() && arc_done[chain.front()]) continue;
      if (chain.empty() && v > cur) continue;  // direct node-node arc, dedup
      const int arc_id = static_cast<int>(tree.arcs.size());
      const bool v_upper = tf.less(cur, v);
      tree.arcs.push_back({v_upper ? node_of[v] : node_of[cur],
                           v_upper ? node_of[cur] : node_of[v],
                           static_cast<int>(chain.size())});
      if (chain.empty()) direct_arc[{std::min(v, cur), std::max(v, cur)}] = arc_id;
      for (int c : chain) {
        tree.vertex_arc[c] = arc_id;
        arc_done[c] = 1;
      }
    }
  }
  // A node vertex joins the arc holding the edge it created during the merge
  // (the root, which never got pruned, takes any incident edge).  Every arc
  // owns at least one edge, so no segment comes out empty.
  auto edge_arc = [&](int a, int b) {
    if (node_of[a] < 0) return tree.vertex_arc[a];
    if (node_of[b] < 0) return tree.vertex_arc[b];
    return direct_arc.at({std::min(a, b), std::max(a, b)});
  };
  for (int v = 0; v < n; ++v) {
    if (node_of[v] < 0) continue;
    const int p = owned_partner[v] >= 0 ? owned_partner[v] : ct_adj[v][0];
    tree.vertex_arc[v] = edge_arc(v, p);
  }
  // Arc vertex sets need not be edge-connected in the complex (a contour
  // cylinder can thread through triangle interiors).  Keep each arc's largest
  // component as its anchor and reattach the stray vertices to whichever
  // anchored segment reaches them first, so every segment is connected.
  {
    const int num_arcs = static_cast<int>(tree.arcs.size());
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> comp_members;
    for (int v = 0; v < n; ++v) {
      if (comp[v] >= 0) continue;
      const int c = static_cast<int>(comp_members.size());
      comp_members.push_back({});
      std::vector<int> stack{v};
      comp[v] = c;
      while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        comp_members[c].push_back(u);
        for (int w : tf.neighbors(u)) {
          if (comp[w] < 0 && tree.vertex_arc[w] == tree.vertex_arc[v]) {
            comp[w] = c;
            stack.push_back(w);
          }
        }
      }
    }
    std::vector<int> anchor(num_arcs, -1);  // component id kept per arc
    for (int c = 0; c < static_cast<int>(comp_members.size()); ++c) {
      const int a = tree.vertex_arc[comp_members[c][0]];
      if (anchor[a] < 0 ||
          comp_members[c].size() > comp_members[anchor[a]].size()) {
        anchor[a] = c;
      }
    }
    std::deque<int> bfs;
    std::vector<char> settled(n, 0);
    for (int v = 0; v < n; ++v) {
      if (anchor[tree.vertex_arc[v]] == comp[v]) {
        settled[v] = 1;
        bfs.push_back(v);
      }
    }
    while (!bfs.empty()) {
      const int v = bfs.front();
      bfs.pop_front();
      for (int u : tf.neighbors(v)) {
        if (!settled[u]) {
          settled[u] = 1;
          tree.vertex_arc[u] = tree.vertex_arc[v];
          bfs.push_back(u);
        }
      }
    }
  }
  for (auto& arc : tree.arcs) {
    arc.num_vertices = 0;
  }
  for (int v = 0; v < n; ++v) {
    if (tree.vertex_arc[v] >= 0) ++tree.arcs[tree.vertex_arc[v]].num_vertices;
  }
  return tree;
}

Segmentation segmentation(const ContourTree& tree, const TriangulatedField& tf) {
  Segmentation seg;
  seg.labels = tree.vertex_arc;
  seg.segments.reserve(tree.arcs.size());
  for (size_t a = 0; a < tree.arcs.size(); ++a) {
    const auto& arc = tree.arcs[a];
    Segmentation::Segment s;
    s.arc = static_cast<int>(a);
    s.size = arc.num_vertices;
    const bool upper_leaf = tree.nodes[arc.upper_node].is_leaf;
    const bool lower_leaf = tree.nodes[arc.lower_node].is_leaf;
    s.leaf = upper_leaf || lower_leaf;
    s.extremum_value = upper_leaf   ? tree.nodes[arc.upper_node].value
                       : lower_leaf ? tree.nodes[arc.lower_node].value
                                    : std::numeric_limits<double>::quiet_NaN();
    s.depth = -1;
    seg.segments.push_back(s);
  }
  // Arc distance to the nearest leaf arc (arcs adjacent when they share a
  // node).
  std::vector<std::vector<int>> node_arcs(tree.nodes.size());
  for (size_t a = 0; a < tree.arcs.size(); ++a) {
    node_arcs[tree.arcs[a].upper_node].push_back(static_cast<int>(a));
    node_arcs[tree.arcs[a].lower_node].push_back(static_cast<int>(a));
  }
  std::deque<int> queue;
  for (auto& s : seg.segments) {
    if (s.leaf) {
      s.depth = 0;
      queue.push_back(s.arc);
    }
  }
  while (!queue.empty()) {
    const int a = queue.front();
    queue.pop_front();
    for (int node : {tree.arcs[a].upper_node, tree.arcs[a].lower_node}) {
      for (int b : node_arcs[node]) {
        if (seg.segments[b].depth < 0) {
          seg.segments[b].depth = seg.segments[a].depth + 1;
          queue.push_back(b);
        }
      }
    }
  }
  (void)tf;
  return seg;
}

}  // namespace hotopo
