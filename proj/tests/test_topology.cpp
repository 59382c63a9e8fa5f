#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "helpers.hpp"
#include "hotopo/errors.hpp"
#include "hotopo/topology.hpp"

using namespace hotopo;
using hotopo_tests::brute_pairs;
using hotopo_tests::random_grid;

namespace {

// A path graph as a 1-complex: vertices on a line, edge cells between
// consecutive vertices.
TriangulatedField path_complex(const std::vector<double>& values) {
  const int n = static_cast<int>(values.size());
  std::vector<std::array<double, 3>> pos(n);
  for (int i = 0; i < n; ++i) pos[i] = {static_cast<double>(i), 0.0, 0.0};
  std::vector<std::vector<int>> cells;
  for (int i = 0; i + 1 < n; ++i) cells.push_back({i, i + 1});
  return TriangulatedField(1, std::move(pos), std::move(cells), values);
}

std::multiset<std::tuple<int, int, int>> pair_multiset(const std::vector<PersistencePair>& ps) {
  std::multiset<std::tuple<int, int, int>> out;
  for (const auto& p : ps) {
    out.insert({p.birth_vertex, p.death_vertex, static_cast<int>(p.kind)});
  }
  return out;
}

}  // namespace

TEST_CASE("grid triangulation structure") {
  ScalarGrid g = random_grid(4, 3, 1);
  TriangulatedField tf = triangulate_grid(g);
  CHECK(tf.num_vertices() == 12);
  CHECK(tf.cells().size() == 2 * 3 * 2);
  ScalarGrid bad = g;
  bad.nx = 1;
  bad.values.resize(3);
  CHECK_THROWS_AS(triangulate_grid(bad), DegenerateGrid);
}

TEST_CASE("critical points of a single interior bump") {
  // 5x5 grid, peak in the center, monotone towards the boundary.
  ScalarGrid g;
  g.nx = g.ny = 5;
  g.values.resize(25);
  for (int j = 0; j < 5; ++j)
    for (int i = 0; i < 5; ++i) g.at(i, j) = -(std::abs(i - 2) + std::abs(j - 2));
  TriangulatedField tf = triangulate_grid(g);
  auto cps = classify_critical_points(tf);
  int minima = 0, maxima = 0, saddles = 0;
  for (const auto& c : cps) {
    minima += c.type == CriticalType::Minimum;
    maxima += c.type == CriticalType::Maximum;
    saddles += c.type == CriticalType::Saddle ? c.multiplicity : 0;
  }
  CHECK(maxima == 1);
  CHECK(minima >= 1);
  // Euler relation for PL 2-fields with boundary handled by the pairing
  // counts instead; here just require the peak classification.
  bool peak_found = false;
  for (const auto& c : cps) {
    if (c.vertex == static_cast<int>(g.index(2, 2))) {
      peak_found = true;
      CHECK(c.type == CriticalType::Maximum);
      CHECK(c.index == 2);
    }
  }
  CHECK(peak_found);
}

TEST_CASE("path graph pairing") {
  TriangulatedField tf = path_complex({0, 2, 1, 3});
  auto pairs = persistence_pairs(tf);
  // One min-saddle pair (1, 2) and the essential (0, 3).
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].kind == PairKind::Essential);
  CHECK(pairs[0].birth_value == 0.0);
  CHECK(pairs[0].death_value == 3.0);
  CHECK(pairs[0].persistence() == 3.0);
  CHECK(pairs[1].kind == PairKind::MinSaddle);
  CHECK(pairs[1].birth_value == 1.0);
  CHECK(pairs[1].death_value == 2.0);
  CHECK(pairs[1].persistence() == 1.0);
}

TEST_CASE("pairing matches the brute-force sweep oracle") {
  for (int trial = 0; trial < 100; ++trial) {
    ScalarGrid g = random_grid(8, 8, 1000 + trial);
    TriangulatedField tf = triangulate_grid(g);
    auto pairs = persistence_pairs(tf);
    auto got = pair_multiset(pairs);
    std::multiset<std::tuple<int, int, int>> want;
    for (const auto& [b, d, k] : brute_pairs(tf)) want.insert({b, d, k});
    CHECK(got == want);
  }
}

TEST_CASE("pairing is a partial matching") {
  ScalarGrid g = random_grid(12, 12, 77);
  TriangulatedField tf = triangulate_grid(g);
  auto pairs = persistence_pairs(tf);
  std::set<int> used_births, used_deaths;
  int essential = 0, min_saddle = 0, saddle_max = 0;
  for (const auto& p : pairs) {
    CHECK(p.persistence() >= 0.0);
    if (p.kind == PairKind::MinSaddle) {
      CHECK(used_births.insert(p.birth_vertex).second);
      ++min_saddle;
    }
    if (p.kind == PairKind::SaddleMax) {
      CHECK(used_deaths.insert(p.death_vertex).second);
      ++saddle_max;
    }
    essential += p.kind == PairKind::Essential;
  }
  CHECK(essential == 1);
  int minima = 0, maxima = 0;
  for (const auto& c : classify_critical_points(tf)) {
    minima += c.type == CriticalType::Minimum;
    maxima += c.type == CriticalType::Maximum;
  }
  CHECK(min_saddle == minima - 1);
  CHECK(saddle_max == maxima - 1);
}

TEST_CASE("persistence curve conventions") {
  // Non-essential p = {1, 3} plus an essential pair of persistence 5; the
  // essential pair is counted once per sweep direction.
  std::vector<PersistencePair> pairs{
      {0, 0.0, 1, 1.0, PairKind::MinSaddle},
      {2, 0.0, 3, 3.0, PairKind::SaddleMax},
      {4, 0.0, 5, 5.0, PairKind::Essential},
  };
  auto curve = persistence_curve(pairs, {2.0});
  REQUIRE(curve.size() == 1);
  CHECK(curve[0].count_leq == 1);
  CHECK(curve[0].count_gt == 3);

  auto low = persistence_curve(pairs, {0.5});
  CHECK(low[0].count_gt == 4);  // below min persistence: everything survives
  CHECK(low[0].count_leq == 0);

  // Monotonicity across a sweep of thresholds.
  std::vector<double> taus;
  for (int i = 0; i <= 60; ++i) taus.push_back(0.1 * i);
  auto swept = persistence_curve(pairs, taus);
  for (size_t i = 1; i < swept.size(); ++i) {
    CHECK(swept[i].count_leq >= swept[i - 1].count_leq);
    CHECK(swept[i].count_gt <= swept[i - 1].count_gt);
  }
}

TEST_CASE("simplify with epsilon 0 is the identity") {
  ScalarGrid g = random_grid(10, 10, 5);
  TriangulatedField tf = triangulate_grid(g);
  TriangulatedField s = simplify(tf, 0.0);
  for (int v = 0; v < tf.num_vertices(); ++v) CHECK(s.value(v) == tf.value(v));
  CHECK(pair_multiset(persistence_pairs(s)) == pair_multiset(persistence_pairs(tf)));
}

TEST_CASE("simplification contract on random fields") {
  // Thresholds up to a quarter of the value range, the span the paper's use
  // of the method exercises.
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> eps_dist(0.0, 0.25);
  for (int trial = 0; trial < 100; ++trial) {
    ScalarGrid g = random_grid(32, 32, 5000 + trial);
    TriangulatedField tf = triangulate_grid(g);
    const double eps = eps_dist(rng);
    TriangulatedField s = simplify(tf, eps);
    double max_diff = 0;
    for (int v = 0; v < tf.num_vertices(); ++v) {
      max_diff = std::max(max_diff, std::abs(s.value(v) - tf.value(v)));
    }
    CHECK(max_diff <= eps + 1e-15);

    // Pairs of the simplified field = pairs of f with persistence > eps,
    // compared as (birth value, death value, kind) multisets.
    auto key = [](const PersistencePair& p) {
      return std::tuple<double, double, int>(p.birth_value, p.death_value,
                                             static_cast<int>(p.kind));
    };
    std::multiset<std::tuple<double, double, int>> want, got;
    for (const auto& p : persistence_pairs(tf)) {
      if (p.persistence() > eps || p.kind == PairKind::Essential) want.insert(key(p));
    }
    for (const auto& p : persistence_pairs(s)) got.insert(key(p));
    CHECK(want == got);
  }
}

TEST_CASE("contour tree of the W profile") {
  // The 1D profile [0, 2, 1, 3] extended constantly in y; ties broken by
  // index.  Two basins meet at a join saddle on the middle hump.  The hump
  // column itself carries a genuine maximum under the tie-break (its top
  // vertex has no higher neighbor), paired through a split saddle in the
  // valley, so the tree has four leaves.
  ScalarGrid g;
  g.nx = 4;
  g.ny = 3;
  const double col[4] = {0, 2, 1, 3};
  g.values.resize(g.size());
  for (int y = 0; y < g.ny; ++y) {
    for (int x = 0; x < g.nx; ++x) g.values[g.index(x, y)] = col[x];
  }
  TriangulatedField tf = triangulate_grid(g);
  ContourTree tree = contour_tree(tf);
  int leaves = 0, interior = 0;
  std::multiset<double> leaf_values, interior_values;
  for (const auto& n : tree.nodes) {
    leaves += n.is_leaf;
    interior += !n.is_leaf;
    (n.is_leaf ? leaf_values : interior_values).insert(n.value);
  }
  // 2 minima leaves, 2 maxima leaves (the peak and the hump ridge).
  CHECK(leaves == 4);
  CHECK(leaf_values == std::multiset<double>{0, 1, 2, 3});
  // Join saddle on the hump, split saddle in the valley.
  CHECK(interior == 2);
  CHECK(interior_values == std::multiset<double>{1, 2});
  CHECK(tree.arcs.size() == 5);
  // All vertices labeled.
  int labeled = 0;
  for (int a : tree.vertex_arc) labeled += a >= 0;
  CHECK(labeled == tf.num_vertices());
}

TEST_CASE("contour tree leaf set equals extrema") {
  for (int trial = 0; trial < 20; ++trial) {
    ScalarGrid g = random_grid(10, 10, 300 + trial);
    TriangulatedField tf = triangulate_grid(g);
    ContourTree tree = contour_tree(tf);
    std::set<int> leaf_vertices;
    std::map<int, int> node_degree;
    for (const auto& a : tree.arcs) {
      ++node_degree[a.upper_node];
      ++node_degree[a.lower_node];
    }
    for (size_t n = 0; n < tree.nodes.size(); ++n) {
      CHECK(tree.nodes[n].is_leaf == (node_degree[static_cast<int>(n)] == 1));
      if (tree.nodes[n].is_leaf) leaf_vertices.insert(tree.nodes[n].vertex);
    }
    std::set<int> extrema;
    for (const auto& c : classify_critical_points(tf)) {
      if (c.type == CriticalType::Minimum || c.type == CriticalType::Maximum) {
        extrema.insert(c.vertex);
      }
    }
    CHECK(leaf_vertices == extrema);
    // Tree: #arcs = #nodes - 1.
    CHECK(tree.arcs.size() == tree.nodes.size() - 1);
  }
}

TEST_CASE("segmentation of a monotone field is one segment") {
  ScalarGrid g;
  g.nx = g.ny = 6;
  g.values.resize(36);
  for (int j = 0; j < 6; ++j)
    for (int i = 0; i < 6; ++i) g.at(i, j) = i + 10.0 * j;
  TriangulatedField tf = triangulate_grid(g);
  ContourTree tree = contour_tree(tf);
  Segmentation seg = segmentation(tree, tf);
  CHECK(seg.segments.size() == 1);
  CHECK(seg.segments[0].size == 36);
  for (int l : seg.labels) CHECK(l == 0);
}

TEST_CASE("segments are connected") {
  for (int trial = 0; trial < 100; ++trial) {
    ScalarGrid g = random_grid(16, 16, 9000 + trial);
    TriangulatedField tf = triangulate_grid(g);
    ContourTree tree = contour_tree(tf);
    Segmentation seg = segmentation(tree, tf);
    REQUIRE(seg.labels.size() == static_cast<size_t>(tf.num_vertices()));
    int total = 0;
    for (const auto& s : seg.segments) total += s.size;
    CHECK(total == tf.num_vertices());
    // BFS connectivity of each label class.
    std::map<int, std::vector<int>> members;
    for (int v = 0; v < tf.num_vertices(); ++v) {
      CHECK(seg.labels[v] >= 0);
      members[seg.labels[v]].push_back(v);
    }
    CHECK(members.size() == seg.segments.size());
    for (const auto& [label, verts] : members) {
      std::set<int> in_class(verts.begin(), verts.end());
      std::set<int> visited{verts[0]};
      std::vector<int> stack{verts[0]};
      while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int u : tf.neighbors(v)) {
          if (in_class.count(u) && !visited.count(u)) {
            visited.insert(u);
            stack.push_back(u);
          }
        }
      }
      CHECK(visited.size() == in_class.size());
    }
  }
}

TEST_CASE("monotone transform invariance") {
  ScalarGrid g = random_grid(12, 12, 321);
  ScalarGrid h = g;
  for (auto& v : h.values) v = std::exp(2.0 * v) + 1.0;  // strictly monotone
  TriangulatedField tg = triangulate_grid(g);
  TriangulatedField th = triangulate_grid(h);

  auto cg = classify_critical_points(tg);
  auto ch = classify_critical_points(th);
  REQUIRE(cg.size() == ch.size());
  for (size_t i = 0; i < cg.size(); ++i) {
    CHECK(cg[i].vertex == ch[i].vertex);
    CHECK(cg[i].type == ch[i].type);
  }

  auto pg = pair_multiset(persistence_pairs(tg));
  auto ph = pair_multiset(persistence_pairs(th));
  CHECK(pg == ph);

  ContourTree rg = contour_tree(tg);
  ContourTree rh = contour_tree(th);
  CHECK(rg.vertex_arc == rh.vertex_arc);
}

TEST_CASE("constant field is rejected by the total order downstream") {
  // A constant field still has a valid total order (index tie-break); the
  // pairing degenerates to the essential pair only.
  ScalarGrid g;
  g.nx = g.ny = 4;
  g.values.assign(16, 1.0);
  TriangulatedField tf = triangulate_grid(g);
  auto pairs = persistence_pairs(tf);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].kind == PairKind::Essential);
  CHECK(pairs[0].persistence() == 0.0);
}

TEST_CASE("3d grid pairing agrees with the oracle") {
  for (int trial = 0; trial < 10; ++trial) {
    ScalarGrid g;
    g.dim = 3;
    g.nx = g.ny = g.nz = 4;
    std::mt19937_64 rng(400 + trial);
    std::uniform_real_distribution<double> dist(-1, 1);
    g.values.resize(g.size());
    for (auto& v : g.values) v = dist(rng);
    TriangulatedField tf = triangulate_grid(g);
    CHECK(tf.dim() == 3);
    auto got = pair_multiset(persistence_pairs(tf));
    std::multiset<std::tuple<int, int, int>> want;
    for (const auto& [b, d, k] : brute_pairs(tf)) want.insert({b, d, k});
    CHECK(got == want);
  }
}
