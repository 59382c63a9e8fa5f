#include <algorithm>
#include <numeric>

#include "hotopo/errors.hpp"
#include "hotopo/topology.hpp"

namespace hotopo {

TriangulatedField::TriangulatedField(int dim, std::vector<std::array<double, 3>> positions,
                                     std::vector<std::vector<int>> cells,
                                     std::vector<double> values)
    : dim_(dim),
      positions_(std::move(positions)),
      cells_(std::move(cells)),
      values_(std::move(values)),
      offsets_(values_.size(), 0) {
  const int nv = num_vertices();
  if (positions_.size() != values_.size()) throw Error("field: positions/values size mismatch");
  if (nv == 0 || cells_.empty()) throw Error("field: empty complex");
  neighbors_.assign(nv, {});
  vertex_cells_.assign(nv, {});
  for (size_t c = 0; c < cells_.size(); ++c) {
    const auto& cell = cells_[c];
    if (static_cast<int>(cell.size()) != dim_ + 1) throw Error("field: cell arity mismatch");
    for (int v : cell) {
      if (v < 0 || v >= nv) throw Error("field: cell references invalid vertex");
      vertex_cells_[v].push_back(static_cast<int>(c));
    }
    for (size_t i = 0; i < cell.size(); ++i)
      for (size_t j = i + 1; j < cell.size(); ++j) {
        neighbors_[cell[i]].push_back(cell[j]);
        neighbors_[cell[j]].push_back(cell[i]);
      }
  }
  for (auto& n : neighbors_) {
    std::sort(n.begin(), n.end());
    n.erase(std::unique(n.begin(), n.end()), n.end());
  }
  for (int v = 0; v < nv; ++v) {
    if (vertex_cells_[v].empty()) throw Error("field: isolated vertex " + std::to_string(v));
  }
}

std::vector<int> TriangulatedField::sorted_vertices() const {
  std::vector<int> order(values_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [this](int a, int b) { return less(a, b); });
  return order;
}

TriangulatedField triangulate_grid(const ScalarGrid& g) {
  g.validate();
  if (g.nx < 2 || g.ny < 2 || (g.dim == 3 && g.nz < 2)) {
    throw DegenerateGrid("triangulate: need at least 2 nodes per axis");
  }
  std::vector<std::array<double, 3>> pos(g.size());
  const int nz = g.dim == 3 ? g.nz : 1;
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i)
        pos[g.index(i, j, k)] = {g.x0 + i * g.dx, g.y0 + j * g.dy, g.z0 + k * g.dz};
  std::vector<std::vector<int>> cells;
  if (g.dim == 2) {
    // Freudenthal: split each cell along the (i,j) -> (i+1,j+1) diagonal.
    for (int j = 0; j + 1 < g.ny; ++j)
      for (int i = 0; i + 1 < g.nx; ++i) {
        const int a = static_cast<int>(g.index(i, j));
        const int b = static_cast<int>(g.index(i + 1, j));
        const int c = static_cast<int>(g.index(i + 1, j + 1));
        const int d = static_cast<int>(g.index(i, j + 1));
        cells.push_back({a, b, c});
        cells.push_back({a, c, d});
      }
  } else {
    // Kuhn: 6 tetrahedra per cube sharing the main diagonal v000 -> v111,
    // one per permutation of the axis steps.
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                    {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (int k = 0; k + 1 < g.nz; ++k)
      for (int j = 0; j + 1 < g.ny; ++j)
        for (int i = 0; i + 1 < g.nx; ++i) {
          for (const auto& perm : perms) {
            int x = i, y = j, z = k;
            std::vector<int> tet{static_cast<int>(g.index(x, y, z))};
            for (int step = 0; step < 3; ++step) {
              if (perm[step] == 0) ++x;
              if (perm[step] == 1) ++y;
              if (perm[step] == 2) ++z;
              tet.push_back(static_cast<int>(g.index(x, y, z)));
            }
            cells.push_back(std::move(tet));
          }
        }
  }
  return TriangulatedField(g.dim, std::move(pos), std::move(cells), g.values);
}

TriangulatedField triangulate_plfield(const PLField& f) {
  std::vector<std::array<double, 3>> pos(f.vertices.size());
  for (size_t i = 0; i < f.vertices.size(); ++i) pos[i] = {f.vertices[i][0], f.vertices[i][1], 0.0};
  std::vector<std::vector<int>> cells;
  cells.reserve(f.triangles.size());
  for (const auto& t : f.triangles) cells.push_back({t[0], t[1], t[2]});
  return TriangulatedField(2, std::move(pos), std::move(cells), f.values);
}

}  // namespace hotopo
