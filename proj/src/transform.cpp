#include "hotopo/transform.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "hotopo/errors.hpp"
#include "hotopo/parallel.hpp"

namespace hotopo {

namespace {

BBox effective_bbox(const Mesh& mesh, const GridSpec& spec) {
  if (spec.bbox) return *spec.bbox;
  BBox b = mesh.bounds();
  const double mx = 1e-9 * (b.xmax - b.xmin);
  const double my = 1e-9 * (b.ymax - b.ymin);
  b.xmin += mx;
  b.xmax -= mx;
  b.ymin += my;
  b.ymax -= my;
  return b;
}

ScalarGrid make_grid_shell(const BBox& b, int nx, int ny) {
  if (nx < 2 || ny < 2) throw Error("grid: resolution must be at least 2 per axis");
  ScalarGrid g;
  g.dim = 2;
  g.nx = nx;
  g.ny = ny;
  g.x0 = b.xmin;
  g.y0 = b.ymin;
  g.dx = (b.xmax - b.xmin) / (nx - 1);
  g.dy = (b.ymax - b.ymin) / (ny - 1);
  g.values.assign(g.size(), 0.0);
  return g;
}

}  // namespace

ScalarGrid sample_grid(const HighOrderField& field, const GridSpec& spec) {
  const Mesh& mesh = field.mesh();
  ScalarGrid g = make_grid_shell(effective_bbox(mesh, spec), spec.nx, spec.ny);
  parallel_for(static_cast<std::size_t>(g.ny), [&](std::size_t j) {
    for (int i = 0; i < g.nx; ++i) {
      const Vec2 p{g.x0 + i * g.dx, g.y0 + static_cast<int>(j) * g.dy};
      g.values[g.index(i, static_cast<int>(j))] = field.eval(p);
    }
  });
  return g;
}

namespace {

// Topological identity of a subdivision lattice point, so shared edge and
// corner vertices are emitted once and collect contributions from every
// incident original element.
struct VertexKey {
  int type;  // 0: original vertex, 1: edge point, 2: interior
  int a, b, c;

  bool operator<(const VertexKey& o) const {
    return std::tie(type, a, b, c) < std::tie(o.type, o.a, o.b, o.c);
  }
};

VertexKey classify_tri_point(const Element& el, int m, int i, int j) {
  // Lattice (i, j), i + j <= m, over reference triangle.
  const int k = m - i - j;
  if (i == 0 && j == 0) return {0, el.v[0], 0, 0};
  if (k == 0 && j == 0) return {0, el.v[1], 0, 0};
  if (i == 0 && k == 0) return {0, el.v[2], 0, 0};
  auto edge_key = [m](int va, int vb, int steps_from_a) -> VertexKey {
    if (va < vb) return {1, va, vb, steps_from_a};
    return {1, vb, va, m - steps_from_a};
  };
  if (j == 0) return edge_key(el.v[0], el.v[1], i);
  if (i == 0) return edge_key(el.v[0], el.v[2], j);
  if (k == 0) return edge_key(el.v[1], el.v[2], j);
  return {2, 0, 0, 0};  // interior; caller substitutes a unique id
}

VertexKey classify_quad_point(const Element& el, int m, int i, int j) {
  if (i == 0 && j == 0) return {0, el.v[0], 0, 0};
  if (i == m && j == 0) return {0, el.v[1], 0, 0};
  if (i == m && j == m) return {0, el.v[2], 0, 0};
  if (i == 0 && j == m) return {0, el.v[3], 0, 0};
  auto edge_key = [m](int va, int vb, int steps_from_a) -> VertexKey {
    if (va < vb) return {1, va, vb, steps_from_a};
    return {1, vb, va, m - steps_from_a};
  };
  if (j == 0) return edge_key(el.v[0], el.v[1], i);
  if (i == m) return edge_key(el.v[1], el.v[2], j);
  if (j == m) return edge_key(el.v[3], el.v[2], i);
  if (i == 0) return edge_key(el.v[0], el.v[3], j);
  return {2, 0, 0, 0};
}

}  // namespace

PLField subdivide(const HighOrderField& field, int m) {
  const Mesh& mesh = field.mesh();
  if (m <= 0) m = field.degree() + 1;
  PLField out;
  std::map<VertexKey, int> shared;
  std::vector<double> sums;
  std::vector<int> counts;

  auto emit_vertex = [&](int e, const Vec2& ref, VertexKey key) {
    int id;
    if (key.type == 2) {
      id = static_cast<int>(out.vertices.size());
      const Vec2 p = mesh.from_reference(e, ref);
      out.vertices.push_back({p.x, p.y});
      sums.push_back(0.0);
      counts.push_back(0);
    } else {
      auto it = shared.find(key);
      if (it == shared.end()) {
        id = static_cast<int>(out.vertices.size());
        const Vec2 p = key.type == 0 ? mesh.vertex(key.a) : mesh.from_reference(e, ref);
        out.vertices.push_back({p.x, p.y});
        sums.push_back(0.0);
        counts.push_back(0);
        shared.emplace(key, id);
      } else {
        id = it->second;
      }
    }
    sums[id] += field.eval_reference(e, ref);
    counts[id] += 1;
    return id;
  };

  for (int e = 0; e < mesh.num_elements(); ++e) {
    const Element& el = mesh.element(e);
    if (el.kind == ElementKind::Triangle) {
      // Lattice ids for this element's pass.
      std::vector<int> ids(static_cast<size_t>(m + 1) * (m + 1), -1);
      auto lid = [m](int i, int j) { return j * (m + 1) + i; };
      for (int j = 0; j <= m; ++j) {
        for (int i = 0; i + j <= m; ++i) {
          const Vec2 ref{static_cast<double>(i) / m, static_cast<double>(j) / m};
          ids[lid(i, j)] = emit_vertex(e, ref, classify_tri_point(el, m, i, j));
        }
      }
      for (int j = 0; j < m; ++j) {
        for (int i = 0; i + j < m; ++i) {
          out.triangles.push_back({ids[lid(i, j)], ids[lid(i + 1, j)], ids[lid(i, j + 1)]});
          if (i + j < m - 1) {
            out.triangles.push_back({ids[lid(i + 1, j)], ids[lid(i + 1, j + 1)], ids[lid(i, j + 1)]});
          }
        }
      }
    } else {
      std::vector<int> ids(static_cast<size_t>(m + 1) * (m + 1), -1);
      auto lid = [m](int i, int j) { return j * (m + 1) + i; };
      for (int j = 0; j <= m; ++j) {
        for (int i = 0; i <= m; ++i) {
          const Vec2 ref{static_cast<double>(i) / m, static_cast<double>(j) / m};
          ids[lid(i, j)] = emit_vertex(e, ref, classify_quad_point(el, m, i, j));
        }
      }
      for (int j = 0; j < m; ++j) {
        for (int i = 0; i < m; ++i) {
          // Diagonal from the lowest-local-index corner (i, j) to (i+1, j+1).
          out.triangles.push_back({ids[lid(i, j)], ids[lid(i + 1, j)], ids[lid(i + 1, j + 1)]});
          out.triangles.push_back({ids[lid(i, j)], ids[lid(i + 1, j + 1)], ids[lid(i, j + 1)]});
        }
      }
    }
  }
  out.values.resize(out.vertices.size());
  for (size_t i = 0; i < out.values.size(); ++i) out.values[i] = sums[i] / counts[i];
  return out;
}

ScalarGrid lsiac_grid(const HighOrderField& field, const GridSpec& spec, const LsiacOptions& opt) {
  const Mesh& mesh = field.mesh();
  ScalarGrid g = make_grid_shell(effective_bbox(mesh, spec), spec.nx, spec.ny);
  g.flags.assign(g.size(), 0);
  parallel_for(static_cast<std::size_t>(g.ny), [&](std::size_t row) {
    const int j = static_cast<int>(row);
    for (int i = 0; i < g.nx; ++i) {
      const Vec2 p{g.x0 + i * g.dx, g.y0 + j * g.dy};
      const std::size_t idx = g.index(i, j);
      try {
        g.values[idx] = lsiac_point(field, p, opt);
      } catch (const SupportExitsDomain&) {
        if (opt.deriv == 0) {
          g.values[idx] = field.eval(p);
        } else {
          const double th = opt.theta_deg * M_PI / 180.0;
          const Vec2 grad = field.gradient(p);
          g.values[idx] = std::cos(th) * grad.x + std::sin(th) * grad.y;
        }
        g.flags[idx] = 1;
      }
    }
  });
  return g;
}

ScalarGrid vorticity_grid_fd(const ScalarGrid& u, const ScalarGrid& v) {
  u.validate();
  v.validate();
  if (u.dim != 2 || v.dim != 2 || u.nx != v.nx || u.ny != v.ny || u.x0 != v.x0 ||
      u.y0 != v.y0 || u.dx != v.dx || u.dy != v.dy) {
    throw GridMismatch("vorticity: u and v grids must share resolution, origin, and spacing");
  }
  ScalarGrid w = u;
  w.flags.clear();
  auto ddx = [](const ScalarGrid& g, int i, int j) {
    if (i == 0) return (-3.0 * g.at(0, j) + 4.0 * g.at(1, j) - g.at(2, j)) / (2.0 * g.dx);
    if (i == g.nx - 1)
      return (3.0 * g.at(i, j) - 4.0 * g.at(i - 1, j) + g.at(i - 2, j)) / (2.0 * g.dx);
    return (g.at(i + 1, j) - g.at(i - 1, j)) / (2.0 * g.dx);
  };
  auto ddy = [](const ScalarGrid& g, int i, int j) {
    if (j == 0) return (-3.0 * g.at(i, 0) + 4.0 * g.at(i, 1) - g.at(i, 2)) / (2.0 * g.dy);
    if (j == g.ny - 1)
      return (3.0 * g.at(i, j) - 4.0 * g.at(i, j - 1) + g.at(i, j - 2)) / (2.0 * g.dy);
    return (g.at(i, j + 1) - g.at(i, j - 1)) / (2.0 * g.dy);
  };
  if (u.nx < 3 || u.ny < 3) throw GridMismatch("vorticity: need at least 3 nodes per axis");
  for (int j = 0; j < u.ny; ++j)
    for (int i = 0; i < u.nx; ++i) w.at(i, j) = ddx(v, i, j) - ddy(u, i, j);
  return w;
}

namespace {

struct TriGradient {
  Vec2 gu, gv;
  double area;
};

}  // namespace

PLField vorticity_subdivided(const PLField& u, const PLField& v) {
  if (u.vertices.size() != v.vertices.size() || u.triangles.size() != v.triangles.size()) {
    throw MeshMismatch("vorticity: u and v must live on the same simplicial mesh");
  }
  const size_t nv = u.vertices.size();
  std::vector<Vec2> gu(nv, {0.0, 0.0}), gv(nv, {0.0, 0.0});
  std::vector<double> wsum(nv, 0.0);
  for (size_t t = 0; t < u.triangles.size(); ++t) {
    const auto& tri = u.triangles[t];
    if (tri != v.triangles[t]) throw MeshMismatch("vorticity: triangle lists differ");
    const Vec2 p0{u.vertices[tri[0]][0], u.vertices[tri[0]][1]};
    const Vec2 p1{u.vertices[tri[1]][0], u.vertices[tri[1]][1]};
    const Vec2 p2{u.vertices[tri[2]][0], u.vertices[tri[2]][1]};
    const Vec2 e1 = p1 - p0, e2 = p2 - p0;
    const double det = cross(e1, e2);
    const double area = 0.5 * std::abs(det);
    auto grad = [&](const std::vector<double>& vals) -> Vec2 {
      const double d1 = vals[tri[1]] - vals[tri[0]];
      const double d2 = vals[tri[2]] - vals[tri[0]];
      return {(e2.y * d1 - e1.y * d2) / det, (-e2.x * d1 + e1.x * d2) / det};
    };
    const Vec2 tgu = grad(u.values), tgv = grad(v.values);
    for (int c = 0; c < 3; ++c) {
      gu[tri[c]] = gu[tri[c]] + tgu * area;
      gv[tri[c]] = gv[tri[c]] + tgv * area;
      wsum[tri[c]] += area;
    }
  }
  PLField out;
  out.vertices = u.vertices;
  out.triangles = u.triangles;
  out.values.resize(nv);
  for (size_t i = 0; i < nv; ++i) {
    out.values[i] = gv[i].x / wsum[i] - gu[i].y / wsum[i];
  }
  return out;
}

ScalarGrid vorticity_lsiac(const HighOrderField& u, const HighOrderField& v,
                           const GridSpec& spec, int k, int ell) {
  if (&u.mesh() != &v.mesh()) throw MeshMismatch("vorticity: u and v must share a mesh");
  ScalarGrid g = make_grid_shell(effective_bbox(u.mesh(), spec), spec.nx, spec.ny);
  g.flags.assign(g.size(), 0);
  LsiacOptions oy{k, ell, 90.0, 1, 0.0};
  LsiacOptions ox{k, ell, 0.0, 1, 0.0};
  parallel_for(static_cast<std::size_t>(g.ny), [&](std::size_t row) {
    const int j = static_cast<int>(row);
    for (int i = 0; i < g.nx; ++i) {
      const Vec2 p{g.x0 + i * g.dx, g.y0 + j * g.dy};
      const std::size_t idx = g.index(i, j);
      double uy, vx;
      bool fallback = false;
      try {
        uy = lsiac_point(u, p, oy);
      } catch (const SupportExitsDomain&) {
        uy = u.gradient(p).y;
        fallback = true;
      }
      try {
        vx = lsiac_point(v, p, ox);
      } catch (const SupportExitsDomain&) {
        vx = v.gradient(p).x;
        fallback = true;
      }
      g.values[idx] = vx - uy;
      g.flags[idx] = fallback ? 1 : 0;
    }
  });
  return g;
}

ScalarGrid normalize(const ScalarGrid& g) {
  g.validate();
  const auto [mn, mx] = std::minmax_element(g.values.begin(), g.values.end());
  if (*mx == *mn) throw ConstantField("normalize: field is constant");
  ScalarGrid out = g;
  const double scale = 1.0 / (*mx - *mn);
  for (double& v : out.values) v = (v - *mn) * scale;
  return out;
}

PLField normalize(const PLField& f) {
  if (f.values.empty()) throw Error("normalize: empty field");
  const auto [mn, mx] = std::minmax_element(f.values.begin(), f.values.end());
  if (*mx == *mn) throw ConstantField("normalize: field is constant");
  PLField out = f;
  const double scale = 1.0 / (*mx - *mn);
  for (double& v : out.values) v = (v - *mn) * scale;
  return out;
}

}  // namespace hotopo
