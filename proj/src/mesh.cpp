#include "hotopo/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "hotopo/errors.hpp"

namespace hotopo {

namespace {

double polygon_area(const std::vector<Vec2>& verts, const std::vector<int>& idx) {
  double a = 0.0;
  const int n = static_cast<int>(idx.size());
  for (int i = 0; i < n; ++i) {
    const Vec2& p = verts[idx[i]];
    const Vec2& q = verts[idx[(i + 1) % n]];
    a += cross(p, q);
  }
  return 0.5 * a;
}

}  // namespace

Mesh::Mesh(std::vector<Vec2> vertices, std::vector<Element> elements)
    : vertices_(std::move(vertices)), elements_(std::move(elements)) {
  validate();
  for (const Vec2& p : vertices_) bounds_.expand(p);
  elem_bounds_.resize(elements_.size());
  longest_edge_.resize(elements_.size());
  for (size_t e = 0; e < elements_.size(); ++e) {
    const auto& el = elements_[e];
    double longest = 0.0;
    const int n = static_cast<int>(el.v.size());
    for (int i = 0; i < n; ++i) {
      elem_bounds_[e].expand(vertices_[el.v[i]]);
      longest = std::max(longest, norm(vertices_[el.v[(i + 1) % n]] - vertices_[el.v[i]]));
    }
    longest_edge_[e] = longest;
  }
  build_adjacency();
  build_buckets();
}

void Mesh::validate() const {
  const int nv = static_cast<int>(vertices_.size());
  if (nv < 3 || elements_.empty()) throw Error("mesh: too few vertices or elements");
  for (size_t e = 0; e < elements_.size(); ++e) {
    const auto& el = elements_[e];
    const size_t want = el.kind == ElementKind::Triangle ? 3 : 4;
    if (el.v.size() != want) throw Error("mesh: element " + std::to_string(e) + " has wrong vertex count");
    for (int vi : el.v) {
      if (vi < 0 || vi >= nv) throw Error("mesh: element " + std::to_string(e) + " references invalid vertex");
    }
    if (polygon_area(vertices_, el.v) <= 0.0) {
      throw Error("mesh: element " + std::to_string(e) + " is degenerate or not CCW");
    }
  }
}

void Mesh::build_adjacency() {
  vertex_elems_.assign(vertices_.size(), {});
  for (size_t e = 0; e < elements_.size(); ++e) {
    const auto& el = elements_[e];
    const int n = static_cast<int>(el.v.size());
    for (int i = 0; i < n; ++i) {
      vertex_elems_[el.v[i]].push_back(static_cast<int>(e));
      int a = el.v[i], b = el.v[(i + 1) % n];
      if (a > b) std::swap(a, b);
      edge_elems_[{a, b}].push_back(static_cast<int>(e));
    }
  }
  for (const auto& [edge, elems] : edge_elems_) {
    if (elems.size() > 2) {
      throw Error("mesh: edge shared by more than two elements");
    }
  }
}

const std::vector<int>& Mesh::edge_elements(int a, int b) const {
  static const std::vector<int> empty;
  if (a > b) std::swap(a, b);
  auto it = edge_elems_.find({a, b});
  return it == edge_elems_.end() ? empty : it->second;
}

void Mesh::build_buckets() {
  const int n = num_elements();
  const int nb = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(n))));
  nbx_ = nby_ = nb;
  bdx_ = std::max(bounds_.xmax - bounds_.xmin, 1e-300) / nbx_;
  bdy_ = std::max(bounds_.ymax - bounds_.ymin, 1e-300) / nby_;
  buckets_.assign(static_cast<size_t>(nbx_) * nby_, {});
  for (int e = 0; e < n; ++e) {
    const BBox& bb = elem_bounds_[e];
    int i0 = std::clamp(static_cast<int>((bb.xmin - bounds_.xmin) / bdx_), 0, nbx_ - 1);
    int i1 = std::clamp(static_cast<int>((bb.xmax - bounds_.xmin) / bdx_), 0, nbx_ - 1);
    int j0 = std::clamp(static_cast<int>((bb.ymin - bounds_.ymin) / bdy_), 0, nby_ - 1);
    int j1 = std::clamp(static_cast<int>((bb.ymax - bounds_.ymin) / bdy_), 0, nby_ - 1);
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i) buckets_[static_cast<size_t>(j) * nbx_ + i].push_back(e);
  }
}

std::vector<int> Mesh::candidates(const BBox& query) const {
  int i0 = std::clamp(static_cast<int>((query.xmin - bounds_.xmin) / bdx_), 0, nbx_ - 1);
  int i1 = std::clamp(static_cast<int>((query.xmax - bounds_.xmin) / bdx_), 0, nbx_ - 1);
  int j0 = std::clamp(static_cast<int>((query.ymin - bounds_.ymin) / bdy_), 0, nby_ - 1);
  int j1 = std::clamp(static_cast<int>((query.ymax - bounds_.ymin) / bdy_), 0, nby_ - 1);
  std::vector<int> out;
  for (int j = j0; j <= j1; ++j)
    for (int i = i0; i <= i1; ++i) {
      const auto& b = buckets_[static_cast<size_t>(j) * nbx_ + i];
      out.insert(out.end(), b.begin(), b.end());
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Vec2 Mesh::to_reference(int e, const Vec2& p) const {
  const auto& el = elements_[e];
  if (el.kind == ElementKind::Triangle) {
    const Vec2& v0 = vertices_[el.v[0]];
    const Vec2 a = vertices_[el.v[1]] - v0;
    const Vec2 b = vertices_[el.v[2]] - v0;
    const double det = cross(a, b);
    const Vec2 d = p - v0;
    return {cross(d, b) / det, cross(a, d) / det};
  }
  // Bilinear inverse by Newton iteration.
  Vec2 ref{0.5, 0.5};
  for (int it = 0; it < 30; ++it) {
    const Vec2 x = from_reference(e, ref);
    const Vec2 r = x - p;
    double J[4];
    jacobian(e, ref, J);
    const double det = J[0] * J[3] - J[1] * J[2];
    const double dr = (J[3] * r.x - J[1] * r.y) / det;
    const double ds = (-J[2] * r.x + J[0] * r.y) / det;
    ref.x -= dr;
    ref.y -= ds;
    if (std::abs(dr) + std::abs(ds) < 1e-15) break;
  }
  return ref;
}

Vec2 Mesh::from_reference(int e, const Vec2& ref) const {
  const auto& el = elements_[e];
  const double r = ref.x, s = ref.y;
  if (el.kind == ElementKind::Triangle) {
    const Vec2& v0 = vertices_[el.v[0]];
    return v0 + (vertices_[el.v[1]] - v0) * r + (vertices_[el.v[2]] - v0) * s;
  }
  const Vec2& v0 = vertices_[el.v[0]];
  const Vec2& v1 = vertices_[el.v[1]];
  const Vec2& v2 = vertices_[el.v[2]];
  const Vec2& v3 = vertices_[el.v[3]];
  return v0 * ((1 - r) * (1 - s)) + v1 * (r * (1 - s)) + v2 * (r * s) + v3 * ((1 - r) * s);
}

void Mesh::jacobian(int e, const Vec2& ref, double J[4]) const {
  const auto& el = elements_[e];
  if (el.kind == ElementKind::Triangle) {
    const Vec2& v0 = vertices_[el.v[0]];
    const Vec2 a = vertices_[el.v[1]] - v0;
    const Vec2 b = vertices_[el.v[2]] - v0;
    J[0] = a.x;
    J[1] = b.x;
    J[2] = a.y;
    J[3] = b.y;
    return;
  }
  const double r = ref.x, s = ref.y;
  const Vec2& v0 = vertices_[el.v[0]];
  const Vec2& v1 = vertices_[el.v[1]];
  const Vec2& v2 = vertices_[el.v[2]];
  const Vec2& v3 = vertices_[el.v[3]];
  const Vec2 dr = (v1 - v0) * (1 - s) + (v2 - v3) * s;
  const Vec2 ds = (v3 - v0) * (1 - r) + (v2 - v1) * r;
  J[0] = dr.x;
  J[1] = ds.x;
  J[2] = dr.y;
  J[3] = ds.y;
}

bool Mesh::reference_inside(int e, const Vec2& ref, double tol) const {
  if (elements_[e].kind == ElementKind::Triangle) {
    return ref.x >= -tol && ref.y >= -tol && 1.0 - ref.x - ref.y >= -tol;
  }
  return ref.x >= -tol && ref.x <= 1.0 + tol && ref.y >= -tol && ref.y <= 1.0 + tol;
}

bool Mesh::contains(int e, const Vec2& p, double tol) const {
  const BBox& bb = elem_bounds_[e];
  const double pad = 1e-9 * (1.0 + std::max(bb.xmax - bb.xmin, bb.ymax - bb.ymin));
  if (p.x < bb.xmin - pad || p.x > bb.xmax + pad || p.y < bb.ymin - pad || p.y > bb.ymax + pad) {
    return false;
  }
  return reference_inside(e, to_reference(e, p), tol);
}

int Mesh::locate(const Vec2& p) const {
  BBox q;
  q.expand(p);
  for (int e : candidates(q)) {
    if (contains(e, p)) return e;
  }
  // Bucket miss can happen right at bucket borders; fall back to a full scan
  // before reporting failure.
  for (int e = 0; e < num_elements(); ++e) {
    if (contains(e, p)) return e;
  }
  throw PointOutsideMesh("point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                         ") is outside the mesh");
}

Mesh make_demo_mesh(int nx, int ny, double jitter, std::uint64_t seed, bool triangles) {
  if (nx < 1 || ny < 1) throw InvalidSpec("demo mesh: grid must be at least 1x1");
  if (jitter < 0.0 || jitter >= 0.3) throw InvalidSpec("demo mesh: jitter must be in [0, 0.3)");
  const double hx = 1.0 / nx, hy = 1.0 / ny;
  std::vector<Vec2> verts;
  verts.reserve(static_cast<size_t>(nx + 1) * (ny + 1));
  std::mt19937_64 rng(seed);
  auto unit = [&rng]() {
    // 53-bit mantissa draw; mt19937_64's output sequence is pinned by the
    // standard, so meshes are reproducible across platforms.
    return static_cast<double>(rng() >> 11) * 0x1p-53;
  };
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      Vec2 p{i * hx, j * hy};
      if (i > 0 && i < nx && j > 0 && j < ny && jitter > 0.0) {
        p.x += (2.0 * unit() - 1.0) * jitter * hx;
        p.y += (2.0 * unit() - 1.0) * jitter * hy;
      }
      verts.push_back(p);
    }
  }
  auto vid = [nx](int i, int j) { return j * (nx + 1) + i; };
  std::vector<Element> elems;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
      if (triangles) {
        elems.push_back({ElementKind::Triangle, {a, b, c}});
        elems.push_back({ElementKind::Triangle, {a, c, d}});
      } else {
        elems.push_back({ElementKind::Quad, {a, b, c, d}});
      }
    }
  }
  return Mesh(std::move(verts), std::move(elems));
}

}  // namespace hotopo
