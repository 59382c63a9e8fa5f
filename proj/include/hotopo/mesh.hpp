#ifndef HOTOPO_MESH_HPP
#define HOTOPO_MESH_HPP

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "hotopo/geometry.hpp"

namespace hotopo {

enum class ElementKind { Triangle, Quad };

struct Element {
  ElementKind kind;
  std::vector<int> v;  // CCW vertex indices; 3 for tri, 4 for quad
};

// Unstructured 2D mesh with straight-sided triangles and quadrilaterals.
// Adjacency and a uniform bucket grid for point location are built once at
// construction; the mesh is immutable afterwards.
class Mesh {
 public:
  Mesh(std::vector<Vec2> vertices, std::vector<Element> elements);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_elements() const { return static_cast<int>(elements_.size()); }
  const Vec2& vertex(int i) const { return vertices_[i]; }
  const Element& element(int e) const { return elements_[e]; }
  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<Element>& elements() const { return elements_; }

  const BBox& bounds() const { return bounds_; }
  const BBox& element_bounds(int e) const { return elem_bounds_[e]; }
  double longest_edge(int e) const { return longest_edge_[e]; }

  const std::vector<int>& vertex_elements(int v) const { return vertex_elems_[v]; }
  // Elements adjacent to the undirected edge (a, b); empty if no such edge.
  const std::vector<int>& edge_elements(int a, int b) const;

  // Element whose closure contains p, lowest index on ties.  Throws
  // PointOutsideMesh when no element contains p (barycentric tolerance 1e-12).
  int locate(const Vec2& p) const;

  // Candidate elements whose bounding boxes overlap the query box, sorted by
  // index.  Exact tests are the caller's concern.
  std::vector<int> candidates(const BBox& query) const;

  // Reference coordinates of p in element e.  Triangle: (r, s) with
  // barycentric (1-r-s, r, s); quad: bilinear inverse in [0,1]^2.
  Vec2 to_reference(int e, const Vec2& p) const;
  Vec2 from_reference(int e, const Vec2& ref) const;
  // True if the reference coordinates lie in the closed reference element
  // within tolerance `tol`.
  bool reference_inside(int e, const Vec2& ref, double tol = 1e-12) const;
  bool contains(int e, const Vec2& p, double tol = 1e-12) const;

  // Jacobian of the reference-to-physical map at reference coordinates,
  // column-major [dx/dr dx/ds; dy/dr dy/ds].
  void jacobian(int e, const Vec2& ref, double J[4]) const;

 private:
  void validate() const;
  void build_adjacency();
  void build_buckets();

  std::vector<Vec2> vertices_;
  std::vector<Element> elements_;
  std::vector<BBox> elem_bounds_;
  std::vector<double> longest_edge_;
  std::vector<std::vector<int>> vertex_elems_;
  std::map<std::pair<int, int>, std::vector<int>> edge_elems_;
  BBox bounds_;

  int nbx_ = 0, nby_ = 0;
  double bdx_ = 1.0, bdy_ = 1.0;
  std::vector<std::vector<int>> buckets_;
};

// Seeded demo-mesh generator: structured grid over [0,1]^2, optionally
// triangulated, with jittered interior vertices (jitter as a fraction of the
// spacing, must stay below 0.3 to preserve validity).
Mesh make_demo_mesh(int nx, int ny, double jitter, std::uint64_t seed, bool triangles);

}  // namespace hotopo

#endif
