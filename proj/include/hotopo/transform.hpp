#ifndef HOTOPO_TRANSFORM_HPP
#define HOTOPO_TRANSFORM_HPP

#include <optional>

#include "hotopo/field.hpp"
#include "hotopo/grid.hpp"
#include "hotopo/siac.hpp"

namespace hotopo {

struct GridSpec {
  int nx = 0, ny = 0;
  // Empty bbox means "auto": the mesh bounding box shrunk by a 1e-9 relative
  // margin so every node stays strictly inside for point location.
  std::optional<BBox> bbox;
};

ScalarGrid sample_grid(const HighOrderField& field, const GridSpec& spec);

// Uniform m-refinement of every element into linear triangles; vertex values
// on shared edges/vertices are averaged over all original elements whose
// closure contains the vertex.  m defaults to degree+1 when <= 0.
PLField subdivide(const HighOrderField& field, int m = 0);

// Per-node L-SIAC with adaptive H; nodes whose symmetric support leaves the
// mesh fall back to raw evaluation with the fallback flag set.
ScalarGrid lsiac_grid(const HighOrderField& field, const GridSpec& spec, const LsiacOptions& opt);

// omega = v_x - u_y with 2nd-order central/one-sided finite differences.
ScalarGrid vorticity_grid_fd(const ScalarGrid& u, const ScalarGrid& v);

// Per-triangle constant gradients, area-weighted back to vertices.
PLField vorticity_subdivided(const PLField& u, const PLField& v);

// u_y via theta=90 deg, v_x via theta=0 deg derivative filters; boundary
// fallback uses element-wise gradients.
ScalarGrid vorticity_lsiac(const HighOrderField& u, const HighOrderField& v,
                           const GridSpec& spec, int k, int ell);

// Affine map of all samples onto [0, 1]; throws ConstantField when the range
// is empty.  Fallback flags are preserved.
ScalarGrid normalize(const ScalarGrid& g);
PLField normalize(const PLField& f);

}  // namespace hotopo

#endif
