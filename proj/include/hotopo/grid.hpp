#ifndef HOTOPO_GRID_HPP
#define HOTOPO_GRID_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace hotopo {

// Equispaced scalar samples, row-major with x fastest.  Optional per-sample
// fallback flags mark nodes where the L-SIAC filter fell back to raw
// evaluation.
struct ScalarGrid {
  int dim = 2;
  int nx = 0, ny = 0, nz = 1;
  double x0 = 0.0, y0 = 0.0, z0 = 0.0;
  double dx = 1.0, dy = 1.0, dz = 1.0;
  std::vector<double> values;
  std::vector<std::uint8_t> flags;  // empty or one 0/1 per node

  std::size_t size() const {
    return static_cast<std::size_t>(nx) * ny * (dim == 3 ? nz : 1);
  }
  std::size_t index(int i, int j, int k = 0) const {
    return (static_cast<std::size_t>(k) * ny + j) * nx + i;
  }
  double& at(int i, int j, int k = 0) { return values[index(i, j, k)]; }
  double at(int i, int j, int k = 0) const { return values[index(i, j, k)]; }

  void validate() const;
};

// Continuous piecewise-linear field on a simplicial mesh.
struct PLField {
  std::vector<std::array<double, 2>> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<double> values;
};

// ASCII SGRID format (bit-exact contract, 17 significant digits).
void write_sgrid(const ScalarGrid& g, const std::string& path);
ScalarGrid read_sgrid(const std::string& path);

// Integer-label variant with a SEGM header, used for segmentations.
void write_segm(const ScalarGrid& shape, const std::vector<int>& labels, const std::string& path);

// PLField JSON: {"vertices": [[x,y],...], "triangles": [[i,j,k],...], "values": [...]}.
void write_plfield(const PLField& f, const std::string& path);
PLField read_plfield(const std::string& path);

}  // namespace hotopo

#endif
