#ifndef HOTOPO_TOPOLOGY_HPP
#define HOTOPO_TOPOLOGY_HPP

#include <array>
#include <string>
#include <vector>

#include "hotopo/grid.hpp"

namespace hotopo {

// Simplicial scalar field with a strict total vertex order by
// (value, offset, index).  Offsets start at zero, which reduces the order to
// the simulation-of-simplicity tie-break (value, index); topological
// simplification uses them to enforce monotonicity on flattened plateaus.
class TriangulatedField {
 public:
  TriangulatedField(int dim, std::vector<std::array<double, 3>> positions,
                    std::vector<std::vector<int>> cells, std::vector<double> values);

  int dim() const { return dim_; }
  int num_vertices() const { return static_cast<int>(values_.size()); }
  const std::vector<double>& values() const { return values_; }
  double value(int v) const { return values_[v]; }
  long long offset(int v) const { return offsets_[v]; }
  const std::array<double, 3>& position(int v) const { return positions_[v]; }
  const std::vector<std::vector<int>>& cells() const { return cells_; }
  const std::vector<int>& neighbors(int v) const { return neighbors_[v]; }
  const std::vector<int>& vertex_cells(int v) const { return vertex_cells_[v]; }

  // Strict total order.
  bool less(int a, int b) const {
    if (values_[a] != values_[b]) return values_[a] < values_[b];
    if (offsets_[a] != offsets_[b]) return offsets_[a] < offsets_[b];
    return a < b;
  }
  // Vertex ids sorted ascending by the total order.
  std::vector<int> sorted_vertices() const;

  void set_value(int v, double value) { values_[v] = value; }
  void set_offset(int v, long long offset) { offsets_[v] = offset; }

 private:
  int dim_;
  std::vector<std::array<double, 3>> positions_;
  std::vector<std::vector<int>> cells_;
  std::vector<double> values_;
  std::vector<long long> offsets_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<std::vector<int>> vertex_cells_;
};

// Freudenthal/Kuhn triangulation of a regular grid (2 triangles per square,
// 6 tetrahedra per cube).
TriangulatedField triangulate_grid(const ScalarGrid& g);
TriangulatedField triangulate_plfield(const PLField& f);

enum class CriticalType { Minimum, Saddle, OneSaddle, TwoSaddle, Maximum };

struct CriticalPoint {
  int vertex;
  double value;
  CriticalType type;
  int index;         // 0 minimum .. dim maximum
  int multiplicity;  // lambda-1 simple saddles for a lambda-fold lower link
};

std::vector<CriticalPoint> classify_critical_points(const TriangulatedField& tf);

enum class PairKind { MinSaddle, SaddleMax, Essential };

struct PersistencePair {
  int birth_vertex;
  double birth_value;
  int death_vertex;
  double death_value;
  PairKind kind;

  double persistence() const { return death_value - birth_value; }
};

// Elder-rule pairing from ascending/descending union-find sweeps plus the
// (global min, global max) essential pair.  Deterministic order: descending
// persistence, then birth vertex.
std::vector<PersistencePair> persistence_pairs(const TriangulatedField& tf);

struct CurvePoint {
  double threshold;
  // The essential pair is seen once by each sweep direction and therefore
  // contributes twice, matching the join+split counting of the reference
  // pipeline's plotted curves.
  long long count_leq;
  long long count_gt;
};

std::vector<CurvePoint> persistence_curve(const std::vector<PersistencePair>& pairs,
                                          const std::vector<double>& thresholds);

// Persistence-driven simplification: returns a field on the same complex
// whose pairs are exactly the input pairs with persistence > epsilon (the
// essential pair always survives) and with ||f - g||_inf <= epsilon.
TriangulatedField simplify(const TriangulatedField& tf, double epsilon);

struct ContourTree {
  struct Node {
    int vertex;
    double value;
    bool is_leaf;
  };
  struct Arc {
    int upper_node;  // node index
    int lower_node;
    int num_vertices;
  };
  std::vector<Node> nodes;
  std::vector<Arc> arcs;
  std::vector<int> vertex_arc;  // per-vertex arc id (the segmentation)
};

ContourTree contour_tree(const TriangulatedField& tf);

struct Segmentation {
  std::vector<int> labels;  // per-vertex arc id
  struct Segment {
    int arc;
    int size;
    bool leaf;              // arc incident to an extremum
    double extremum_value;  // value at the leaf end, NaN for interior arcs
    int depth;              // arc distance to the nearest leaf arc
  };
  std::vector<Segment> segments;
};

Segmentation segmentation(const ContourTree& tree, const TriangulatedField& tf);

// JSON/CSV emitters (atomic writes, deterministic ordering).
void write_pairs(const std::vector<PersistencePair>& pairs, const std::string& path);
std::vector<PersistencePair> read_pairs(const std::string& path);
void write_curve(const std::vector<CurvePoint>& curve, const std::string& path);
void write_critical_points(const std::vector<CriticalPoint>& cps, const TriangulatedField& tf,
                           const std::string& path);
void write_tree(const ContourTree& tree, const std::string& path);

}  // namespace hotopo

#endif
