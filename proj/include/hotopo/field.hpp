#ifndef HOTOPO_FIELD_HPP
#define HOTOPO_FIELD_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hotopo/geometry.hpp"
#include "hotopo/mesh.hpp"

namespace hotopo {

// Nodal-Lagrange basis on the reference element (triangle: uniform
// barycentric lattice; quad: tensor-product uniform nodes).  Built once per
// (kind, degree) by inverting the generalized Vandermonde matrix of the
// monomial basis at the nodes.
class ReferenceBasis {
 public:
  static const ReferenceBasis& get(ElementKind kind, int degree);

  int degree() const { return degree_; }
  ElementKind kind() const { return kind_; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  const std::vector<Vec2>& nodes() const { return nodes_; }

  // All basis functions at (r, s); out must hold num_nodes() values.
  void eval(const Vec2& ref, double* out) const;
  // Reference-space gradients (d/dr, d/ds) of all basis functions.
  void eval_gradient(const Vec2& ref, Vec2* out) const;

 private:
  ReferenceBasis(ElementKind kind, int degree);

  ElementKind kind_;
  int degree_;
  std::vector<Vec2> nodes_;
  std::vector<std::pair<int, int>> monomials_;  // (p, q): r^p s^q
  std::vector<double> coeff_;  // coeff_[m * nnodes + j]: phi_j = sum_m c r^p s^q
};

using ScalarFn = std::function<double(double, double)>;

// Per-element degree-k nodal Lagrange field over a mesh; element-local
// coefficients, possibly discontinuous across interfaces.
class HighOrderField {
 public:
  HighOrderField(std::shared_ptr<const Mesh> mesh, int degree,
                 std::vector<std::vector<double>> coeffs);

  const Mesh& mesh() const { return *mesh_; }
  std::shared_ptr<const Mesh> mesh_ptr() const { return mesh_; }
  int degree() const { return degree_; }
  const std::vector<double>& element_coeffs(int e) const { return coeffs_[e]; }

  // Value of the element-local interpolant; locates the element when elem < 0.
  double eval(const Vec2& p, int elem = -1) const;
  // Element-local value without a containment check (the polynomial extends
  // past the element boundary).
  double eval_in_element(int elem, const Vec2& p) const;
  double eval_reference(int elem, const Vec2& ref) const;

  // Physical-space gradient of the element-local interpolant.
  Vec2 gradient(const Vec2& p, int elem = -1) const;
  Vec2 gradient_in_element(int elem, const Vec2& p) const;

 private:
  std::shared_ptr<const Mesh> mesh_;
  int degree_;
  std::vector<std::vector<double>> coeffs_;
};

// Element-local L2 projection of an analytic function (Gauss-Legendre with
// degree+2 points per direction; triangles via the collapsed Duffy map).
HighOrderField project(const ScalarFn& f, std::shared_ptr<const Mesh> mesh, int degree);

// Element-local nodal interpolation (used as the comparison baseline for the
// projection optimality test and for building polynomial test fields).
HighOrderField interpolate(const ScalarFn& f, std::shared_ptr<const Mesh> mesh, int degree);

// Built-in closed-form fields addressable from the CLI.
struct AnalyticField {
  std::string name;
  ScalarFn fn;
};

// Throws InvalidSpec for unknown names.  Known: "paper2d" (the asymmetric
// sine product), "rigid-u"/"rigid-v" (u=-y, v=x), "zero", "one".
AnalyticField analytic_field(const std::string& name);

}  // namespace hotopo

#endif
