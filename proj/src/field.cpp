#include "hotopo/field.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <mutex>

#include "hotopo/errors.hpp"
#include "hotopo/quadrature.hpp"

namespace hotopo {

namespace {

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

}  // namespace

ReferenceBasis::ReferenceBasis(ElementKind kind, int degree) : kind_(kind), degree_(degree) {
  if (degree < 1) throw InvalidOrder("basis: degree must be >= 1");
  const int k = degree;
  if (kind == ElementKind::Triangle) {
    for (int b = 0; b <= k; ++b)
      for (int a = 0; a + b <= k; ++a) {
        nodes_.push_back({static_cast<double>(a) / k, static_cast<double>(b) / k});
        monomials_.push_back({a, b});
      }
  } else {
    for (int b = 0; b <= k; ++b)
      for (int a = 0; a <= k; ++a) {
        nodes_.push_back({static_cast<double>(a) / k, static_cast<double>(b) / k});
        monomials_.push_back({a, b});
      }
  }
  const int n = num_nodes();
  Eigen::MatrixXd V(n, n);
  for (int j = 0; j < n; ++j)
    for (int m = 0; m < n; ++m)
      V(j, m) = ipow(nodes_[j].x, monomials_[m].first) * ipow(nodes_[j].y, monomials_[m].second);
  Eigen::MatrixXd C = V.fullPivLu().inverse();  // C(m, j): phi_j in monomial basis
  coeff_.resize(static_cast<size_t>(n) * n);
  for (int m = 0; m < n; ++m)
    for (int j = 0; j < n; ++j) coeff_[static_cast<size_t>(m) * n + j] = C(m, j);
}

const ReferenceBasis& ReferenceBasis::get(ElementKind kind, int degree) {
  static std::map<std::pair<int, int>, std::unique_ptr<ReferenceBasis>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  const std::pair<int, int> key{kind == ElementKind::Triangle ? 0 : 1, degree};
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::unique_ptr<ReferenceBasis>(new ReferenceBasis(kind, degree))).first;
  }
  return *it->second;
}

void ReferenceBasis::eval(const Vec2& ref, double* out) const {
  const int n = num_nodes();
  std::vector<double> mono(n);
  for (int m = 0; m < n; ++m)
    mono[m] = ipow(ref.x, monomials_[m].first) * ipow(ref.y, monomials_[m].second);
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int m = 0; m < n; ++m) s += coeff_[static_cast<size_t>(m) * n + j] * mono[m];
    out[j] = s;
  }
}

void ReferenceBasis::eval_gradient(const Vec2& ref, Vec2* out) const {
  const int n = num_nodes();
  std::vector<double> dr(n), ds(n);
  for (int m = 0; m < n; ++m) {
    const int p = monomials_[m].first, q = monomials_[m].second;
    dr[m] = p == 0 ? 0.0 : p * ipow(ref.x, p - 1) * ipow(ref.y, q);
    ds[m] = q == 0 ? 0.0 : q * ipow(ref.x, p) * ipow(ref.y, q - 1);
  }
  for (int j = 0; j < n; ++j) {
    Vec2 g{0.0, 0.0};
    for (int m = 0; m < n; ++m) {
      const double c = coeff_[static_cast<size_t>(m) * n + j];
      g.x += c * dr[m];
      g.y += c * ds[m];
    }
    out[j] = g;
  }
}

HighOrderField::HighOrderField(std::shared_ptr<const Mesh> mesh, int degree,
                               std::vector<std::vector<double>> coeffs)
    : mesh_(std::move(mesh)), degree_(degree), coeffs_(std::move(coeffs)) {
  if (degree_ < 1) throw Error("field: degree must be >= 1");
  if (static_cast<int>(coeffs_.size()) != mesh_->num_elements()) {
    throw Error("field: one coefficient array per element required");
  }
  for (int e = 0; e < mesh_->num_elements(); ++e) {
    const auto& basis = ReferenceBasis::get(mesh_->element(e).kind, degree_);
    if (static_cast<int>(coeffs_[e].size()) != basis.num_nodes()) {
      throw Error("field: element " + std::to_string(e) + " coefficient count mismatch");
    }
  }
}

double HighOrderField::eval_reference(int elem, const Vec2& ref) const {
  const auto& basis = ReferenceBasis::get(mesh_->element(elem).kind, degree_);
  std::vector<double> phi(basis.num_nodes());
  basis.eval(ref, phi.data());
  double s = 0.0;
  const auto& c = coeffs_[elem];
  for (int j = 0; j < basis.num_nodes(); ++j) s += c[j] * phi[j];
  return s;
}

double HighOrderField::eval_in_element(int elem, const Vec2& p) const {
  return eval_reference(elem, mesh_->to_reference(elem, p));
}

double HighOrderField::eval(const Vec2& p, int elem) const {
  if (elem < 0) elem = mesh_->locate(p);
  return eval_in_element(elem, p);
}

Vec2 HighOrderField::gradient_in_element(int elem, const Vec2& p) const {
  const Vec2 ref = mesh_->to_reference(elem, p);
  const auto& basis = ReferenceBasis::get(mesh_->element(elem).kind, degree_);
  std::vector<Vec2> dphi(basis.num_nodes());
  basis.eval_gradient(ref, dphi.data());
  Vec2 gref{0.0, 0.0};
  const auto& c = coeffs_[elem];
  for (int j = 0; j < basis.num_nodes(); ++j) {
    gref.x += c[j] * dphi[j].x;
    gref.y += c[j] * dphi[j].y;
  }
  double J[4];
  mesh_->jacobian(elem, ref, J);
  // grad_x = J^{-T} grad_ref
  const double det = J[0] * J[3] - J[1] * J[2];
  return {(J[3] * gref.x - J[2] * gref.y) / det, (-J[1] * gref.x + J[0] * gref.y) / det};
}

Vec2 HighOrderField::gradient(const Vec2& p, int elem) const {
  if (elem < 0) elem = mesh_->locate(p);
  return gradient_in_element(elem, p);
}

namespace {

// Quadrature points and weights on the reference element, including the
// physical Jacobian factor at each point.
template <typename Body>
void for_each_quad_point(const Mesh& mesh, int e, int npts, Body&& body) {
  const QuadRule& q = gauss_legendre(npts);
  const auto& el = mesh.element(e);
  if (el.kind == ElementKind::Triangle) {
    // Duffy map from the unit square: (r, s) = (u(1-v), v), dA = (1-v) du dv.
    for (size_t a = 0; a < q.points.size(); ++a) {
      const double u = 0.5 * (q.points[a] + 1.0), wu = 0.5 * q.weights[a];
      for (size_t b = 0; b < q.points.size(); ++b) {
        const double v = 0.5 * (q.points[b] + 1.0), wv = 0.5 * q.weights[b];
        const Vec2 ref{u * (1.0 - v), v};
        double J[4];
        mesh.jacobian(e, ref, J);
        const double det = J[0] * J[3] - J[1] * J[2];
        if (det <= 0.0) throw SingularMassMatrix("element " + std::to_string(e) + " has nonpositive Jacobian");
        body(ref, wu * wv * (1.0 - v) * det);
      }
    }
  } else {
    for (size_t a = 0; a < q.points.size(); ++a) {
      const double u = 0.5 * (q.points[a] + 1.0), wu = 0.5 * q.weights[a];
      for (size_t b = 0; b < q.points.size(); ++b) {
        const double v = 0.5 * (q.points[b] + 1.0), wv = 0.5 * q.weights[b];
        const Vec2 ref{u, v};
        double J[4];
        mesh.jacobian(e, ref, J);
        const double det = J[0] * J[3] - J[1] * J[2];
        if (det <= 0.0) throw SingularMassMatrix("element " + std::to_string(e) + " has nonpositive Jacobian");
        body(ref, wu * wv * det);
      }
    }
  }
}

}  // namespace

HighOrderField project(const ScalarFn& f, std::shared_ptr<const Mesh> mesh, int degree) {
  const int npts = degree + 2;
  std::vector<std::vector<double>> coeffs(mesh->num_elements());
  for (int e = 0; e < mesh->num_elements(); ++e) {
    const auto& basis = ReferenceBasis::get(mesh->element(e).kind, degree);
    const int n = basis.num_nodes();
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    std::vector<double> phi(n);
    for_each_quad_point(*mesh, e, npts, [&](const Vec2& ref, double w) {
      basis.eval(ref, phi.data());
      const Vec2 x = mesh->from_reference(e, ref);
      const double fv = f(x.x, x.y);
      for (int i = 0; i < n; ++i) {
        b(i) += w * phi[i] * fv;
        for (int j = 0; j < n; ++j) M(i, j) += w * phi[i] * phi[j];
      }
    });
    Eigen::LDLT<Eigen::MatrixXd> solver(M);
    if (solver.info() != Eigen::Success) {
      throw SingularMassMatrix("element " + std::to_string(e) + " mass matrix is singular");
    }
    Eigen::VectorXd c = solver.solve(b);
    coeffs[e].assign(c.data(), c.data() + n);
  }
  return HighOrderField(std::move(mesh), degree, std::move(coeffs));
}

HighOrderField interpolate(const ScalarFn& f, std::shared_ptr<const Mesh> mesh, int degree) {
  std::vector<std::vector<double>> coeffs(mesh->num_elements());
  for (int e = 0; e < mesh->num_elements(); ++e) {
    const auto& basis = ReferenceBasis::get(mesh->element(e).kind, degree);
    coeffs[e].resize(basis.num_nodes());
    for (int j = 0; j < basis.num_nodes(); ++j) {
      const Vec2 x = mesh->from_reference(e, basis.nodes()[j]);
      coeffs[e][j] = f(x.x, x.y);
    }
  }
  return HighOrderField(std::move(mesh), degree, std::move(coeffs));
}

AnalyticField analytic_field(const std::string& name) {
  if (name == "paper2d") {
    return {name, [](double x, double y) {
              return (std::sin(2 * M_PI * x) + 0.5 * std::sin(4 * M_PI * x)) *
                     (std::sin(2 * M_PI * y) + std::sin(4 * M_PI * y));
            }};
  }
  if (name == "rigid-u") return {name, [](double, double y) { return -y; }};
  if (name == "rigid-v") return {name, [](double x, double) { return x; }};
  if (name == "zero") return {name, [](double, double) { return 0.0; }};
  if (name == "one") return {name, [](double, double) { return 1.0; }};
  throw InvalidSpec("unknown analytic field '" + name + "'");
}

}  // namespace hotopo
