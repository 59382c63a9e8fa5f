#include "hotopo/siac.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "hotopo/errors.hpp"
#include "hotopo/quadrature.hpp"

namespace hotopo {

double bspline_eval(int ell, double t) {
  if (ell < 1) throw InvalidOrder("bspline_eval: order must be >= 1");
  if (ell == 1) return (t >= -0.5 && t < 0.5) ? 1.0 : 0.0;
  if (t < -0.5 * ell || t >= 0.5 * ell) return 0.0;
  const int kappa = ell - 1;
  return ((t + 0.5 * ell) * bspline_eval(kappa, t + 0.5) +
          (0.5 * ell - t) * bspline_eval(kappa, t - 0.5)) /
         kappa;
}

double bspline_derivative(int ell, double t) {
  if (ell < 2) throw InvalidOrder("bspline_derivative: order must be >= 2");
  return bspline_eval(ell - 1, t + 0.5) - bspline_eval(ell - 1, t - 0.5);
}

namespace {

// \int Psi^ell(s) s^j ds, by per-knot-interval Gauss quadrature (integrand is
// a polynomial of degree ell-1+j on each interval).
double bspline_moment(int ell, int j) {
  const int npts = (ell + j) / 2 + 1;
  double total = 0.0;
  for (int i = 0; i < ell; ++i) {
    const double a = -0.5 * ell + i;
    total += integrate([&](double s) { return bspline_eval(ell, s) * std::pow(s, j); }, a,
                       a + 1.0, npts);
  }
  return total;
}

std::vector<double> compute_kernel_coefficients(int k, int ell) {
  const int n = 2 * k + 1;
  // mu[j] = \int Psi(s) s^j ds; then \int Psi(t - g) t^m dt via binomial shift.
  std::vector<double> mu(2 * k + 1);
  for (int j = 0; j <= 2 * k; ++j) mu[j] = bspline_moment(ell, j);
  std::vector<std::vector<double>> binom(n, std::vector<double>(n, 0.0));
  for (int m = 0; m < n; ++m) {
    binom[m][0] = 1.0;
    for (int j = 1; j <= m; ++j)
      binom[m][j] = binom[m - 1][j - 1] + (j <= m - 1 ? binom[m - 1][j] : 0.0);
  }
  Eigen::MatrixXd A(n, n);
  for (int m = 0; m <= 2 * k; ++m) {
    for (int g = -k; g <= k; ++g) {
      double v = 0.0;
      for (int j = 0; j <= m; ++j) v += binom[m][j] * mu[j] * std::pow(static_cast<double>(g), m - j);
      A(m, g + k) = v;
    }
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(0) = 1.0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible()) throw SingularMomentMatrix("SIAC moment matrix is singular");
  Eigen::VectorXd c = lu.solve(rhs);
  return std::vector<double>(c.data(), c.data() + n);
}

}  // namespace

const std::vector<double>& solve_kernel_coefficients(int k, int ell) {
  if (k < 1 || ell < 1) throw InvalidOrder("solve_kernel_coefficients: k and ell must be >= 1");
  static std::map<std::pair<int, int>, std::vector<double>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({k, ell});
  if (it == cache.end()) it = cache.emplace(std::make_pair(k, ell), compute_kernel_coefficients(k, ell)).first;
  return it->second;
}

SiacKernel::SiacKernel(int k, int ell, double H, double theta_deg)
    : k_(k), ell_(ell), H_(H), theta_(theta_deg), coeffs_(solve_kernel_coefficients(k, ell)) {
  if (H <= 0.0) throw Error("SiacKernel: characteristic length must be positive");
}

double SiacKernel::eval(double t, int deriv) const {
  const double s = t / H_;
  if (s < -0.5 * (2 * k_ + ell_) || s >= 0.5 * (2 * k_ + ell_)) return 0.0;
  double sum = 0.0;
  for (int g = -k_; g <= k_; ++g) {
    const double c = coeffs_[g + k_];
    sum += c * (deriv == 0 ? bspline_eval(ell_, s - g) : bspline_derivative(ell_, s - g));
  }
  return deriv == 0 ? sum / H_ : sum / (H_ * H_);
}

namespace {

// Elements whose closure intersects the segment p +- radius * dir.
std::vector<int> overlapped_elements(const Mesh& mesh, const Vec2& p, const Vec2& dir,
                                     double radius) {
  const Vec2 a = p - dir * radius;
  const Vec2 b = p + dir * radius;
  BBox q;
  q.expand(a);
  q.expand(b);
  std::vector<int> out;
  std::vector<Vec2> poly;
  for (int e : mesh.candidates(q)) {
    const auto& el = mesh.element(e);
    poly.clear();
    for (int vi : el.v) poly.push_back(mesh.vertex(vi));
    if (segment_intersects_polygon(a, b, poly.data(), static_cast<int>(poly.size()))) {
      out.push_back(e);
    }
  }
  return out;
}

}  // namespace

double adaptive_characteristic_length(const Mesh& mesh, const Vec2& p, double theta_deg,
                                      int k, int ell) {
  const double th = theta_deg * M_PI / 180.0;
  const double factor = std::abs(std::cos(th)) + std::abs(std::sin(th));
  const Vec2 dir{std::cos(th), std::sin(th)};
  double H = factor * mesh.longest_edge(mesh.locate(p));
  for (int it = 0; it < 10; ++it) {
    const double radius = 0.5 * H * (2 * k + ell);
    double hmax = 0.0;
    for (int e : overlapped_elements(mesh, p, dir, radius)) {
      hmax = std::max(hmax, mesh.longest_edge(e));
    }
    const double next = factor * hmax;
    if (next <= H) break;  // non-decreasing by construction
    H = next;
  }
  const double radius = 0.5 * H * (2 * k + ell);
  try {
    mesh.locate(p - dir * radius);
    mesh.locate(p + dir * radius);
  } catch (const PointOutsideMesh&) {
    throw SupportExitsDomain("L-SIAC support segment leaves the mesh");
  }
  return H;
}

double lsiac_point(const HighOrderField& field, const Vec2& p, const LsiacOptions& opt) {
  const Mesh& mesh = field.mesh();
  const double th = opt.theta_deg * M_PI / 180.0;
  const Vec2 dir{std::cos(th), std::sin(th)};
  const double H = opt.H > 0.0
                       ? opt.H
                       : adaptive_characteristic_length(mesh, p, opt.theta_deg, opt.k, opt.ell);
  SiacKernel kernel(opt.k, opt.ell, H, opt.theta_deg);
  const double radius = kernel.support_radius();

  const Vec2 a = p - dir * radius;
  const Vec2 b = p + dir * radius;
  try {
    mesh.locate(a);
    mesh.locate(b);
  } catch (const PointOutsideMesh&) {
    throw SupportExitsDomain("L-SIAC support segment leaves the mesh");
  }

  // Breakpoints: kernel knots plus element-edge crossings along the segment.
  std::vector<double> brk;
  const int spans = 2 * opt.k + opt.ell;
  for (int i = 0; i <= spans; ++i) brk.push_back(H * (i - 0.5 * spans));
  BBox q;
  q.expand(a);
  q.expand(b);
  for (int e : mesh.candidates(q)) {
    const auto& el = mesh.element(e);
    const int n = static_cast<int>(el.v.size());
    for (int i = 0; i < n; ++i) {
      double t01;
      if (segment_segment_param(a, b, mesh.vertex(el.v[i]), mesh.vertex(el.v[(i + 1) % n]),
                                t01)) {
        brk.push_back(-radius + t01 * 2.0 * radius);
      }
    }
  }
  std::sort(brk.begin(), brk.end());
  const double tol = 1e-12 * H;
  std::vector<double> merged;
  for (double t : brk) {
    if (t < -radius - tol || t > radius + tol) continue;
    if (merged.empty() || t - merged.back() > tol) merged.push_back(t);
  }

  // x(t) = p - t * dir; each interval lies inside one element.
  const QuadRule& rule = gauss_legendre(opt.k + opt.ell);
  double total = 0.0;
  for (size_t i = 0; i + 1 < merged.size(); ++i) {
    const double t0 = merged[i], t1 = merged[i + 1];
    if (t1 - t0 <= tol) continue;
    const double tm = 0.5 * (t0 + t1);
    int elem;
    try {
      elem = mesh.locate(p - dir * tm);
    } catch (const PointOutsideMesh&) {
      throw SupportExitsDomain("L-SIAC support segment leaves the mesh");
    }
    const double half = 0.5 * (t1 - t0);
    double sum = 0.0;
    for (size_t qi = 0; qi < rule.points.size(); ++qi) {
      const double t = tm + half * rule.points[qi];
      sum += rule.weights[qi] * kernel.eval(t, opt.deriv) *
             field.eval_in_element(elem, p - dir * t);
    }
    total += sum * half;
  }
  return total;
}

}  // namespace hotopo
