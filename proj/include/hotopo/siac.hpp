#ifndef HOTOPO_SIAC_HPP
#define HOTOPO_SIAC_HPP

#include <vector>

#include "hotopo/field.hpp"

namespace hotopo {

// Central B-spline of order ell (degree ell-1), support [-ell/2, ell/2].
// Psi^1 is the indicator of [-1/2, 1/2) so the recurrence stays single-valued
// at knots.
double bspline_eval(int ell, double t);

// Exact derivative via d/dt Psi^ell(t) = Psi^{ell-1}(t+1/2) - Psi^{ell-1}(t-1/2);
// requires ell >= 2, right-continuous convention at knots.
double bspline_derivative(int ell, double t);

// Kernel coefficients c_{-k..k} from the moment system
// \int K(t) t^m dt = delta_{m0}, m = 0..2k, with K = sum c_g Psi^ell(t - g).
// Results are cached per (k, ell).
const std::vector<double>& solve_kernel_coefficients(int k, int ell);

// Symmetric SIAC kernel K^{2k+1,ell}_H rotated by theta (degrees).
class SiacKernel {
 public:
  SiacKernel(int k, int ell, double H, double theta_deg);

  int k() const { return k_; }
  int spline_order() const { return ell_; }
  int num_splines() const { return 2 * k_ + 1; }
  double characteristic_length() const { return H_; }
  double theta_deg() const { return theta_; }
  const std::vector<double>& coefficients() const { return coeffs_; }
  // Half width of the support of K_H.
  double support_radius() const { return 0.5 * H_ * (2 * k_ + ell_); }

  // deriv = 0: (1/H) sum c_g Psi(t/H - g); deriv = 1: (1/H^2) sum c_g Psi'(t/H - g).
  double eval(double t, int deriv = 0) const;

 private:
  int k_, ell_;
  double H_, theta_;
  std::vector<double> coeffs_;
};

// Adaptive characteristic length: monotone fixed point of
// H -> (|cos| + |sin|) * max element size overlapped by the support segment.
// Throws SupportExitsDomain when the converged support leaves the mesh.
double adaptive_characteristic_length(const Mesh& mesh, const Vec2& p, double theta_deg,
                                      int k, int ell);

struct LsiacOptions {
  int k = 2;
  int ell = 3;          // defaults to the paper's k+1 choice at k=2
  double theta_deg = 0.0;
  int deriv = 0;        // 0: value, 1: directional derivative along theta
  double H = 0.0;       // <= 0 requests the adaptive characteristic length
};

// One-point L-SIAC convolution u*(p) = int K_H(t) u_h(p - Gamma(t)) dt with
// Gamma(t) = t (cos theta, sin theta), integrated exactly per breakpoint
// interval with Gauss-Legendre.  Throws SupportExitsDomain when the symmetric
// support does not fit.
double lsiac_point(const HighOrderField& field, const Vec2& p, const LsiacOptions& opt);

}  // namespace hotopo

#endif
