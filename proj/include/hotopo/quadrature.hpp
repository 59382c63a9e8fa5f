#ifndef HOTOPO_QUADRATURE_HPP
#define HOTOPO_QUADRATURE_HPP

#include <vector>

namespace hotopo {

struct QuadRule {
  std::vector<double> points;   // on [-1, 1]
  std::vector<double> weights;  // sum to 2
};

// Gauss-Legendre rule with n points, exact for polynomials of degree 2n-1.
// Rules are cached; references stay valid for the process lifetime.
const QuadRule& gauss_legendre(int n);

// Integrate f over [a, b] with an n-point Gauss-Legendre rule.
template <typename F>
double integrate(F&& f, double a, double b, int n) {
  const QuadRule& q = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (size_t i = 0; i < q.points.size(); ++i) {
    sum += q.weights[i] * f(mid + half * q.points[i]);
  }
  return sum * half;
}

}  // namespace hotopo

#endif
