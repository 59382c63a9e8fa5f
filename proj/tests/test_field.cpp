#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "hotopo/errors.hpp"
#include "hotopo/field.hpp"
#include "hotopo/mesh.hpp"

using namespace hotopo;

namespace {

std::shared_ptr<Mesh> demo(int n, double jitter, bool tri, std::uint64_t seed = 1) {
  return std::make_shared<Mesh>(make_demo_mesh(n, n, jitter, seed, tri));
}

}  // namespace

TEST_CASE("reference basis is a Lagrange basis") {
  for (ElementKind kind : {ElementKind::Triangle, ElementKind::Quad}) {
    for (int degree : {1, 2, 3, 4}) {
      const ReferenceBasis& basis = ReferenceBasis::get(kind, degree);
      const int nn = basis.num_nodes();
      const int expect = kind == ElementKind::Triangle ? (degree + 1) * (degree + 2) / 2
                                                       : (degree + 1) * (degree + 1);
      REQUIRE(nn == expect);
      std::vector<double> vals(nn);
      for (int i = 0; i < nn; ++i) {
        basis.eval(basis.nodes()[i], vals.data());
        for (int j = 0; j < nn; ++j) {
          CHECK(vals[j] == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-9));
        }
      }
    }
  }
}

TEST_CASE("basis partition of unity") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (ElementKind kind : {ElementKind::Triangle, ElementKind::Quad}) {
    const ReferenceBasis& basis = ReferenceBasis::get(kind, 3);
    std::vector<double> vals(basis.num_nodes());
    for (int i = 0; i < 100; ++i) {
      Vec2 p{dist(rng), dist(rng)};
      if (kind == ElementKind::Triangle && p.x + p.y > 1) p = {1 - p.x, 1 - p.y};
      basis.eval(p, vals.data());
      double sum = 0;
      for (double v : vals) sum += v;
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-11));
    }
  }
}

TEST_CASE("invalid degree") {
  CHECK_THROWS_AS(ReferenceBasis::get(ElementKind::Triangle, 0), InvalidOrder);
  CHECK_THROWS_AS(ReferenceBasis::get(ElementKind::Quad, -1), InvalidOrder);
}

TEST_CASE("projection reproduces polynomials of degree <= k") {
  auto f = [](double x, double y) { return 3.0 + 2.0 * x - y + 0.5 * x * y + x * x; };
  for (bool tri : {true, false}) {
    auto mesh = demo(5, 0.2, tri);
    HighOrderField field = project(f, mesh, 2);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> dist(0.01, 0.99);
    for (int i = 0; i < 200; ++i) {
      const Vec2 p{dist(rng), dist(rng)};
      CHECK(field.eval(p) == doctest::Approx(f(p.x, p.y)).epsilon(1e-9));
    }
  }
}

TEST_CASE("interpolation matches projection on polynomials") {
  auto f = [](double x, double y) { return 1.0 - x + 2.0 * y * y; };
  auto mesh = demo(4, 0.15, true);
  HighOrderField pr = project(f, mesh, 2);
  HighOrderField in = interpolate(f, mesh, 2);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> dist(0.05, 0.95);
  for (int i = 0; i < 100; ++i) {
    const Vec2 p{dist(rng), dist(rng)};
    CHECK(pr.eval(p) == doctest::Approx(in.eval(p)).epsilon(1e-9));
  }
}

TEST_CASE("projection is L2-optimal per element") {
  // For a non-polynomial target the projection must beat interpolation in the
  // element-mean squared error.
  auto f = [](double x, double y) { return std::sin(3 * x) * std::cos(2 * y); };
  auto mesh = demo(3, 0.0, true);
  HighOrderField pr = project(f, mesh, 2);
  HighOrderField in = interpolate(f, mesh, 2);
  double err_pr = 0, err_in = 0;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(0.01, 0.99);
  for (int i = 0; i < 4000; ++i) {
    const Vec2 p{dist(rng), dist(rng)};
    const double fe = f(p.x, p.y);
    err_pr += (pr.eval(p) - fe) * (pr.eval(p) - fe);
    err_in += (in.eval(p) - fe) * (in.eval(p) - fe);
  }
  CHECK(err_pr < err_in);
}

TEST_CASE("gradient against finite differences") {
  auto f = [](double x, double y) { return x * x * y + 2.0 * y; };
  auto mesh = demo(4, 0.1, true);
  HighOrderField field = project(f, mesh, 3);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> dist(0.1, 0.9);
  const double h = 1e-6;
  for (int i = 0; i < 50; ++i) {
    const Vec2 p{dist(rng), dist(rng)};
    const int e = mesh->locate(p);
    const Vec2 g = field.gradient_in_element(e, p);
    const double gx = (field.eval_in_element(e, {p.x + h, p.y}) -
                       field.eval_in_element(e, {p.x - h, p.y})) /
                      (2 * h);
    const double gy = (field.eval_in_element(e, {p.x, p.y + h}) -
                       field.eval_in_element(e, {p.x, p.y - h})) /
                      (2 * h);
    CHECK(g.x == doctest::Approx(gx).epsilon(1e-4));
    CHECK(g.y == doctest::Approx(gy).epsilon(1e-4));
  }
}

TEST_CASE("analytic field registry") {
  CHECK(analytic_field("paper2d").fn(0.25, 0.25) != 0.0);
  CHECK(analytic_field("rigid-u").fn(0.3, 0.7) == doctest::Approx(-0.7));
  CHECK(analytic_field("rigid-v").fn(0.3, 0.7) == doctest::Approx(0.3));
  CHECK(analytic_field("zero").fn(0.1, 0.2) == 0.0);
  CHECK(analytic_field("one").fn(0.1, 0.2) == 1.0);
  CHECK_THROWS_AS(analytic_field("nope"), InvalidSpec);
}

TEST_CASE("paper2d closed form") {
  auto f = analytic_field("paper2d").fn;
  auto g = [](double x, double y) {
    return (std::sin(2 * M_PI * x) + 0.5 * std::sin(4 * M_PI * x)) *
           (std::sin(2 * M_PI * y) + std::sin(4 * M_PI * y));
  };
  for (double x : {0.1, 0.33, 0.77}) {
    for (double y : {0.21, 0.5, 0.9}) {
      CHECK(f(x, y) == doctest::Approx(g(x, y)).epsilon(1e-14));
    }
  }
}
