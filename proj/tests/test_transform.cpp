#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <memory>
#include <vector>

#include "hotopo/errors.hpp"
#include "hotopo/field.hpp"
#include "hotopo/mesh.hpp"
#include "hotopo/transform.hpp"

using namespace hotopo;

namespace {

std::shared_ptr<Mesh> demo(int n, double jitter, bool tri, std::uint64_t seed = 1) {
  return std::make_shared<Mesh>(make_demo_mesh(n, n, jitter, seed, tri));
}

ScalarGrid sample_fn(double (*f)(double, double), int nx, int ny) {
  ScalarGrid g;
  g.nx = nx;
  g.ny = ny;
  g.dx = 1.0 / (nx - 1);
  g.dy = 1.0 / (ny - 1);
  g.values.resize(g.size());
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) g.at(i, j) = f(i * g.dx, j * g.dy);
  return g;
}

}  // namespace

TEST_CASE("sample constant field") {
  auto mesh = demo(5, 0.2, true);
  HighOrderField f = interpolate([](double, double) { return 4.25; }, mesh, 2);
  ScalarGrid g = sample_grid(f, {16, 16, std::nullopt});
  for (double v : g.values) CHECK(v == doctest::Approx(4.25).epsilon(1e-12));
}

TEST_CASE("sample linear field against closed form") {
  auto mesh = demo(4, 0.0, true);
  auto fn = [](double x, double y) { return 2.0 * x - 3.0 * y + 1.0; };
  HighOrderField f = interpolate(fn, mesh, 1);
  ScalarGrid g = sample_grid(f, {4, 4, std::nullopt});
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) {
      const double x = g.x0 + i * g.dx, y = g.y0 + j * g.dy;
      CHECK(g.at(i, j) == doctest::Approx(fn(x, y)).epsilon(1e-12));
    }
}

TEST_CASE("subdivision element count law") {
  auto tri_mesh = demo(4, 0.1, true);   // 32 triangles
  auto quad_mesh = demo(4, 0.1, false);  // 16 quads
  HighOrderField ft = interpolate([](double x, double y) { return x + y; }, tri_mesh, 2);
  HighOrderField fq = interpolate([](double x, double y) { return x + y; }, quad_mesh, 2);
  for (int m : {1, 2, 3}) {
    CHECK(subdivide(ft, m).triangles.size() == static_cast<size_t>(m * m * 32));
    CHECK(subdivide(fq, m).triangles.size() == static_cast<size_t>(2 * m * m * 16));
  }
  // Default m = degree + 1.
  CHECK(subdivide(ft).triangles.size() == static_cast<size_t>(9 * 32));
}

TEST_CASE("subdivision is exact for continuous fields") {
  auto mesh = demo(4, 0.2, true, 5);
  auto fn = [](double x, double y) { return x * x - y + 0.5 * x * y; };
  HighOrderField f = project(fn, mesh, 2);
  PLField pl = subdivide(f, 3);
  for (size_t i = 0; i < pl.vertices.size(); ++i) {
    CHECK(pl.values[i] == doctest::Approx(fn(pl.vertices[i][0], pl.vertices[i][1])).epsilon(1e-9));
  }
}

TEST_CASE("subdivision averages interface jumps") {
  // Two triangles over the unit square, field 0 on the lower-left element and
  // 1 on the upper-right one; shared-diagonal vertices must average to 0.5.
  auto mesh = std::make_shared<Mesh>(
      std::vector<Vec2>{{0, 0}, {1, 0}, {1, 1}, {0, 1}},
      std::vector<Element>{{ElementKind::Triangle, {0, 1, 2}}, {ElementKind::Triangle, {0, 2, 3}}});
  std::vector<std::vector<double>> coeffs{{0, 0, 0}, {1, 1, 1}};
  HighOrderField f(mesh, 1, coeffs);
  PLField pl = subdivide(f, 2);
  int diagonal_vertices = 0;
  for (size_t i = 0; i < pl.vertices.size(); ++i) {
    const double x = pl.vertices[i][0], y = pl.vertices[i][1];
    if (std::abs(x - y) < 1e-12) {
      CHECK(pl.values[i] == doctest::Approx(0.5).epsilon(1e-12));
      ++diagonal_vertices;
    }
  }
  CHECK(diagonal_vertices == 3);
}

TEST_CASE("vorticity by finite differences") {
  ScalarGrid u = sample_fn([](double, double y) { return -y; }, 32, 32);
  ScalarGrid v = sample_fn([](double x, double) { return x; }, 32, 32);
  ScalarGrid w = vorticity_grid_fd(u, v);
  for (double val : w.values) CHECK(std::abs(val - 2.0) < 1e-10);

  ScalarGrid z = sample_fn([](double, double) { return 0.0; }, 8, 8);
  for (double val : vorticity_grid_fd(z, z).values) CHECK(val == 0.0);

  ScalarGrid su = sample_fn([](double, double y) { return std::sin(y); }, 200, 200);
  ScalarGrid sv = sample_fn([](double x, double) { return std::sin(x); }, 200, 200);
  ScalarGrid sw = vorticity_grid_fd(su, sv);
  double max_err = 0;
  for (int j = 0; j < 200; ++j)
    for (int i = 0; i < 200; ++i) {
      const double x = i * sw.dx, y = j * sw.dy;
      max_err = std::max(max_err, std::abs(sw.at(i, j) - (std::cos(x) - std::cos(y))));
    }
  CHECK(max_err < 1e-3);

  ScalarGrid bad = sample_fn([](double, double) { return 0.0; }, 9, 8);
  CHECK_THROWS_AS(vorticity_grid_fd(u, bad), GridMismatch);
}

TEST_CASE("vorticity on subdivided fields") {
  auto mesh = demo(6, 0.2, true, 9);
  HighOrderField u = interpolate([](double, double y) { return -y; }, mesh, 2);
  HighOrderField v = interpolate([](double x, double) { return x; }, mesh, 2);
  PLField pu = subdivide(u, 2), pv = subdivide(v, 2);
  PLField w = vorticity_subdivided(pu, pv);
  for (size_t i = 0; i < w.vertices.size(); ++i) {
    CHECK(w.values[i] == doctest::Approx(2.0).epsilon(1e-12));
  }
  PLField small = pu;
  small.values.pop_back();
  small.vertices.pop_back();
  CHECK_THROWS_AS(vorticity_subdivided(small, pv), MeshMismatch);
}

TEST_CASE("area-weighted vertex gradient") {
  // Hand-built fan: vertex 0 shared by two triangles with areas 0.5 and 1.
  PLField u;
  u.vertices = {{0, 0}, {1, 0}, {0, 1}, {-2, 0}};
  u.triangles = {{0, 1, 2}, {0, 2, 3}};
  u.values = {0, 1, 2, 3};
  // Per-triangle gradients of u: tri0 -> (1, 2), tri1 -> (-1.5, 2).
  PLField v = u;
  PLField w = vorticity_subdivided(u, v);
  // Vertex 0: u_x = (0.5*1 + 1*(-1.5)) / 1.5 = -2/3, u_y = 2;
  // omega = v_x - u_y = u_x - u_y with v = u.
  CHECK(w.values[0] == doctest::Approx(-2.0 / 3.0 - 2.0).epsilon(1e-12));
  // Vertex 1 only touches tri0: omega = 1 - 2.
  CHECK(w.values[1] == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("vorticity via derivative filters") {
  // Fine enough that the derivative-filter support fits at interior grid nodes.
  auto mesh = demo(24, 0.0, true);
  HighOrderField u = interpolate([](double, double y) { return -y; }, mesh, 2);
  HighOrderField v = interpolate([](double x, double) { return x; }, mesh, 2);
  ScalarGrid w = vorticity_lsiac(u, v, {12, 12, std::nullopt}, 2, 3);
  REQUIRE(w.flags.size() == w.values.size());
  int interior = 0;
  for (size_t i = 0; i < w.values.size(); ++i) {
    if (w.flags[i]) continue;
    CHECK(w.values[i] == doctest::Approx(2.0).epsilon(1e-8));
    ++interior;
  }
  CHECK(interior > 0);
}

TEST_CASE("normalize grid") {
  ScalarGrid g;
  g.nx = 3;
  g.ny = 1;
  g.values = {2, 4, 6};
  ScalarGrid n = normalize(g);
  CHECK(n.values[0] == 0.0);
  CHECK(n.values[1] == doctest::Approx(0.5));
  CHECK(n.values[2] == 1.0);
  ScalarGrid c = g;
  c.values = {7, 7, 7};
  CHECK_THROWS_AS(normalize(c), ConstantField);
  // Idempotent on already-normalized data.
  ScalarGrid n2 = normalize(n);
  for (size_t i = 0; i < n.values.size(); ++i) CHECK(n2.values[i] == n.values[i]);
}

TEST_CASE("lsiac grid falls back near the boundary") {
  auto mesh = demo(24, 0.0, true);
  HighOrderField f = interpolate([](double x, double y) { return x + y; }, mesh, 2);
  LsiacOptions opt;
  ScalarGrid g = lsiac_grid(f, {20, 20, std::nullopt}, opt);
  REQUIRE(g.flags.size() == g.values.size());
  // Corner nodes cannot hold a symmetric support.
  CHECK(g.flags[0] == 1);
  CHECK(g.flags[g.values.size() - 1] == 1);
  // Center nodes can.
  CHECK(g.flags[g.index(10, 10)] == 0);
  // Linear fields are reproduced both ways, so values agree with the analytic
  // field everywhere.
  for (int j = 0; j < 20; ++j)
    for (int i = 0; i < 20; ++i) {
      const double x = g.x0 + i * g.dx, y = g.y0 + j * g.dy;
      CHECK(g.at(i, j) == doctest::Approx(x + y).epsilon(1e-8));
    }
}
