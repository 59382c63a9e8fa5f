#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>

#include "helpers.hpp"
#include "hotopo/errors.hpp"
#include "hotopo/field.hpp"
#include "hotopo/field_io.hpp"
#include "hotopo/grid.hpp"
#include "hotopo/io_util.hpp"
#include "hotopo/mesh.hpp"
#include "hotopo/topology.hpp"

using namespace hotopo;
using hotopo_tests::random_grid;

namespace {

struct TempDir {
  std::filesystem::path dir;
  TempDir() {
    dir = std::filesystem::temp_directory_path() /
          ("hotopo_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
  }
  ~TempDir() { std::filesystem::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("double formatting round trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-17, 1e300, 0.0, -0.0, 123456789.123456789}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("sgrid round trip") {
  TempDir tmp;
  ScalarGrid g = random_grid(7, 5, 42);
  g.x0 = -0.25;
  g.y0 = 1.0 / 3.0;
  write_sgrid(g, tmp.path("a.sgrid"));
  ScalarGrid r = read_sgrid(tmp.path("a.sgrid"));
  CHECK(r.nx == g.nx);
  CHECK(r.ny == g.ny);
  CHECK(r.x0 == g.x0);
  CHECK(r.y0 == g.y0);
  CHECK(r.dx == g.dx);
  CHECK(r.dy == g.dy);
  REQUIRE(r.values.size() == g.values.size());
  for (size_t i = 0; i < g.values.size(); ++i) CHECK(r.values[i] == g.values[i]);
  CHECK(r.flags.empty());

  // With flags.
  g.flags.assign(g.size(), 0);
  g.flags[3] = 1;
  write_sgrid(g, tmp.path("b.sgrid"));
  ScalarGrid rf = read_sgrid(tmp.path("b.sgrid"));
  REQUIRE(rf.flags.size() == g.flags.size());
  CHECK(rf.flags[3] == 1);
  CHECK(rf.flags[0] == 0);
}

TEST_CASE("sgrid write is deterministic") {
  TempDir tmp;
  ScalarGrid g = random_grid(6, 6, 7);
  write_sgrid(g, tmp.path("x1.sgrid"));
  write_sgrid(g, tmp.path("x2.sgrid"));
  CHECK(read_file(tmp.path("x1.sgrid")) == read_file(tmp.path("x2.sgrid")));
}

TEST_CASE("malformed sgrid") {
  TempDir tmp;
  atomic_write(tmp.path("bad.sgrid"), "SGRID 2\n");
  CHECK_THROWS_AS(read_sgrid(tmp.path("bad.sgrid")), IoError);
  atomic_write(tmp.path("bad2.sgrid"), "nonsense");
  CHECK_THROWS_AS(read_sgrid(tmp.path("bad2.sgrid")), IoError);
  CHECK_THROWS_AS(read_sgrid(tmp.path("missing.sgrid")), IoError);
}

TEST_CASE("field file round trip") {
  TempDir tmp;
  auto mesh = std::make_shared<Mesh>(make_demo_mesh(4, 4, 0.2, 11, true));
  HighOrderField f =
      project([](double x, double y) { return std::sin(x) + y; }, mesh, 2);
  HighOrderField g = interpolate([](double x, double y) { return x * y; }, mesh, 3);
  write_field_file(*mesh, {"u", "v"}, {&f, &g}, tmp.path("f.json"));
  FieldFile r = read_field_file(tmp.path("f.json"));
  CHECK(r.names == std::vector<std::string>{"u", "v"});
  CHECK(r.mesh->num_vertices() == mesh->num_vertices());
  CHECK(r.mesh->num_elements() == mesh->num_elements());
  for (int e = 0; e < mesh->num_elements(); ++e) {
    const auto& a = f.element_coeffs(e);
    const auto& b = r.field("u").element_coeffs(e);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  }
  CHECK(r.field("v").degree() == 3);
  CHECK_THROWS_AS(r.field("w"), Error);
}

TEST_CASE("mesh file round trip") {
  TempDir tmp;
  Mesh mesh = make_demo_mesh(5, 3, 0.1, 2, false);
  write_mesh_file(mesh, tmp.path("m.json"));
  FieldFile r = read_field_file(tmp.path("m.json"));
  CHECK(r.fields.empty());
  CHECK(r.mesh->num_elements() == mesh.num_elements());
  for (int i = 0; i < mesh.num_vertices(); ++i) {
    CHECK(r.mesh->vertex(i).x == mesh.vertex(i).x);
    CHECK(r.mesh->vertex(i).y == mesh.vertex(i).y);
  }
}

TEST_CASE("plfield round trip") {
  TempDir tmp;
  PLField f;
  f.vertices = {{0, 0}, {1, 0}, {0, 1}, {1.0 / 3.0, 1.0 / 3.0}};
  f.triangles = {{0, 1, 3}, {1, 2, 3}, {0, 3, 2}};
  f.values = {0.5, -1.25, 1e-17, 3.0};
  write_plfield(f, tmp.path("p.json"));
  PLField r = read_plfield(tmp.path("p.json"));
  REQUIRE(r.vertices.size() == f.vertices.size());
  for (size_t i = 0; i < f.vertices.size(); ++i) {
    CHECK(r.vertices[i][0] == f.vertices[i][0]);
    CHECK(r.vertices[i][1] == f.vertices[i][1]);
    CHECK(r.values[i] == f.values[i]);
  }
  CHECK(r.triangles == f.triangles);
}

TEST_CASE("pairs round trip") {
  TempDir tmp;
  ScalarGrid g = random_grid(9, 9, 17);
  TriangulatedField tf = triangulate_grid(g);
  auto pairs = persistence_pairs(tf);
  write_pairs(pairs, tmp.path("pairs.json"));
  auto r = read_pairs(tmp.path("pairs.json"));
  REQUIRE(r.size() == pairs.size());
  for (size_t i = 0; i < pairs.size(); ++i) {
    CHECK(r[i].birth_vertex == pairs[i].birth_vertex);
    CHECK(r[i].death_vertex == pairs[i].death_vertex);
    CHECK(r[i].birth_value == pairs[i].birth_value);
    CHECK(r[i].death_value == pairs[i].death_value);
    CHECK(r[i].kind == pairs[i].kind);
  }
}

TEST_CASE("curve and tree emitters") {
  TempDir tmp;
  ScalarGrid g = random_grid(8, 8, 23);
  TriangulatedField tf = triangulate_grid(g);
  auto pairs = persistence_pairs(tf);
  auto curve = persistence_curve(pairs, {0.0, 0.5, 1.0});
  write_curve(curve, tmp.path("c.csv"));
  std::ifstream in(tmp.path("c.csv"));
  std::string header;
  std::getline(in, header);
  CHECK(header == "threshold,count_leq,count_gt");
  int lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  CHECK(lines == 3);

  ContourTree tree = contour_tree(tf);
  write_tree(tree, tmp.path("t.json"));
  const std::string body = read_file(tmp.path("t.json"));
  CHECK(body.find("\"nodes\"") != std::string::npos);
  CHECK(body.find("\"arcs\"") != std::string::npos);

  write_critical_points(classify_critical_points(tf), tf, tmp.path("cp.json"));
  CHECK(read_file(tmp.path("cp.json")).find("\"position\"") != std::string::npos);
}

TEST_CASE("segm labels") {
  TempDir tmp;
  ScalarGrid g = random_grid(5, 4, 3);
  std::vector<int> labels(g.size());
  for (size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<int>(i % 3) - 1;
  write_segm(g, labels, tmp.path("s.segm"));
  const std::string body = read_file(tmp.path("s.segm"));
  CHECK(body.rfind("SEGM 1", 0) == 0);
}

TEST_CASE("atomic write replaces content") {
  TempDir tmp;
  atomic_write(tmp.path("f.txt"), "first");
  atomic_write(tmp.path("f.txt"), "second");
  CHECK(read_file(tmp.path("f.txt")) == "second");
  // No leftover temp files.
  int entries = 0;
  for (const auto& e : std::filesystem::directory_iterator(tmp.dir)) {
    (void)e;
    ++entries;
  }
  CHECK(entries == 1);
}
