#include <memory>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hotopo/errors.hpp"
#include "hotopo/field.hpp"
#include "hotopo/field_io.hpp"
#include "hotopo/grid.hpp"
#include "hotopo/mesh.hpp"
#include "hotopo/siac.hpp"
#include "hotopo/topology.hpp"
#include "hotopo/transform.hpp"

namespace py = pybind11;
using namespace hotopo;

namespace {

GridSpec make_spec(int nx, int ny) { return {nx, ny, std::nullopt}; }

TriangulatedField to_tf(const ScalarGrid& g) { return triangulate_grid(g); }

}  // namespace

PYBIND11_MODULE(_hotopo, m) {
  m.doc() = "High-order field transformation and level-set topology";

  py::register_exception<Error>(m, "HotopoError");

  py::class_<Mesh, std::shared_ptr<Mesh>>(m, "Mesh")
      .def_property_readonly("num_vertices", &Mesh::num_vertices)
      .def_property_readonly("num_elements", &Mesh::num_elements);

  py::class_<HighOrderField>(m, "HighOrderField")
      .def_property_readonly("degree", &HighOrderField::degree)
      .def("eval", [](const HighOrderField& f, double x, double y) { return f.eval({x, y}); });

  py::class_<ScalarGrid>(m, "ScalarGrid")
      .def_readonly("nx", &ScalarGrid::nx)
      .def_readonly("ny", &ScalarGrid::ny)
      .def_readonly("values", &ScalarGrid::values)
      .def_readonly("flags", &ScalarGrid::flags);

  py::class_<PLField>(m, "PLField")
      .def_readonly("values", &PLField::values)
      .def_property_readonly("num_vertices",
                             [](const PLField& f) { return f.vertices.size(); })
      .def_property_readonly("num_triangles",
                             [](const PLField& f) { return f.triangles.size(); });

  py::class_<PersistencePair>(m, "PersistencePair")
      .def_readonly("birth_value", &PersistencePair::birth_value)
      .def_readonly("death_value", &PersistencePair::death_value)
      .def_property_readonly("persistence", &PersistencePair::persistence)
      .def_property_readonly("essential",
                             [](const PersistencePair& p) { return p.kind == PairKind::Essential; });

  m.def(
      "make_demo_mesh",
      [](int nx, int ny, double jitter, std::uint64_t seed, bool triangles) {
        return std::make_shared<Mesh>(make_demo_mesh(nx, ny, jitter, seed, triangles));
      },
      py::arg("nx"), py::arg("ny"), py::arg("jitter") = 0.0, py::arg("seed") = 0,
      py::arg("triangles") = true);

  m.def(
      "project",
      [](const std::string& name, std::shared_ptr<Mesh> mesh, int degree) {
        return project(analytic_field(name).fn, mesh, degree);
      },
      py::arg("field"), py::arg("mesh"), py::arg("degree") = 2);

  m.def(
      "sample_grid",
      [](const HighOrderField& f, int nx, int ny) { return sample_grid(f, make_spec(nx, ny)); },
      py::arg("field"), py::arg("nx"), py::arg("ny"));

  m.def("subdivide", &subdivide, py::arg("field"), py::arg("m") = 0);

  m.def(
      "lsiac_grid",
      [](const HighOrderField& f, int nx, int ny, int k, int ell, double theta_deg) {
        LsiacOptions opt;
        opt.k = k;
        opt.ell = ell;
        opt.theta_deg = theta_deg;
        return lsiac_grid(f, make_spec(nx, ny), opt);
      },
      py::arg("field"), py::arg("nx"), py::arg("ny"), py::arg("k") = 2, py::arg("ell") = 3,
      py::arg("theta_deg") = 0.0);

  m.def("normalize", [](const ScalarGrid& g) { return normalize(g); });

  m.def("persistence_pairs",
        [](const ScalarGrid& g) { return persistence_pairs(to_tf(g)); });

  m.def(
      "simplify",
      [](const ScalarGrid& g, double epsilon) {
        TriangulatedField tf = simplify(to_tf(g), epsilon);
        ScalarGrid out = g;
        for (size_t i = 0; i < out.values.size(); ++i) out.values[i] = tf.value((int)i);
        return out;
      },
      py::arg("grid"), py::arg("epsilon"));

  m.def("num_leaf_segments", [](const ScalarGrid& g) {
    TriangulatedField tf = to_tf(g);
    ContourTree tree = contour_tree(tf);
    Segmentation seg = segmentation(tree, tf);
    int leaves = 0;
    for (const auto& s : seg.segments) leaves += s.leaf ? 1 : 0;
    return leaves;
  });
}
