#include "hotopo/field_io.hpp"

#include <nlohmann/json.hpp>
#include <sstream>

#include "hotopo/errors.hpp"
#include "hotopo/io_util.hpp"

namespace hotopo {

using nlohmann::json;

namespace {

void write_header(std::ostringstream& out, const Mesh& mesh) {
  out << "{\"version\":1,\"dimension\":2,\"vertices\":[";
  for (int i = 0; i < mesh.num_vertices(); ++i) {
    const Vec2& p = mesh.vertex(i);
    out << (i ? "," : "") << "[" << format_double(p.x) << "," << format_double(p.y) << "]";
  }
  out << "],\"elements\":[";
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const Element& el = mesh.element(e);
    out << (e ? "," : "") << "{\"type\":\""
        << (el.kind == ElementKind::Triangle ? "tri" : "quad") << "\",\"v\":[";
    for (size_t i = 0; i < el.v.size(); ++i) out << (i ? "," : "") << el.v[i];
    out << "]}";
  }
  out << "]";
}

}  // namespace

void write_field_file(const Mesh& mesh, const std::vector<std::string>& names,
                      const std::vector<const HighOrderField*>& fields, const std::string& path) {
  if (names.size() != fields.size()) throw Error("field file: names/fields size mismatch");
  std::ostringstream out;
  write_header(out, mesh);
  out << ",\"fields\":[";
  for (size_t f = 0; f < fields.size(); ++f) {
    out << (f ? "," : "") << "{\"name\":" << json(names[f]).dump()
        << ",\"degree\":" << fields[f]->degree()
        << ",\"basis\":\"nodal-lagrange-uniform\",\"coeffs\":[";
    for (int e = 0; e < mesh.num_elements(); ++e) {
      const auto& c = fields[f]->element_coeffs(e);
      out << (e ? "," : "") << "[";
      for (size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << format_double(c[i]);
      out << "]";
    }
    out << "]}";
  }
  out << "]}";
  atomic_write(path, out.str());
}

void write_mesh_file(const Mesh& mesh, const std::string& path) {
  std::ostringstream out;
  write_header(out, mesh);
  out << ",\"fields\":[]}";
  atomic_write(path, out.str());
}

const HighOrderField& FieldFile::field(const std::string& name) const {
  for (size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return fields[i];
  }
  throw Error("field '" + name + "' not present in file");
}

FieldFile read_field_file(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw IoError(path + ": JSON parse error: " + e.what());
  }
  try {
    if (j.at("version").get<int>() != 1) throw IoError(path + ": unsupported version");
    if (j.at("dimension").get<int>() != 2) throw IoError(path + ": only 2D supported");
    std::vector<Vec2> verts;
    for (const auto& v : j.at("vertices")) {
      verts.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
    }
    std::vector<Element> elems;
    for (const auto& e : j.at("elements")) {
      const std::string type = e.at("type").get<std::string>();
      Element el;
      if (type == "tri") {
        el.kind = ElementKind::Triangle;
      } else if (type == "quad") {
        el.kind = ElementKind::Quad;
      } else {
        throw IoError(path + ": unknown element type '" + type + "'");
      }
      for (const auto& vi : e.at("v")) el.v.push_back(vi.get<int>());
      elems.push_back(std::move(el));
    }
    FieldFile out;
    out.mesh = std::make_shared<Mesh>(std::move(verts), std::move(elems));
    if (j.contains("fields")) {
      for (const auto& f : j.at("fields")) {
        if (f.at("basis").get<std::string>() != "nodal-lagrange-uniform") {
          throw IoError(path + ": unsupported basis");
        }
        const int degree = f.at("degree").get<int>();
        std::vector<std::vector<double>> coeffs;
        for (const auto& c : f.at("coeffs")) {
          coeffs.push_back(c.get<std::vector<double>>());
        }
        out.names.push_back(f.at("name").get<std::string>());
        out.fields.emplace_back(out.mesh, degree, std::move(coeffs));
      }
    }
    return out;
  } catch (const json::exception& e) {
    throw IoError(path + ": malformed field file: " + e.what());
  }
}

}  // namespace hotopo
