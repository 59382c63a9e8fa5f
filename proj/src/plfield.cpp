#include <nlohmann/json.hpp>
#include <sstream>

#include "hotopo/errors.hpp"
#include "hotopo/grid.hpp"
#include "hotopo/io_util.hpp"

namespace hotopo {

using nlohmann::json;

void write_plfield(const PLField& f, const std::string& path) {
  if (f.values.size() != f.vertices.size()) throw Error("plfield: one value per vertex required");
  std::ostringstream out;
  out << "{\"vertices\":[";
  for (size_t i = 0; i < f.vertices.size(); ++i) {
    out << (i ? "," : "") << "[" << format_double(f.vertices[i][0]) << ","
        << format_double(f.vertices[i][1]) << "]";
  }
  out << "],\"triangles\":[";
  for (size_t i = 0; i < f.triangles.size(); ++i) {
    out << (i ? "," : "") << "[" << f.triangles[i][0] << "," << f.triangles[i][1] << ","
        << f.triangles[i][2] << "]";
  }
  out << "],\"values\":[";
  for (size_t i = 0; i < f.values.size(); ++i) {
    out << (i ? "," : "") << format_double(f.values[i]);
  }
  out << "]}";
  atomic_write(path, out.str());
}

PLField read_plfield(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw IoError(path + ": JSON parse error: " + e.what());
  }
  try {
    PLField f;
    for (const auto& v : j.at("vertices")) {
      f.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
    }
    for (const auto& t : j.at("triangles")) {
      f.triangles.push_back({t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()});
    }
    f.values = j.at("values").get<std::vector<double>>();
    if (f.values.size() != f.vertices.size()) throw IoError(path + ": value count mismatch");
    const int nv = static_cast<int>(f.vertices.size());
    for (const auto& t : f.triangles) {
      for (int vi : t) {
        if (vi < 0 || vi >= nv) throw IoError(path + ": triangle references invalid vertex");
      }
    }
    return f;
  } catch (const json::exception& e) {
    throw IoError(path + ": malformed PL field file: " + e.what());
  }
}

}  // namespace hotopo
