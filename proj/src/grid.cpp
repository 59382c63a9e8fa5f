#include "hotopo/grid.hpp"

#include <cmath>
#include <sstream>

#include "hotopo/errors.hpp"
#include "hotopo/io_util.hpp"

namespace hotopo {

void ScalarGrid::validate() const {
  if (dim != 2 && dim != 3) throw Error("grid: dimension must be 2 or 3");
  if (nx < 1 || ny < 1 || (dim == 3 && nz < 1)) throw Error("grid: resolution must be positive");
  if (dx <= 0.0 || dy <= 0.0 || (dim == 3 && dz <= 0.0)) throw Error("grid: spacing must be positive");
  if (values.size() != size()) throw Error("grid: value count does not match resolution");
  for (double v : values) {
    if (!std::isfinite(v)) throw Error("grid: non-finite value");
  }
  if (!flags.empty() && flags.size() != size()) throw Error("grid: flag count does not match resolution");
}

void write_sgrid(const ScalarGrid& g, const std::string& path) {
  g.validate();
  std::ostringstream out;
  out << "SGRID 1\n";
  out << "dim " << g.dim << "\n";
  if (g.dim == 2) {
    out << "res " << g.nx << " " << g.ny << "\n";
    out << "origin " << format_double(g.x0) << " " << format_double(g.y0) << "\n";
    out << "spacing " << format_double(g.dx) << " " << format_double(g.dy) << "\n";
  } else {
    out << "res " << g.nx << " " << g.ny << " " << g.nz << "\n";
    out << "origin " << format_double(g.x0) << " " << format_double(g.y0) << " "
        << format_double(g.z0) << "\n";
    out << "spacing " << format_double(g.dx) << " " << format_double(g.dy) << " "
        << format_double(g.dz) << "\n";
  }
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    out << format_double(g.values[i]) << (i + 1 == g.values.size() ? "\n" : " ");
  }
  if (!g.flags.empty()) {
    out << "flags\n";
    for (std::size_t i = 0; i < g.flags.size(); ++i) {
      out << int(g.flags[i]) << (i + 1 == g.flags.size() ? "\n" : " ");
    }
  }
  atomic_write(path, out.str());
}

ScalarGrid read_sgrid(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string magic;
  int version = 0;
  in >> magic >> version;
  if (magic != "SGRID" || version != 1) throw IoError(path + ": not an SGRID 1 file");
  ScalarGrid g;
  std::string key;
  in >> key >> g.dim;
  if (key != "dim" || (g.dim != 2 && g.dim != 3)) throw IoError(path + ": bad dim");
  in >> key >> g.nx >> g.ny;
  if (key != "res") throw IoError(path + ": bad res");
  if (g.dim == 3) in >> g.nz;
  in >> key >> g.x0 >> g.y0;
  if (key != "origin") throw IoError(path + ": bad origin");
  if (g.dim == 3) in >> g.z0;
  in >> key >> g.dx >> g.dy;
  if (key != "spacing") throw IoError(path + ": bad spacing");
  if (g.dim == 3) in >> g.dz;
  g.values.resize(g.size());
  for (auto& v : g.values) {
    if (!(in >> v)) throw IoError(path + ": truncated values");
  }
  if (in >> key) {
    if (key != "flags") throw IoError(path + ": unexpected trailer '" + key + "'");
    g.flags.resize(g.size());
    for (auto& f : g.flags) {
      int x;
      if (!(in >> x)) throw IoError(path + ": truncated flags");
      f = static_cast<std::uint8_t>(x != 0);
    }
  }
  g.validate();
  return g;
}

void write_segm(const ScalarGrid& shape, const std::vector<int>& labels, const std::string& path) {
  if (labels.size() != shape.size()) throw Error("segm: label count does not match grid");
  std::ostringstream out;
  out << "SEGM 1\n";
  out << "dim " << shape.dim << "\n";
  if (shape.dim == 2) {
    out << "res " << shape.nx << " " << shape.ny << "\n";
    out << "origin " << format_double(shape.x0) << " " << format_double(shape.y0) << "\n";
    out << "spacing " << format_double(shape.dx) << " " << format_double(shape.dy) << "\n";
  } else {
    out << "res " << shape.nx << " " << shape.ny << " " << shape.nz << "\n";
    out << "origin " << format_double(shape.x0) << " " << format_double(shape.y0) << " "
        << format_double(shape.z0) << "\n";
    out << "spacing " << format_double(shape.dx) << " " << format_double(shape.dy) << " "
        << format_double(shape.dz) << "\n";
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out << labels[i] << (i + 1 == labels.size() ? "\n" : " ");
  }
  atomic_write(path, out.str());
}

}  // namespace hotopo
