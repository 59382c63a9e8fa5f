#ifndef HOTOPO_FIELD_IO_HPP
#define HOTOPO_FIELD_IO_HPP

#include <memory>
#include <string>
#include <vector>

#include "hotopo/field.hpp"
#include "hotopo/mesh.hpp"

namespace hotopo {

struct FieldFile {
  std::shared_ptr<const Mesh> mesh;
  std::vector<std::string> names;
  std::vector<HighOrderField> fields;

  const HighOrderField& field(const std::string& name) const;
};

// Field file JSON (version 1, nodal-lagrange-uniform basis, 17 significant
// digit floats).  A file may carry zero or more named fields over one mesh.
void write_field_file(const Mesh& mesh, const std::vector<std::string>& names,
                      const std::vector<const HighOrderField*>& fields, const std::string& path);
FieldFile read_field_file(const std::string& path);

void write_mesh_file(const Mesh& mesh, const std::string& path);

}  // namespace hotopo

#endif
