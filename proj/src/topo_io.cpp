#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hotopo/errors.hpp"
#include "hotopo/io_util.hpp"
#include "hotopo/topology.hpp"

namespace hotopo {

namespace {

const char* kind_name(PairKind k) {
  switch (k) {
    case PairKind::MinSaddle: return "min-saddle";
    case PairKind::SaddleMax: return "saddle-max";
    case PairKind::Essential: return "essential";
  }
  return "";
}

PairKind kind_from_name(const std::string& s) {
  if (s == "min-saddle") return PairKind::MinSaddle;
  if (s == "saddle-max") return PairKind::SaddleMax;
  if (s == "essential") return PairKind::Essential;
  throw IoError("pairs: unknown kind '" + s + "'");
}

const char* critical_type_name(CriticalType t) {
  switch (t) {
    case CriticalType::Minimum: return "minimum";
    case CriticalType::Saddle: return "saddle";
    case CriticalType::OneSaddle: return "1-saddle";
    case CriticalType::TwoSaddle: return "2-saddle";
    case CriticalType::Maximum: return "maximum";
  }
  return "";
}

void endpoint_json(std::ostringstream& os, int vertex, double value, const char* type) {
  os << "{\"vertex\":" << vertex << ",\"value\":" << format_double(value) << ",\"type\":\"" << type
     << "\"}";
}

}  // namespace

void write_pairs(const std::vector<PersistencePair>& pairs, const std::string& path) {
  std::ostringstream os;
  os << "[\n";
  for (size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i];
    const char* birth_type = p.kind == PairKind::SaddleMax ? "saddle" : "min";
    const char* death_type = p.kind == PairKind::MinSaddle ? "saddle" : "max";
    os << "  {\"birth\":";
    endpoint_json(os, p.birth_vertex, p.birth_value, birth_type);
    os << ",\"death\":";
    endpoint_json(os, p.death_vertex, p.death_value, death_type);
    os << ",\"persistence\":" << format_double(p.persistence()) << ",\"kind\":\""
       << kind_name(p.kind) << "\"}";
    if (i + 1 < pairs.size()) os << ",";
    os << "\n";
  }
  os << "]\n";
  atomic_write(path, os.str());
}

std::vector<PersistencePair> read_pairs(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw IoError("pairs: " + path + ": " + e.what());
  }
  if (!j.is_array()) throw IoError("pairs: " + path + ": expected a JSON array");
  std::vector<PersistencePair> pairs;
  pairs.reserve(j.size());
  try {
    for (const auto& e : j) {
      PersistencePair p;
      p.birth_vertex = e.at("birth").at("vertex").get<int>();
      p.birth_value = e.at("birth").at("value").get<double>();
      p.death_vertex = e.at("death").at("vertex").get<int>();
      p.death_value = e.at("death").at("value").get<double>();
      p.kind = kind_from_name(e.at("kind").get<std::string>());
      pairs.push_back(p);
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError("pairs: " + path + ": " + e.what());
  }
  return pairs;
}

void write_curve(const std::vector<CurvePoint>& curve, const std::string& path) {
  std::ostringstream os;
  os << "threshold,count_leq,count_gt\n";
  for (const auto& c : curve) {
    os << format_double(c.threshold) << "," << c.count_leq << "," << c.count_gt << "\n";
  }
  atomic_write(path, os.str());
}

void write_critical_points(const std::vector<CriticalPoint>& cps, const TriangulatedField& tf,
                           const std::string& path) {
  std::ostringstream os;
  os << "[\n";
  for (size_t i = 0; i < cps.size(); ++i) {
    const auto& c = cps[i];
    const auto& p = tf.position(c.vertex);
    os << "  {\"vertex\":" << c.vertex << ",\"position\":[" << format_double(p[0]) << ","
       << format_double(p[1]) << "," << format_double(p[2]) << "],\"value\":"
       << format_double(c.value) << ",\"type\":\"" << critical_type_name(c.type)
       << "\",\"index\":" << c.index << ",\"multiplicity\":" << c.multiplicity << "}";
    if (i + 1 < cps.size()) os << ",";
    os << "\n";
  }
  os << "]\n";
  atomic_write(path, os.str());
}

void write_tree(const ContourTree& tree, const std::string& path) {
  std::ostringstream os;
  os << "{\n  \"nodes\": [\n";
  for (size_t i = 0; i < tree.nodes.size(); ++i) {
    const auto& n = tree.nodes[i];
    os << "    {\"id\":" << i << ",\"vertex\":" << n.vertex << ",\"value\":"
       << format_double(n.value) << ",\"leaf\":" << (n.is_leaf ? "true" : "false") << "}"
       << (i + 1 < tree.nodes.size() ? "," : "") << "\n";
  }
  os << "  ],\n  \"arcs\": [\n";
  for (size_t i = 0; i < tree.arcs.size(); ++i) {
    const auto& a = tree.arcs[i];
    os << "    {\"id\":" << i << ",\"upper\":" << a.upper_node << ",\"lower\":" << a.lower_node
       << ",\"num_vertices\":" << a.num_vertices << "}"
       << (i + 1 < tree.arcs.size() ? "," : "") << "\n";
  }
  os << "  ]\n}\n";
  atomic_write(path, os.str());
}

}  // namespace hotopo
