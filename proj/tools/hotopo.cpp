// Command-line pipeline driver.  Exit codes: 0 success, 1 data error,
// 2 usage error.  All outputs are written atomically and deterministically.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hotopo/errors.hpp"
#include "hotopo/field.hpp"
#include "hotopo/field_io.hpp"
#include "hotopo/grid.hpp"
#include "hotopo/io_util.hpp"
#include "hotopo/mesh.hpp"
#include "hotopo/siac.hpp"
#include "hotopo/topology.hpp"
#include "hotopo/transform.hpp"

namespace {

using namespace hotopo;

std::pair<int, int> parse_res(const std::string& s) {
  const auto x = s.find('x');
  if (x == std::string::npos) throw CLI::ValidationError("--res", "expected <nx>x<ny>");
  int nx = 0, ny = 0;
  try {
    nx = std::stoi(s.substr(0, x));
    ny = std::stoi(s.substr(x + 1));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--res", "expected <nx>x<ny>");
  }
  if (nx < 1 || ny < 1) throw CLI::ValidationError("--res", "resolution must be positive");
  return {nx, ny};
}

std::optional<BBox> parse_bbox(const std::string& s) {
  if (s.empty()) return std::nullopt;
  double v[4];
  char sep;
  std::istringstream is(s);
  if (!(is >> v[0] >> sep >> v[1] >> sep >> v[2] >> sep >> v[3])) {
    throw CLI::ValidationError("--bbox", "expected x0,y0,x1,y1");
  }
  BBox b;
  b.expand({v[0], v[1]});
  b.expand({v[2], v[3]});
  return b;
}

// Scalar inputs for the topology commands are either SGRID files or PLField
// JSON; dispatch on the magic bytes.
bool is_sgrid(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  char magic[5] = {};
  in.read(magic, 5);
  return std::string(magic, magic + in.gcount()) == "SGRID";
}

struct TopoInput {
  bool grid;
  ScalarGrid sg;
  PLField pl;
  TriangulatedField tf;
};

TopoInput load_topo_input(const std::string& path) {
  if (is_sgrid(path)) {
    ScalarGrid g = read_sgrid(path);
    TriangulatedField tf = triangulate_grid(g);
    return {true, std::move(g), {}, std::move(tf)};
  }
  PLField f = read_plfield(path);
  TriangulatedField tf = triangulate_plfield(f);
  return {false, {}, std::move(f), std::move(tf)};
}

void write_labels(const TopoInput& in, const std::vector<int>& labels, const std::string& path) {
  if (in.grid) {
    write_segm(in.sg, labels, path);
  } else {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < labels.size(); ++i) os << (i ? "," : "") << labels[i];
    os << "]\n";
    atomic_write(path, os.str());
  }
}

int run(int argc, char** argv) {
  CLI::App app{"High-order field transformation and level-set topology pipeline"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  // mesh
  auto* cmd_mesh = app.add_subcommand("mesh", "Generate a demo mesh over [0,1]^2");
  std::string mesh_grid = "10x10", mesh_out;
  double mesh_jitter = 0.0;
  std::uint64_t mesh_seed = 0;
  bool mesh_tri = false, mesh_quad = false;
  cmd_mesh->add_option("--grid", mesh_grid, "Cells per axis, <nx>x<ny>");
  cmd_mesh->add_option("--jitter", mesh_jitter, "Interior jitter as a fraction of spacing (< 0.3)");
  cmd_mesh->add_option("--seed", mesh_seed, "RNG seed");
  cmd_mesh->add_flag("--tri", mesh_tri, "Triangulate (2 triangles per cell)");
  cmd_mesh->add_flag("--quad", mesh_quad, "Keep quadrilateral cells");
  cmd_mesh->add_option("--out", mesh_out, "Output mesh file")->required();

  // project
  auto* cmd_project = app.add_subcommand("project", "L2-project analytic fields onto a mesh");
  std::vector<std::string> proj_fields;
  std::string proj_mesh, proj_out;
  int proj_degree = 2;
  cmd_project->add_option("--field", proj_fields, "Analytic field name (repeatable)")->required();
  cmd_project->add_option("--mesh", proj_mesh, "Input mesh file")->required();
  cmd_project->add_option("--degree", proj_degree, "Polynomial degree per element");
  cmd_project->add_option("--out", proj_out, "Output field file")->required();

  // sample
  auto* cmd_sample = app.add_subcommand("sample", "Sample a field on an equispaced grid");
  std::string samp_in, samp_name, samp_res = "100x100", samp_bbox, samp_out;
  cmd_sample->add_option("--in", samp_in, "Input field file")->required();
  cmd_sample->add_option("--name", samp_name, "Field name (default: first)");
  cmd_sample->add_option("--res", samp_res, "Grid resolution <nx>x<ny>");
  cmd_sample->add_option("--bbox", samp_bbox, "x0,y0,x1,y1 (default: mesh bounds)");
  cmd_sample->add_option("--out", samp_out, "Output SGRID file")->required();

  // subdivide
  auto* cmd_subdiv = app.add_subcommand("subdivide", "Subdivide into averaged linear triangles");
  std::string sub_in, sub_name, sub_out;
  int sub_m = 0;
  cmd_subdiv->add_option("--in", sub_in, "Input field file")->required();
  cmd_subdiv->add_option("--name", sub_name, "Field name (default: first)");
  cmd_subdiv->add_option("--factor", sub_m, "Refinement factor m (default: degree+1)");
  cmd_subdiv->add_option("--out", sub_out, "Output PLField JSON")->required();

  // lsiac
  auto* cmd_lsiac = app.add_subcommand("lsiac", "Line-SIAC filter a field onto a grid");
  std::string ls_in, ls_name, ls_res = "100x100", ls_bbox, ls_out;
  LsiacOptions ls_opt;
  bool ls_adaptive = false;
  cmd_lsiac->add_option("--in", ls_in, "Input field file")->required();
  cmd_lsiac->add_option("--name", ls_name, "Field name (default: first)");
  cmd_lsiac->add_option("--res", ls_res, "Grid resolution <nx>x<ny>");
  cmd_lsiac->add_option("--bbox", ls_bbox, "x0,y0,x1,y1 (default: mesh bounds)");
  cmd_lsiac->add_option("--theta", ls_opt.theta_deg, "Filter angle in degrees");
  cmd_lsiac->add_option("--ksiac", ls_opt.k, "Kernel half-order k");
  cmd_lsiac->add_option("--spline-order", ls_opt.ell, "B-spline order (default k+1)");
  cmd_lsiac->add_option("--deriv", ls_opt.deriv, "0: value filter, 1: derivative filter")
      ->check(CLI::Range(0, 1));
  cmd_lsiac->add_flag("--adaptive", ls_adaptive, "Adaptive characteristic length (default)");
  cmd_lsiac->add_option("--H", ls_opt.H, "Explicit characteristic length");
  cmd_lsiac->add_option("--out", ls_out, "Output SGRID file")->required();

  // vorticity
  auto* cmd_vort = app.add_subcommand("vorticity", "Vorticity from a velocity field");
  std::string vo_method = "fd", vo_u, vo_v, vo_in, vo_uname = "u", vo_vname = "v";
  std::string vo_res = "100x100", vo_bbox, vo_out;
  int vo_k = 2, vo_ell = 3;
  cmd_vort->add_option("--method", vo_method, "fd | subdiv | lsiac")
      ->check(CLI::IsMember({"fd", "subdiv", "lsiac"}));
  cmd_vort->add_option("--u", vo_u, "u input (SGRID for fd, PLField for subdiv)");
  cmd_vort->add_option("--v", vo_v, "v input (SGRID for fd, PLField for subdiv)");
  cmd_vort->add_option("--in", vo_in, "Field file with both components (lsiac)");
  cmd_vort->add_option("--uname", vo_uname, "u field name (lsiac)");
  cmd_vort->add_option("--vname", vo_vname, "v field name (lsiac)");
  cmd_vort->add_option("--res", vo_res, "Grid resolution (lsiac)");
  cmd_vort->add_option("--bbox", vo_bbox, "x0,y0,x1,y1 (lsiac)");
  cmd_vort->add_option("--ksiac", vo_k, "Kernel half-order (lsiac)");
  cmd_vort->add_option("--spline-order", vo_ell, "B-spline order (lsiac)");
  cmd_vort->add_option("--out", vo_out, "Output file")->required();

  // normalize
  auto* cmd_norm = app.add_subcommand("normalize", "Affine-map samples onto [0,1]");
  std::string no_in, no_out;
  cmd_norm->add_option("--in", no_in, "Input SGRID or PLField file")->required();
  cmd_norm->add_option("--out", no_out, "Output file (same format)")->required();

  // topo group
  auto* cmd_topo = app.add_subcommand("topo", "Level-set topology of PL scalar data");
  cmd_topo->require_subcommand(1);

  auto* cmd_crit = cmd_topo->add_subcommand("critical", "Classify critical points");
  std::string cr_in, cr_out;
  cmd_crit->add_option("--in", cr_in, "Input SGRID or PLField file")->required();
  cmd_crit->add_option("--out", cr_out, "Output JSON")->required();

  auto* cmd_pers = cmd_topo->add_subcommand("persistence", "Persistence pairs");
  std::string pe_in, pe_out;
  cmd_pers->add_option("--in", pe_in, "Input SGRID or PLField file")->required();
  cmd_pers->add_option("--out", pe_out, "Output pairs JSON")->required();

  auto* cmd_curve = cmd_topo->add_subcommand("curve", "Persistence curve from pairs");
  std::string cu_in, cu_out;
  double cu_min = 0.0, cu_max = -1.0;
  int cu_steps = 200;
  cmd_curve->add_option("--in", cu_in, "Input pairs JSON")->required();
  cmd_curve->add_option("--min", cu_min, "Lowest threshold");
  cmd_curve->add_option("--max", cu_max, "Highest threshold (default: max persistence)");
  cmd_curve->add_option("--steps", cu_steps, "Number of thresholds")->check(CLI::PositiveNumber);
  cmd_curve->add_option("--out", cu_out, "Output CSV")->required();

  auto* cmd_simp = cmd_topo->add_subcommand("simplify", "Persistence-driven simplification");
  std::string si_in, si_out;
  double si_eps = 0.0;
  cmd_simp->add_option("--in", si_in, "Input SGRID or PLField file")->required();
  cmd_simp->add_option("--epsilon", si_eps, "Persistence threshold")->required();
  cmd_simp->add_option("--out", si_out, "Output file (same format)")->required();

  auto* cmd_tree = cmd_topo->add_subcommand("contour-tree", "Contour tree (and segmentation)");
  std::string tr_in, tr_out, tr_seg;
  cmd_tree->add_option("--in", tr_in, "Input SGRID or PLField file")->required();
  cmd_tree->add_option("--segmentation", tr_seg, "Optional per-vertex label output");
  cmd_tree->add_option("--out", tr_out, "Output tree JSON")->required();

  auto* cmd_seg = cmd_topo->add_subcommand("segment", "Contour-tree segmentation");
  std::string se_in, se_out, se_summary;
  int se_min_size = 0;
  bool se_leaf_only = false;
  cmd_seg->add_option("--in", se_in, "Input SGRID or PLField file")->required();
  cmd_seg->add_option("--out", se_out, "Per-vertex label output (SEGM or JSON)")->required();
  cmd_seg->add_option("--summary", se_summary, "Per-segment metadata JSON");
  cmd_seg->add_option("--min-size", se_min_size, "Drop segments below this vertex count");
  cmd_seg->add_flag("--leaf-only", se_leaf_only, "Keep only leaf-adjacent segments");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cmd_mesh) {
      if (mesh_tri && mesh_quad) throw InvalidSpec("mesh: --tri and --quad are exclusive");
      auto [nx, ny] = parse_res(mesh_grid);
      Mesh mesh = make_demo_mesh(nx, ny, mesh_jitter, mesh_seed, !mesh_quad);
      write_mesh_file(mesh, mesh_out);
    } else if (*cmd_project) {
      FieldFile in = read_field_file(proj_mesh);
      std::vector<HighOrderField> fields;
      std::vector<const HighOrderField*> ptrs;
      for (const auto& name : proj_fields) {
        fields.push_back(project(analytic_field(name).fn, in.mesh, proj_degree));
      }
      for (const auto& f : fields) ptrs.push_back(&f);
      write_field_file(*in.mesh, proj_fields, ptrs, proj_out);
    } else if (*cmd_sample) {
      FieldFile in = read_field_file(samp_in);
      const HighOrderField& f = samp_name.empty() ? in.fields.at(0) : in.field(samp_name);
      auto [nx, ny] = parse_res(samp_res);
      write_sgrid(sample_grid(f, {nx, ny, parse_bbox(samp_bbox)}), samp_out);
    } else if (*cmd_subdiv) {
      FieldFile in = read_field_file(sub_in);
      const HighOrderField& f = sub_name.empty() ? in.fields.at(0) : in.field(sub_name);
      write_plfield(subdivide(f, sub_m), sub_out);
    } else if (*cmd_lsiac) {
      FieldFile in = read_field_file(ls_in);
      const HighOrderField& f = ls_name.empty() ? in.fields.at(0) : in.field(ls_name);
      auto [nx, ny] = parse_res(ls_res);
      if (ls_adaptive) ls_opt.H = 0.0;
      write_sgrid(lsiac_grid(f, {nx, ny, parse_bbox(ls_bbox)}, ls_opt), ls_out);
    } else if (*cmd_vort) {
      if (vo_method == "fd") {
        if (vo_u.empty() || vo_v.empty()) throw InvalidSpec("vorticity fd: need --u and --v");
        write_sgrid(vorticity_grid_fd(read_sgrid(vo_u), read_sgrid(vo_v)), vo_out);
      } else if (vo_method == "subdiv") {
        if (vo_u.empty() || vo_v.empty()) throw InvalidSpec("vorticity subdiv: need --u and --v");
        write_plfield(vorticity_subdivided(read_plfield(vo_u), read_plfield(vo_v)), vo_out);
      } else {
        if (vo_in.empty()) throw InvalidSpec("vorticity lsiac: need --in");
        FieldFile in = read_field_file(vo_in);
        auto [nx, ny] = parse_res(vo_res);
        write_sgrid(vorticity_lsiac(in.field(vo_uname), in.field(vo_vname),
                                    {nx, ny, parse_bbox(vo_bbox)}, vo_k, vo_ell),
                    vo_out);
      }
    } else if (*cmd_norm) {
      if (is_sgrid(no_in)) {
        write_sgrid(normalize(read_sgrid(no_in)), no_out);
      } else {
        write_plfield(normalize(read_plfield(no_in)), no_out);
      }
    } else if (*cmd_crit) {
      TopoInput in = load_topo_input(cr_in);
      write_critical_points(classify_critical_points(in.tf), in.tf, cr_out);
    } else if (*cmd_pers) {
      TopoInput in = load_topo_input(pe_in);
      write_pairs(persistence_pairs(in.tf), pe_out);
    } else if (*cmd_curve) {
      auto pairs = read_pairs(cu_in);
      double hi = cu_max;
      if (hi < 0) {
        hi = 0;
        for (const auto& p : pairs) hi = std::max(hi, p.persistence());
      }
      std::vector<double> thresholds;
      for (int i = 0; i < cu_steps; ++i) {
        thresholds.push_back(cu_steps == 1 ? cu_min
                                           : cu_min + (hi - cu_min) * i / (cu_steps - 1));
      }
      write_curve(persistence_curve(pairs, thresholds), cu_out);
    } else if (*cmd_simp) {
      TopoInput in = load_topo_input(si_in);
      TriangulatedField g = simplify(in.tf, si_eps);
      if (in.grid) {
        for (size_t i = 0; i < in.sg.values.size(); ++i) in.sg.values[i] = g.value((int)i);
        write_sgrid(in.sg, si_out);
      } else {
        for (size_t i = 0; i < in.pl.values.size(); ++i) in.pl.values[i] = g.value((int)i);
        write_plfield(in.pl, si_out);
      }
    } else if (*cmd_tree) {
      TopoInput in = load_topo_input(tr_in);
      ContourTree tree = contour_tree(in.tf);
      write_tree(tree, tr_out);
      if (!tr_seg.empty()) write_labels(in, tree.vertex_arc, tr_seg);
    } else if (*cmd_seg) {
      TopoInput in = load_topo_input(se_in);
      ContourTree tree = contour_tree(in.tf);
      Segmentation seg = segmentation(tree, in.tf);
      std::vector<char> keep(seg.segments.size(), 1);
      for (const auto& s : seg.segments) {
        if ((se_leaf_only && !s.leaf) || s.size < se_min_size) keep[s.arc] = 0;
      }
      std::vector<int> labels = seg.labels;
      for (auto& l : labels) {
        if (l >= 0 && !keep[l]) l = -1;
      }
      write_labels(in, labels, se_out);
      if (!se_summary.empty()) {
        std::ostringstream os;
        os << "[\n";
        bool first = true;
        for (const auto& s : seg.segments) {
          if (!keep[s.arc]) continue;
          if (!first) os << ",\n";
          first = false;
          os << "  {\"arc\":" << s.arc << ",\"size\":" << s.size << ",\"leaf\":"
             << (s.leaf ? "true" : "false") << ",\"depth\":" << s.depth << ",\"extremum_value\":";
          if (std::isnan(s.extremum_value)) {
            os << "null";
          } else {
            os << format_double(s.extremum_value);
          }
          os << "}";
        }
        os << "\n]\n";
        atomic_write(se_summary, os.str());
      }
    }
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
