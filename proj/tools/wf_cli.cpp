// Command-line driver: mesh generation, convergence and conservation
// studies, rectilinear sampling export, and macroelement inspection.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wf/bvh.hpp"
#include "wf/fields.hpp"
#include "wf/meshgen.hpp"
#include "wf/parallel.hpp"
#include "wf/sampling.hpp"
#include "wf/smoothing.hpp"
#include "wf/transfer.hpp"
#include "wf/wf_coefficients.hpp"

namespace fs = std::filesystem;
using namespace wf;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitValidation = 2;

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.14e", v);
  return buf;
}

struct GridRange {
  int lo = 1, hi = 3;
};

GridRange parse_grids(const std::string& s) {
  GridRange g;
  auto pos = s.find("..");
  if (pos == std::string::npos) {
    g.lo = g.hi = std::stoi(s);
  } else {
    g.lo = std::stoi(s.substr(0, pos));
    g.hi = std::stoi(s.substr(pos + 2));
  }
  if (g.lo < 1 || g.hi < g.lo) throw std::invalid_argument("bad --grids range: " + s);
  return g;
}

std::string mesh_path(const std::string& dir, const char* role, int level) {
  return dir + "/" + role + "_" + std::to_string(level) + ".msh";
}

TetMesh load_grid(const std::string& dir, const char* role, int level) {
  std::string path = mesh_path(dir, role, level);
  if (!fs::exists(path))
    throw MeshError("missing mesh file " + path + " (run gen-meshes first)");
  return load_mesh(path);
}

double mesh_h(const TetMesh& m) {
  double h = 0;
  for (int e = 0; e < m.n_tets(); ++e) h = std::max(h, diameter(m.tet_points(e)));
  return h;
}

// Point evaluators over a located piecewise field.
struct LocatedField {
  const PiecewiseField* f;
  const ElementBvh* bvh;
  double value(const Point3& p) const {
    Bary4 lam;
    int e = bvh->locate(p, &lam);
    if (e < 0) throw GeometryError("sample point outside mesh");
    return f->eval(e, p);
  }
  Vec3 gradient(const Point3& p) const {
    Bary4 lam;
    int e = bvh->locate(p, &lam);
    if (e < 0) throw GeometryError("sample point outside mesh");
    return f->grad(e, p);
  }
};

PiecewiseField run_transfer(const std::string& method, const AnalyticField& f,
                            const TetMesh& source, const TetMesh& target,
                            const TransferConfig& cfg) {
  PiecewiseField src = project_analytic(f, source, cfg.k);
  if (method == "wf") return transfer_wf(src, target, cfg);
  if (method == "linear") return transfer_linear(src, target, cfg.k);
  return transfer_l2(src, target, cfg.k, cfg.quad, cfg.adaptive);
}

int cmd_gen_meshes(const GridRange& grids, const std::string& out, unsigned seed) {
  fs::create_directories(out);
  for (int g = grids.lo; g <= grids.hi; ++g) {
    TetMesh src = grid_mesh(g, seed);
    TetMesh tgt = grid_mesh(g, seed + 1000);
    write_mesh(src, mesh_path(out, "source", g));
    write_mesh(tgt, mesh_path(out, "target", g));
    std::cout << "grid " << g << ": source " << src.n_tets() << " elements, target "
              << tgt.n_tets() << " elements, h " << sci(mesh_h(src)) << "\n";
  }
  return kExitOk;
}

int cmd_convergence(const std::string& field, int k, const std::string& method,
                    const TransferConfig& cfg0, const GridRange& grids,
                    const std::string& out) {
  AnalyticField f = field_by_name(field);
  TransferConfig cfg = cfg0;
  cfg.k = k;

  std::ofstream csv(out + "/convergence_" + field + "_" + method + "_k" +
                    std::to_string(k) + ".csv");
  csv << "grid,h,elements_source,elements_target,l2_solution,l2_gradient,"
         "order_solution,order_gradient\n";

  std::vector<double> hs, es, eg;
  for (int g = grids.lo; g <= grids.hi; ++g) {
    TetMesh source = load_grid(out, "source", g);
    TetMesh target = load_grid(out, "target", g);
    PiecewiseField result = run_transfer(method, f, source, target, cfg);
    ElementBvh bvh(target);
    LocatedField lf{&result, &bvh};
    double e_sol = l2_error([&](const Point3& p) { return lf.value(p); },
                            [&](const Point3& p) { return f.value(p); });
    double e_grad = l2_error([&](const Point3& p) { return norm(lf.gradient(p)); },
                             [&](const Point3& p) { return norm(f.gradient(p)); });
    hs.push_back(mesh_h(source));
    es.push_back(e_sol);
    eg.push_back(e_grad);
    size_t i = hs.size() - 1;
    double os = i ? std::log2(es[i - 1] / es[i]) : 0.0;
    double og = i ? std::log2(eg[i - 1] / eg[i]) : 0.0;
    csv << g << "," << sci(hs[i]) << "," << source.n_tets() << "," << target.n_tets()
        << "," << sci(e_sol) << "," << sci(e_grad) << "," << sci(os) << "," << sci(og)
        << "\n";
    std::cout << "grid " << g << ": l2 " << sci(e_sol) << " grad " << sci(e_grad);
    if (i) std::cout << " order " << os << " / " << og;
    std::cout << std::endl;
  }

  if (method == "wf" && hs.size() >= 2) {
    double lo_s = k == 1 ? 1.8 : 2.6, hi_s = k == 1 ? 2.3 : 3.3;
    double lo_g = k == 1 ? 0.8 : 1.7, hi_g = k == 1 ? 1.3 : 2.3;
    size_t last = hs.size() - 1;
    double os = std::log2(es[last - 1] / es[last]);
    double og = std::log2(eg[last - 1] / eg[last]);
    if (os < lo_s || os > hi_s || og < lo_g || og > hi_g) {
      std::cerr << "order bands missed: solution " << os << " (want [" << lo_s << ","
                << hi_s << "]), gradient " << og << " (want [" << lo_g << "," << hi_g
                << "])\n";
      return kExitValidation;
    }
  }
  return kExitOk;
}

struct MassRows {
  double sync, spline_rep, proj, total;
};

MassRows conserve_variant(const AnalyticField& f, const TetMesh& source,
                          const TetMesh& target, const TransferConfig& cfg) {
  PiecewiseField src = project_analytic(f, source, cfg.k);
  double m_src = mass(src);
  // The synchronization step only samples data; its mass delta is the
  // quadrature recomputation error of the unchanged source field.
  double d_sync = mass_quadrature(src, cfg.quad, cfg.adaptive) - m_src;

  WFSplitter splitter(source);
  double m_spline;
  SplineField spline = [&] {
    if (cfg.spline == SplineMode::global_c0) {
      GlobalDofTable table = build_global_dof_table(splitter);
      return SplineField(source, global_spline_projection(src, splitter, table));
    }
    auto frames = build_edge_frames(source);
    auto data = synchronize(src, frames);
    return SplineField(source, build_wf_splines(splitter, data));
  }();
  m_spline = spline.mass();

  TransferConfig tcfg = cfg;
  PiecewiseField out = transfer_wf(src, target, tcfg);
  double m_out = mass(out);

  return {d_sync, m_spline - m_src, m_out - m_spline, m_out - m_src};
}

int cmd_conserve(const std::string& field, int k, const GridRange& grids,
                 const std::string& out) {
  AnalyticField f = field_by_name(field);
  std::ofstream csv(out + "/conserve_" + field + "_k" + std::to_string(k) + ".csv");
  csv << "grid,variant,sync,spline_rep,l2_proj,total\n";
  struct Variant {
    const char* name;
    SplineMode spline;
    QuadMode quad;
  };
  const Variant variants[] = {
      {"geometric_c1", SplineMode::geometric_c1, QuadMode::fixed},
      {"geometric_c1_adaptive", SplineMode::geometric_c1, QuadMode::adaptive},
      {"global_c0_adaptive", SplineMode::global_c0, QuadMode::adaptive},
  };
  for (int g = grids.lo; g <= grids.hi; ++g) {
    TetMesh source = load_grid(out, "source", g);
    TetMesh target = load_grid(out, "target", g);
    for (const Variant& v : variants) {
      TransferConfig cfg;
      cfg.k = k;
      cfg.spline = v.spline;
      cfg.quad = v.quad;
      MassRows r = conserve_variant(f, source, target, cfg);
      csv << g << "," << v.name << "," << sci(r.sync) << "," << sci(r.spline_rep)
          << "," << sci(r.proj) << "," << sci(r.total) << "\n";
      std::cout << "grid " << g << " " << v.name << ": sync " << sci(r.sync)
                << " spline-rep " << sci(r.spline_rep) << " l2-proj " << sci(r.proj)
                << " total " << sci(r.total) << std::endl;
    }
  }
  return kExitOk;
}

int cmd_sample(const std::string& field, int n, const std::string& method, int k,
               const TransferConfig& cfg0, int grid, const std::string& out) {
  AnalyticField f = field_by_name(field);
  fs::create_directories(out);
  std::string stem = out + "/sample_" + field + "_n" + std::to_string(n);
  SampleGrid samples;
  if (method.empty()) {
    samples = sample_field(n, f.value, f.gradient);
  } else {
    TransferConfig cfg = cfg0;
    cfg.k = k;
    TetMesh source = load_grid(out, "source", grid);
    TetMesh target = load_grid(out, "target", grid);
    PiecewiseField result = run_transfer(method, f, source, target, cfg);
    ElementBvh bvh(target);
    LocatedField lf{&result, &bvh};
    samples = sample_field(
        n, [&](const Point3& p) { return lf.value(p); },
        [&](const Point3& p) { return lf.gradient(p); });
    stem += "_" + method;
  }
  write_sample_csv(samples, stem + ".csv");
  write_sample_vtk(samples, stem + ".vtk");
  std::cout << "wrote " << samples.value.size() << " samples to " << stem
            << ".{csv,vtk}" << std::endl;
  return kExitOk;
}

int cmd_split_inspect(const std::string& mesh_file, int elem) {
  TetMesh mesh = load_mesh(mesh_file);
  if (elem < 0 || elem >= mesh.n_tets()) {
    std::cerr << "element " << elem << " out of range (mesh has " << mesh.n_tets()
              << " elements)\n";
    return kExitError;
  }
  WFSplitter splitter(mesh);
  WFSplit s = splitter.build(elem);
  auto p3 = [](const Point3& p) {
    return sci(p.x) + " " + sci(p.y) + " " + sci(p.z);
  };
  std::cout << "element " << elem << " volume " << sci(mesh.tet_volume(elem)) << "\n";
  std::cout << "incenter " << p3(s.incenter) << "\n";
  std::cout << "kappa " << sci(s.kappa[0]) << " " << sci(s.kappa[1]) << " "
            << sci(s.kappa[2]) << " " << sci(s.kappa[3]) << "\n";
  for (int fidx = 0; fidx < 4; ++fidx) {
    std::cout << "face " << fidx << " split " << p3(s.split[fidx]) << " sigma "
              << sci(s.sigma[fidx][0]) << " " << sci(s.sigma[fidx][1]) << " "
              << sci(s.sigma[fidx][2]) << "\n";
  }
  double total = 0;
  for (int a = 0; a < 12; ++a) {
    double v = signed_volume(s.subtets[a]);
    total += v;
    std::cout << "subtet " << a << " volume " << sci(v) << "\n";
  }
  std::cout << "subtet volume sum " << sci(total) << "\n";
  return kExitOk;
}

int cmd_coeffs(const std::string& mesh_file, int elem, const std::string& field) {
  TetMesh mesh = load_mesh(mesh_file);
  if (elem < 0 || elem >= mesh.n_tets()) {
    std::cerr << "element " << elem << " out of range (mesh has " << mesh.n_tets()
              << " elements)\n";
    return kExitError;
  }
  AnalyticField f = field_by_name(field);
  auto frames = build_edge_frames(mesh);
  auto data = hermite_from_analytic(mesh, frames, f);
  WFSplitter splitter(mesh);
  auto c = compute_macro_coefficients(splitter.build(elem), mesh, data[elem]);
  for (int i = 0; i < 91; ++i)
    std::cout << "c" << (i + 1) << " " << sci(c[i]) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Worsey-Farin spline construction and solution transfer"};
  app.require_subcommand(1);

  std::string field = "u1", method = "wf", spline = "c1", quad = "fixed";
  std::string grids_str = "1..3", out = "meshes", mesh_file;
  int k = 1, threads = 0, n = 33, elem = 0, grid = 1;
  unsigned seed = 1;

  app.add_option("--threads", threads, "thread count (0 = default)");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--field", field)->check(CLI::IsMember({"u1", "u2"}));
    sub->add_option("--k", k)->check(CLI::Range(1, 2));
    sub->add_option("--method", method)->check(CLI::IsMember({"wf", "linear", "l2"}));
    sub->add_option("--spline", spline)->check(CLI::IsMember({"c1", "c0"}));
    sub->add_option("--quad", quad)->check(CLI::IsMember({"fixed", "adaptive"}));
    sub->add_option("--grids", grids_str, "grid level or range a..b");
    sub->add_option("--out", out, "output/mesh directory");
    sub->add_option("--seed", seed);
  };

  CLI::App* c_gen = app.add_subcommand("gen-meshes", "generate mesh sequences");
  add_common(c_gen);
  CLI::App* c_conv = app.add_subcommand("convergence", "L2 convergence study");
  add_common(c_conv);
  CLI::App* c_cons = app.add_subcommand("conserve", "mass conservation study");
  add_common(c_cons);
  CLI::App* c_samp = app.add_subcommand("sample", "tensor Gauss grid export");
  add_common(c_samp);
  c_samp->add_option("--n", n, "per-axis resolution");
  c_samp->add_option("--grid", grid, "grid level for transferred fields");
  c_samp->get_option("--method")->default_str("");
  CLI::App* c_split = app.add_subcommand("split-inspect", "print a 12-way split");
  c_split->add_option("--mesh", mesh_file)->required();
  c_split->add_option("--elem", elem);
  CLI::App* c_coef = app.add_subcommand("coeffs", "print macro coefficients");
  c_coef->add_option("--mesh", mesh_file)->required();
  c_coef->add_option("--elem", elem);
  c_coef->add_option("--field", field)->check(CLI::IsMember({"u1", "u2"}));

  method.clear();  // sample defaults to the analytic field
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitError : kExitOk;
  }

  if (threads > 0) set_num_threads(threads);

  TransferConfig cfg;
  cfg.quad = quad == "adaptive" ? QuadMode::adaptive : QuadMode::fixed;
  cfg.spline = spline == "c0" ? SplineMode::global_c0 : SplineMode::geometric_c1;

  try {
    GridRange grids = parse_grids(grids_str);
    if (c_gen->parsed()) return cmd_gen_meshes(grids, out, seed);
    if (c_conv->parsed()) {
      if (method.empty()) method = "wf";
      return cmd_convergence(field, k, method, cfg, grids, out);
    }
    if (c_cons->parsed()) return cmd_conserve(field, k, grids, out);
    if (c_samp->parsed()) return cmd_sample(field, n, method, k, cfg, grid, out);
    if (c_split->parsed()) return cmd_split_inspect(mesh_file, elem);
    if (c_coef->parsed()) return cmd_coeffs(mesh_file, elem, field);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitOk;
}
