#include "wf/transfer.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cmath>
#include <map>
#include <stdexcept>

#include "wf/parallel.hpp"

namespace wf {

namespace {

double factorial(int n) {
  static const double f[14] = {1,    1,     2,      6,       24,       120,
                               720,  5040,  40320,  362880,  3628800,  39916800,
                               479001600, 6227020800.0};
  return f[n];
}

// integral over T of lambda^gamma = 6V * prod(gamma_i!) / (|gamma|+3)!
// hence integral of B_a = 6V * k! / (k+3)! for every a, and
// integral of B_a B_b = (k!/a!)(k!/b!) 6V prod((a_i+b_i)!) / (2k+3)!.

double basis_integral_factor(int k) {
  return 6.0 * factorial(k) / factorial(k + 3);
}

Eigen::MatrixXd local_mass(int k, double volume) {
  const auto& mis = multi_indices(k);
  const int n = static_cast<int>(mis.size());
  Eigen::MatrixXd M(n, n);
  for (int a = 0; a < n; ++a) {
    double ca = factorial(k) / (factorial(mis[a][0]) * factorial(mis[a][1]) *
                                factorial(mis[a][2]) * factorial(mis[a][3]));
    for (int b = a; b < n; ++b) {
      double cb = factorial(k) / (factorial(mis[b][0]) * factorial(mis[b][1]) *
                                  factorial(mis[b][2]) * factorial(mis[b][3]));
      double prod = 1.0;
      for (int i = 0; i < 4; ++i) prod *= factorial(mis[a][i] + mis[b][i]);
      double v = ca * cb * 6.0 * volume * prod / factorial(2 * k + 3);
      M(a, b) = v;
      M(b, a) = v;
    }
  }
  return M;
}

// RHS vector of the local projection: b_a = integral of B_a(elem) * g.
std::vector<double> local_rhs(const TetPoints& elem, int k,
                              const std::function<double(const Point3&)>& g,
                              QuadMode quad, const AdaptiveConfig& acfg) {
  const auto& mis = multi_indices(k);
  const int n = static_cast<int>(mis.size());
  auto rule_on = [&](const TetPoints& sub) {
    std::vector<double> acc(n, 0.0);
    double vol = signed_volume(sub);
    for (const QuadPoint& q : tet_rule_56()) {
      Point3 p = sub[0] * q.bary.lambda[0] + sub[1] * q.bary.lambda[1] +
                 sub[2] * q.bary.lambda[2] + sub[3] * q.bary.lambda[3];
      Bary4 lam = barycentric(elem, p);
      double wg = q.weight * vol * g(p);
      for (int a = 0; a < n; ++a) acc[a] += wg * bernstein_basis(mis[a], lam);
    }
    return acc;
  };
  if (quad == QuadMode::fixed) return rule_on(elem);
  return integrate_adaptive_values<std::vector<double>>(elem, rule_on, acfg,
                                                        nullptr, nullptr);
}

std::vector<double> project_element(const TetPoints& elem, int k,
                                    const std::function<double(const Point3&)>& g,
                                    QuadMode quad, const AdaptiveConfig& acfg) {
  std::vector<double> b = local_rhs(elem, k, g, quad, acfg);
  double vol = signed_volume(elem);
  if (vol <= 0.0) throw GeometryError("degenerate element in projection");
  Eigen::MatrixXd M = local_mass(k, vol);
  Eigen::Map<Eigen::VectorXd> bv(b.data(), b.size());
  Eigen::VectorXd c = M.ldlt().solve(bv);
  return std::vector<double>(c.data(), c.data() + c.size());
}

PiecewiseField project_function(const std::function<double(const Point3&)>& g,
                                const TetMesh& mesh, int k, QuadMode quad,
                                const AdaptiveConfig& acfg) {
  if (k < 1 || k > 3)
    throw std::invalid_argument("projection degree must be 1..3");
  PiecewiseField out;
  out.mesh = &mesh;
  out.degree = k;
  out.coeffs.resize(mesh.n_tets());
  parallel_for(0, mesh.n_tets(), [&](int e) {
    out.coeffs[e] = project_element(mesh.tet_points(e), k, g, quad, acfg);
  });
  return out;
}

}  // namespace

SplineField::SplineField(const TetMesh& mesh, std::vector<MacroSpline> splines)
    : mesh_(&mesh),
      splines_(std::move(splines)),
      bvh_(std::make_unique<ElementBvh>(mesh)) {}

double SplineField::value(const Point3& p) const {
  int e = bvh_->locate(p);
  if (e < 0) throw GeometryError("spline evaluation outside the mesh");
  return eval_value(splines_[e], p);
}

Vec3 SplineField::gradient(const Point3& p) const {
  int e = bvh_->locate(p);
  if (e < 0) throw GeometryError("spline evaluation outside the mesh");
  return eval_gradient(splines_[e], p);
}

double SplineField::mass() const {
  const double factor = basis_integral_factor(3);
  double total = 0.0;
  for (const MacroSpline& s : splines_) {
    for (int alpha = 0; alpha < 12; ++alpha) {
      auto c = subtet_coeffs(std::span<const double, 91>(s.c), alpha);
      double sum = 0.0;
      for (double v : c) sum += v;
      total += factor * signed_volume(s.split.subtets[alpha]) * sum;
    }
  }
  return total;
}

std::vector<MacroSpline> build_wf_splines(const WFSplitter& splitter,
                                          const std::vector<HermiteData>& data) {
  const TetMesh& mesh = splitter.mesh();
  std::vector<MacroSpline> out(mesh.n_tets());
  parallel_for(0, mesh.n_tets(), [&](int e) {
    out[e].split = splitter.build(e);
    out[e].c = compute_macro_coefficients(out[e].split, mesh, data[e]);
  });
  return out;
}

PiecewiseField project_analytic(const AnalyticField& f, const TetMesh& mesh,
                                int k, QuadMode quad,
                                const AdaptiveConfig& acfg) {
  return project_function(f.value, mesh, k, quad, acfg);
}

PiecewiseField transfer_wf(const PiecewiseField& source, const TetMesh& target,
                           const TransferConfig& cfg) {
  const TetMesh& smesh = *source.mesh;
  WFSplitter splitter(smesh);
  std::vector<MacroSpline> splines;
  if (cfg.spline == SplineMode::geometric_c1) {
    auto frames = build_edge_frames(smesh);
    auto data = synchronize(source, frames);
    splines = build_wf_splines(splitter, data);
  } else {
    GlobalDofTable table = build_global_dof_table(splitter);
    splines = global_spline_projection(source, splitter, table);
  }
  SplineField spline(smesh, std::move(splines));
  auto g = [&spline](const Point3& p) { return spline.value(p); };
  return project_function(g, target, cfg.k, cfg.quad, cfg.adaptive);
}

PiecewiseField transfer_linear(const PiecewiseField& source,
                               const TetMesh& target, int k) {
  const TetMesh& smesh = *source.mesh;
  // Synchronized vertex values (ascending element order).
  std::vector<double> vval(smesh.n_vertices());
  parallel_for(0, smesh.n_vertices(), [&](int v) {
    double s = 0.0;
    for (int e : smesh.vertex_tets[v]) s += source.eval(e, smesh.vertices[v]);
    vval[v] = s / smesh.vertex_tets[v].size();
  });
  ElementBvh bvh(smesh);
  auto g = [&](const Point3& p) {
    Bary4 lam;
    int e = bvh.locate(p, &lam);
    if (e < 0) throw GeometryError("interpolation outside the source mesh");
    double s = 0.0;
    for (int i = 0; i < 4; ++i) s += lam.lambda[i] * vval[smesh.tets[e][i]];
    return s;
  };
  return project_function(g, target, k, QuadMode::fixed, {});
}

PiecewiseField transfer_l2(const PiecewiseField& source, const TetMesh& target,
                           int k, QuadMode quad, const AdaptiveConfig& acfg) {
  const TetMesh& smesh = *source.mesh;
  ElementBvh bvh(smesh);
  auto g = [&](const Point3& p) {
    int e = bvh.locate(p);
    if (e < 0) throw GeometryError("sampling outside the source mesh");
    return source.eval(e, p);
  };
  return project_function(g, target, k, quad, acfg);
}

namespace {

// Structural classification of the 91 canonical coefficients, used to give
// shared nodes (vertices, edge rings, face lattices) one global id.
struct NodeClass {
  enum Kind { vertex, edge_ring, face_split, face_r, face_r2, face_interior,
              interior } kind = interior;
  int a = 0, b = 0;  // meaning depends on kind (local vertex/face indices)
};

const std::array<NodeClass, 92>& node_classes() {
  static const std::array<NodeClass, 92> table = [] {
    std::array<NodeClass, 92> t{};
    for (int i = 0; i < 92; ++i) t[i] = {NodeClass::interior, 0, 0};
    auto set = [&](int c, NodeClass::Kind k, int a, int b) {
      t[c] = {k, a, b};
    };
    for (int v = 0; v < 4; ++v) set(v + 1, NodeClass::vertex, v, 0);
    // (c, from, to): node at (2 p_from + p_to)/3
    const int er[12][3] = {{33, 0, 1}, {34, 1, 0}, {35, 1, 2}, {36, 2, 1},
                           {37, 2, 3}, {38, 3, 2}, {39, 2, 0}, {40, 0, 2},
                           {41, 1, 3}, {42, 3, 1}, {43, 3, 0}, {44, 0, 3}};
    for (auto& e : er) set(e[0], NodeClass::edge_ring, e[1], e[2]);
    const int fsplit[4] = {5, 12, 19, 26};
    // (c, local vertex) per face: node at (2 p_v + split)/3
    const int fr[4][3][2] = {{{9, 1}, {10, 2}, {11, 0}},
                             {{16, 3}, {17, 2}, {18, 1}},
                             {{23, 0}, {24, 2}, {25, 3}},
                             {{30, 1}, {31, 0}, {32, 3}}};
    // node at (p_v + 2 split)/3
    const int fr2[4][3][2] = {{{6, 1}, {7, 2}, {8, 0}},
                              {{13, 3}, {14, 2}, {15, 1}},
                              {{20, 0}, {21, 2}, {22, 3}},
                              {{27, 1}, {28, 0}, {29, 3}}};
    // (c, va, vb): node at (p_va + p_vb + split)/3
    const int fi[4][3][3] = {{{61, 0, 1}, {62, 1, 2}, {63, 0, 2}},
                             {{64, 1, 3}, {65, 2, 3}, {66, 1, 2}},
                             {{67, 0, 3}, {68, 0, 2}, {69, 2, 3}},
                             {{71, 0, 1}, {72, 0, 3}, {70, 1, 3}}};
    for (int f = 0; f < 4; ++f) {
      set(fsplit[f], NodeClass::face_split, f, 0);
      for (int j = 0; j < 3; ++j) {
        set(fr[f][j][0], NodeClass::face_r, f, fr[f][j][1]);
        set(fr2[f][j][0], NodeClass::face_r2, f, fr2[f][j][1]);
        set(fi[f][j][0], NodeClass::face_interior, f,
            fi[f][j][1] * 4 + fi[f][j][2]);
      }
    }
    return t;
  }();
  return table;
}

}  // namespace

GlobalDofTable build_global_dof_table(const WFSplitter& splitter) {
  const TetMesh& mesh = splitter.mesh();
  GlobalDofTable out;
  out.macro_dofs.resize(mesh.n_tets());

  std::map<std::array<long long, 5>, int> ids;
  auto id_of = [&](std::array<long long, 5> key) {
    auto [it, inserted] = ids.emplace(key, out.n_dofs);
    if (inserted) ++out.n_dofs;
    return it->second;
  };

  const auto& classes = node_classes();
  for (int e = 0; e < mesh.n_tets(); ++e) {
    const Tet& t = mesh.tets[e];
    for (int c = 1; c <= 91; ++c) {
      const NodeClass& nc = classes[c];
      std::array<long long, 5> key{};
      switch (nc.kind) {
        case NodeClass::vertex:
          key = {0, t[nc.a], 0, 0, 0};
          break;
        case NodeClass::edge_ring:
          key = {1, std::min(t[nc.a], t[nc.b]), std::max(t[nc.a], t[nc.b]),
                 t[nc.a], 0};
          break;
        case NodeClass::face_split:
        case NodeClass::face_r:
        case NodeClass::face_r2:
        case NodeClass::face_interior: {
          std::array<int, 3> fv = {t[kFaceVerts[nc.a][0]],
                                   t[kFaceVerts[nc.a][1]],
                                   t[kFaceVerts[nc.a][2]]};
          std::sort(fv.begin(), fv.end());
          long long sub = 0;
          if (nc.kind == NodeClass::face_r || nc.kind == NodeClass::face_r2) {
            sub = t[nc.b];
          } else if (nc.kind == NodeClass::face_interior) {
            int va = t[nc.b / 4], vb = t[nc.b % 4];
            sub = 100000LL * std::min(va, vb) + std::max(va, vb);
          }
          key = {2 + nc.kind - NodeClass::face_split, fv[0],
                 100000LL * fv[1] + fv[2], sub, 0};
          break;
        }
        case NodeClass::interior:
          key = {9, e, c, 0, 0};
          break;
      }
      out.macro_dofs[e][c - 1] = id_of(key);
    }
  }
  return out;
}

std::vector<MacroSpline> global_spline_projection(const PiecewiseField& source,
                                                  const WFSplitter& splitter,
                                                  const GlobalDofTable& table) {
  const TetMesh& mesh = splitter.mesh();
  const int n = table.n_dofs;
  const auto& mis3 = multi_indices(3);

  std::vector<WFSplit> splits(mesh.n_tets());
  parallel_for(0, mesh.n_tets(), [&](int e) { splits[e] = splitter.build(e); });

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<size_t>(mesh.n_tets()) * 12 * 20 * 20);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);

  Eigen::MatrixXd Mref = local_mass(3, 1.0);  // scales linearly with volume
  for (int e = 0; e < mesh.n_tets(); ++e) {
    const auto& cmap = coeff_map();
    for (int alpha = 0; alpha < 12; ++alpha) {
      const TetPoints& sub = splits[e].subtets[alpha];
      double vol = signed_volume(sub);
      int gdof[20];
      for (int a = 0; a < 20; ++a)
        gdof[a] = table.macro_dofs[e][cmap[alpha][a]];
      for (int a = 0; a < 20; ++a)
        for (int b = 0; b < 20; ++b)
          trips.emplace_back(gdof[a], gdof[b], vol * Mref(a, b));
      // RHS: the source polynomial restricted to this subtet has degree
      // <= 3, so the fixed degree-9 rule integrates B_a * u exactly.
      std::array<double, 20> bl{};
      for (const QuadPoint& q : tet_rule_56()) {
        Point3 p = sub[0] * q.bary.lambda[0] + sub[1] * q.bary.lambda[1] +
                   sub[2] * q.bary.lambda[2] + sub[3] * q.bary.lambda[3];
        double wg = q.weight * vol * source.eval(e, p);
        for (int a = 0; a < 20; ++a) bl[a] += wg * bernstein_basis(mis3[a], q.bary);
      }
      for (int a = 0; a < 20; ++a) rhs[gdof[a]] += bl[a];
    }
  }

  Eigen::SparseMatrix<double> M(n, n);
  M.setFromTriplets(trips.begin(), trips.end());

  // Jacobi-preconditioned conjugate gradients.
  Eigen::VectorXd dinv(n);
  for (int i = 0; i < n; ++i) dinv[i] = 1.0 / M.coeff(i, i);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd r = rhs;
  Eigen::VectorXd z = dinv.asDiagonal() * r;
  Eigen::VectorXd p = z;
  double rz = r.dot(z);
  const double rhs_norm = rhs.norm();
  const int max_iter = static_cast<int>(50.0 * std::sqrt(double(n))) + 10;
  bool ok = rhs_norm == 0.0;
  for (int it = 0; it < max_iter && !ok; ++it) {
    Eigen::VectorXd Mp = M * p;
    double alpha = rz / p.dot(Mp);
    x += alpha * p;
    r -= alpha * Mp;
    if (r.norm() <= 1e-12 * rhs_norm) {
      ok = true;
      break;
    }
    z = dinv.asDiagonal() * r;
    double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  if (!ok)
    throw std::runtime_error(
        "global projection CG failed to converge: relative residual " +
        std::to_string(r.norm() / rhs_norm) + " after " +
        std::to_string(max_iter) + " iterations");

  std::vector<MacroSpline> out(mesh.n_tets());
  parallel_for(0, mesh.n_tets(), [&](int e) {
    out[e].split = splits[e];
    for (int c = 0; c < 91; ++c) out[e].c[c] = x[table.macro_dofs[e][c]];
  });
  return out;
}

double mass(const PiecewiseField& field) {
  const TetMesh& mesh = *field.mesh;
  const double factor = basis_integral_factor(field.degree);
  double total = 0.0;
  for (int e = 0; e < mesh.n_tets(); ++e) {
    double sum = 0.0;
    for (double v : field.coeffs[e]) sum += v;
    total += factor * mesh.tet_volume(e) * sum;
  }
  return total;
}

double mass_quadrature(const PiecewiseField& field, QuadMode quad,
                       const AdaptiveConfig& acfg) {
  const TetMesh& mesh = *field.mesh;
  double total = 0.0;
  for (int e = 0; e < mesh.n_tets(); ++e) {
    auto f = [&](const Point3& p) { return field.eval(e, p); };
    if (quad == QuadMode::fixed) {
      total += integrate_tet(mesh.tet_points(e), f);
    } else {
      total += integrate_adaptive(mesh.tet_points(e), f, acfg).value;
    }
  }
  return total;
}

double mass_analytic(const AnalyticField& f, const TetMesh& mesh,
                     const AdaptiveConfig& acfg) {
  std::vector<double> per_elem(mesh.n_tets());
  parallel_for(0, mesh.n_tets(), [&](int e) {
    per_elem[e] =
        integrate_adaptive(mesh.tet_points(e), f.value, acfg).value;
  });
  double total = 0.0;
  for (double v : per_elem) total += v;
  return total;
}

double l2_error(const std::function<double(const Point3&)>& candidate,
                const std::function<double(const Point3&)>& exact, int n) {
  std::vector<double> nodes, weights;
  gauss_legendre(n, nodes, weights);
  std::vector<double> slice(n, 0.0);
  parallel_for(0, n, [&](int i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        Point3 p{nodes[i], nodes[j], nodes[k]};
        double d = candidate(p) - exact(p);
        s += weights[i] * weights[j] * weights[k] * d * d;
      }
    }
    slice[i] = s;
  });
  double total = 0.0;
  for (double v : slice) total += v;
  return std::sqrt(total);
}

}  // namespace wf
