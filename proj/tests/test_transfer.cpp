#include <random>
#include <set>

#include "doctest.h"
#include "wf/bvh.hpp"
#include "wf/fields.hpp"
#include "wf/meshgen.hpp"
#include "wf/parallel.hpp"
#include "wf/sampling.hpp"
#include "wf/transfer.hpp"

using namespace wf;

namespace {

AnalyticField poly_field(int k) {
  AnalyticField f;
  switch (k) {
    case 1:
      f.value = [](const Point3& p) { return 2 * p.x - p.y + 0.5 * p.z + 1; };
      f.gradient = [](const Point3&) { return Vec3{2, -1, 0.5}; };
      break;
    case 2:
      f.value = [](const Point3& p) { return p.x * p.y + p.z * p.z - p.x; };
      f.gradient = [](const Point3& p) {
        return Vec3{p.y - 1, p.x, 2 * p.z};
      };
      break;
    default:
      f.value = [](const Point3& p) { return p.x * p.x * p.z + p.y * p.y * p.y; };
      f.gradient = [](const Point3& p) {
        return Vec3{2 * p.x * p.z, 3 * p.y * p.y, p.x * p.x};
      };
      break;
  }
  return f;
}

double max_field_diff(const PiecewiseField& f, const AnalyticField& g,
                      unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0;
  for (int e = 0; e < f.mesh->n_tets(); e += 5) {
    TetPoints t = f.mesh->tet_points(e);
    for (int trial = 0; trial < 10; ++trial) {
      double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
      double s = a + b + c + d;
      Point3 p = t[0] * (a / s) + t[1] * (b / s) + t[2] * (c / s) + t[3] * (d / s);
      worst = std::max(worst, std::abs(f.eval(e, p) - g.value(p)));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("local projection reproduces polynomials of the target degree") {
  TetMesh m = grid_mesh(1, 5);
  for (int k = 1; k <= 3; ++k) {
    AnalyticField f = poly_field(k);
    PiecewiseField proj = project_analytic(f, m, k);
    CHECK(max_field_diff(proj, f, 100 + k) <= 1e-12);
  }
}

TEST_CASE("mass of the constant field is the domain volume") {
  TetMesh m = grid_mesh(1, 5);
  AnalyticField one;
  one.value = [](const Point3&) { return 1.0; };
  one.gradient = [](const Point3&) { return Vec3{}; };
  PiecewiseField f = project_analytic(one, m, 1);
  CHECK(mass(f) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(mass_quadrature(f, QuadMode::fixed) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("projected mass matches the adaptive integral of the source") {
  TetMesh m = grid_mesh(1, 5);
  AnalyticField u1 = field_u1();
  PiecewiseField f = project_analytic(u1, m, 2);
  double m_proj = mass(f);
  double m_exact = mass_analytic(u1, m);
  // L2 projection conserves mass up to quadrature error of the rhs
  CHECK(std::abs(m_proj - m_exact) < 1e-7);
}

TEST_CASE("transfer between identical meshes is the identity on P_k") {
  TetMesh source = grid_mesh(1, 5);
  TetMesh target = grid_mesh(1, 5);
  for (int k = 1; k <= 2; ++k) {
    AnalyticField f = poly_field(k);
    PiecewiseField src = project_analytic(f, source, k);
    TransferConfig cfg;
    cfg.k = k;
    PiecewiseField out = transfer_wf(src, target, cfg);
    CHECK(max_field_diff(out, f, 200 + k) <= 1e-10);
    PiecewiseField lin = transfer_linear(src, target, k);
    if (k == 1) CHECK(max_field_diff(lin, f, 300 + k) <= 1e-10);
    PiecewiseField l2 = transfer_l2(src, target, k);
    CHECK(max_field_diff(l2, f, 400 + k) <= 1e-10);
  }
}

TEST_CASE("l2_error basics") {
  auto zero = [](const Point3&) { return 0.0; };
  auto half = [](const Point3&) { return 0.5; };
  CHECK(l2_error(zero, zero) == doctest::Approx(0.0));
  CHECK(l2_error(half, zero) == doctest::Approx(0.5).epsilon(1e-13));
  auto lin = [](const Point3& p) { return p.x; };
  // sqrt(int x^2) = 1/sqrt(3)
  CHECK(l2_error(lin, zero) ==
        doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("l2_error matches a Monte-Carlo estimate") {
  AnalyticField u1 = field_u1();
  TetMesh m = grid_mesh(2, 5);
  PiecewiseField f = project_analytic(u1, m, 1);
  ElementBvh bvh(m);
  auto cand = [&](const Point3& p) {
    Bary4 l;
    int e = bvh.locate(p, &l);
    REQUIRE(e >= 0);
    return f.eval(e, p);
  };
  double gauss = l2_error(cand, u1.value);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double s = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    Point3 p{u(rng), u(rng), u(rng)};
    double d = cand(p) - u1.value(p);
    s += d * d;
  }
  double mc = std::sqrt(s / n);
  CHECK(std::abs(gauss - mc) / gauss < 2e-2);
}

TEST_CASE("global dof table matches the brute-force node count") {
  // single macro tet: count distinct P3 lattice nodes over the 12 subtets
  TetMesh m;
  m.vertices = {Point3{0, 0, 0}, Point3{1, 0, 0}, Point3{0, 1, 0},
                Point3{0, 0, 1}};
  m.tets = {Tet{{0, 1, 2, 3}}};
  m.finalize();
  WFSplitter splitter(m);
  GlobalDofTable table = build_global_dof_table(splitter);
  CHECK(table.macro_dofs.size() == 1);
  std::set<int> used(table.macro_dofs[0].begin(), table.macro_dofs[0].end());
  CHECK((int)used.size() == 91);
  CHECK(table.n_dofs == 91);

  // brute force: snap the 12x20 domain points to a grid and deduplicate
  WFSplit s = splitter.build(0);
  const auto& mis = multi_indices(3);
  std::set<std::array<long long, 3>> nodes;
  for (int alpha = 0; alpha < 12; ++alpha)
    for (const MultiIndex& mi : mis) {
      Point3 xi = (s.subtets[alpha][0] * mi[0] + s.subtets[alpha][1] * mi[1] +
                   s.subtets[alpha][2] * mi[2] + s.subtets[alpha][3] * mi[3]) /
                  3.0;
      nodes.insert({llround(xi.x * 1e12), llround(xi.y * 1e12),
                    llround(xi.z * 1e12)});
    }
  CHECK((int)nodes.size() == table.n_dofs);
}

TEST_CASE("global dof table stitches neighbouring macroelements") {
  TetMesh m = grid_mesh(1, 5);
  WFSplitter splitter(m);
  GlobalDofTable table = build_global_dof_table(splitter);
  // every element contributes 91 dofs, interior sharing reduces the total
  CHECK(table.n_dofs < 91 * m.n_tets());
  CHECK((int)table.macro_dofs.size() == m.n_tets());
  // shared macro faces share dofs: count distinct ids
  std::set<int> all;
  for (const auto& row : table.macro_dofs) all.insert(row.begin(), row.end());
  CHECK((int)all.size() == table.n_dofs);
}

TEST_CASE("global projection reproduces a continuous cubic") {
  TetMesh m = grid_mesh(1, 5);
  WFSplitter splitter(m);
  GlobalDofTable table = build_global_dof_table(splitter);
  AnalyticField f = poly_field(3);
  PiecewiseField src = project_analytic(f, m, 3);
  auto splines = global_spline_projection(src, splitter, table);
  std::mt19937_64 rng(91);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int e = 0; e < m.n_tets(); e += 9) {
    TetPoints t = m.tet_points(e);
    for (int trial = 0; trial < 10; ++trial) {
      double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
      double s = a + b + c + d;
      Point3 p = t[0] * (a / s) + t[1] * (b / s) + t[2] * (c / s) + t[3] * (d / s);
      CHECK(eval_value(splines[e], p) ==
            doctest::Approx(f.value(p)).epsilon(1e-9));
    }
  }
}

TEST_CASE("spline field mass matches quadrature recomputation") {
  TetMesh m = grid_mesh(1, 5);
  WFSplitter splitter(m);
  auto frames = build_edge_frames(m);
  AnalyticField u1 = field_u1();
  auto data = hermite_from_analytic(m, frames, u1);
  SplineField sf(m, build_wf_splines(splitter, data));
  double closed = sf.mass();
  ElementBvh bvh(m);
  double quad = 0;
  for (int e = 0; e < m.n_tets(); ++e)
    quad += integrate_tet(m.tet_points(e),
                          [&](const Point3& p) { return sf.value(p); });
  CHECK(closed == doctest::Approx(quad).epsilon(1e-11));
}

TEST_CASE("sampling grids have the advertised layout") {
  AnalyticField u1 = field_u1();
  SampleGrid g = sample_field(9, u1.value, u1.gradient);
  CHECK(g.n == 9);
  CHECK(g.value.size() == 9 * 9 * 9);
  CHECK(g.grad_mag.size() == g.value.size());
  CHECK(g.nodes.size() == 9);
  // center sample: odd n puts the middle Gauss node at 0.5
  int mid = 4;
  CHECK(g.nodes[mid] == doctest::Approx(0.5).epsilon(1e-13));
  int idx = ((mid * 9) + mid) * 9 + mid;
  CHECK(g.value[idx] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g.grad_mag[idx] == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("serial and parallel transfer agree bitwise") {
  TetMesh source = grid_mesh(1, 5);
  TetMesh target = grid_mesh(1, 1005);
  AnalyticField u1 = field_u1();
  PiecewiseField src = project_analytic(u1, source, 1);
  TransferConfig cfg;
  set_num_threads(1);
  PiecewiseField a = transfer_wf(src, target, cfg);
  set_num_threads(4);
  PiecewiseField b = transfer_wf(src, target, cfg);
  set_num_threads(0);
  REQUIRE(a.coeffs.size() == b.coeffs.size());
  for (size_t e = 0; e < a.coeffs.size(); ++e)
    for (size_t i = 0; i < a.coeffs[e].size(); ++i)
      CHECK(a.coeffs[e][i] == b.coeffs[e][i]);
}
