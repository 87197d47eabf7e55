#include <random>

#include "doctest.h"
#include "wf/fields.hpp"
#include "wf/meshgen.hpp"
#include "wf/parallel.hpp"
#include "wf/smoothing.hpp"
#include "wf/transfer.hpp"

using namespace wf;

namespace {

// Continuous linear field x + 2y - z sampled per element (so every element
// carries identical nodal data; averaging must be a no-op).
PiecewiseField linear_field(const TetMesh& m) {
  PiecewiseField f;
  f.mesh = &m;
  f.degree = 1;
  f.coeffs.resize(m.n_tets());
  for (int e = 0; e < m.n_tets(); ++e) {
    f.coeffs[e].resize(4);
    for (int i = 0; i < 4; ++i) {
      const Point3& p = m.vertices[m.tets[e][i]];
      f.coeffs[e][i] = p.x + 2 * p.y - p.z;
    }
  }
  return f;
}

}  // namespace

TEST_CASE("synchronizing a continuous linear field is exact") {
  TetMesh m = grid_mesh(1, 5);
  auto frames = build_edge_frames(m);
  PiecewiseField f = linear_field(m);
  auto data = synchronize(f, frames);
  Vec3 g{1, 2, -1};
  for (int e = 0; e < m.n_tets(); e += 7) {
    for (int i = 0; i < 4; ++i) {
      const Point3& p = m.vertices[m.tets[e][i]];
      CHECK(data[e].value[i] ==
            doctest::Approx(p.x + 2 * p.y - p.z).epsilon(1e-12));
      CHECK(norm(data[e].gradient[i] - g) < 1e-12);
    }
    for (int k = 0; k < 6; ++k) {
      double d1 = dot(g, data[e].frame[k].e1);
      double d2 = dot(g, data[e].frame[k].e2);
      CHECK(data[e].d1[k] == doctest::Approx(d1).epsilon(1e-12));
      CHECK(data[e].d2[k] == doctest::Approx(d2).epsilon(1e-12));
    }
  }
}

TEST_CASE("vertex values average over the vertex star") {
  // two elements sharing a face, with a discontinuous per-element constant
  TetMesh m;
  m.vertices = {Point3{0, 0, 0}, Point3{1, 0, 0}, Point3{0, 1, 0},
                Point3{0, 0, 1}, Point3{1, 1, 1}};
  m.tets = {Tet{{0, 1, 2, 3}}, Tet{{1, 2, 3, 4}}};
  m.finalize();
  PiecewiseField f;
  f.mesh = &m;
  f.degree = 1;
  f.coeffs = {{1, 1, 1, 1}, {3, 3, 3, 3}};
  auto frames = build_edge_frames(m);
  auto data = synchronize(f, frames);
  // vertex 0 belongs only to element 0; vertices 1,2,3 are shared
  CHECK(data[0].value[0] == doctest::Approx(1.0));
  for (int i = 1; i < 4; ++i)
    CHECK(data[0].value[i] == doctest::Approx(2.0));
  CHECK(data[1].value[3] == doctest::Approx(3.0));  // vertex 4, element 1 only
}

TEST_CASE("degree >= 4 fields are rejected") {
  TetMesh m = grid_mesh(1, 5);
  auto frames = build_edge_frames(m);
  PiecewiseField f;
  f.mesh = &m;
  f.degree = 4;
  f.coeffs.assign(m.n_tets(), std::vector<double>(35, 0.0));
  CHECK_THROWS_WITH_AS(synchronize(f, frames), doctest::Contains("bubble"),
                       std::invalid_argument);
}

TEST_CASE("synchronization is idempotent on already-synchronized data") {
  TetMesh m = grid_mesh(1, 5);
  auto frames = build_edge_frames(m);
  AnalyticField u1 = field_u1();
  PiecewiseField f = project_analytic(u1, m, 2);
  auto once = synchronize(f, frames);
  // rebuild a field from the synchronized vertex data is not direct; instead
  // check determinism: a second pass over the same input is bitwise equal.
  auto again = synchronize(f, frames);
  for (int e = 0; e < m.n_tets(); ++e) {
    for (int i = 0; i < 4; ++i) {
      CHECK(once[e].value[i] == again[e].value[i]);
      CHECK(norm(once[e].gradient[i] - again[e].gradient[i]) == 0.0);
    }
    for (int k = 0; k < 6; ++k) {
      CHECK(once[e].d1[k] == again[e].d1[k]);
      CHECK(once[e].d2[k] == again[e].d2[k]);
    }
  }
}

TEST_CASE("serial and parallel synchronization agree bitwise") {
  TetMesh m = grid_mesh(2, 5);
  auto frames = build_edge_frames(m);
  AnalyticField u1 = field_u1();
  PiecewiseField f = project_analytic(u1, m, 1);

  set_num_threads(1);
  auto serial = synchronize(f, frames);
  set_num_threads(4);
  auto parallel = synchronize(f, frames);
  set_num_threads(0);

  for (int e = 0; e < m.n_tets(); ++e) {
    for (int i = 0; i < 4; ++i) {
      CHECK(serial[e].value[i] == parallel[e].value[i]);
      CHECK(serial[e].gradient[i].x == parallel[e].gradient[i].x);
      CHECK(serial[e].gradient[i].y == parallel[e].gradient[i].y);
      CHECK(serial[e].gradient[i].z == parallel[e].gradient[i].z);
    }
    for (int k = 0; k < 6; ++k) {
      CHECK(serial[e].d1[k] == parallel[e].d1[k]);
      CHECK(serial[e].d2[k] == parallel[e].d2[k]);
    }
  }
}
