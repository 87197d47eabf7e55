#include <random>

#include "doctest.h"
#include "wf/meshgen.hpp"
#include "wf/wf_split.hpp"

using namespace wf;

TEST_CASE("12 subtets partition each macroelement with positive orientation") {
  TetMesh m = grid_mesh(1, 5);
  WFSplitter splitter(m);
  for (int e = 0; e < m.n_tets(); ++e) {
    WFSplit s = splitter.build(e);
    double sum = 0;
    for (int a = 0; a < 12; ++a) {
      double v = signed_volume(s.subtets[a]);
      CHECK(v > 0.0);
      sum += v;
    }
    CHECK(sum == doctest::Approx(m.tet_volume(e)).epsilon(1e-12));
  }
}

TEST_CASE("incenter barycentrics use the (p1,p2,p4,p3) ordering") {
  TetMesh m = grid_mesh(1, 5);
  WFSplitter splitter(m);
  WFSplit s = splitter.build(0);
  TetPoints t = m.tet_points(0);
  Point3 back = t[0] * s.kappa[0] + t[1] * s.kappa[1] + t[3] * s.kappa[2] +
                t[2] * s.kappa[3];
  CHECK(norm(back - s.incenter) < 1e-13);
  CHECK(s.kappa.min() > 0.0);
}

TEST_CASE("split points reproduce their face barycentrics") {
  TetMesh m = grid_mesh(1, 5);
  WFSplitter splitter(m);
  for (int e = 0; e < m.n_tets(); e += 11) {
    WFSplit s = splitter.build(e);
    TetPoints t = m.tet_points(e);
    for (int f = 0; f < 4; ++f) {
      Point3 back = t[kFaceVerts[f][0]] * s.sigma[f][0] +
                    t[kFaceVerts[f][1]] * s.sigma[f][1] +
                    t[kFaceVerts[f][2]] * s.sigma[f][2];
      CHECK(norm(back - s.split[f]) < 1e-13);
      CHECK(s.sigma[f].min() > 0.0);  // strictly inside the face
    }
  }
}

TEST_CASE("neighbours agree bitwise on interior split points") {
  TetMesh m = grid_mesh(1, 5);
  WFSplitter splitter(m);
  int checked = 0;
  for (int e = 0; e < m.n_tets(); ++e) {
    WFSplit se = splitter.build(e);
    for (int f = 0; f < 4; ++f) {
      // macro face f (in kFaceVerts order) has sorted global vertex triple
      std::array<int, 3> gv = {m.tets[e][kFaceVerts[f][0]],
                               m.tets[e][kFaceVerts[f][1]],
                               m.tets[e][kFaceVerts[f][2]]};
      std::sort(gv.begin(), gv.end());
      // find the neighbour sharing that face, if any
      for (int lf = 0; lf < 4; ++lf) {
        int nb = m.face_neighbors[e][lf];
        if (nb <= e) continue;
        WFSplit sn = splitter.build(nb);
        for (int nf = 0; nf < 4; ++nf) {
          std::array<int, 3> nv = {m.tets[nb][kFaceVerts[nf][0]],
                                   m.tets[nb][kFaceVerts[nf][1]],
                                   m.tets[nb][kFaceVerts[nf][2]]};
          std::sort(nv.begin(), nv.end());
          if (nv == gv) {
            CHECK(se.split[f].x == sn.split[nf].x);
            CHECK(se.split[f].y == sn.split[nf].y);
            CHECK(se.split[f].z == sn.split[nf].z);
            ++checked;
          }
        }
      }
    }
    if (checked > 50) break;
  }
  CHECK(checked > 0);
}

TEST_CASE("boundary faces split at the barycenter") {
  TetMesh m = grid_mesh(1, 5);
  WFSplitter splitter(m);
  int checked = 0;
  const int opposite[4] = {3, 0, 1, 2};  // local face opposite kFaceVerts[f]
  for (int e = 0; e < m.n_tets() && checked < 10; ++e) {
    WFSplit s = splitter.build(e);
    TetPoints t = m.tet_points(e);
    for (int f = 0; f < 4; ++f) {
      if (m.face_neighbors[e][opposite[f]] != kBoundary) continue;
      Point3 centroid = (t[kFaceVerts[f][0]] + t[kFaceVerts[f][1]] +
                         t[kFaceVerts[f][2]]) / 3.0;
      CHECK(norm(s.split[f] - centroid) < 1e-15);
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("subtet connectivity follows the face/edge tables") {
  TetMesh m = grid_mesh(1, 5);
  WFSplitter splitter(m);
  WFSplit s = splitter.build(3);
  TetPoints t = m.tet_points(3);
  for (int a = 0; a < 12; ++a) {
    const TetPoints& st = s.subtets[a];
    CHECK(norm(st[0] - t[kSubtetEdge[a][0]]) == 0.0);
    CHECK(norm(st[1] - t[kSubtetEdge[a][1]]) == 0.0);
    CHECK(norm(st[2] - s.split[kSubtetFace[a]]) == 0.0);
    CHECK(norm(st[3] - s.incenter) == 0.0);
  }
}

TEST_CASE("locate_subtet matches the exhaustive lowest-index oracle") {
  TetMesh m = grid_mesh(1, 5);
  WFSplitter splitter(m);
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int e = 0; e < 20; ++e) {
    WFSplit s = splitter.build(e);
    TetPoints t = m.tet_points(e);
    for (int trial = 0; trial < 200; ++trial) {
      // random point inside the macro tet
      double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
      double sum = a + b + c + d;
      Point3 p = t[0] * (a / sum) + t[1] * (b / sum) + t[2] * (c / sum) +
                 t[3] * (d / sum);
      Bary4 lam;
      int alpha = locate_subtet(s, p, &lam);
      REQUIRE(alpha >= 0);
      REQUIRE(alpha < 12);
      CHECK(lam.inside(1e-9));
      CHECK(norm(from_barycentric(s.subtets[alpha], lam) - p) < 1e-12);
      // oracle: lowest alpha whose subtet contains p
      int oracle = -1;
      for (int k = 0; k < 12 && oracle < 0; ++k)
        if (barycentric(s.subtets[k], p).inside(1e-10)) oracle = k;
      CHECK(alpha == oracle);
    }
  }
}

TEST_CASE("locate_subtet handles the incenter and split points") {
  TetMesh m = grid_mesh(1, 5);
  WFSplitter splitter(m);
  WFSplit s = splitter.build(0);
  Bary4 lam;
  CHECK(locate_subtet(s, s.incenter, &lam) == 0);  // ties pick the lowest
  for (int f = 0; f < 4; ++f) {
    int alpha = locate_subtet(s, s.split[f], &lam);
    CHECK(kSubtetFace[alpha] <= f);
  }
}
