#include "wf/wf_split.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace wf {

namespace {

// Local face f of a tet is opposite local vertex f (see TetMesh::finalize).
constexpr int kLocalFace[4][3] = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};

}  // namespace

WFSplitter::WFSplitter(const TetMesh& mesh) : mesh_(mesh) {
  const int ne = mesh.n_tets();
  incenters_.resize(ne);
  for (int e = 0; e < ne; ++e) incenters_[e] = incenter(mesh.tet_points(e)).first;

  // Compute each face's split point once, from the lower-id side, so both
  // adjacent macroelements use bitwise-identical coordinates.
  for (int e = 0; e < ne; ++e) {
    for (int f = 0; f < 4; ++f) {
      int nb = mesh.face_neighbors[e][f];
      if (nb != kBoundary && nb < e) continue;
      std::array<int, 3> gv = {mesh.tets[e][kLocalFace[f][0]],
                               mesh.tets[e][kLocalFace[f][1]],
                               mesh.tets[e][kLocalFace[f][2]]};
      std::array<int, 3> key = gv;
      std::sort(key.begin(), key.end());
      const Point3 a = mesh.vertices[key[0]];
      const Point3 b = mesh.vertices[key[1]];
      const Point3 c = mesh.vertices[key[2]];
      Point3 sp;
      if (nb == kBoundary) {
        sp = (a + b + c) * (1.0 / 3.0);
      } else {
        auto [pt, bc] =
            segment_face_intersection(incenters_[e], incenters_[nb], a, b, c);
        sp = pt;
        if (bc.min() <= 0.0)
          throw GeometryError(
              "incenter segment misses shared face between elements " +
              std::to_string(e + 1) + " and " + std::to_string(nb + 1));
      }
      face_points_.emplace(key, sp);
    }
  }
}

Point3 WFSplitter::face_split_point(int elem, int face) const {
  std::array<int, 3> key = {mesh_.tets[elem][kLocalFace[face][0]],
                            mesh_.tets[elem][kLocalFace[face][1]],
                            mesh_.tets[elem][kLocalFace[face][2]]};
  std::sort(key.begin(), key.end());
  return face_points_.at(key);
}

WFSplit WFSplitter::build(int elem) const {
  WFSplit s;
  s.elem = elem;
  TetPoints p = mesh_.tet_points(elem);

  auto [ic, ic_bary] = incenter(p);
  s.incenter = incenters_[elem];
  // kappa is w.r.t. the order (p1, p2, p4, p3).
  s.kappa.lambda = {ic_bary.lambda[0], ic_bary.lambda[1], ic_bary.lambda[3],
                    ic_bary.lambda[2]};

  for (int f = 0; f < 4; ++f) {
    // Split faces are listed opposite vertex 4,1,2,3 respectively; local face
    // index opposite macro vertex v is v itself.
    static const int opposite[4] = {3, 0, 1, 2};
    s.split[f] = face_split_point(elem, opposite[f]);
    const Point3 a = p[kFaceVerts[f][0]];
    const Point3 b = p[kFaceVerts[f][1]];
    const Point3 c = p[kFaceVerts[f][2]];
    s.sigma[f] = triangle_barycentric(a, b, c, s.split[f]);
    if (s.sigma[f].min() <= 0.0)
      throw GeometryError("face split point not interior to its face, element " +
                          std::to_string(elem + 1));
  }

  for (int alpha = 0; alpha < 12; ++alpha) {
    s.subtets[alpha] = {p[kSubtetEdge[alpha][0]], p[kSubtetEdge[alpha][1]],
                        s.split[kSubtetFace[alpha]], s.incenter};
    if (signed_volume(s.subtets[alpha]) <= 0.0)
      throw GeometryError("non-positive subtet volume in element " +
                          std::to_string(elem + 1) +
                          " (near-degenerate macroelement)");
  }
  return s;
}

int locate_subtet(const WFSplit& split, const Point3& p, Bary4* lambda) {
  for (double tol : {1e-10, 1e-8, 1e-6, 1e-4}) {
    for (int cell = 0; cell < 4; ++cell) {
      TetPoints cp = {split.subtets[3 * cell][0], split.subtets[3 * cell][1],
                      split.subtets[3 * cell + 1][1], split.incenter};
      // cp spans the whole Alfeld cell (face triangle + incenter): children
      // of the cell share its face vertices.
      Bary4 cb = barycentric(cp, p);
      if (cb.min() < -10.0 * tol) continue;
      for (int k = 0; k < 3; ++k) {
        int alpha = 3 * cell + k;
        Bary4 b = barycentric(split.subtets[alpha], p);
        if (b.min() >= -tol) {
          if (lambda) *lambda = b;
          return alpha;
        }
      }
    }
  }
  throw GeometryError("point not inside any subtetrahedron");
}

}  // namespace wf
