#pragma once

#include <array>
#include <map>

#include "wf/mesh.hpp"

namespace wf {

// 12-subtetrahedron split of a macroelement: the incenter joins each face
// (Alfeld step), then each of those four cells is cut into three at a split
// point on its face. Interior faces use the intersection of the face with
// the segment between the two adjacent incenters, so neighbours agree on
// the point bitwise; boundary faces use the face barycenter.

struct WFSplit {
  int elem = -1;
  Point3 incenter;
  Bary4 kappa;  // incenter w.r.t. macro vertices ordered (p1, p2, p4, p3)
  // Face split points in face order (1,2,3), (2,4,3), (4,1,3), (2,1,4)
  // (1-based macro vertex labels), with barycentrics w.r.t. those orders.
  std::array<Point3, 4> split;
  std::array<Bary3, 4> sigma;
  // Canonical subtet order: three children per face, each (q1, q2, split,
  // incenter); see kSubtetFace/kSubtetEdge below.
  std::array<TetPoints, 12> subtets;
};

// subtet alpha (0-based) lives on face kSubtetFace[alpha] and spans the face
// edge (kSubtetEdge[alpha][0], kSubtetEdge[alpha][1]) (0-based macro vertex
// indices).
inline constexpr int kSubtetFace[12] = {0, 0, 0, 1, 1, 1, 2, 2, 2, 3, 3, 3};
inline constexpr int kSubtetEdge[12][2] = {
    {0, 1}, {1, 2}, {2, 0},   // face (1,2,3)
    {1, 3}, {3, 2}, {2, 1},   // face (2,4,3)
    {3, 0}, {0, 2}, {2, 3},   // face (4,1,3)
    {1, 0}, {0, 3}, {3, 1}};  // face (2,1,4)

// 0-based macro vertex indices of each split face, in the paper's order.
inline constexpr int kFaceVerts[4][3] = {
    {0, 1, 2}, {1, 3, 2}, {3, 0, 2}, {1, 0, 3}};

class WFSplitter {
 public:
  explicit WFSplitter(const TetMesh& mesh);

  const TetMesh& mesh() const { return mesh_; }
  WFSplit build(int elem) const;

 private:
  Point3 face_split_point(int elem, int face) const;

  const TetMesh& mesh_;
  std::vector<Point3> incenters_;
  // Keyed by sorted global vertex ids of the face.
  std::map<std::array<int, 3>, Point3> face_points_;
};

// Two-stage point location: pick the Alfeld cell, then the child wedge.
// Ties on shared interfaces resolve to the lowest subtet index. Returns
// alpha in 0..11 and the barycentric coordinates w.r.t. that subtet.
int locate_subtet(const WFSplit& split, const Point3& p, Bary4* lambda);

}  // namespace wf
