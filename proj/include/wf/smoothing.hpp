#pragma once

#include <vector>

#include "wf/bernstein.hpp"
#include "wf/fields.hpp"
#include "wf/mesh.hpp"
#include "wf/wf_coefficients.hpp"

namespace wf {

// Element-wise polynomial field in Bernstein form; discontinuous across
// faces in general.
struct PiecewiseField {
  const TetMesh* mesh = nullptr;
  int degree = 1;
  std::vector<std::vector<double>> coeffs;  // per element, n_coeffs(degree)

  double eval(int elem, const Point3& p) const;
  Vec3 grad(int elem, const Point3& p) const;
};

// Deterministic orthonormal frame per global edge (see edge_frame); index
// matches TetMesh::edges.
std::vector<EdgeFrame> build_edge_frames(const TetMesh& mesh);

// Synchronization operator: averages vertex values/gradients over the
// elements sharing each vertex and edge-midpoint perpendicular derivatives
// over the elements sharing each edge, producing single-valued Hermite data
// per element. Degrees >= 4 are rejected (bubble functions of degree 4
// vanish under this averaging, so the operator is unreliable there).
std::vector<HermiteData> synchronize(const PiecewiseField& field,
                                     const std::vector<EdgeFrame>& frames);

// Exact Hermite data sampled from an analytic field.
std::vector<HermiteData> hermite_from_analytic(
    const TetMesh& mesh, const std::vector<EdgeFrame>& frames,
    const AnalyticField& f);

}  // namespace wf
