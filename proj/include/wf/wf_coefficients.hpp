#pragma once

#include <array>
#include <span>

#include "wf/bernstein.hpp"
#include "wf/wf_split.hpp"

namespace wf {

// Hermite data driving the macroelement spline: values and gradients at the
// four vertices plus, per edge, the first derivatives at the edge midpoint
// along two unit directions perpendicular to the edge. The perpendicular
// frame must be shared by all elements touching the edge.

struct EdgeFrame {
  Vec3 e1, e2;  // unit, perpendicular to the edge and to each other
};

// Frame for the (undirected) edge between global vertices a < b; the tangent
// is the unit vector a -> b. Reference direction (1,0,0), falling back to
// (0,1,0) when nearly parallel.
EdgeFrame edge_frame(const Point3& a, const Point3& b);

struct HermiteData {
  std::array<double, 4> value{};
  std::array<Vec3, 4> gradient{};
  // Per local edge (kLocalEdges order), frame and midpoint derivatives
  // along frame.e1 / frame.e2.
  std::array<EdgeFrame, 6> frame{};
  std::array<double, 6> d1{}, d2{};
};

// All 91 Bernstein coefficients of the C1 macroelement spline, in the
// canonical numbering (0-based storage of c1..c91).
std::array<double, 91> compute_macro_coefficients(const WFSplit& split,
                                                  const TetMesh& mesh,
                                                  const HermiteData& data);

// Global coefficient ids (0..90) of subtet alpha's 20-coefficient cubic
// B-form, ordered by lex-descending multi-index over the subtet vertices
// (q1, q2, split point, incenter).
const std::array<std::array<int, 20>, 12>& coeff_map();

// Per-subtet coefficients of the macro spline.
std::array<double, 20> subtet_coeffs(std::span<const double, 91> c, int alpha);

struct MacroSpline {
  WFSplit split;
  std::array<double, 91> c{};
};

// Evaluate at a point inside the macroelement (locates the subtet first).
double eval_value(const MacroSpline& s, const Point3& p);
Vec3 eval_gradient(const MacroSpline& s, const Point3& p);

}  // namespace wf
