#include "wf/wf_coefficients.hpp"

#include <cmath>

namespace wf {

EdgeFrame edge_frame(const Point3& a, const Point3& b) {
  Vec3 t = b - a;
  t = t * (1.0 / t.norm());
  Vec3 ref{1, 0, 0};
  if (std::abs(dot(t, ref)) > 1.0 - 1e-8) ref = {0, 1, 0};
  Vec3 e1 = ref - t * dot(ref, t);
  e1 = e1 * (1.0 / e1.norm());
  Vec3 e2 = cross(t, e1);
  return {e1, e2};
}

std::array<double, 91> compute_macro_coefficients(const WFSplit& split,
                                                  const TetMesh& mesh,
                                                  const HermiteData& data) {
  const TetPoints p = mesh.tet_points(split.elem);
  const Point3& ic = split.incenter;
  const auto& s = split.split;  // s[0..3] = split points of the four faces

  double c[92] = {};  // 1-based to match the canonical numbering

  for (int i = 0; i < 4; ++i) c[i + 1] = data.value[i];

  // Ring coefficient one third of the way from vertex i toward q.
  auto cf = [&](int i, const Point3& q) {
    return dot(data.gradient[i], q - p[i]) / 3.0 + data.value[i];
  };

  // Rings around the macro edges.
  c[33] = cf(0, p[1]); c[34] = cf(1, p[0]);
  c[35] = cf(1, p[2]); c[36] = cf(2, p[1]);
  c[37] = cf(2, p[3]); c[38] = cf(3, p[2]);
  c[39] = cf(2, p[0]); c[40] = cf(0, p[2]);
  c[41] = cf(1, p[3]); c[42] = cf(3, p[1]);
  c[43] = cf(3, p[0]); c[44] = cf(0, p[3]);

  // Rings from the face vertices toward their split points.
  c[9] = cf(1, s[0]); c[10] = cf(2, s[0]); c[11] = cf(0, s[0]);
  c[16] = cf(3, s[1]); c[17] = cf(2, s[1]); c[18] = cf(1, s[1]);
  c[23] = cf(0, s[2]); c[24] = cf(2, s[2]); c[25] = cf(3, s[2]);
  c[30] = cf(1, s[3]); c[31] = cf(0, s[3]); c[32] = cf(3, s[3]);

  // Rings toward the incenter.
  c[48] = cf(1, ic); c[49] = cf(2, ic); c[50] = cf(0, ic); c[52] = cf(3, ic);

  // Full gradient at each edge midpoint: tangential part from the edge's
  // Hermite cubic, perpendicular part from the supplied midpoint data.
  Vec3 G[6];
  for (int k = 0; k < 6; ++k) {
    int li = TetMesh::kLocalEdges[k][0], lj = TetMesh::kLocalEdges[k][1];
    Vec3 E = p[lj] - p[li];
    double L2 = dot(E, E);
    double g0 = dot(data.gradient[li], E);
    double g1 = dot(data.gradient[lj], E);
    double gh = 1.5 * (data.value[lj] - data.value[li]) - 0.25 * (g0 + g1);
    G[k] = E * (gh / L2) + data.frame[k].e1 * data.d1[k] +
           data.frame[k].e2 * data.d2[k];
  }

  // Interior coefficient of the triangle spanned by a macro edge and an
  // apex (face split point or incenter), fixed by the midpoint gradient.
  auto interior = [&](int edge, const Point3& apex, double rA, double rB,
                      double cA, double cB, double cAB, double cBA) {
    int li = TetMesh::kLocalEdges[edge][0], lj = TetMesh::kLocalEdges[edge][1];
    Point3 eta = (p[li] + p[lj]) * 0.5;
    return (2.0 / 3.0) * dot(G[edge], apex - eta) - 0.5 * (rA + rB) +
           0.25 * (cA + cB) + 0.75 * (cAB + cBA);
  };

  // Local edge indices: 0:(p1p2) 1:(p2p3) 2:(p1p3) 3:(p3p4) 4:(p2p4) 5:(p1p4)
  c[61] = interior(0, s[0], c[11], c[9], c[1], c[2], c[33], c[34]);
  c[62] = interior(1, s[0], c[9], c[10], c[2], c[3], c[35], c[36]);
  c[63] = interior(2, s[0], c[10], c[11], c[3], c[1], c[39], c[40]);
  c[64] = interior(4, s[1], c[18], c[16], c[2], c[4], c[41], c[42]);
  c[65] = interior(3, s[1], c[16], c[17], c[4], c[3], c[38], c[37]);
  c[66] = interior(1, s[1], c[17], c[18], c[3], c[2], c[36], c[35]);
  c[67] = interior(5, s[2], c[25], c[23], c[4], c[1], c[43], c[44]);
  c[68] = interior(2, s[2], c[23], c[24], c[1], c[3], c[40], c[39]);
  c[69] = interior(3, s[2], c[24], c[25], c[3], c[4], c[37], c[38]);
  c[70] = interior(4, s[3], c[32], c[30], c[4], c[2], c[42], c[41]);
  c[71] = interior(0, s[3], c[30], c[31], c[2], c[1], c[34], c[33]);
  c[72] = interior(5, s[3], c[31], c[32], c[1], c[4], c[44], c[43]);

  c[73] = interior(0, ic, c[50], c[48], c[1], c[2], c[33], c[34]);
  c[77] = interior(1, ic, c[48], c[49], c[2], c[3], c[35], c[36]);
  c[78] = interior(2, ic, c[49], c[50], c[3], c[1], c[39], c[40]);
  c[79] = interior(3, ic, c[52], c[49], c[3], c[4], c[37], c[38]);
  c[80] = interior(4, ic, c[48], c[52], c[2], c[4], c[41], c[42]);
  c[87] = interior(5, ic, c[50], c[52], c[1], c[4], c[44], c[43]);

  // C1 relations across the internal subtet faces: sigma-weighted averages
  // over the face barycentrics of the split points, kappa over the incenter.
  auto sig = [&](int f, double a, double b, double d) {
    const Bary3& sg = split.sigma[f];
    return sg[0] * a + sg[1] * b + sg[2] * d;
  };
  auto kap = [&](double a, double b, double d, double e) {
    const Bary4& k = split.kappa;
    return k.lambda[0] * a + k.lambda[1] * b + k.lambda[2] * d +
           k.lambda[3] * e;
  };

  c[6] = sig(0, c[61], c[9], c[62]);
  c[7] = sig(0, c[63], c[62], c[10]);
  c[8] = sig(0, c[11], c[61], c[63]);
  c[5] = sig(0, c[8], c[6], c[7]);

  c[13] = sig(1, c[64], c[16], c[65]);
  c[14] = sig(1, c[66], c[65], c[17]);
  c[15] = sig(1, c[18], c[64], c[66]);
  c[12] = sig(1, c[15], c[13], c[14]);

  c[20] = sig(2, c[67], c[23], c[68]);
  c[21] = sig(2, c[69], c[68], c[24]);
  c[22] = sig(2, c[25], c[67], c[69]);
  c[19] = sig(2, c[22], c[20], c[21]);

  c[27] = sig(3, c[30], c[71], c[70]);
  c[28] = sig(3, c[71], c[31], c[72]);
  c[29] = sig(3, c[70], c[72], c[32]);
  c[26] = sig(3, c[27], c[28], c[29]);

  c[74] = sig(0, c[73], c[48], c[77]);
  c[75] = sig(0, c[78], c[77], c[49]);
  c[76] = sig(0, c[50], c[73], c[78]);
  c[54] = sig(0, c[76], c[74], c[75]);

  c[81] = sig(1, c[48], c[80], c[77]);
  c[82] = sig(1, c[77], c[79], c[49]);
  c[83] = sig(1, c[80], c[52], c[79]);
  c[56] = sig(1, c[81], c[83], c[82]);

  c[84] = sig(2, c[52], c[87], c[79]);
  c[85] = sig(2, c[87], c[50], c[78]);
  c[86] = sig(2, c[79], c[78], c[49]);
  c[58] = sig(2, c[84], c[85], c[86]);

  c[88] = sig(3, c[73], c[50], c[87]);
  c[89] = sig(3, c[48], c[73], c[80]);
  c[90] = sig(3, c[80], c[87], c[52]);
  c[60] = sig(3, c[89], c[88], c[90]);

  c[45] = kap(c[73], c[48], c[80], c[77]);
  c[46] = kap(c[78], c[77], c[79], c[49]);
  c[47] = kap(c[50], c[73], c[87], c[78]);
  c[51] = kap(c[87], c[80], c[52], c[79]);

  c[53] = sig(0, c[47], c[45], c[46]);
  c[55] = sig(1, c[45], c[51], c[46]);
  c[57] = sig(2, c[51], c[47], c[46]);
  c[59] = sig(3, c[45], c[47], c[51]);

  c[91] = kap(c[47], c[45], c[51], c[46]);

  std::array<double, 91> out;
  for (int i = 0; i < 91; ++i) out[i] = c[i + 1];
  return out;
}

namespace {

struct MapRow {
  MultiIndex mi;
  int ids[12];  // canonical coefficient numbers, 1-based
};

// Mapping of the 91 macro coefficients onto each subtet's 20-coefficient
// cubic form; the multi-index is over the subtet vertices (q1, q2, split,
// incenter).
constexpr MapRow kMapRows[20] = {
    {{{3, 0, 0, 0}}, {1, 2, 3, 2, 4, 3, 4, 1, 3, 2, 1, 4}},
    {{{0, 3, 0, 0}}, {2, 3, 1, 4, 3, 2, 1, 3, 4, 1, 4, 2}},
    {{{0, 0, 3, 0}}, {5, 5, 5, 12, 12, 12, 19, 19, 19, 26, 26, 26}},
    {{{0, 0, 0, 3}}, {91, 91, 91, 91, 91, 91, 91, 91, 91, 91, 91, 91}},
    {{{2, 1, 0, 0}}, {33, 35, 39, 41, 38, 36, 43, 40, 37, 34, 44, 42}},
    {{{1, 2, 0, 0}}, {34, 36, 40, 42, 37, 35, 44, 39, 38, 33, 43, 41}},
    {{{0, 2, 1, 0}}, {9, 10, 11, 16, 17, 18, 23, 24, 25, 31, 32, 30}},
    {{{0, 1, 2, 0}}, {6, 7, 8, 13, 14, 15, 20, 21, 22, 28, 29, 27}},
    {{{1, 0, 2, 0}}, {8, 6, 7, 15, 13, 14, 22, 20, 21, 27, 28, 29}},
    {{{2, 0, 1, 0}}, {11, 9, 10, 18, 16, 17, 25, 23, 24, 30, 31, 32}},
    {{{1, 0, 0, 2}}, {47, 45, 46, 45, 51, 46, 51, 47, 46, 45, 47, 51}},
    {{{2, 0, 0, 1}}, {50, 48, 49, 48, 52, 49, 52, 50, 49, 48, 50, 52}},
    {{{0, 0, 1, 2}}, {53, 53, 53, 55, 55, 55, 57, 57, 57, 59, 59, 59}},
    {{{0, 0, 2, 1}}, {54, 54, 54, 56, 56, 56, 58, 58, 58, 60, 60, 60}},
    {{{0, 1, 0, 2}}, {45, 46, 47, 51, 46, 45, 47, 46, 51, 47, 51, 45}},
    {{{0, 2, 0, 1}}, {48, 49, 50, 52, 49, 48, 50, 49, 52, 50, 52, 48}},
    {{{1, 1, 1, 0}}, {61, 62, 63, 64, 65, 66, 67, 68, 69, 71, 72, 70}},
    {{{1, 1, 0, 1}}, {73, 77, 78, 80, 79, 77, 87, 78, 79, 73, 87, 80}},
    {{{1, 0, 1, 1}}, {76, 74, 75, 81, 83, 82, 84, 85, 86, 89, 88, 90}},
    {{{0, 1, 1, 1}}, {74, 75, 76, 83, 82, 81, 85, 86, 84, 88, 90, 89}},
};

}  // namespace

const std::array<std::array<int, 20>, 12>& coeff_map() {
  static const std::array<std::array<int, 20>, 12> map = [] {
    std::array<std::array<int, 20>, 12> m{};
    for (const MapRow& row : kMapRows) {
      int r = multi_index_rank(row.mi);
      for (int a = 0; a < 12; ++a) m[a][r] = row.ids[a] - 1;
    }
    return m;
  }();
  return map;
}

std::array<double, 20> subtet_coeffs(std::span<const double, 91> c,
                                     int alpha) {
  const auto& map = coeff_map()[alpha];
  std::array<double, 20> out;
  for (int i = 0; i < 20; ++i) out[i] = c[map[i]];
  return out;
}

double eval_value(const MacroSpline& s, const Point3& p) {
  Bary4 lam;
  int alpha = locate_subtet(s.split, p, &lam);
  auto c = subtet_coeffs(std::span<const double, 91>(s.c), alpha);
  return bform_value(3, c, lam);
}

Vec3 eval_gradient(const MacroSpline& s, const Point3& p) {
  Bary4 lam;
  int alpha = locate_subtet(s.split, p, &lam);
  auto c = subtet_coeffs(std::span<const double, 91>(s.c), alpha);
  return bform_gradient(3, c, s.split.subtets[alpha], lam);
}

}  // namespace wf
