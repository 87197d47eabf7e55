#include "wf/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wf {

namespace {

// Orbit generators for the symmetric tet rule. S31: three coordinates equal;
// S211: two pairs, the repeated value listed first.
void emit_s31(double a, double w, std::array<QuadPoint, 56>& out, int& k) {
  double b = 1.0 - 3.0 * a;
  double v[4] = {a, a, a, b};
  for (int i = 0; i < 4; ++i) {
    Bary4 bc;
    for (int j = 0; j < 4; ++j) bc.lambda[j] = a;
    bc.lambda[i] = b;
    (void)v;
    out[k++] = {bc, w};
  }
}

void emit_s211(double a, double b, double w, std::array<QuadPoint, 56>& out,
               int& k) {
  double c = 1.0 - 2.0 * a - b;
  // all distinct permutations of (a, a, b, c)
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (j == i) continue;
      Bary4 bc;
      for (int m = 0; m < 4; ++m) bc.lambda[m] = a;
      bc.lambda[i] = b;
      bc.lambda[j] = c;
      out[k++] = {bc, w};
    }
  }
}

std::array<QuadPoint, 56> build_rule_56() {
  // Parameters solved from the degree-9 moment equations for the orbit
  // structure 2 x S31 + 4 x S211 (see tests for the exactness check).
  std::array<QuadPoint, 56> out{};
  int k = 0;
#include "rule56_params.inc"
  if (k != 56) throw std::logic_error("bad 56-point rule construction");
  return out;
}

}  // namespace

const std::array<QuadPoint, 56>& tet_rule_56() {
  static const std::array<QuadPoint, 56> rule = build_rule_56();
  return rule;
}

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  nodes.resize(n);
  weights.resize(n);
  // Roots of P_n on (-1,1) by Newton iteration, then mapped to (0,1).
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= n; ++j) {
      double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[n - 1 - i] = 0.5 * (x + 1.0);
    weights[n - 1 - i] = 0.5 * w;
  }
}

std::array<TetPoints, 8> subdivide_tet_8(const TetPoints& tet) {
  // Edge midpoints m[i][j] between vertices i and j.
  Point3 m[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) m[i][j] = (tet[i] + tet[j]) * 0.5;

  std::array<TetPoints, 8> out;
  // Corner tetrahedra.
  out[0] = {tet[0], m[0][1], m[0][2], m[0][3]};
  out[1] = {m[0][1], tet[1], m[1][2], m[1][3]};
  out[2] = {m[0][2], m[1][2], tet[2], m[2][3]};
  out[3] = {m[0][3], m[1][3], m[2][3], tet[3]};

  // Central octahedron: vertices are the six midpoints; the three diagonals
  // pair opposite midpoints (01,23), (02,13), (03,12). Split along the
  // shortest; ties keep the earliest pair in that order.
  struct Diag {
    Point3 a, b;
    Point3 ring[4];  // remaining four midpoints, in cyclic order
  };
  Diag diags[3] = {
      {m[0][1], m[2][3], {m[0][2], m[1][2], m[1][3], m[0][3]}},
      {m[0][2], m[1][3], {m[0][1], m[1][2], m[2][3], m[0][3]}},
      {m[0][3], m[1][2], {m[0][1], m[1][3], m[2][3], m[0][2]}},
  };
  int best = 0;
  double best_len = (diags[0].a - diags[0].b).norm();
  for (int d = 1; d < 3; ++d) {
    double len = (diags[d].a - diags[d].b).norm();
    if (len < best_len) {
      best = d;
      best_len = len;
    }
  }
  const Diag& dg = diags[best];
  for (int t = 0; t < 4; ++t)
    out[4 + t] = {dg.a, dg.b, dg.ring[t], dg.ring[(t + 1) % 4]};

  // Keep positive orientation so volumes add up.
  for (TetPoints& t : out) {
    if (signed_volume(t) < 0.0) std::swap(t[2], t[3]);
  }
  return out;
}

}  // namespace wf
