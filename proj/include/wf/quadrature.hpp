#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "wf/geometry.hpp"

namespace wf {

struct QuadPoint {
  Bary4 bary;
  double weight;  // relative to element volume; weights sum to 1
};

// Symmetric 56-point rule on the tetrahedron, exact through degree 9.
const std::array<QuadPoint, 56>& tet_rule_56();

// Gauss-Legendre nodes/weights on [0,1]; weights sum to 1.
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

// Splits a tetrahedron at its edge midpoints into 8 children: 4 corner
// tetrahedra plus the central octahedron cut along its shortest diagonal
// (ties broken by the lowest local midpoint-index pair).
std::array<TetPoints, 8> subdivide_tet_8(const TetPoints& tet);

template <class F>
double integrate_tet(const TetPoints& tet, F&& f) {
  const double vol = signed_volume(tet);
  double sum = 0.0;
  for (const QuadPoint& q : tet_rule_56()) {
    Point3 p = tet[0] * q.bary.lambda[0] + tet[1] * q.bary.lambda[1] +
               tet[2] * q.bary.lambda[2] + tet[3] * q.bary.lambda[3];
    sum += q.weight * f(p);
  }
  return vol * sum;
}

struct AdaptiveConfig {
  double tol = 1e-12;  // absolute, on the per-element integral
  int max_levels = 4;
};

struct AdaptiveResult {
  double value = 0.0;
  int levels = 0;       // deepest subdivision level used
  bool converged = false;
};

namespace detail {

inline void quad_axpy(double& acc, const double& v) { acc += v; }
inline void quad_axpy(std::vector<double>& acc, const std::vector<double>& v) {
  if (acc.empty()) acc.assign(v.size(), 0.0);
  for (size_t i = 0; i < v.size(); ++i) acc[i] += v[i];
}
inline double quad_diff_norm(const double& a, const double& b) {
  return std::abs(a - b);
}
inline double quad_diff_norm(const std::vector<double>& a,
                             const std::vector<double>& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

template <class Value, class F>
Value adaptive_rec(const TetPoints& tet, const Value& coarse, F& f, double tol,
                   int level, int max_level, int& deepest, bool& converged) {
  auto children = subdivide_tet_8(tet);
  Value fine{};
  std::array<Value, 8> child_vals;
  for (int c = 0; c < 8; ++c) {
    child_vals[c] = f(children[c]);
    quad_axpy(fine, child_vals[c]);
  }
  deepest = std::max(deepest, level + 1);
  if (quad_diff_norm(fine, coarse) <= tol) return fine;
  if (level + 1 >= max_level) {
    converged = false;
    return fine;
  }
  Value out{};
  for (int c = 0; c < 8; ++c) {
    quad_axpy(out, adaptive_rec(children[c], child_vals[c], f, tol / 8.0,
                                level + 1, max_level, deepest, converged));
  }
  return out;
}

}  // namespace detail

// Adaptive integration core: `f(tet)` applies the fixed rule to a
// (sub)element and returns its contribution; Value is double or a
// vector<double> of simultaneous integrals. Each element is subdivided at
// its edge midpoints until the coarse/fine difference drops below `tol`
// (absolute) or `max_levels` is reached.
template <class Value, class F>
Value integrate_adaptive_values(const TetPoints& tet, F f,
                                const AdaptiveConfig& cfg, int* levels,
                                bool* converged) {
  Value coarse = f(tet);
  bool conv = true;
  int deepest = 0;
  Value result;
  if (cfg.max_levels <= 0) {
    conv = false;
    result = coarse;
  } else {
    result = detail::adaptive_rec<Value>(tet, coarse, f, cfg.tol, 0,
                                         cfg.max_levels, deepest, conv);
  }
  if (levels) *levels = deepest;
  if (converged) *converged = conv;
  return result;
}

// Scalar convenience wrapper over a pointwise integrand.
template <class F>
AdaptiveResult integrate_adaptive(const TetPoints& tet, F f,
                                  const AdaptiveConfig& cfg = {}) {
  AdaptiveResult r;
  r.value = integrate_adaptive_values<double>(
      tet, [&](const TetPoints& t) { return integrate_tet(t, f); }, cfg,
      &r.levels, &r.converged);
  return r;
}

}  // namespace wf
