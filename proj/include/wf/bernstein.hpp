#pragma once

#include <array>
#include <span>
#include <vector>

#include "wf/geometry.hpp"

namespace wf {

// Bernstein-Bezier form of a polynomial on a tetrahedron. Coefficient
// vectors are ordered by lexicographically descending multi-index, e.g. for
// degree 3: 3000, 2100, 2010, 2001, 1200, 1110, ..., 0003.

struct MultiIndex {
  std::array<int, 4> a{};
  int degree() const { return a[0] + a[1] + a[2] + a[3]; }
  int operator[](int i) const { return a[i]; }
  bool operator==(const MultiIndex& o) const { return a == o.a; }
};

// All multi-indices of the given total degree, lex-descending.
const std::vector<MultiIndex>& multi_indices(int degree);

// Position of `mi` within multi_indices(mi.degree()).
int multi_index_rank(const MultiIndex& mi);

int n_coeffs(int degree);  // (d+1)(d+2)(d+3)/6

// Single basis function B_a(lambda) = (d!/a!) lambda^a.
double bernstein_basis(const MultiIndex& mi, const Bary4& lambda);

// de Casteljau evaluation of sum_a c_a B_a(lambda).
double bform_value(int degree, std::span<const double> coeffs,
                   const Bary4& lambda);

// Physical gradient, from directional derivatives along the three edge
// vectors emanating from vertex 0.
Vec3 bform_gradient(int degree, std::span<const double> coeffs,
                    const TetPoints& tet, const Bary4& lambda);

// Domain points xi_a = sum_i a_i p_i / d, in coefficient order.
std::vector<Point3> domain_points(int degree, const TetPoints& tet);

// Coefficients of the same polynomial raised to `degree + 1`.
std::vector<double> degree_raise(int degree, std::span<const double> coeffs);

}  // namespace wf
