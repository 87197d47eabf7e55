#include "wf/bernstein.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace wf {

namespace {

struct DegreeTables {
  std::vector<MultiIndex> indices;
  std::unordered_map<int, int> rank;           // packed index -> position
  std::vector<std::array<int, 4>> raise_rank;  // [r][i] = rank of mi_r + e_i
                                               // at degree d+1 (filled lazily
                                               // together with d+1's indices)
};

int pack(const MultiIndex& mi) {
  return ((mi[0] * 64 + mi[1]) * 64 + mi[2]) * 64 + mi[3];
}

constexpr int kMaxDegree = 10;

const DegreeTables& degree_tables(int degree) {
  static const std::vector<DegreeTables> t = [] {
    std::vector<DegreeTables> out;
    for (int d = 0; d <= kMaxDegree + 1; ++d) {
      DegreeTables dt;
      for (int i = d; i >= 0; --i)
        for (int j = d - i; j >= 0; --j)
          for (int l = d - i - j; l >= 0; --l)
            dt.indices.push_back({{i, j, l, d - i - j - l}});
      for (int r = 0; r < static_cast<int>(dt.indices.size()); ++r)
        dt.rank[pack(dt.indices[r])] = r;
      if (d > 0) {
        DegreeTables& prev = out[d - 1];
        prev.raise_rank.resize(prev.indices.size());
        for (size_t r = 0; r < prev.indices.size(); ++r) {
          for (int i = 0; i < 4; ++i) {
            MultiIndex up = prev.indices[r];
            up.a[i] += 1;
            prev.raise_rank[r][i] = dt.rank.at(pack(up));
          }
        }
      }
      out.push_back(std::move(dt));
    }
    return out;
  }();
  if (degree < 0 || degree > kMaxDegree)
    throw std::invalid_argument("unsupported polynomial degree " +
                                std::to_string(degree));
  return t[degree];
}

}  // namespace

const std::vector<MultiIndex>& multi_indices(int degree) {
  return degree_tables(degree).indices;
}

int multi_index_rank(const MultiIndex& mi) {
  return degree_tables(mi.degree()).rank.at(pack(mi));
}

int n_coeffs(int degree) {
  return (degree + 1) * (degree + 2) * (degree + 3) / 6;
}

double bernstein_basis(const MultiIndex& mi, const Bary4& lambda) {
  static const double fact[11] = {1, 1, 2, 6, 24, 120, 720, 5040, 40320, 362880, 3628800};
  int d = mi.degree();
  double c = fact[d] / (fact[mi[0]] * fact[mi[1]] * fact[mi[2]] * fact[mi[3]]);
  double v = c;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < mi[i]; ++k) v *= lambda.lambda[i];
  return v;
}

namespace {

// One de Casteljau contraction: coeffs at degree d -> degree d-1.
void contract(int d, const double* in, double* out, const Bary4& lambda) {
  const DegreeTables& lower = degree_tables(d - 1);
  for (size_t r = 0; r < lower.indices.size(); ++r) {
    const auto& up = lower.raise_rank[r];
    out[r] = lambda.lambda[0] * in[up[0]] + lambda.lambda[1] * in[up[1]] +
             lambda.lambda[2] * in[up[2]] + lambda.lambda[3] * in[up[3]];
  }
}

}  // namespace

double bform_value(int degree, std::span<const double> coeffs,
                   const Bary4& lambda) {
  if (static_cast<int>(coeffs.size()) != n_coeffs(degree))
    throw std::invalid_argument("coefficient count does not match degree");
  if (degree == 0) return coeffs[0];
  std::array<double, 286> work_a, work_b;  // enough through degree 10
  std::vector<double> heap_a, heap_b;
  double* a = work_a.data();
  double* b = work_b.data();
  if (coeffs.size() > work_a.size()) {
    heap_a.resize(coeffs.size());
    heap_b.resize(coeffs.size());
    a = heap_a.data();
    b = heap_b.data();
  }
  std::copy(coeffs.begin(), coeffs.end(), a);
  for (int d = degree; d >= 1; --d) {
    contract(d, a, b, lambda);
    std::swap(a, b);
  }
  return a[0];
}

Vec3 bform_gradient(int degree, std::span<const double> coeffs,
                    const TetPoints& tet, const Bary4& lambda) {
  if (degree == 0) return {0, 0, 0};
  // Contract down to degree 1, then read off directional derivatives.
  std::vector<double> a(coeffs.begin(), coeffs.end());
  std::vector<double> b(coeffs.size());
  for (int d = degree; d >= 2; --d) {
    contract(d, a.data(), b.data(), lambda);
    std::swap(a, b);
  }
  // a[0..3] now holds the degree-1 coefficients c_i; the derivative along a
  // direction with barycentric coordinates u (sum 0) is degree * sum u_i c_i.
  // Edge direction p_j - p_0 has barycentric direction e_j - e_0.
  double d1 = degree * (a[1] - a[0]);
  double d2 = degree * (a[2] - a[0]);
  double d3 = degree * (a[3] - a[0]);

  Vec3 e1 = tet[1] - tet[0], e2 = tet[2] - tet[0], e3 = tet[3] - tet[0];
  // Solve [e1;e2;e3] g = (d1,d2,d3) by Cramer's rule.
  auto det3 = [](const Vec3& r0, const Vec3& r1, const Vec3& r2) {
    return r0.x * (r1.y * r2.z - r1.z * r2.y) -
           r0.y * (r1.x * r2.z - r1.z * r2.x) +
           r0.z * (r1.x * r2.y - r1.y * r2.x);
  };
  double det = det3(e1, e2, e3);
  Vec3 rhs{d1, d2, d3};
  double gx = det3({rhs.x, e1.y, e1.z}, {rhs.y, e2.y, e2.z}, {rhs.z, e3.y, e3.z}) / det;
  double gy = det3({e1.x, rhs.x, e1.z}, {e2.x, rhs.y, e2.z}, {e3.x, rhs.z, e3.z}) / det;
  double gz = det3({e1.x, e1.y, rhs.x}, {e2.x, e2.y, rhs.y}, {e3.x, e3.y, rhs.z}) / det;
  return {gx, gy, gz};
}

std::vector<Point3> domain_points(int degree, const TetPoints& tet) {
  const auto& mis = multi_indices(degree);
  std::vector<Point3> pts;
  pts.reserve(mis.size());
  for (const MultiIndex& mi : mis) {
    Point3 p{0, 0, 0};
    for (int i = 0; i < 4; ++i) p = p + tet[i] * (double(mi[i]) / degree);
    pts.push_back(p);
  }
  return pts;
}

std::vector<double> degree_raise(int degree, std::span<const double> coeffs) {
  const DegreeTables& dt = degree_tables(degree);
  const auto& upper = multi_indices(degree + 1);
  std::vector<double> out(upper.size(), 0.0);
  // c'_b = sum_i b_i c_{b - e_i} / (degree + 1)
  for (size_t r = 0; r < dt.indices.size(); ++r) {
    for (int i = 0; i < 4; ++i) {
      int ur = dt.raise_rank[r][i];
      out[ur] += (upper[ur][i] / double(degree + 1)) * coeffs[r];
    }
  }
  return out;
}

}  // namespace wf
