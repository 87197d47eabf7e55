#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wf {

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3() = default;
  Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x; y += o.y; z += o.z;
    return *this;
  }
  double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

using Point3 = Vec3;

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 normalized(const Vec3& v) {
  double n = norm(v);
  if (n == 0.0) throw GeometryError("cannot normalize zero vector");
  return v / n;
}

/// Barycentric coordinates on a tetrahedron; components sum to 1.
struct Bary4 {
  std::array<double, 4> lambda{};

  double& operator[](int i) { return lambda[i]; }
  double operator[](int i) const { return lambda[i]; }

  double min() const {
    return std::min(std::min(lambda[0], lambda[1]),
                    std::min(lambda[2], lambda[3]));
  }
  bool inside(double tol) const { return min() >= -tol; }
};

/// Barycentric coordinates on a triangular face.
struct Bary3 {
  std::array<double, 3> sigma{};
  double& operator[](int i) { return sigma[i]; }
  double operator[](int i) const { return sigma[i]; }

  double min() const {
    return std::min(sigma[0], std::min(sigma[1], sigma[2]));
  }
};

using TetPoints = std::array<Point3, 4>;

inline double signed_volume(const TetPoints& p) {
  return dot(cross(p[1] - p[0], p[2] - p[0]), p[3] - p[0]) / 6.0;
}

inline double diameter(const TetPoints& p) {
  double d = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) d = std::max(d, norm(p[i] - p[j]));
  return d;
}

/// Barycentric coordinates of p with respect to tet `t` (signed sub-volume
/// ratios). Throws on degenerate tets.
Bary4 barycentric(const TetPoints& t, const Point3& p);

inline Point3 from_barycentric(const TetPoints& t, const Bary4& b) {
  return t[0] * b[0] + t[1] * b[1] + t[2] * b[2] + t[3] * b[3];
}

/// Incenter of a tetrahedron: the point equidistant from the four face
/// planes. The barycentric weights are the opposite-face areas normalized
/// to sum 1 (returned in vertex-index order).
std::pair<Point3, Bary4> incenter(const TetPoints& t);

/// Barycentric coordinates of a point already lying in the plane of the
/// triangle (a,b,c).
Bary3 triangle_barycentric(const Point3& a, const Point3& b, const Point3& c,
                           const Point3& p);

/// Intersect segment [a,b] with the plane of face (f0,f1,f2). Requires a
/// transversal crossing with the hit strictly inside the open triangle.
std::pair<Point3, Bary3> segment_face_intersection(const Point3& a,
                                                   const Point3& b,
                                                   const Point3& f0,
                                                   const Point3& f1,
                                                   const Point3& f2);

}  // namespace wf
