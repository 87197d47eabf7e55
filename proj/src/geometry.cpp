#include "wf/geometry.hpp"

namespace wf {

Bary4 barycentric(const TetPoints& t, const Point3& p) {
  const double vol = signed_volume(t);
  const double d = diameter(t);
  if (std::abs(vol) < 1e-14 * d * d * d)
    throw GeometryError("barycentric: degenerate tetrahedron");

  Bary4 b;
  // lambda_i = vol(tet with vertex i replaced by p) / vol(tet)
  for (int i = 0; i < 4; ++i) {
    TetPoints sub = t;
    sub[i] = p;
    b[i] = signed_volume(sub) / vol;
  }
  return b;
}

std::pair<Point3, Bary4> incenter(const TetPoints& t) {
  const double vol = signed_volume(t);
  const double d = diameter(t);
  if (std::abs(vol) < 1e-14 * d * d * d)
    throw GeometryError("incenter: degenerate tetrahedron");

  // Face opposite vertex i, area via cross product of its edges.
  static const int face[4][3] = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
  Bary4 kappa;
  double total = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Point3& a = t[face[i][0]];
    const Point3& b = t[face[i][1]];
    const Point3& c = t[face[i][2]];
    kappa[i] = 0.5 * norm(cross(b - a, c - a));
    total += kappa[i];
  }
  for (int i = 0; i < 4; ++i) kappa[i] /= total;
  return {from_barycentric(t, kappa), kappa};
}

Bary3 triangle_barycentric(const Point3& a, const Point3& b, const Point3& c,
                           const Point3& p) {
  const Vec3 n = cross(b - a, c - a);
  const double area2 = dot(n, n);
  if (area2 == 0.0) throw GeometryError("triangle_barycentric: degenerate face");
  Bary3 s;
  s[0] = dot(cross(b - p, c - p), n) / area2;
  s[1] = dot(cross(c - p, a - p), n) / area2;
  s[2] = 1.0 - s[0] - s[1];
  return s;
}

std::pair<Point3, Bary3> segment_face_intersection(const Point3& a,
                                                   const Point3& b,
                                                   const Point3& f0,
                                                   const Point3& f1,
                                                   const Point3& f2) {
  const Vec3 n = cross(f1 - f0, f2 - f0);
  const double da = dot(n, a - f0);
  const double db = dot(n, b - f0);
  const double scale = norm(n) * norm(b - a);
  if (std::abs(da - db) < 1e-14 * scale)
    throw GeometryError("segment_face_intersection: segment parallel to face plane");
  if (da * db > 0.0)
    throw GeometryError("segment_face_intersection: segment does not cross face plane");

  const double t = da / (da - db);
  const Point3 hit = a + (b - a) * t;
  Bary3 s = triangle_barycentric(f0, f1, f2, hit);
  for (int i = 0; i < 3; ++i)
    if (!(s[i] > 0.0 && s[i] < 1.0))
      throw GeometryError("segment_face_intersection: hit outside open triangle");
  return {hit, s};
}

}  // namespace wf
