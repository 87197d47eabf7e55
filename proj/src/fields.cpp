#include "wf/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace wf {

AnalyticField field_u1() {
  AnalyticField f;
  f.value = [](const Point3& p) {
    double dx = p.x - 0.5, dy = p.y - 0.5, dz = p.z - 0.5;
    return std::exp(-30.0 * (dx * dx + dy * dy + dz * dz));
  };
  f.gradient = [](const Point3& p) {
    double dx = p.x - 0.5, dy = p.y - 0.5, dz = p.z - 0.5;
    double v = std::exp(-30.0 * (dx * dx + dy * dy + dz * dz));
    return Vec3{-60.0 * dx * v, -60.0 * dy * v, -60.0 * dz * v};
  };
  return f;
}

AnalyticField field_u2() {
  auto arg = [](const Point3& p) {
    return 20.0 * ((p.x - 0.5) + 0.3 * std::sin(-10.0 * (p.y - 0.5)) -
                   0.3 * std::sin(-5.0 * (p.z - 0.6)));
  };
  AnalyticField f;
  f.value = [arg](const Point3& p) { return std::tanh(arg(p)); };
  f.gradient = [arg](const Point3& p) {
    double t = std::tanh(arg(p));
    double s = 1.0 - t * t;
    double wx = 20.0;
    double wy = -60.0 * std::cos(-10.0 * (p.y - 0.5));
    double wz = 30.0 * std::cos(-5.0 * (p.z - 0.6));
    return Vec3{s * wx, s * wy, s * wz};
  };
  return f;
}

AnalyticField field_by_name(const std::string& name) {
  if (name == "u1") return field_u1();
  if (name == "u2") return field_u2();
  throw std::invalid_argument("unknown field: " + name);
}

}  // namespace wf
