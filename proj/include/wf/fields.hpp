#pragma once

#include <functional>
#include <string>

#include "wf/geometry.hpp"

namespace wf {

struct AnalyticField {
  std::function<double(const Point3&)> value;
  std::function<Vec3(const Point3&)> gradient;
};

// Gaussian bump centered in the unit cube.
AnalyticField field_u1();

// Steep tanh front through the unit cube.
AnalyticField field_u2();

// Lookup by CLI name ("u1" / "u2"); throws std::invalid_argument otherwise.
AnalyticField field_by_name(const std::string& name);

}  // namespace wf
