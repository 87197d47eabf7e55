#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wf/geometry.hpp"

namespace wf {

// Field samples on the tensor grid of n-point Gauss nodes of the unit cube
// (n^3 records). Index layout: ((i * n) + j) * n + k for x=node[i],
// y=node[j], z=node[k].
struct SampleGrid {
  int n = 0;
  std::vector<double> nodes;  // per-axis Gauss nodes on (0,1)
  std::vector<double> value;
  std::vector<double> grad_mag;
};

SampleGrid sample_field(int n, const std::function<double(const Point3&)>& value,
                        const std::function<Vec3(const Point3&)>& gradient);

// x,y,z,value,grad_magnitude rows, 15 significant digits.
void write_sample_csv(const SampleGrid& grid, const std::string& path);

// Legacy-VTK STRUCTURED_POINTS with nominal uniform spacing (the Gauss nodes
// are not equispaced; the CSV carries the true coordinates).
void write_sample_vtk(const SampleGrid& grid, const std::string& path);

}  // namespace wf
