#include "wf/sampling.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "wf/parallel.hpp"
#include "wf/quadrature.hpp"

namespace wf {

SampleGrid sample_field(int n, const std::function<double(const Point3&)>& value,
                        const std::function<Vec3(const Point3&)>& gradient) {
  SampleGrid grid;
  grid.n = n;
  std::vector<double> weights;
  gauss_legendre(n, grid.nodes, weights);
  grid.value.resize(static_cast<size_t>(n) * n * n);
  grid.grad_mag.resize(grid.value.size());
  parallel_for(0, n, [&](int i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        Point3 p{grid.nodes[i], grid.nodes[j], grid.nodes[k]};
        size_t idx = (static_cast<size_t>(i) * n + j) * n + k;
        grid.value[idx] = value(p);
        grid.grad_mag[idx] = gradient(p).norm();
      }
    }
  });
  return grid;
}

void write_sample_csv(const SampleGrid& grid, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot write " + path);
  std::fprintf(f, "x,y,z,value,grad_magnitude\n");
  const int n = grid.n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        size_t idx = (static_cast<size_t>(i) * n + j) * n + k;
        std::fprintf(f, "%.14e,%.14e,%.14e,%.14e,%.14e\n", grid.nodes[i],
                     grid.nodes[j], grid.nodes[k], grid.value[idx],
                     grid.grad_mag[idx]);
      }
    }
  }
  std::fclose(f);
}

void write_sample_vtk(const SampleGrid& grid, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot write " + path);
  const int n = grid.n;
  double spacing = n > 1 ? (grid.nodes[n - 1] - grid.nodes[0]) / (n - 1) : 1.0;
  std::fprintf(f, "# vtk DataFile Version 3.0\n");
  std::fprintf(f, "field samples at %dx%dx%d Gauss points\n", n, n, n);
  std::fprintf(f, "ASCII\nDATASET STRUCTURED_POINTS\n");
  std::fprintf(f, "DIMENSIONS %d %d %d\n", n, n, n);
  std::fprintf(f, "ORIGIN %.14e %.14e %.14e\n", grid.nodes[0], grid.nodes[0],
               grid.nodes[0]);
  std::fprintf(f, "SPACING %.14e %.14e %.14e\n", spacing, spacing, spacing);
  std::fprintf(f, "POINT_DATA %zu\n", grid.value.size());
  // VTK structured points vary x fastest.
  auto write_scalars = [&](const char* name, const std::vector<double>& v) {
    std::fprintf(f, "SCALARS %s double 1\nLOOKUP_TABLE default\n", name);
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
          std::fprintf(f, "%.14e\n", v[(static_cast<size_t>(i) * n + j) * n + k]);
  };
  write_scalars("value", grid.value);
  write_scalars("grad_magnitude", grid.grad_mag);
  std::fclose(f);
}

}  // namespace wf
