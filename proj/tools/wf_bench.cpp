// Compares the serial reference path against the OpenMP kernels on the
// hot loops: spline construction, global projection RHS-style sampling,
// and element-local transfer solves.
#include <chrono>
#include <cstdio>
#include <string>

#include "wf/fields.hpp"
#include "wf/meshgen.hpp"
#include "wf/parallel.hpp"
#include "wf/smoothing.hpp"
#include "wf/transfer.hpp"

using namespace wf;
using clk = std::chrono::steady_clock;

namespace {

double seconds(clk::time_point a, clk::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

struct Timings {
  double build, transfer, l2;
};

Timings run(const TetMesh& source, const TetMesh& target,
            const PiecewiseField& src, const AnalyticField& f) {
  Timings t{};
  auto t0 = clk::now();
  WFSplitter splitter(source);
  auto frames = build_edge_frames(source);
  auto data = synchronize(src, frames);
  auto splines = build_wf_splines(splitter, data);
  auto t1 = clk::now();
  TransferConfig cfg;
  PiecewiseField out = transfer_wf(src, target, cfg);
  auto t2 = clk::now();
  SplineField sf(source, std::move(splines));
  double err = l2_error([&](const Point3& p) { return sf.value(p); },
                        [&](const Point3& p) { return f.value(p); });
  auto t3 = clk::now();
  t.build = seconds(t0, t1);
  t.transfer = seconds(t1, t2);
  t.l2 = seconds(t2, t3);
  std::printf("  (spline l2 error vs analytic: %.3e, transferred mass %.6f)\n", err,
              mass(out));
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  int level = argc > 1 ? std::atoi(argv[1]) : 2;
  TetMesh source = grid_mesh(level, 1);
  TetMesh target = grid_mesh(level, 1001);
  AnalyticField f = field_u1();
  PiecewiseField src = project_analytic(f, source, 1);
  std::printf("grid level %d: %d source / %d target elements\n", level,
              source.n_tets(), target.n_tets());

  set_num_threads(1);
  std::printf("serial reference:\n");
  Timings ts = run(source, target, src, f);
  std::printf("  build %.3fs  transfer %.3fs  l2 %.3fs\n", ts.build, ts.transfer,
              ts.l2);

  set_num_threads(0);  // library/environment default
  std::printf("parallel (%d threads):\n", num_threads());
  Timings tp = run(source, target, src, f);
  std::printf("  build %.3fs  transfer %.3fs  l2 %.3fs\n", tp.build, tp.transfer,
              tp.l2);
  std::printf("speedup: build %.2fx  transfer %.2fx  l2 %.2fx\n",
              ts.build / tp.build, ts.transfer / tp.transfer, ts.l2 / tp.l2);
  return 0;
}
