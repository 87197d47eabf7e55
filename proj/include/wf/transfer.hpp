#pragma once

#include <memory>
#include <vector>

#include "wf/bvh.hpp"
#include "wf/fields.hpp"
#include "wf/quadrature.hpp"
#include "wf/smoothing.hpp"
#include "wf/wf_coefficients.hpp"
#include "wf/wf_split.hpp"

namespace wf {

enum class QuadMode { fixed, adaptive };
enum class SplineMode { geometric_c1, global_c0 };

struct TransferConfig {
  int k = 1;  // target polynomial degree, 1..3
  QuadMode quad = QuadMode::fixed;
  SplineMode spline = SplineMode::geometric_c1;
  AdaptiveConfig adaptive{};
};

// A spline (C1 or C0) over a whole mesh, with point location.
class SplineField {
 public:
  SplineField(const TetMesh& mesh, std::vector<MacroSpline> splines);

  const TetMesh& mesh() const { return *mesh_; }
  const std::vector<MacroSpline>& splines() const { return splines_; }

  double value(const Point3& p) const;
  Vec3 gradient(const Point3& p) const;

  // Spline mass by the closed-form Bernstein integral over all subtets.
  double mass() const;

 private:
  const TetMesh* mesh_;
  std::vector<MacroSpline> splines_;
  std::unique_ptr<ElementBvh> bvh_;
};

// Geometric C1 construction: one macroelement at a time from Hermite data.
std::vector<MacroSpline> build_wf_splines(const WFSplitter& splitter,
                                          const std::vector<HermiteData>& data);

// Element-local L2 projection of an analytic field.
PiecewiseField project_analytic(const AnalyticField& f, const TetMesh& mesh,
                                int k, QuadMode quad = QuadMode::fixed,
                                const AdaptiveConfig& acfg = {});

// The transfer pipeline: synchronize, build the spline (per cfg.spline),
// then project element-locally onto the target mesh.
PiecewiseField transfer_wf(const PiecewiseField& source,
                           const TetMesh& target, const TransferConfig& cfg);

// Baseline: continuous piecewise-linear interpolant of the synchronized
// vertex values, projected onto the target at degree k.
PiecewiseField transfer_linear(const PiecewiseField& source,
                               const TetMesh& target, int k);

// Plain L2 projection: sample the discontinuous source field directly.
PiecewiseField transfer_l2(const PiecewiseField& source, const TetMesh& target,
                           int k, QuadMode quad = QuadMode::fixed,
                           const AdaptiveConfig& acfg = {});

// Distinct P3 nodes of the WF-refined mesh.
struct GlobalDofTable {
  int n_dofs = 0;
  // Per element, global dof id of each of the 91 macro coefficients.
  std::vector<std::array<int, 91>> macro_dofs;
};

GlobalDofTable build_global_dof_table(const WFSplitter& splitter);

// Global L2 projection of the (discontinuous) source field onto the C0
// cubic spline space over the WF refinement; mass-conserving because
// constants lie in the space. Solved by Jacobi-preconditioned CG.
std::vector<MacroSpline> global_spline_projection(const PiecewiseField& source,
                                                  const WFSplitter& splitter,
                                                  const GlobalDofTable& table);

// Field mass by the closed-form Bernstein integral.
double mass(const PiecewiseField& field);
// Field mass re-computed with quadrature (exposes integration error only).
double mass_quadrature(const PiecewiseField& field, QuadMode quad,
                       const AdaptiveConfig& acfg = {});
// Mass of an analytic integrand, adaptively integrated per element.
double mass_analytic(const AnalyticField& f, const TetMesh& mesh,
                     const AdaptiveConfig& acfg = {});

// sqrt(1/|Omega| * integral over the unit cube of (candidate-exact)^2),
// with an n-point Gauss rule per axis.
double l2_error(const std::function<double(const Point3&)>& candidate,
                const std::function<double(const Point3&)>& exact, int n = 41);

}  // namespace wf
