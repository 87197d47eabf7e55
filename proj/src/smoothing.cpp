#include "wf/smoothing.hpp"

#include <stdexcept>

#include "wf/parallel.hpp"

namespace wf {

double PiecewiseField::eval(int elem, const Point3& p) const {
  Bary4 lam = barycentric(mesh->tet_points(elem), p);
  return bform_value(degree, coeffs[elem], lam);
}

Vec3 PiecewiseField::grad(int elem, const Point3& p) const {
  TetPoints tet = mesh->tet_points(elem);
  Bary4 lam = barycentric(tet, p);
  return bform_gradient(degree, coeffs[elem], tet, lam);
}

std::vector<EdgeFrame> build_edge_frames(const TetMesh& mesh) {
  std::vector<EdgeFrame> frames(mesh.edges.size());
  parallel_for(0, static_cast<int>(mesh.edges.size()), [&](int i) {
    const Edge& e = mesh.edges[i];
    frames[i] = edge_frame(mesh.vertices[e.a], mesh.vertices[e.b]);
  });
  return frames;
}

std::vector<HermiteData> synchronize(const PiecewiseField& field,
                                     const std::vector<EdgeFrame>& frames) {
  if (field.degree >= 4)
    throw std::invalid_argument(
        "synchronize: degree >= 4 not supported (degree-4 bubble functions "
        "can vanish under star averaging)");
  const TetMesh& mesh = *field.mesh;
  const int nv = mesh.n_vertices();
  const int ne_edges = static_cast<int>(mesh.edges.size());

  std::vector<double> vval(nv);
  std::vector<Vec3> vgrad(nv);
  // Contributions accumulate in ascending element-id order (the incidence
  // lists are built that way), so results are identical for any thread count.
  parallel_for(0, nv, [&](int v) {
    const Point3& p = mesh.vertices[v];
    double sv = 0.0;
    Vec3 sg{0, 0, 0};
    for (int e : mesh.vertex_tets[v]) {
      sv += field.eval(e, p);
      sg = sg + field.grad(e, p);
    }
    double inv = 1.0 / mesh.vertex_tets[v].size();
    vval[v] = sv * inv;
    vgrad[v] = sg * inv;
  });

  std::vector<double> ed1(ne_edges), ed2(ne_edges);
  parallel_for(0, ne_edges, [&](int m) {
    const Edge& ed = mesh.edges[m];
    Point3 mid = (mesh.vertices[ed.a] + mesh.vertices[ed.b]) * 0.5;
    double s1 = 0.0, s2 = 0.0;
    for (int e : mesh.edge_tets[m]) {
      Vec3 g = field.grad(e, mid);
      s1 += dot(g, frames[m].e1);
      s2 += dot(g, frames[m].e2);
    }
    double inv = 1.0 / mesh.edge_tets[m].size();
    ed1[m] = s1 * inv;
    ed2[m] = s2 * inv;
  });

  std::vector<HermiteData> out(mesh.n_tets());
  parallel_for(0, mesh.n_tets(), [&](int e) {
    HermiteData& h = out[e];
    for (int i = 0; i < 4; ++i) {
      int v = mesh.tets[e][i];
      h.value[i] = vval[v];
      h.gradient[i] = vgrad[v];
    }
    for (int k = 0; k < 6; ++k) {
      int m = mesh.tet_edges[e][k];
      h.frame[k] = frames[m];
      h.d1[k] = ed1[m];
      h.d2[k] = ed2[m];
    }
  });
  return out;
}

std::vector<HermiteData> hermite_from_analytic(
    const TetMesh& mesh, const std::vector<EdgeFrame>& frames,
    const AnalyticField& f) {
  std::vector<HermiteData> out(mesh.n_tets());
  parallel_for(0, mesh.n_tets(), [&](int e) {
    HermiteData& h = out[e];
    for (int i = 0; i < 4; ++i) {
      const Point3& p = mesh.vertices[mesh.tets[e][i]];
      h.value[i] = f.value(p);
      h.gradient[i] = f.gradient(p);
    }
    for (int k = 0; k < 6; ++k) {
      int m = mesh.tet_edges[e][k];
      const Edge& ed = mesh.edges[m];
      Point3 mid = (mesh.vertices[ed.a] + mesh.vertices[ed.b]) * 0.5;
      Vec3 g = f.gradient(mid);
      h.frame[k] = frames[m];
      h.d1[k] = dot(g, frames[m].e1);
      h.d2[k] = dot(g, frames[m].e2);
    }
  });
  return out;
}

}  // namespace wf
