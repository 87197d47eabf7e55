#include "wf/meshgen.hpp"

#include <array>
#include <map>
#include <random>
#include <stdexcept>

namespace wf {

namespace {

bool on_cube_boundary(const Point3& p) {
  auto edge = [](double v) { return v < 1e-12 || v > 1.0 - 1e-12; };
  return edge(p.x) || edge(p.y) || edge(p.z);
}

bool all_positive(const std::vector<Point3>& verts,
                  const std::vector<Tet>& tets, double min_vol) {
  for (const Tet& t : tets) {
    TetPoints p = {verts[t[0]], verts[t[1]], verts[t[2]], verts[t[3]]};
    double v = signed_volume(p);
    if (std::abs(v) < min_vol) return false;
  }
  return true;
}

}  // namespace

TetMesh cube24_mesh(int nx, unsigned seed, double perturb) {
  if (nx < 1) throw std::invalid_argument("cube24_mesh: nx must be >= 1");
  const double h = 1.0 / nx;

  std::vector<Point3> verts;
  std::map<std::array<long long, 3>, int> vid;  // keyed on 2x-lattice coords
  auto vertex = [&](int ix2, int iy2, int iz2) {
    std::array<long long, 3> key = {ix2, iy2, iz2};
    auto it = vid.find(key);
    if (it != vid.end()) return it->second;
    int id = static_cast<int>(verts.size());
    verts.push_back({0.5 * h * ix2, 0.5 * h * iy2, 0.5 * h * iz2});
    vid.emplace(key, id);
    return id;
  };

  // Faces of the unit cube in local 2x-lattice offsets: face center plus the
  // four corner cycle.
  struct Face {
    int center[3];
    int corners[4][3];
  };
  static const Face faces[6] = {
      {{0, 1, 1}, {{0, 0, 0}, {0, 2, 0}, {0, 2, 2}, {0, 0, 2}}},
      {{2, 1, 1}, {{2, 0, 0}, {2, 0, 2}, {2, 2, 2}, {2, 2, 0}}},
      {{1, 0, 1}, {{0, 0, 0}, {0, 0, 2}, {2, 0, 2}, {2, 0, 0}}},
      {{1, 2, 1}, {{0, 2, 0}, {2, 2, 0}, {2, 2, 2}, {0, 2, 2}}},
      {{1, 1, 0}, {{0, 0, 0}, {2, 0, 0}, {2, 2, 0}, {0, 2, 0}}},
      {{1, 1, 2}, {{0, 0, 2}, {0, 2, 2}, {2, 2, 2}, {2, 0, 2}}},
  };

  std::vector<Tet> tets;
  for (int cx = 0; cx < nx; ++cx) {
    for (int cy = 0; cy < nx; ++cy) {
      for (int cz = 0; cz < nx; ++cz) {
        int bx = 2 * cx, by = 2 * cy, bz = 2 * cz;
        int center = vertex(bx + 1, by + 1, bz + 1);
        for (const Face& f : faces) {
          int fc = vertex(bx + f.center[0], by + f.center[1], bz + f.center[2]);
          for (int k = 0; k < 4; ++k) {
            const int* a = f.corners[k];
            const int* b = f.corners[(k + 1) % 4];
            Tet t;
            t.v = {center, fc, vertex(bx + a[0], by + a[1], bz + a[2]),
                   vertex(bx + b[0], by + b[1], bz + b[2])};
            tets.push_back(t);
          }
        }
      }
    }
  }

  // Jitter interior vertices; shrink the amplitude until every element
  // keeps a healthy volume.
  if (perturb > 0.0) {
    const double min_vol = 1e-4 * h * h * h;
    std::vector<Point3> base = verts;
    double amp = perturb * 0.5 * h;
    for (int attempt = 0; attempt < 8; ++attempt) {
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> u(-amp, amp);
      std::vector<Point3> trial = base;
      for (size_t i = 0; i < trial.size(); ++i) {
        if (on_cube_boundary(base[i])) continue;
        trial[i].x += u(rng);
        trial[i].y += u(rng);
        trial[i].z += u(rng);
      }
      if (all_positive(trial, tets, min_vol)) {
        verts = trial;
        break;
      }
      amp *= 0.5;
    }
  }

  TetMesh mesh;
  mesh.vertices = std::move(verts);
  mesh.tets = std::move(tets);
  mesh.finalize();
  return mesh;
}

TetMesh refine8(const TetMesh& mesh) {
  TetMesh out;
  out.vertices = mesh.vertices;
  std::vector<int> edge_mid(mesh.edges.size());
  for (size_t m = 0; m < mesh.edges.size(); ++m) {
    const Edge& e = mesh.edges[m];
    edge_mid[m] = static_cast<int>(out.vertices.size());
    out.vertices.push_back((mesh.vertices[e.a] + mesh.vertices[e.b]) * 0.5);
  }

  out.tets.reserve(8 * mesh.tets.size());
  for (int e = 0; e < mesh.n_tets(); ++e) {
    const Tet& t = mesh.tets[e];
    // Midpoint id of local edge (i,j).
    int m[4][4];
    for (int k = 0; k < 6; ++k) {
      int i = TetMesh::kLocalEdges[k][0], j = TetMesh::kLocalEdges[k][1];
      m[i][j] = m[j][i] = edge_mid[mesh.tet_edges[e][k]];
    }
    auto push = [&](int a, int b, int c, int d) {
      out.tets.push_back({{a, b, c, d}});
    };
    push(t[0], m[0][1], m[0][2], m[0][3]);
    push(m[0][1], t[1], m[1][2], m[1][3]);
    push(m[0][2], m[1][2], t[2], m[2][3]);
    push(m[0][3], m[1][3], m[2][3], t[3]);

    // Octahedron diagonals (01,23), (02,13), (03,12): shortest wins, ties
    // keep the earliest in that order.
    struct Diag {
      int a, b;
      int ring[4];
    };
    Diag diags[3] = {
        {m[0][1], m[2][3], {m[0][2], m[1][2], m[1][3], m[0][3]}},
        {m[0][2], m[1][3], {m[0][1], m[1][2], m[2][3], m[0][3]}},
        {m[0][3], m[1][2], {m[0][1], m[1][3], m[2][3], m[0][2]}},
    };
    int best = 0;
    double best_len = (out.vertices[diags[0].a] - out.vertices[diags[0].b]).norm();
    for (int d = 1; d < 3; ++d) {
      double len = (out.vertices[diags[d].a] - out.vertices[diags[d].b]).norm();
      if (len < best_len) {
        best = d;
        best_len = len;
      }
    }
    const Diag& dg = diags[best];
    for (int k = 0; k < 4; ++k)
      push(dg.a, dg.b, dg.ring[k], dg.ring[(k + 1) % 4]);
  }

  out.finalize();  // also repairs any negatively oriented children
  return out;
}

TetMesh grid_mesh(int level, unsigned seed) {
  if (level < 1) throw std::invalid_argument("grid_mesh: level must be >= 1");
  TetMesh mesh = cube24_mesh(2, seed);
  for (int l = 1; l < level; ++l) mesh = refine8(mesh);
  return mesh;
}

}  // namespace wf
