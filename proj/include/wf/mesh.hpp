#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "wf/geometry.hpp"

namespace wf {

struct MeshError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Tet {
  std::array<int, 4> v{};
  int operator[](int i) const { return v[i]; }
};

struct Edge {
  int a = -1, b = -1;  // vertex ids, a < b
};

constexpr int kBoundary = -1;

/// Immutable tetrahedral mesh with face adjacency and a unique edge table.
/// All queries are const and safe for concurrent use.
class TetMesh {
 public:
  std::vector<Point3> vertices;
  std::vector<Tet> tets;

  // face_neighbors[e][f]: neighbor across the face opposite local vertex f,
  // or kBoundary.
  std::vector<std::array<int, 4>> face_neighbors;

  std::vector<Edge> edges;
  // tet_edges[e][k]: edge id of local edge k; local edge order
  // (0,1),(1,2),(0,2),(2,3),(1,3),(0,3).
  std::vector<std::array<int, 6>> tet_edges;

  // vertex_tets[v]: incident elements, ascending.
  std::vector<std::vector<int>> vertex_tets;
  // edge_tets[e]: elements sharing edge e, ascending.
  std::vector<std::vector<int>> edge_tets;

  TetPoints tet_points(int e) const {
    const Tet& t = tets[e];
    return {vertices[t[0]], vertices[t[1]], vertices[t[2]], vertices[t[3]]};
  }
  double tet_volume(int e) const { return signed_volume(tet_points(e)); }
  int n_tets() const { return static_cast<int>(tets.size()); }
  int n_vertices() const { return static_cast<int>(vertices.size()); }

  /// Local vertex pairs of the 6 edges, matching tet_edges.
  static constexpr std::array<std::array<int, 2>, 6> kLocalEdges = {
      {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {1, 3}, {0, 3}}};

  /// Builds adjacency, edges and incidence; repairs orientation by swapping
  /// v[2]/v[3] of negatively oriented tets; rejects zero-volume elements.
  void finalize();

  int count_boundary_faces() const;
  int count_interior_faces() const;
};

/// Reads a GMSH MSH ASCII v4.1 file containing 4-node tetrahedra
/// (element type 4) only. Error messages carry the 1-based element tags
/// used in the file.
TetMesh load_mesh(const std::string& path);

/// Writes MSH ASCII v4.1 (single entity block).
void write_mesh(const TetMesh& mesh, const std::string& path);

}  // namespace wf
