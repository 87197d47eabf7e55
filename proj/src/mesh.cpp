#include "wf/mesh.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

namespace wf {

namespace {

struct FaceKey {
  std::array<int, 3> v;
  bool operator==(const FaceKey& o) const { return v == o.v; }
};

struct FaceKeyHash {
  size_t operator()(const FaceKey& k) const {
    size_t h = 1469598103934665603ull;
    for (int x : k.v) {
      h ^= static_cast<size_t>(x);
      h *= 1099511628211ull;
    }
    return h;
  }
};

FaceKey face_key(int a, int b, int c) {
  std::array<int, 3> v{a, b, c};
  std::sort(v.begin(), v.end());
  return {v};
}

}  // namespace

void TetMesh::finalize() {
  const int ne = n_tets();

  for (int e = 0; e < ne; ++e) {
    double vol = tet_volume(e);
    if (vol < 0.0) {
      std::swap(tets[e].v[2], tets[e].v[3]);
      vol = -vol;
    }
    TetPoints p = tet_points(e);
    double d = diameter(p);
    if (vol < 1e-14 * d * d * d)
      throw MeshError("zero-volume element " + std::to_string(e + 1));
  }

  // Face adjacency: local face f is opposite local vertex f.
  static const int face_verts[4][3] = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
  std::unordered_map<FaceKey, std::pair<int, int>, FaceKeyHash> open_faces;
  face_neighbors.assign(ne, {kBoundary, kBoundary, kBoundary, kBoundary});
  for (int e = 0; e < ne; ++e) {
    for (int f = 0; f < 4; ++f) {
      FaceKey key = face_key(tets[e][face_verts[f][0]], tets[e][face_verts[f][1]],
                             tets[e][face_verts[f][2]]);
      auto it = open_faces.find(key);
      if (it == open_faces.end()) {
        open_faces.emplace(key, std::make_pair(e, f));
      } else {
        auto [oe, of] = it->second;
        if (face_neighbors[oe][of] != kBoundary)
          throw MeshError("face shared by more than two elements near element " +
                          std::to_string(e + 1));
        face_neighbors[e][f] = oe;
        face_neighbors[oe][of] = e;
        open_faces.erase(it);
      }
    }
  }

  // Unique edges, keyed by sorted vertex pair; deterministic ordering.
  std::map<std::pair<int, int>, int> edge_ids;
  for (const Tet& t : tets) {
    for (const auto& le : kLocalEdges) {
      int a = t[le[0]], b = t[le[1]];
      if (a > b) std::swap(a, b);
      edge_ids.emplace(std::make_pair(a, b), 0);
    }
  }
  edges.clear();
  edges.reserve(edge_ids.size());
  for (auto& [key, id] : edge_ids) {
    id = static_cast<int>(edges.size());
    edges.push_back({key.first, key.second});
  }
  tet_edges.assign(ne, {});
  for (int e = 0; e < ne; ++e) {
    for (int k = 0; k < 6; ++k) {
      int a = tets[e][kLocalEdges[k][0]], b = tets[e][kLocalEdges[k][1]];
      if (a > b) std::swap(a, b);
      tet_edges[e][k] = edge_ids.at({a, b});
    }
  }

  vertex_tets.assign(vertices.size(), {});
  edge_tets.assign(edges.size(), {});
  for (int e = 0; e < ne; ++e) {
    for (int v : tets[e].v) vertex_tets[v].push_back(e);
    for (int k = 0; k < 6; ++k) {
      auto& list = edge_tets[tet_edges[e][k]];
      if (list.empty() || list.back() != e) list.push_back(e);
    }
  }
}

int TetMesh::count_boundary_faces() const {
  int n = 0;
  for (const auto& fn : face_neighbors)
    for (int nb : fn)
      if (nb == kBoundary) ++n;
  return n;
}

int TetMesh::count_interior_faces() const {
  int n = 0;
  for (const auto& fn : face_neighbors)
    for (int nb : fn)
      if (nb != kBoundary) ++n;
  return n / 2;
}

namespace {

std::string next_line(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
      line.pop_back();
    if (!line.empty()) return line;
  }
  throw MeshError("unexpected end of file");
}

void skip_section(std::istream& in, const std::string& end_tag) {
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(end_tag, 0) == 0) return;
  }
  throw MeshError("missing " + end_tag);
}

}  // namespace

TetMesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open mesh file: " + path);

  TetMesh mesh;
  std::unordered_map<long long, int> tag_to_index;
  bool have_nodes = false, have_elements = false, have_format = false;

  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("$MeshFormat", 0) == 0) {
      std::istringstream fs(next_line(in));
      double version;
      int file_type;
      fs >> version >> file_type;
      if (!fs || std::abs(version - 4.1) > 1e-9)
        throw MeshError("unsupported MSH version (need ASCII 4.1): " + path);
      if (file_type != 0) throw MeshError("binary MSH not supported: " + path);
      skip_section(in, "$EndMeshFormat");
      have_format = true;
    } else if (line.rfind("$Nodes", 0) == 0) {
      std::istringstream hs(next_line(in));
      long long num_blocks, num_nodes, min_tag, max_tag;
      hs >> num_blocks >> num_nodes >> min_tag >> max_tag;
      if (!hs) throw MeshError("malformed $Nodes header");
      mesh.vertices.reserve(num_nodes);
      for (long long b = 0; b < num_blocks; ++b) {
        std::istringstream bs(next_line(in));
        int dim, tag, parametric;
        long long n;
        bs >> dim >> tag >> parametric >> n;
        if (!bs) throw MeshError("malformed node block header");
        std::vector<long long> tags(n);
        for (long long i = 0; i < n; ++i) {
          std::istringstream ls(next_line(in));
          ls >> tags[i];
          if (!ls) throw MeshError("malformed node tag");
        }
        for (long long i = 0; i < n; ++i) {
          std::istringstream ls(next_line(in));
          Point3 p;
          ls >> p.x >> p.y >> p.z;
          if (!ls) throw MeshError("malformed node coordinates");
          tag_to_index[tags[i]] = static_cast<int>(mesh.vertices.size());
          mesh.vertices.push_back(p);
        }
      }
      skip_section(in, "$EndNodes");
      have_nodes = true;
    } else if (line.rfind("$Elements", 0) == 0) {
      std::istringstream hs(next_line(in));
      long long num_blocks, num_elems, min_tag, max_tag;
      hs >> num_blocks >> num_elems >> min_tag >> max_tag;
      if (!hs) throw MeshError("malformed $Elements header");
      mesh.tets.reserve(num_elems);
      for (long long b = 0; b < num_blocks; ++b) {
        std::istringstream bs(next_line(in));
        int dim, tag, type;
        long long n;
        bs >> dim >> tag >> type >> n;
        if (!bs) throw MeshError("malformed element block header");
        if (type != 4)
          throw MeshError("non-tetrahedral cells (element type " +
                          std::to_string(type) + ") in " + path);
        for (long long i = 0; i < n; ++i) {
          std::istringstream ls(next_line(in));
          long long etag, a, bb, c, d;
          ls >> etag >> a >> bb >> c >> d;
          if (!ls)
            throw MeshError("malformed tetrahedron connectivity at element " +
                            std::to_string(etag));
          Tet t;
          try {
            t.v = {tag_to_index.at(a), tag_to_index.at(bb), tag_to_index.at(c),
                   tag_to_index.at(d)};
          } catch (const std::out_of_range&) {
            throw MeshError("element " + std::to_string(etag) +
                            " references unknown node");
          }
          mesh.tets.push_back(t);
        }
      }
      skip_section(in, "$EndElements");
      have_elements = true;
    }
    // other sections (PhysicalNames, Entities, ...) are ignored
  }

  if (!have_format) throw MeshError("missing $MeshFormat in " + path);
  if (!have_nodes || !have_elements)
    throw MeshError("missing $Nodes or $Elements in " + path);
  if (mesh.tets.empty()) throw MeshError("mesh contains no tetrahedra: " + path);

  mesh.finalize();
  return mesh;
}

void write_mesh(const TetMesh& mesh, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw MeshError("cannot write mesh file: " + path);

  std::fprintf(f, "$MeshFormat\n4.1 0 8\n$EndMeshFormat\n");
  const size_t nv = mesh.vertices.size();
  std::fprintf(f, "$Nodes\n1 %zu 1 %zu\n3 1 0 %zu\n", nv, nv, nv);
  for (size_t i = 0; i < nv; ++i) std::fprintf(f, "%zu\n", i + 1);
  for (const Point3& p : mesh.vertices)
    std::fprintf(f, "%.17g %.17g %.17g\n", p.x, p.y, p.z);
  std::fprintf(f, "$EndNodes\n");

  const size_t ne = mesh.tets.size();
  std::fprintf(f, "$Elements\n1 %zu 1 %zu\n3 1 4 %zu\n", ne, ne, ne);
  for (size_t e = 0; e < ne; ++e) {
    const Tet& t = mesh.tets[e];
    std::fprintf(f, "%zu %d %d %d %d\n", e + 1, t[0] + 1, t[1] + 1, t[2] + 1,
                 t[3] + 1);
  }
  std::fprintf(f, "$EndElements\n");
  std::fclose(f);
}

}  // namespace wf
