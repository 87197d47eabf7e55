#pragma once

#include <vector>

#include "wf/mesh.hpp"

namespace wf {

// Axis-aligned bounding volume hierarchy over mesh elements, used to locate
// the element containing a query point. Containment uses barycentric
// coordinates with tolerance -1e-10 on the minimum coordinate; when a point
// lies on a shared face/edge/vertex, the lowest element id wins.

struct Aabb {
  Point3 lo, hi;
  void expand(const Point3& p);
  void expand(const Aabb& b);
  bool contains(const Point3& p, double tol) const;
};

class ElementBvh {
 public:
  explicit ElementBvh(const TetMesh& mesh);

  // Returns element id, or -1 if the point is outside the mesh even after a
  // tolerance sweep. On containment also returns barycentric coordinates.
  int locate(const Point3& p, Bary4* bary = nullptr) const;

  // Reference implementation: linear scan over all elements. Same tie-break.
  int locate_scan(const Point3& p, Bary4* bary = nullptr) const;

 private:
  struct Node {
    Aabb box;
    int left = -1, right = -1;  // child node indices; leaf if left < 0
    int begin = 0, end = 0;     // element range for leaves
  };

  int build(int begin, int end);
  void collect(int node, const Point3& p, double tol,
               std::vector<int>& out) const;
  int best_candidate(const Point3& p, double tol,
                     const std::vector<int>& cands, Bary4* bary) const;

  const TetMesh& mesh_;
  std::vector<Node> nodes_;
  std::vector<int> order_;         // element ids, partitioned by the tree
  std::vector<Aabb> elem_boxes_;   // indexed by element id
};

}  // namespace wf
