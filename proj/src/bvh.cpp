#include "wf/bvh.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace wf {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
// Escalating containment tolerances; the first that yields a hit wins.
constexpr double kTolSweep[] = {1e-10, 1e-8, 1e-6};
}  // namespace

void Aabb::expand(const Point3& p) {
  lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y); lo.z = std::min(lo.z, p.z);
  hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y); hi.z = std::max(hi.z, p.z);
}

void Aabb::expand(const Aabb& b) {
  expand(b.lo);
  expand(b.hi);
}

bool Aabb::contains(const Point3& p, double tol) const {
  return p.x >= lo.x - tol && p.x <= hi.x + tol && p.y >= lo.y - tol &&
         p.y <= hi.y + tol && p.z >= lo.z - tol && p.z <= hi.z + tol;
}

ElementBvh::ElementBvh(const TetMesh& mesh) : mesh_(mesh) {
  const int ne = mesh.n_tets();
  elem_boxes_.resize(ne);
  for (int e = 0; e < ne; ++e) {
    Aabb box{{kInf, kInf, kInf}, {-kInf, -kInf, -kInf}};
    for (int v : mesh.tets[e].v) box.expand(mesh.vertices[v]);
    elem_boxes_[e] = box;
  }
  order_.resize(ne);
  std::iota(order_.begin(), order_.end(), 0);
  nodes_.reserve(2 * ne);
  build(0, ne);
}

int ElementBvh::build(int begin, int end) {
  int id = static_cast<int>(nodes_.size());
  nodes_.push_back({});
  Aabb box{{kInf, kInf, kInf}, {-kInf, -kInf, -kInf}};
  for (int i = begin; i < end; ++i) box.expand(elem_boxes_[order_[i]]);
  nodes_[id].box = box;

  if (end - begin <= 8) {
    nodes_[id].begin = begin;
    nodes_[id].end = end;
    return id;
  }

  Vec3 ext = box.hi - box.lo;
  int axis = (ext.x >= ext.y && ext.x >= ext.z) ? 0 : (ext.y >= ext.z ? 1 : 2);
  int mid = (begin + end) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid,
                   order_.begin() + end, [&](int a, int b) {
                     auto c = [&](const Aabb& bx) {
                       return axis == 0 ? bx.lo.x + bx.hi.x
                              : axis == 1 ? bx.lo.y + bx.hi.y
                                          : bx.lo.z + bx.hi.z;
                     };
                     return c(elem_boxes_[a]) < c(elem_boxes_[b]);
                   });

  int left = build(begin, mid);
  int right = build(mid, end);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

void ElementBvh::collect(int node, const Point3& p, double tol,
                         std::vector<int>& out) const {
  const Node& n = nodes_[node];
  if (!n.box.contains(p, tol)) return;
  if (n.left < 0) {
    for (int i = n.begin; i < n.end; ++i) {
      if (elem_boxes_[order_[i]].contains(p, tol)) out.push_back(order_[i]);
    }
    return;
  }
  collect(n.left, p, tol, out);
  collect(n.right, p, tol, out);
}

int ElementBvh::best_candidate(const Point3& p, double tol,
                               const std::vector<int>& cands,
                               Bary4* bary) const {
  int best = -1;
  Bary4 best_bary{};
  for (int e : cands) {
    if (best >= 0 && e >= best) continue;
    Bary4 b = barycentric(mesh_.tet_points(e), p);
    if (b.min() >= -tol) {
      best = e;
      best_bary = b;
    }
  }
  if (best >= 0 && bary) *bary = best_bary;
  return best;
}

int ElementBvh::locate(const Point3& p, Bary4* bary) const {
  std::vector<int> cands;
  for (double tol : kTolSweep) {
    cands.clear();
    // Box tolerance is scaled by the query's magnitude to stay meaningful
    // for meshes away from the origin.
    double box_tol = tol * (1.0 + std::abs(p.x) + std::abs(p.y) + std::abs(p.z));
    collect(0, p, box_tol, cands);
    std::sort(cands.begin(), cands.end());
    int e = best_candidate(p, tol, cands, bary);
    if (e >= 0) return e;
  }
  return -1;
}

int ElementBvh::locate_scan(const Point3& p, Bary4* bary) const {
  const int ne = mesh_.n_tets();
  for (double tol : kTolSweep) {
    for (int e = 0; e < ne; ++e) {
      Bary4 b = barycentric(mesh_.tet_points(e), p);
      if (b.min() >= -tol) {
        if (bary) *bary = b;
        return e;
      }
    }
  }
  return -1;
}

}  // namespace wf
