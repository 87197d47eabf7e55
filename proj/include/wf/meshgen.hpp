#pragma once

#include "wf/mesh.hpp"

namespace wf {

// Unit-cube test meshes: an nx^3 block of cubes, each cut into 24 tets
// (cube center joined to four triangles per face, fanned from the face
// center). Strictly interior vertices are jittered with the given seed;
// the amplitude is reduced and the jitter retried if an element degenerates.
TetMesh cube24_mesh(int nx, unsigned seed, double perturb = 0.25);

// Uniform 8-way refinement at edge midpoints (octahedron cut along its
// shortest diagonal). Element count x8, mesh size halved.
TetMesh refine8(const TetMesh& mesh);

// Level 1 = cube24_mesh(2, seed) with 192 elements; each further level is a
// refine8 of the previous.
TetMesh grid_mesh(int level, unsigned seed);

}  // namespace wf
