#pragma once

#include <array>
#include <vector>

#include "tether/geom.hpp"

namespace tether {

// Triangulation of the free region inside a padded box, with the obstacles as
// holes. Obstacle interiors are not meshed, so every obstacle edge and every
// box edge shows up as a wall (a triangle side with no neighbor).
struct Mesh {
  struct Tri {
    std::array<int, 3> v;    // CCW corners
    std::array<int, 3> nbr;  // nbr[k]: triangle across edge (v[k], v[k+1]), -1 = wall
  };

  std::vector<Vec2> verts;  // box corners then obstacle vertices
  std::vector<Tri> tris;
  std::vector<std::vector<int>> vtris;  // incident triangles per vertex
  Eigen::AlignedBox2d box;

  // Ordered sweep of the free space around a vertex: triangles CCW from one
  // wall edge to the other, and the vertex's fan edges (fan_other[i] is the far
  // endpoint of the i-th edge; edges 0 and n are the walls).
  struct Fan {
    std::vector<int> tris;        // size n
    std::vector<int> fan_other;   // size n + 1
  };
  std::vector<Fan> fans;
};

Mesh build_mesh(const std::vector<Polygon>& obstacles, const Eigen::AlignedBox2d& domain);

}  // namespace tether
