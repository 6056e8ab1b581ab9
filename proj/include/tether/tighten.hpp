#pragma once

#include <unordered_map>
#include <vector>

#include "tether/geom.hpp"
#include "tether/mesh.hpp"

namespace tether {

// Shortest-homotopic-path operator over a fixed obstacle set. Built once per
// scenario; tighten() pulls any free-space polyline taut without letting it
// sweep across an obstacle, keeping endpoints fixed. Interior vertices of the
// result are always obstacle corners.
class Tightener {
 public:
  struct Portal {
    int left, right;  // mesh vertex ids, sides relative to travel direction
  };

  Tightener(const std::vector<Polygon>& obstacles, const Eigen::AlignedBox2d& domain);

  Polyline tighten(const Polyline& pl) const;

  const Mesh& mesh() const { return mesh_; }

 private:

  std::vector<Portal> walk(const Polyline& pl) const;
  Polyline funnel(const Vec2& s, const std::vector<Portal>& portals, const Vec2& t) const;

  Mesh mesh_;
  std::unordered_map<long long, int> dir_edge_tri_;  // directed edge -> triangle on its left
};

}  // namespace tether
