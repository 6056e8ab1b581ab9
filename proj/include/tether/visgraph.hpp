#pragma once

#include <map>
#include <utility>
#include <vector>

#include "tether/geom.hpp"
#include "tether/scenario.hpp"

namespace tether {

// Sight line: the open segment may touch obstacle boundaries but not pass
// through any interior.
inline bool visible(const Vec2& a, const Vec2& b, const std::vector<Polygon>& obstacles) {
  return segment_in_free_space(a, b, obstacles);
}

// Reduced visibility graph over the four terminals and all obstacle corners.
// Edges keep only tangent sight lines: at a polygon corner the segment must
// leave both polygon neighbors weakly on one side, otherwise no taut path can
// bend there and the edge is useless for shortest paths.
struct VisGraph {
  struct Edge {
    int to;
    double w;
  };

  std::vector<Vec2> verts;          // terminals first, then obstacle corners
  std::vector<int> owner;           // obstacle index, -1 for free terminals
  std::vector<int> owner_pos;       // corner index within the owner polygon
  std::vector<bool> terminal;       // start/goal points (tangency never filters these)
  int ra = -1, rb = -1, da = -1, db = -1;
  std::vector<std::vector<Edge>> adj;

  int size() const { return static_cast<int>(verts.size()); }

  // Exact-coordinate lookup (taut cables only ever bend at graph vertices).
  int vertex_at(const Vec2& p) const;

 private:
  friend VisGraph build_rvg(const Scenario& s);
  std::map<std::pair<double, double>, int> index_;
};

VisGraph build_rvg(const Scenario& s);

// Distances from src to every graph vertex.
std::vector<double> dijkstra(const VisGraph& g, int src);

}  // namespace tether
