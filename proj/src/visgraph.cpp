#include "tether/visgraph.hpp"

#include <queue>

namespace tether {

int VisGraph::vertex_at(const Vec2& p) const {
  const auto it = index_.find({p.x(), p.y()});
  return it == index_.end() ? -1 : it->second;
}

namespace {

// Edge toward `from` may bend at corner v only if both polygon neighbors of v
// stay weakly on one side of the sight line.
bool tangent_at(const VisGraph& g, const std::vector<Polygon>& obstacles,
                int vid, const Vec2& from) {
  if (g.terminal[vid]) return true;
  const Polygon& poly = obstacles[g.owner[vid]];
  const int k = g.owner_pos[vid];
  const Vec2& v = g.verts[vid];
  const int o1 = orientation(from, v, poly.at(k - 1));
  const int o2 = orientation(from, v, poly.at(k + 1));
  return o1 * o2 >= 0;
}

}  // namespace

VisGraph build_rvg(const Scenario& s) {
  VisGraph g;
  auto add_vertex = [&g](const Vec2& p, int own, int pos, bool term) {
    const auto key = std::make_pair(p.x(), p.y());
    const auto it = g.index_.find(key);
    if (it != g.index_.end()) {
      const int id = it->second;
      if (term) g.terminal[id] = true;
      if (own >= 0 && g.owner[id] < 0) {  // terminal sitting on a corner
        g.owner[id] = own;
        g.owner_pos[id] = pos;
      }
      return id;
    }
    const int id = g.size();
    g.verts.push_back(p);
    g.owner.push_back(own);
    g.owner_pos.push_back(pos);
    g.terminal.push_back(term);
    g.index_[key] = id;
    return id;
  };

  g.ra = add_vertex(s.ra, -1, -1, true);
  g.rb = add_vertex(s.rb, -1, -1, true);
  g.da = add_vertex(s.da, -1, -1, true);
  g.db = add_vertex(s.db, -1, -1, true);
  for (size_t i = 0; i < s.obstacles.size(); ++i)
    for (int k = 0; k < s.obstacles[i].size(); ++k)
      add_vertex(s.obstacles[i].v[k], static_cast<int>(i), k, false);

  g.adj.assign(g.verts.size(), {});
  for (int i = 0; i < g.size(); ++i)
    for (int j = i + 1; j < g.size(); ++j) {
      if (!tangent_at(g, s.obstacles, i, g.verts[j])) continue;
      if (!tangent_at(g, s.obstacles, j, g.verts[i])) continue;
      if (!visible(g.verts[i], g.verts[j], s.obstacles)) continue;
      const double w = (g.verts[i] - g.verts[j]).norm();
      g.adj[i].push_back({j, w});
      g.adj[j].push_back({i, w});
    }
  return g;
}

std::vector<double> dijkstra(const VisGraph& g, int src) {
  std::vector<double> dist(g.verts.size(), std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[src] = 0.0;
  pq.push({0.0, src});
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    for (const VisGraph::Edge& e : g.adj[u])
      if (d + e.w < dist[e.to]) {
        dist[e.to] = d + e.w;
        pq.push({dist[e.to], e.to});
      }
  }
  return dist;
}

}  // namespace tether
