#include "tether/mesh.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

namespace tether {

namespace {

bool in_closed_triangle(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
  return orientation(a, b, p) >= 0 && orientation(b, c, p) >= 0 &&
         orientation(c, a, p) >= 0;
}

bool near(const Vec2& a, const Vec2& b) { return (a - b).norm() <= kEps; }

// Bridge candidate (hole vertex <-> ring vertex) must not touch anything else:
// no proper crossing with existing edges, no third vertex resting on it, and
// it must run through free space.
bool bridge_ok(const Vec2& a, const Vec2& b,
               const std::vector<Vec2>& verts,
               const std::vector<std::vector<int>>& rings,
               const std::vector<Polygon>& obstacles) {
  if (near(a, b)) return false;
  for (const auto& ring : rings) {
    const size_t n = ring.size();
    for (size_t i = 0; i < n; ++i) {
      const Vec2& u = verts[ring[i]];
      const Vec2& w = verts[ring[(i + 1) % n]];
      if (proper_cross(a, b, u, w)) return false;
    }
    for (int vid : ring) {
      const Vec2& p = verts[vid];
      if (near(p, a) || near(p, b)) continue;
      if (on_segment(p, a, b)) return false;
    }
  }
  const Vec2 mid = 0.5 * (a + b);
  for (const Polygon& poly : obstacles)
    if (locate_point(mid, poly) == PointLoc::Inside) return false;
  return true;
}

}  // namespace

Mesh build_mesh(const std::vector<Polygon>& obstacles, const Eigen::AlignedBox2d& domain) {
  Mesh m;
  m.box = domain;
  const Vec2 lo = domain.min(), hi = domain.max();
  m.verts = {lo, Vec2(hi.x(), lo.y()), hi, Vec2(lo.x(), hi.y())};
  std::vector<int> ring = {0, 1, 2, 3};  // outer boundary, CCW

  // Holes wind CW so the spliced ring keeps its interior on the left.
  std::vector<std::vector<int>> holes;
  for (const Polygon& poly : obstacles) {
    std::vector<int> h;
    for (auto it = poly.v.rbegin(); it != poly.v.rend(); ++it) {
      h.push_back(static_cast<int>(m.verts.size()));
      m.verts.push_back(*it);
    }
    holes.push_back(std::move(h));
  }

  for (size_t hidx = 0; hidx < holes.size(); ++hidx) {
    const std::vector<int>& hole = holes[hidx];
    std::vector<std::vector<int>> blockers{ring};
    for (size_t k = hidx; k < holes.size(); ++k) blockers.push_back(holes[k]);

    double best = std::numeric_limits<double>::infinity();
    size_t best_h = 0, best_r = 0;
    for (size_t i = 0; i < hole.size(); ++i)
      for (size_t j = 0; j < ring.size(); ++j) {
        const Vec2& a = m.verts[hole[i]];
        const Vec2& b = m.verts[ring[j]];
        const double d2 = (a - b).squaredNorm();
        if (d2 >= best) continue;
        if (!bridge_ok(a, b, m.verts, blockers, obstacles)) continue;
        best = d2;
        best_h = i;
        best_r = j;
      }
    if (!std::isfinite(best)) throw std::runtime_error("mesh: no valid hole bridge");

    // ..., ring[j], hole[i], hole[i+1], ..., hole[i], ring[j], ...
    std::vector<int> spliced;
    spliced.reserve(ring.size() + hole.size() + 2);
    for (size_t j = 0; j <= best_r; ++j) spliced.push_back(ring[j]);
    for (size_t k = 0; k <= hole.size(); ++k)
      spliced.push_back(hole[(best_h + k) % hole.size()]);
    for (size_t j = best_r; j < ring.size(); ++j) spliced.push_back(ring[j]);
    ring = std::move(spliced);
  }

  // Ear clipping. The ring may repeat indices at the bridges; blockers that
  // sit exactly on an ear corner are those repeats and do not block.
  std::vector<int> work = ring;
  while (work.size() > 3) {
    const size_t n = work.size();
    bool clipped = false;
    for (size_t i = 0; i < n && !clipped; ++i) {
      const int ia = work[(i + n - 1) % n], ib = work[i], ic = work[(i + 1) % n];
      const Vec2 &A = m.verts[ia], &B = m.verts[ib], &C = m.verts[ic];
      if (orientation(A, B, C) != 1) continue;
      bool ok = true;
      for (size_t k = 0; k < n && ok; ++k) {
        if (k == i || k == (i + n - 1) % n || k == (i + 1) % n) continue;
        const Vec2& p = m.verts[work[k]];
        if (near(p, A) || near(p, B) || near(p, C)) continue;
        if (in_closed_triangle(p, A, B, C)) ok = false;
      }
      for (size_t k = 0; k < n && ok; ++k) {
        const Vec2& u = m.verts[work[k]];
        const Vec2& w = m.verts[work[(k + 1) % n]];
        if (proper_cross(A, C, u, w)) ok = false;
      }
      if (!ok) continue;
      m.tris.push_back({{ia, ib, ic}, {-1, -1, -1}});
      work.erase(work.begin() + static_cast<long>(i));
      clipped = true;
    }
    if (!clipped) throw std::runtime_error("mesh: ear clipping stuck");
  }
  m.tris.push_back({{work[0], work[1], work[2]}, {-1, -1, -1}});

  // Neighbor links via undirected edges. Boundary edges (obstacle and box
  // sides) occur once and stay walls; bridge edges occur twice and pair up.
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> users;
  for (size_t t = 0; t < m.tris.size(); ++t)
    for (int k = 0; k < 3; ++k) {
      const int u = m.tris[t].v[k], w = m.tris[t].v[(k + 1) % 3];
      users[{std::min(u, w), std::max(u, w)}].push_back({static_cast<int>(t), k});
    }
  for (const auto& [edge, us] : users) {
    if (us.size() > 2) throw std::runtime_error("mesh: non-manifold edge");
    if (us.size() == 2) {
      m.tris[us[0].first].nbr[us[0].second] = us[1].first;
      m.tris[us[1].first].nbr[us[1].second] = us[0].first;
    }
  }

  m.vtris.assign(m.verts.size(), {});
  for (size_t t = 0; t < m.tris.size(); ++t)
    for (int k = 0; k < 3; ++k) m.vtris[m.tris[t].v[k]].push_back(static_cast<int>(t));

  // Ordered fans. Free space around any meshed vertex is one angular wedge,
  // so the incident triangles chain from wall to wall.
  m.fans.assign(m.verts.size(), {});
  for (size_t v = 0; v < m.verts.size(); ++v) {
    if (m.vtris[v].empty()) continue;  // possible for a box corner swallowed by nothing; keep safe
    auto corner_of = [&](int t) {
      for (int k = 0; k < 3; ++k)
        if (m.tris[t].v[k] == static_cast<int>(v)) return k;
      throw std::logic_error("mesh: vertex not in its triangle");
    };
    int start = -1;
    for (int t : m.vtris[v]) {
      const int k = corner_of(t);
      if (m.tris[t].nbr[k] == -1) {  // edge (v, next) is a wall: CCW-first wedge
        start = t;
        break;
      }
    }
    if (start == -1) throw std::runtime_error("mesh: vertex fan has no wall edge");
    Mesh::Fan fan;
    int t = start;
    while (true) {
      const int k = corner_of(t);
      if (fan.tris.empty())
        fan.fan_other.push_back(m.tris[t].v[(k + 1) % 3]);  // wall edge endpoint
      fan.tris.push_back(t);
      fan.fan_other.push_back(m.tris[t].v[(k + 2) % 3]);
      const int nxt = m.tris[t].nbr[(k + 2) % 3];  // across edge (prev, v): CCW-next wedge
      if (nxt == -1) break;
      t = nxt;
    }
    if (fan.tris.size() != m.vtris[v].size())
      throw std::runtime_error("mesh: vertex fan is not a single wedge");
    m.fans[v] = std::move(fan);
  }
  return m;
}

}  // namespace tether
