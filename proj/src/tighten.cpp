#include "tether/tighten.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace tether {

namespace {

bool near(const Vec2& a, const Vec2& b) { return (a - b).norm() <= kEps; }

bool in_closed_triangle(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
  return orientation(a, b, p) >= 0 && orientation(b, c, p) >= 0 &&
         orientation(c, a, p) >= 0;
}

long long edge_key(int a, int b) { return static_cast<long long>(a) * 1000000 + b; }

// Where a walk currently stands inside a vertex's fan: in a triangle, on a fan
// edge (identified by its far endpoint), or nowhere yet (start of the walk).
struct FanPos {
  enum Kind { kUnknown, kTri, kEdge } kind = kUnknown;
  int tri = -1;
  int other = -1;
};

struct Loc {
  enum Kind { kTri, kEdge, kVert } kind = kTri;
  int tri = -1;          // kTri
  int ea = -1, eb = -1;  // kEdge endpoints
  int etri = -1;         // kEdge: triangle we entered from, -1 if none committed
  int vert = -1;         // kVert
  FanPos vfrom;          // kVert: arrival position in the fan
  Vec2 p = Vec2::Zero();
};

}  // namespace

Tightener::Tightener(const std::vector<Polygon>& obstacles,
                     const Eigen::AlignedBox2d& domain)
    : mesh_(build_mesh(obstacles, domain)) {
  for (size_t t = 0; t < mesh_.tris.size(); ++t)
    for (int k = 0; k < 3; ++k)
      dir_edge_tri_[edge_key(mesh_.tris[t].v[k], mesh_.tris[t].v[(k + 1) % 3])] =
          static_cast<int>(t);
}

namespace {

class Walker {
 public:
  Walker(const Mesh& m, const std::unordered_map<long long, int>& det)
      : m_(m), dir_edge_tri_(det) {}

  std::vector<Tightener::Portal> portals;

  Loc locate(const Vec2& p) const {
    Loc loc;
    for (size_t v = 0; v < m_.verts.size(); ++v)
      if (near(p, m_.verts[v])) {
        loc.kind = Loc::kVert;
        loc.vert = static_cast<int>(v);
        loc.p = m_.verts[v];
        return loc;
      }
    for (size_t t = 0; t < m_.tris.size(); ++t) {
      const auto& tr = m_.tris[t];
      const Vec2 &a = m_.verts[tr.v[0]], &b = m_.verts[tr.v[1]], &c = m_.verts[tr.v[2]];
      if (!in_closed_triangle(p, a, b, c)) continue;
      for (int k = 0; k < 3; ++k)
        if (dist_point_segment(p, m_.verts[tr.v[k]], m_.verts[tr.v[(k + 1) % 3]]) <= kEps) {
          loc.kind = Loc::kEdge;
          loc.ea = tr.v[k];
          loc.eb = tr.v[(k + 1) % 3];
          loc.etri = -1;
          loc.p = p;
          return loc;
        }
      loc.kind = Loc::kTri;
      loc.tri = static_cast<int>(t);
      loc.p = p;
      return loc;
    }
    throw std::runtime_error("tighten: point is outside the free space");
  }

  void run_segment(Loc& loc, const Vec2& q) {
    for (int guard = 0; guard < 100000; ++guard) {
      if ((q - loc.p).norm() <= kEps) return;
      switch (loc.kind) {
        case Loc::kTri: step_tri(loc, q); break;
        case Loc::kEdge: step_edge(loc, q); break;
        case Loc::kVert: step_vert(loc, q); break;
      }
    }
    throw std::runtime_error("tighten: walk failed to make progress");
  }

 private:
  const Mesh& m_;
  const std::unordered_map<long long, int>& dir_edge_tri_;

  void emit(int l, int r) {
    if (!portals.empty() && portals.back().left == r && portals.back().right == l) {
      portals.pop_back();  // immediate backtrack across the same edge
      return;
    }
    portals.push_back({l, r});
  }

  int tri_left_of(int a, int b) const {
    const auto it = dir_edge_tri_.find(edge_key(a, b));
    return it == dir_edge_tri_.end() ? -1 : it->second;
  }

  // Fan positions scale to 2*i for edge i and 2*i+1 for triangle i, so
  // "strictly between" is a plain interval test.
  static int fan_scalar(const Mesh::Fan& fan, const FanPos& pos) {
    if (pos.kind == FanPos::kTri) {
      for (size_t i = 0; i < fan.tris.size(); ++i)
        if (fan.tris[i] == pos.tri) return 2 * static_cast<int>(i) + 1;
    } else {
      for (size_t e = 0; e < fan.fan_other.size(); ++e)
        if (fan.fan_other[e] == pos.other) return 2 * static_cast<int>(e);
    }
    throw std::logic_error("tighten: fan position not found");
  }

  void cross_fan(int v, const FanPos& from, const FanPos& to) {
    if (from.kind == FanPos::kUnknown) return;
    const Mesh::Fan& fan = m_.fans[v];
    const int p0 = fan_scalar(fan, from);
    const int p1 = fan_scalar(fan, to);
    if (p0 < p1) {
      for (int e = 0; 2 * e <= p1; ++e)
        if (2 * e > p0 && 2 * e < p1) emit(v, fan.fan_other[e]);  // CCW: v on the left
    } else {
      for (int e = static_cast<int>(fan.fan_other.size()) - 1; e >= 0; --e)
        if (2 * e < p0 && 2 * e > p1) emit(fan.fan_other[e], v);  // CW: v on the right
    }
  }

  void to_vertex(Loc& loc, int v, FanPos from) {
    loc.kind = Loc::kVert;
    loc.vert = v;
    loc.vfrom = from;
    loc.p = m_.verts[v];
  }

  void step_tri(Loc& loc, const Vec2& q) {
    const Mesh::Tri& t = m_.tris[loc.tri];
    const Vec2 C[3] = {m_.verts[t.v[0]], m_.verts[t.v[1]], m_.verts[t.v[2]]};
    if (in_closed_triangle(q, C[0], C[1], C[2])) {
      for (int k = 0; k < 3; ++k)
        if (near(q, C[k])) {
          to_vertex(loc, t.v[k], {FanPos::kTri, loc.tri, -1});
          return;
        }
      for (int k = 0; k < 3; ++k)
        if (dist_point_segment(q, C[k], C[(k + 1) % 3]) <= kEps) {
          loc.kind = Loc::kEdge;
          loc.ea = t.v[k];
          loc.eb = t.v[(k + 1) % 3];
          loc.etri = loc.tri;
          loc.p = q;
          return;
        }
      loc.p = q;  // stays interior
      return;
    }

    // Exiting: first boundary contact strictly ahead of the current point.
    double best = std::numeric_limits<double>::infinity();
    int side = -1;
    for (int k = 0; k < 3; ++k)
      for (double tt : seg_intersect_params(loc.p, q, C[k], C[(k + 1) % 3]))
        if (tt > 1e-12 && tt < best) {
          best = tt;
          side = k;
        }
    if (side == -1) {
      // Current point sits on the boundary pointing out; hand over to the
      // matching edge/vertex logic.
      for (int k = 0; k < 3; ++k)
        if (near(loc.p, C[k])) {
          to_vertex(loc, t.v[k], {FanPos::kTri, loc.tri, -1});
          return;
        }
      for (int k = 0; k < 3; ++k)
        if (dist_point_segment(loc.p, C[k], C[(k + 1) % 3]) <= kEps) {
          loc.kind = Loc::kEdge;
          loc.ea = t.v[k];
          loc.eb = t.v[(k + 1) % 3];
          loc.etri = loc.tri;
          return;
        }
      throw std::runtime_error("tighten: polyline leaves the free space");
    }
    const Vec2 y = loc.p + best * (q - loc.p);
    for (int k = 0; k < 3; ++k)
      if (near(y, C[k])) {
        to_vertex(loc, t.v[k], {FanPos::kTri, loc.tri, -1});
        return;
      }
    const int va = t.v[side], vb = t.v[(side + 1) % 3];
    const int nb = t.nbr[side];
    if (nb == -1) {
      // Wall. If the target is weakly on the free side this is a graze along
      // the wall line; keep walking inside the triangle.
      if (orientation(C[side], C[(side + 1) % 3], q) >= 0) {
        loc.p = y;
        return;
      }
      throw std::runtime_error("tighten: polyline crosses an obstacle");
    }
    const double sa = cross2(q - loc.p, m_.verts[va] - y);
    if (sa > 0)
      emit(va, vb);
    else
      emit(vb, va);
    loc.tri = nb;
    loc.p = y;
  }

  void step_vert(Loc& loc, const Vec2& q) {
    const int v = loc.vert;
    const Vec2 V = m_.verts[v];
    const Vec2 d = q - V;
    const Mesh::Fan& fan = m_.fans[v];

    // Slide along a fan edge when the direction is collinear with it.
    for (size_t e = 0; e < fan.fan_other.size(); ++e) {
      const int w = fan.fan_other[e];
      const Vec2 dir = m_.verts[w] - V;
      if (std::abs(cross2(d, dir)) > kEps * dir.norm()) continue;
      if (d.dot(dir) <= 0) continue;
      cross_fan(v, loc.vfrom, {FanPos::kEdge, -1, w});
      if (d.norm() >= dir.norm() - kEps) {
        to_vertex(loc, w, {FanPos::kEdge, -1, v});
      } else {
        loc.kind = Loc::kEdge;
        loc.ea = v;
        loc.eb = w;
        loc.etri = -1;  // travelling on the edge itself, no side committed
        loc.p = q;
      }
      return;
    }

    for (size_t i = 0; i < fan.tris.size(); ++i) {
      const Vec2 d0 = m_.verts[fan.fan_other[i]] - V;
      const Vec2 d1 = m_.verts[fan.fan_other[i + 1]] - V;
      if (cross2(d0, d) >= -kEps * d0.norm() && cross2(d, d1) >= -kEps * d1.norm()) {
        cross_fan(v, loc.vfrom, {FanPos::kTri, fan.tris[i], -1});
        loc.kind = Loc::kTri;
        loc.tri = fan.tris[i];
        loc.p = V;
        return;
      }
    }
    throw std::runtime_error("tighten: polyline enters an obstacle at a corner");
  }

  void step_edge(Loc& loc, const Vec2& q) {
    const Vec2 A = m_.verts[loc.ea], B = m_.verts[loc.eb];
    const Vec2 u = B - A;
    const Vec2 d = q - loc.p;
    const double n = cross2(u, d);
    if (std::abs(n) <= kEps * u.norm()) {
      // Sliding along the edge.
      const bool fwd = d.dot(u) > 0;
      const int target = fwd ? loc.eb : loc.ea;
      const int origin = fwd ? loc.ea : loc.eb;
      const Vec2 T = m_.verts[target];
      if (d.norm() >= (T - loc.p).norm() - kEps) {
        to_vertex(loc, target, {FanPos::kEdge, -1, origin});
      } else {
        loc.p = q;  // ends mid-edge; side commitment unchanged
      }
      return;
    }
    const int tl = tri_left_of(loc.ea, loc.eb);
    const int tr = tri_left_of(loc.eb, loc.ea);
    const int into = n > 0 ? tl : tr;
    if (into == -1) throw std::runtime_error("tighten: polyline crosses an obstacle edge");
    if (loc.etri >= 0 && loc.etri != into) {
      // Genuine side change: the edge is crossed at this point.
      const double sa = cross2(d, A - loc.p);
      if (sa > 0)
        emit(loc.ea, loc.eb);
      else
        emit(loc.eb, loc.ea);
    }
    loc.kind = Loc::kTri;
    loc.tri = into;
  }
};

}  // namespace

std::vector<Tightener::Portal> Tightener::walk(const Polyline& pl) const {
  Walker w(mesh_, dir_edge_tri_);
  Loc loc = w.locate(pl[0]);
  for (size_t i = 1; i < pl.size(); ++i) w.run_segment(loc, pl[i]);
  return std::move(w.portals);
}

Polyline Tightener::funnel(const Vec2& s, const std::vector<Portal>& portals,
                           const Vec2& t) const {
  struct FPt {
    Vec2 p;
    int id;
  };
  std::deque<FPt> D{{s, -1}};
  size_t apex = 0;
  std::vector<FPt> tail{{s, -1}};
  auto same = [](const FPt& a, const FPt& b) {
    if (a.id >= 0 && b.id >= 0) return a.id == b.id;
    return near(a.p, b.p);
  };
  // The left chain lives at the front of D, the right chain at the back, the
  // apex between them; tail holds committed path vertices up to the apex.
  auto add_left = [&](const FPt& f) {
    if (same(D.front(), f)) return;
    while (true) {
      if (apex == 0) {
        if (D.size() == 1) break;
        const Vec2 &A = D[0].p, &R = D[1].p;
        const int o = orientation(A, R, f.p);
        const bool beyond = (f.p - A).dot(R - A) >= (R - A).squaredNorm() - kEps;
        if (o < 0 || (o == 0 && beyond)) {
          tail.push_back(D[1]);  // apex rolls onto the right chain
          D.pop_front();
          continue;
        }
        break;
      }
      if (orientation(D[1].p, D[0].p, f.p) <= 0) {  // f tightens past D[0]
        D.pop_front();
        --apex;
        continue;
      }
      break;
    }
    D.push_front(f);
    ++apex;
  };
  auto add_right = [&](const FPt& f) {
    if (same(D.back(), f)) return;
    while (true) {
      if (apex == D.size() - 1) {
        if (D.size() == 1) break;
        const Vec2 &A = D.back().p, &L = D[D.size() - 2].p;
        const int o = orientation(A, L, f.p);
        const bool beyond = (f.p - A).dot(L - A) >= (L - A).squaredNorm() - kEps;
        if (o > 0 || (o == 0 && beyond)) {
          tail.push_back(D[D.size() - 2]);  // apex rolls onto the left chain
          D.pop_back();
          apex = D.size() - 1;
          continue;
        }
        break;
      }
      if (orientation(D[D.size() - 2].p, D.back().p, f.p) >= 0) {  // f tightens past the back
        D.pop_back();
        continue;
      }
      break;
    }
    D.push_back(f);
  };

  for (const Portal& pt : portals) {
    add_left({mesh_.verts[pt.left], pt.left});
    add_right({mesh_.verts[pt.right], pt.right});
  }
  add_left({t, -1});

  Polyline out;
  out.reserve(tail.size() + apex);
  for (const FPt& f : tail) out.push_back(f.p);
  for (size_t i = apex; i-- > 0;) out.push_back(D[i].p);
  return out;
}

Polyline Tightener::tighten(const Polyline& in) const {
  Polyline pl = dedup_polyline(in);
  if (pl.size() <= 1) return pl;
  const std::vector<Portal> ps = walk(pl);
  Polyline path = funnel(pl.front(), ps, pl.back());
  return drop_collinear(dedup_polyline(path));
}

}  // namespace tether
