#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <vector>

namespace tether {

using Vec2 = Eigen::Vector2d;
using Polyline = std::vector<Vec2>;

// Absolute tolerance for geometric predicates. Inputs are workspace-scale
// coordinates (order 1..100); anything closer than this to a degeneracy is
// treated as degenerate rather than guessed at.
inline constexpr double kEps = 1e-9;

inline double cross2(const Vec2& a, const Vec2& b) {
  return a.x() * b.y() - a.y() * b.x();
}

// -1: r is right of p->q, 0: collinear (within kEps), +1: left.
int orientation(const Vec2& p, const Vec2& q, const Vec2& r);

double dist_point_segment(const Vec2& p, const Vec2& a, const Vec2& b);

// p lies on segment ab (within kEps distance).
bool on_segment(const Vec2& p, const Vec2& a, const Vec2& b);

// Strict transversal crossing: interiors intersect in a single point.
bool proper_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);

// Any contact at all, endpoints and collinear overlap included.
bool segments_touch(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);

// Parameters t in [0,1] along ab where ab meets cd: one value for a point
// contact, two (interval ends) for a collinear overlap, empty if disjoint.
std::vector<double> seg_intersect_params(const Vec2& a, const Vec2& b,
                                         const Vec2& c, const Vec2& d);

struct Polygon {
  std::vector<Vec2> v;  // simple, CCW after normalization

  int size() const { return static_cast<int>(v.size()); }
  const Vec2& at(int i) const { return v[((i % size()) + size()) % size()]; }
};

double signed_area(const Polygon& poly);

enum class PointLoc { Outside, Boundary, Inside };

PointLoc locate_point(const Vec2& p, const Polygon& poly);

// Polygon closures intersect (shared boundary point counts).
bool polygons_touch(const Polygon& a, const Polygon& b);

// True if the polygon has >= 3 vertices, no consecutive duplicates, positive
// area, and no self-intersections.
bool polygon_is_simple(const Polygon& poly);

double polyline_length(const Polyline& pl);

// Drop consecutive points closer than kEps.
Polyline dedup_polyline(const Polyline& pl);

// Remove interior vertices the polyline passes straight through. Used to put
// taut paths from different algorithms into one canonical form.
Polyline drop_collinear(const Polyline& pl);

// Cumulative arc length; cum[0] = 0, cum.back() = total length.
std::vector<double> cum_lengths(const Polyline& pl);

Vec2 point_at_arclen(const Polyline& pl, const std::vector<double>& cum, double s);

// Initial piece of pl up to arc length s, cut point included.
Polyline prefix_at_arclen(const Polyline& pl, const std::vector<double>& cum, double s);

Eigen::AlignedBox2d bounding_box(const std::vector<Polygon>& obstacles,
                                 const std::vector<Vec2>& extra);

// True if segment ab stays out of every obstacle's interior. Touching or
// running along a boundary is fine; cables and sight lines may graze.
bool segment_in_free_space(const Vec2& a, const Vec2& b,
                           const std::vector<Polygon>& obstacles);

}  // namespace tether
