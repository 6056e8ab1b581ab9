#include "tether/geom.hpp"

#include <algorithm>
#include <cmath>

namespace tether {

int orientation(const Vec2& p, const Vec2& q, const Vec2& r) {
  const double c = cross2(q - p, r - p);
  if (c > kEps) return 1;
  if (c < -kEps) return -1;
  return 0;
}

double dist_point_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

bool on_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
  return dist_point_segment(p, a, b) <= kEps;
}

bool proper_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

bool segments_touch(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  if (proper_cross(a, b, c, d)) return true;
  return on_segment(c, a, b) || on_segment(d, a, b) ||
         on_segment(a, c, d) || on_segment(b, c, d);
}

std::vector<double> seg_intersect_params(const Vec2& a, const Vec2& b,
                                         const Vec2& c, const Vec2& d) {
  std::vector<double> ts;
  const Vec2 r = b - a;
  const double len2 = r.squaredNorm();
  auto param_of = [&](const Vec2& p) {
    return len2 == 0.0 ? 0.0 : std::clamp((p - a).dot(r) / len2, 0.0, 1.0);
  };
  if (proper_cross(a, b, c, d)) {
    const double denom = cross2(r, d - c);
    ts.push_back(cross2(c - a, d - c) / denom);
  } else {
    // Grazing contacts: every endpoint resting on the other segment marks a
    // parameter; a collinear overlap yields exactly its two interval ends.
    if (on_segment(c, a, b)) ts.push_back(param_of(c));
    if (on_segment(d, a, b)) ts.push_back(param_of(d));
    if (on_segment(a, c, d)) ts.push_back(0.0);
    if (on_segment(b, c, d)) ts.push_back(1.0);
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end(),
                       [](double x, double y) { return std::abs(x - y) < 1e-12; }),
           ts.end());
  return ts;
}

double signed_area(const Polygon& poly) {
  double s = 0.0;
  for (int i = 0; i < poly.size(); ++i) s += cross2(poly.at(i), poly.at(i + 1));
  return 0.5 * s;
}

PointLoc locate_point(const Vec2& p, const Polygon& poly) {
  const int n = poly.size();
  for (int i = 0; i < n; ++i)
    if (on_segment(p, poly.at(i), poly.at(i + 1))) return PointLoc::Boundary;
  // Crossing number with the half-open rule; boundary points were already
  // peeled off, so the ray test only sees clearly-inside/outside points.
  bool inside = false;
  for (int i = 0; i < n; ++i) {
    const Vec2& u = poly.at(i);
    const Vec2& w = poly.at(i + 1);
    if ((u.y() > p.y()) != (w.y() > p.y())) {
      const double xint = u.x() + (p.y() - u.y()) * (w.x() - u.x()) / (w.y() - u.y());
      if (p.x() < xint) inside = !inside;
    }
  }
  return inside ? PointLoc::Inside : PointLoc::Outside;
}

bool polygons_touch(const Polygon& a, const Polygon& b) {
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j)
      if (segments_touch(a.at(i), a.at(i + 1), b.at(j), b.at(j + 1))) return true;
  // No edge contact: one could still contain the other entirely.
  if (locate_point(a.at(0), b) == PointLoc::Inside) return true;
  if (locate_point(b.at(0), a) == PointLoc::Inside) return true;
  return false;
}

bool polygon_is_simple(const Polygon& poly) {
  const int n = poly.size();
  if (n < 3) return false;
  for (int i = 0; i < n; ++i)
    if ((poly.at(i + 1) - poly.at(i)).norm() <= kEps) return false;
  if (std::abs(signed_area(poly)) <= kEps) return false;
  for (int i = 0; i < n; ++i) {
    // A spike (edge doubling straight back) is a zero-width self-contact.
    if (orientation(poly.at(i - 1), poly.at(i), poly.at(i + 1)) == 0 &&
        (poly.at(i) - poly.at(i - 1)).dot(poly.at(i + 1) - poly.at(i)) < 0)
      return false;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_touch(poly.at(i), poly.at(i + 1), poly.at(j), poly.at(j + 1)))
        return false;
    }
  }
  return true;
}

double polyline_length(const Polyline& pl) {
  double s = 0.0;
  for (size_t i = 1; i < pl.size(); ++i) s += (pl[i] - pl[i - 1]).norm();
  return s;
}

Polyline dedup_polyline(const Polyline& pl) {
  Polyline out;
  for (const Vec2& p : pl)
    if (out.empty() || (p - out.back()).norm() > kEps) out.push_back(p);
  return out;
}

Polyline drop_collinear(const Polyline& pl) {
  if (pl.size() <= 2) return pl;
  Polyline out;
  out.push_back(pl.front());
  for (size_t i = 1; i + 1 < pl.size(); ++i) {
    const Vec2& nxt = pl[i + 1];
    if (orientation(out.back(), pl[i], nxt) == 0 &&
        (pl[i] - out.back()).dot(nxt - pl[i]) > 0)
      continue;  // straight passthrough
    out.push_back(pl[i]);
  }
  out.push_back(pl.back());
  return out;
}

std::vector<double> cum_lengths(const Polyline& pl) {
  std::vector<double> cum(pl.size(), 0.0);
  for (size_t i = 1; i < pl.size(); ++i)
    cum[i] = cum[i - 1] + (pl[i] - pl[i - 1]).norm();
  return cum;
}

Vec2 point_at_arclen(const Polyline& pl, const std::vector<double>& cum, double s) {
  if (pl.size() == 1 || s <= 0.0) return pl.front();
  const double total = cum.back();
  if (s >= total) return pl.back();
  const auto it = std::upper_bound(cum.begin(), cum.end(), s);
  const size_t i = static_cast<size_t>(it - cum.begin());  // first cum[i] > s, i >= 1
  const double seg = cum[i] - cum[i - 1];
  const double t = seg > 0.0 ? (s - cum[i - 1]) / seg : 0.0;
  return pl[i - 1] + t * (pl[i] - pl[i - 1]);
}

Polyline prefix_at_arclen(const Polyline& pl, const std::vector<double>& cum, double s) {
  Polyline out;
  out.push_back(pl.front());
  if (pl.size() == 1 || s <= 0.0) return out;
  for (size_t i = 1; i < pl.size() && cum[i] <= s; ++i) out.push_back(pl[i]);
  const Vec2 cut = point_at_arclen(pl, cum, s);
  if ((cut - out.back()).norm() > kEps) out.push_back(cut);
  return out;
}

Eigen::AlignedBox2d bounding_box(const std::vector<Polygon>& obstacles,
                                 const std::vector<Vec2>& extra) {
  Eigen::AlignedBox2d box;
  for (const Polygon& poly : obstacles)
    for (const Vec2& p : poly.v) box.extend(p);
  for (const Vec2& p : extra) box.extend(p);
  return box;
}

bool segment_in_free_space(const Vec2& a, const Vec2& b,
                           const std::vector<Polygon>& obstacles) {
  auto strictly_inside_any = [&](const Vec2& p) {
    for (const Polygon& poly : obstacles)
      if (locate_point(p, poly) == PointLoc::Inside) return true;
    return false;
  };
  if ((b - a).norm() <= kEps) return !strictly_inside_any(a);
  // Split the segment at every boundary contact, then probe each open piece
  // at its midpoint. A piece is either wholly inside or wholly outside.
  std::vector<double> cuts{0.0, 1.0};
  for (const Polygon& poly : obstacles)
    for (int i = 0; i < poly.size(); ++i) {
      const auto ts = seg_intersect_params(a, b, poly.at(i), poly.at(i + 1));
      cuts.insert(cuts.end(), ts.begin(), ts.end());
    }
  std::sort(cuts.begin(), cuts.end());
  for (size_t i = 1; i < cuts.size(); ++i) {
    if (cuts[i] - cuts[i - 1] < 1e-12) continue;
    const Vec2 mid = a + 0.5 * (cuts[i] + cuts[i - 1]) * (b - a);
    if (strictly_inside_any(mid)) return false;
  }
  return true;
}

}  // namespace tether
