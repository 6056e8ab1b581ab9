#include "tether/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "tether/cable.hpp"

namespace tether {

Trajectory make_execution(const Polyline& tau_a, const Polyline& tau_b, double mv) {
  Trajectory tr;
  tr.tau_a = dedup_polyline(tau_a);
  tr.tau_b = dedup_polyline(tau_b);
  if (tr.tau_a.empty() || tr.tau_b.empty())
    throw std::runtime_error("make_execution: empty path");
  tr.cum_a = cum_lengths(tr.tau_a);
  tr.cum_b = cum_lengths(tr.tau_b);
  tr.len_a = tr.cum_a.back();
  tr.len_b = tr.cum_b.back();
  if (!(mv > 0)) throw std::runtime_error("make_execution: mv must be positive");
  tr.mv = mv;
  tr.T = std::max(tr.len_a, tr.len_b) / mv;
  return tr;
}

std::pair<Vec2, Vec2> trajectory_sample(const Trajectory& tr, double lam) {
  double t = tr.T > 0 ? std::clamp(lam / tr.T, 0.0, 1.0) : 1.0;
  Vec2 pa = point_at_arclen(tr.tau_a, tr.cum_a, t * tr.len_a);
  Vec2 pb = point_at_arclen(tr.tau_b, tr.cum_b, t * tr.len_b);
  return {pa, pb};
}

ExecutionReport verify_execution(const Scenario& s, const Tightener& tg,
                                 const Trajectory& tr, int samples) {
  ExecutionReport rep;
  auto flag = [&](double lam, const std::string& kind, const std::string& detail) {
    rep.violations.push_back({lam, kind, detail});
  };

  if ((tr.tau_a.front() - s.ra).norm() > kEps || (tr.tau_b.front() - s.rb).norm() > kEps)
    flag(0.0, "ENDPOINT_MISMATCH", "path does not start at the robot positions");
  if ((tr.tau_a.back() - s.da).norm() > kEps || (tr.tau_b.back() - s.db).norm() > kEps)
    flag(tr.T, "ENDPOINT_MISMATCH", "path does not end at the destinations");

  // Constant-speed parameterization: each robot's speed is len / T throughout.
  if (tr.T > 0) {
    double va = tr.len_a / tr.T, vb = tr.len_b / tr.T;
    if (va > tr.mv + 1e-12 || vb > tr.mv + 1e-12)
      flag(0.0, "SPEED_LIMIT", "constant speed exceeds mv");
  }

  if (samples < 1) samples = 1;
  for (int i = 0; i <= samples; ++i) {
    double t = double(i) / samples;
    double lam = t * tr.T;
    auto [pa, pb] = trajectory_sample(tr, lam);
    for (const auto& poly : s.obstacles) {
      if (locate_point(pa, poly) == PointLoc::Inside)
        flag(lam, "OUT_OF_FREE_SPACE", "robot a inside an obstacle");
      if (locate_point(pb, poly) == PointLoc::Inside)
        flag(lam, "OUT_OF_FREE_SPACE", "robot b inside an obstacle");
    }
    Polyline cat = cat_curve(tr.tau_a, tr.tau_b, s.cable, t);
    double used = make_taut(tg, cat).length;
    rep.max_cable = std::max(rep.max_cable, used);
    if (used > s.ell + 1e-9)
      flag(lam, "CABLE_OVERLENGTH",
           "taut cable " + std::to_string(used) + " exceeds ell");
  }
  return rep;
}

}  // namespace tether
