#include "tether/cable.hpp"

#include <algorithm>
#include <set>

namespace tether {

TautCable make_taut(const Tightener& tg, const Polyline& raw) {
  TautCable c;
  c.pts = tg.tighten(raw);
  c.length = polyline_length(c.pts);
  return c;
}

TautCable cable_after_move(const Tightener& tg, const TautCable& cable,
                           const Vec2& na, const Vec2& nb) {
  Polyline c1;
  c1.reserve(cable.pts.size() + 2);
  c1.push_back(na);
  c1.insert(c1.end(), cable.pts.begin(), cable.pts.end());
  c1.push_back(nb);
  return make_taut(tg, c1);
}

Polyline cat_curve(const Polyline& tau_a, const Polyline& tau_b,
                   const Polyline& c0, double t) {
  const auto cum_a = cum_lengths(tau_a);
  const auto cum_b = cum_lengths(tau_b);
  Polyline pa = prefix_at_arclen(tau_a, cum_a, t * cum_a.back());
  const Polyline pb = prefix_at_arclen(tau_b, cum_b, t * cum_b.back());
  std::reverse(pa.begin(), pa.end());  // from robot a back to its start
  Polyline out = pa;
  out.insert(out.end(), c0.begin(), c0.end());
  out.insert(out.end(), pb.begin(), pb.end());
  return dedup_polyline(out);
}

std::vector<ConsumptionSample> sampled_consumption(const Tightener& tg,
                                                   const Polyline& tau_a,
                                                   const Polyline& tau_b,
                                                   const Polyline& c0, int n) {
  std::vector<ConsumptionSample> out;
  out.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    const Polyline warped = cat_curve(tau_a, tau_b, c0, t);
    out.push_back({t, polyline_length(tg.tighten(warped))});
  }
  return out;
}

double cstar_upper(const Tightener& tg, const Polyline& tau_a,
                   const Polyline& tau_b, const Polyline& c0, int samples) {
  std::set<double> ts{0.0, 1.0};
  const auto cum_a = cum_lengths(tau_a);
  const auto cum_b = cum_lengths(tau_b);
  if (cum_a.back() > 0)
    for (double c : cum_a) ts.insert(std::clamp(c / cum_a.back(), 0.0, 1.0));
  if (cum_b.back() > 0)
    for (double c : cum_b) ts.insert(std::clamp(c / cum_b.back(), 0.0, 1.0));
  for (int i = 1; i < samples; ++i) ts.insert(static_cast<double>(i) / samples);

  double peak = 0.0;
  for (double t : ts) {
    const Polyline warped = cat_curve(tau_a, tau_b, c0, t);
    peak = std::max(peak, polyline_length(tg.tighten(warped)));
  }
  return peak;
}

}  // namespace tether
