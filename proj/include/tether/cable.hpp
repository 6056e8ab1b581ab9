#pragma once

#include <vector>

#include "tether/geom.hpp"
#include "tether/tighten.hpp"

namespace tether {

// Taut cable between the robots: first point is robot a's position, last is
// robot b's, interior points are obstacle corners the cable wraps. A cable of
// one point means the robots sit together with nothing paid out.
struct TautCable {
  Polyline pts;
  double length = 0.0;
};

TautCable make_taut(const Tightener& tg, const Polyline& raw);

// Cable after a joint step: robot a moves to na, robot b to nb, each along a
// straight sight line; the slack loop [na, cable..., nb] is pulled taut.
TautCable cable_after_move(const Tightener& tg, const TautCable& cable,
                           const Vec2& na, const Vec2& nb);

// Loose cable at progress t in [0,1] of a whole motion: robot a has covered
// fraction t of tau_a and drags its walked path behind it, likewise robot b;
// the middle is the initial cable c0.
Polyline cat_curve(const Polyline& tau_a, const Polyline& tau_b,
                   const Polyline& c0, double t);

struct ConsumptionSample {
  double t;
  double consumed;  // taut length of cat_curve at t
};

std::vector<ConsumptionSample> sampled_consumption(const Tightener& tg,
                                                   const Polyline& tau_a,
                                                   const Polyline& tau_b,
                                                   const Polyline& c0, int n);

// Peak cable demand over the motion. Consumption is convex wherever both
// robots ride fixed segments, so the true peak sits at a breakpoint; uniform
// samples are added as a numerical guard.
double cstar_upper(const Tightener& tg, const Polyline& tau_a,
                   const Polyline& tau_b, const Polyline& c0, int samples = 32);

}  // namespace tether
