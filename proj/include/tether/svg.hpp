#pragma once

#include <string>

#include "tether/scenario.hpp"

namespace tether {

// Standalone SVG of the scenario: obstacles grey, initial cable green, robot
// starts as filled dots (a red, b blue), goals as rings. Optional overlays:
// the robot paths (dashed, matching colors) and the final taut cable (dark
// red with vertex dots). Null pointers skip an overlay.
std::string render_svg(const Scenario& s, const Polyline* tau_a,
                       const Polyline* tau_b, const Polyline* final_cable);

void write_svg(const std::string& path, const Scenario& s, const Polyline* tau_a,
               const Polyline* tau_b, const Polyline* final_cable);

}  // namespace tether
