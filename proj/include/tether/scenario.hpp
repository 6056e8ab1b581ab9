#pragma once

#include <string>
#include <vector>

#include "tether/geom.hpp"

namespace tether {

// A planning instance: polygonal obstacles, start/goal positions for the two
// robots, cable budget ell, and the initial cable layout c0 from ra to rb.
struct Scenario {
  std::vector<Polygon> obstacles;
  Vec2 ra, rb;  // robot starts
  Vec2 da, db;  // robot goals
  double ell = 0.0;
  Polyline cable;  // c0
};

struct Violation {
  std::string code;
  std::string detail;
};

// File or JSON-shape problems are thrown; semantic problems are returned by
// validate() so a caller can report all of them at once.
Scenario load_scenario(const std::string& path,
                       std::vector<std::string>* warnings = nullptr);
Scenario scenario_from_json_text(const std::string& text,
                                 std::vector<std::string>* warnings = nullptr);
void save_scenario(const Scenario& s, const std::string& path);
std::string scenario_to_json_text(const Scenario& s);

std::vector<Violation> validate(const Scenario& s);

}  // namespace tether
