#include "tether/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace tether {

using nlohmann::json;

namespace {

Vec2 parse_point(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw std::runtime_error(what + ": expected [x, y]");
  const Vec2 p(j[0].get<double>(), j[1].get<double>());
  if (!std::isfinite(p.x()) || !std::isfinite(p.y()))
    throw std::runtime_error(what + ": coordinates must be finite");
  return p;
}

json point_to_json(const Vec2& p) { return json::array({p.x(), p.y()}); }

Scenario from_json(const json& j, std::vector<std::string>* warnings) {
  for (const char* key : {"obstacles", "ra", "rb", "da", "db", "ell", "cable"})
    if (!j.contains(key))
      throw std::runtime_error(std::string("scenario: missing key \"") + key + "\"");

  Scenario s;
  if (!j["obstacles"].is_array())
    throw std::runtime_error("scenario: \"obstacles\" must be an array");
  int oi = 0;
  for (const json& jp : j["obstacles"]) {
    if (!jp.is_array())
      throw std::runtime_error("obstacle " + std::to_string(oi) + ": expected an array of points");
    Polygon poly;
    int vi = 0;
    for (const json& jv : jp)
      poly.v.push_back(parse_point(jv, "obstacle " + std::to_string(oi) +
                                           " vertex " + std::to_string(vi++)));
    // Tolerant ingestion: collapse duplicate consecutive vertices, flip CW
    // rings to CCW. Anything worse is left for validate() to reject.
    const Polyline dd = dedup_polyline(poly.v);
    if (dd.size() != poly.v.size() && warnings)
      warnings->push_back("obstacle " + std::to_string(oi) +
                          ": dropped duplicate consecutive vertices");
    poly.v = dd;
    while (poly.v.size() >= 2 && (poly.v.back() - poly.v.front()).norm() <= kEps)
      poly.v.pop_back();  // closing vertex repeated
    if (poly.v.size() >= 3 && signed_area(poly) < 0) {
      std::reverse(poly.v.begin(), poly.v.end());
      if (warnings)
        warnings->push_back("obstacle " + std::to_string(oi) +
                            ": clockwise ring reversed to CCW");
    }
    s.obstacles.push_back(std::move(poly));
    ++oi;
  }
  s.ra = parse_point(j["ra"], "ra");
  s.rb = parse_point(j["rb"], "rb");
  s.da = parse_point(j["da"], "da");
  s.db = parse_point(j["db"], "db");
  if (!j["ell"].is_number()) throw std::runtime_error("scenario: \"ell\" must be a number");
  s.ell = j["ell"].get<double>();
  if (!std::isfinite(s.ell)) throw std::runtime_error("scenario: \"ell\" must be finite");
  if (!j["cable"].is_array())
    throw std::runtime_error("scenario: \"cable\" must be an array of points");
  int ci = 0;
  for (const json& jv : j["cable"])
    s.cable.push_back(parse_point(jv, "cable point " + std::to_string(ci++)));
  if (s.cable.empty()) throw std::runtime_error("scenario: \"cable\" must not be empty");
  s.cable = dedup_polyline(s.cable);
  return s;
}

json to_json(const Scenario& s) {
  json j;
  j["obstacles"] = json::array();
  for (const Polygon& poly : s.obstacles) {
    json jp = json::array();
    for (const Vec2& p : poly.v) jp.push_back(point_to_json(p));
    j["obstacles"].push_back(jp);
  }
  j["ra"] = point_to_json(s.ra);
  j["rb"] = point_to_json(s.rb);
  j["da"] = point_to_json(s.da);
  j["db"] = point_to_json(s.db);
  j["ell"] = s.ell;
  j["cable"] = json::array();
  for (const Vec2& p : s.cable) j["cable"].push_back(point_to_json(p));
  return j;
}

}  // namespace

Scenario scenario_from_json_text(const std::string& text,
                                 std::vector<std::string>* warnings) {
  return from_json(json::parse(text), warnings);
}

Scenario load_scenario(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return scenario_from_json_text(buf.str(), warnings);
}

std::string scenario_to_json_text(const Scenario& s) { return to_json(s).dump(2) + "\n"; }

void save_scenario(const Scenario& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scenario file: " + path);
  out << scenario_to_json_text(s);
}

std::vector<Violation> validate(const Scenario& s) {
  std::vector<Violation> out;
  auto add = [&](const std::string& code, const std::string& detail) {
    out.push_back({code, detail});
  };

  for (size_t i = 0; i < s.obstacles.size(); ++i)
    if (!polygon_is_simple(s.obstacles[i]))
      add("BAD_POLYGON", "obstacle " + std::to_string(i) +
                             " is not a simple polygon with positive area");

  for (size_t i = 0; i < s.obstacles.size(); ++i)
    for (size_t j = i + 1; j < s.obstacles.size(); ++j)
      if (polygon_is_simple(s.obstacles[i]) && polygon_is_simple(s.obstacles[j]) &&
          polygons_touch(s.obstacles[i], s.obstacles[j]))
        add("OBSTACLE_OVERLAP", "obstacles " + std::to_string(i) + " and " +
                                    std::to_string(j) + " intersect or touch");

  const std::pair<const char*, Vec2> pts[] = {
      {"ra", s.ra}, {"rb", s.rb}, {"da", s.da}, {"db", s.db}};
  for (const auto& [name, p] : pts)
    for (size_t i = 0; i < s.obstacles.size(); ++i)
      if (locate_point(p, s.obstacles[i]) == PointLoc::Inside)
        add("POINT_IN_OBSTACLE",
            std::string(name) + " lies inside obstacle " + std::to_string(i));

  if ((s.cable.front() - s.ra).norm() > kEps || (s.cable.back() - s.rb).norm() > kEps)
    add("CABLE_ENDPOINT_MISMATCH", "cable must run from ra to rb");

  const double len = polyline_length(s.cable);
  if (len > s.ell + kEps)
    add("CABLE_TOO_LONG", "cable length " + std::to_string(len) +
                              " exceeds ell " + std::to_string(s.ell));

  for (size_t i = 0; i + 1 < s.cable.size(); ++i)
    if (!segment_in_free_space(s.cable[i], s.cable[i + 1], s.obstacles)) {
      add("CABLE_CROSSES_OBSTACLE",
          "cable segment " + std::to_string(i) + " enters an obstacle");
      break;
    }
  if (s.cable.size() == 1 && !segment_in_free_space(s.cable[0], s.cable[0], s.obstacles))
    add("CABLE_CROSSES_OBSTACLE", "cable point lies inside an obstacle");

  return out;
}

}  // namespace tether
