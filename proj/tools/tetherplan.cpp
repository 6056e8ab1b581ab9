#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tether/oracle.hpp"
#include "tether/planner.hpp"
#include "tether/scenario.hpp"
#include "tether/svg.hpp"
#include "tether/tighten.hpp"
#include "tether/trajectory.hpp"

using nlohmann::json;
using namespace tether;

namespace {

// All numbers in reports go through 12 significant digits so identical runs
// produce identical bytes (wall_time_s is the one run-dependent field).
double round12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json point_json(const Vec2& p) {
  return json::array({round12(p.x()), round12(p.y())});
}

json polyline_json(const Polyline& pl) {
  json a = json::array();
  for (const auto& p : pl) a.push_back(point_json(p));
  return a;
}

Polyline polyline_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) throw std::runtime_error(what + ": expected an array of points");
  Polyline out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw std::runtime_error(what + ": expected [x, y] entries");
    out.push_back(Vec2(e[0].get<double>(), e[1].get<double>()));
  }
  return out;
}

json solution_json(const Solution& sol, Heuristic h, double ell) {
  json out = {
      {"feasible", sol.feasible},
      {"heuristic", heuristic_name(h)},
      {"ell", round12(ell)},
      {"stats",
       {{"expanded", sol.stats.expanded},
        {"generated", sol.stats.generated},
        {"wall_time_s", round12(sol.stats.wall_time_s)}}},
  };
  if (sol.feasible) {
    out["pi_a"] = polyline_json(sol.tau_a);
    out["pi_b"] = polyline_json(sol.tau_b);
    out["cost_a"] = round12(sol.cost_a);
    out["cost_b"] = round12(sol.cost_b);
    out["max_cost"] = round12(sol.max_cost());
    out["final_cable"] = polyline_json(sol.final_cable().pts);
    out["consumed_final"] = round12(sol.final_cable().length);
  }
  return out;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << content;
}

Scenario load_with_warnings(const std::string& path, double ell_override) {
  std::vector<std::string> warnings;
  Scenario s = load_scenario(path, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  if (ell_override > 0) s.ell = ell_override;
  return s;
}

int report_violations(const std::vector<Violation>& vs) {
  for (const auto& v : vs) std::cerr << v.code << ": " << v.detail << "\n";
  return vs.empty() ? 0 : 1;
}

// Domain for re-tightening a loaded solution: like planning_domain but also
// spanning every path vertex, so hand-edited paths stay walkable.
Eigen::AlignedBox2d domain_for(const Scenario& s, const Polyline& pa,
                               const Polyline& pb) {
  std::vector<Vec2> extra{s.ra, s.rb, s.da, s.db};
  extra.insert(extra.end(), s.cable.begin(), s.cable.end());
  extra.insert(extra.end(), pa.begin(), pa.end());
  extra.insert(extra.end(), pb.begin(), pb.end());
  Eigen::AlignedBox2d bb = bounding_box(s.obstacles, extra);
  double pad = 1.0 + 0.05 * bb.diagonal().norm();
  bb.extend(bb.min() - Vec2(pad, pad));
  bb.extend(bb.max() + Vec2(pad, pad));
  return bb;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tetherplan: motion planning for two cable-connected robots"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, svg_path, csv_path, solution_path;
  std::string heur_name = "spd", lengths_arg;
  double ell_override = -1, mv = 1.0;
  double ell_from = 0, ell_to = 0;
  int ell_count = 0, samples = 201;
  bool no_prune = false;

  auto add_scenario = [&](CLI::App* c) {
    c->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    c->add_option("--ell", ell_override, "override the scenario's cable length");
  };
  auto add_plancfg = [&](CLI::App* c) {
    c->add_option("--heuristic", heur_name, "search heuristic")
        ->check(CLI::IsMember({"none", "sld", "spd", "jr"}));
    c->add_flag("--no-prune", no_prune, "keep over-length intermediate cables");
  };

  CLI::App* c_validate = app.add_subcommand("validate", "check a scenario file");
  add_scenario(c_validate);

  CLI::App* c_plan = app.add_subcommand("plan", "compute an optimal plan");
  add_scenario(c_plan);
  add_plancfg(c_plan);
  c_plan->add_option("--out", out_path, "solution JSON output (default stdout)");
  c_plan->add_option("--svg", svg_path, "render the solution to this SVG file");

  CLI::App* c_sweep = app.add_subcommand("sweep", "plan across a range of cable lengths");
  add_scenario(c_sweep);
  add_plancfg(c_sweep);
  c_sweep->add_option("--lengths", lengths_arg, "comma-separated cable lengths");
  c_sweep->add_option("--ell-from", ell_from, "sweep range start");
  c_sweep->add_option("--ell-to", ell_to, "sweep range end");
  c_sweep->add_option("--ell-count", ell_count, "number of sweep points");
  c_sweep->add_option("--csv", csv_path, "CSV output (default stdout)");

  CLI::App* c_bench = app.add_subcommand("bench", "compare all heuristics on one scenario");
  add_scenario(c_bench);
  c_bench->add_flag("--no-prune", no_prune, "keep over-length intermediate cables");
  c_bench->add_option("--csv", csv_path, "CSV output (default stdout)");

  CLI::App* c_verify = app.add_subcommand("verify", "check a solution against a scenario");
  add_scenario(c_verify);
  c_verify->add_option("--solution", solution_path, "solution JSON file")->required();
  c_verify->add_option("--samples", samples, "execution sample count")
      ->check(CLI::Range(10, 1000000));
  c_verify->add_option("--mv", mv, "speed limit for the timed execution")
      ->check(CLI::PositiveNumber);

  CLI::App* c_render = app.add_subcommand("render", "draw a scenario (and solution) as SVG");
  add_scenario(c_render);
  c_render->add_option("--solution", solution_path, "solution JSON to overlay");
  c_render->add_option("--svg", svg_path, "SVG output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_validate->parsed()) {
      Scenario s = load_with_warnings(scenario_path, ell_override);
      int rc = report_violations(validate(s));
      if (rc == 0) std::cerr << "ok\n";
      return rc;
    }

    if (c_plan->parsed()) {
      Scenario s = load_with_warnings(scenario_path, ell_override);
      if (int rc = report_violations(validate(s)); rc != 0) return rc;
      PlanConfig cfg;
      cfg.heuristic = heuristic_from_name(heur_name);
      cfg.prune = !no_prune;
      Solution sol = plan(s, cfg);
      emit(out_path, solution_json(sol, cfg.heuristic, s.ell).dump(2) + "\n");
      if (!svg_path.empty()) {
        if (sol.feasible)
          write_svg(svg_path, s, &sol.tau_a, &sol.tau_b, &sol.final_cable().pts);
        else
          write_svg(svg_path, s, nullptr, nullptr, nullptr);
      }
      if (sol.feasible)
        std::cerr << "cost_a=" << fmt12(sol.cost_a) << " cost_b=" << fmt12(sol.cost_b)
                  << " expanded=" << sol.stats.expanded
                  << " generated=" << sol.stats.generated << "\n";
      else
        std::cerr << "infeasible after " << sol.stats.expanded << " expansions\n";
      return sol.feasible ? 0 : 3;
    }

    if (c_sweep->parsed()) {
      Scenario s = load_with_warnings(scenario_path, ell_override);
      if (int rc = report_violations(validate(s)); rc != 0) return rc;
      std::vector<double> lengths;
      if (!lengths_arg.empty()) {
        std::stringstream ss(lengths_arg);
        std::string tok;
        while (std::getline(ss, tok, ',')) lengths.push_back(std::stod(tok));
      } else if (ell_count > 0) {
        if (!(ell_to > ell_from) && ell_count > 1)
          throw std::runtime_error("sweep: need --ell-to greater than --ell-from");
        for (int i = 0; i < ell_count; ++i)
          lengths.push_back(ell_count == 1 ? ell_from
                                           : ell_from + (ell_to - ell_from) * i /
                                                            (ell_count - 1));
      } else {
        throw std::runtime_error("sweep: pass --lengths or --ell-from/--ell-to/--ell-count");
      }
      std::sort(lengths.begin(), lengths.end());
      PlanConfig cfg;
      cfg.heuristic = heuristic_from_name(heur_name);
      cfg.prune = !no_prune;
      std::ostringstream csv;
      csv << "ell,cost_a,cost_b,max_cost,consumed_final,expanded,generated,wall_time,status\n";
      for (double ell : lengths) {
        Scenario si = s;
        si.ell = ell;
        Solution sol = plan(si, cfg);
        csv << fmt12(ell) << ',';
        if (sol.feasible)
          csv << fmt12(sol.cost_a) << ',' << fmt12(sol.cost_b) << ','
              << fmt12(sol.max_cost()) << ',' << fmt12(sol.final_cable().length) << ',';
        else
          csv << ",,,,";
        csv << sol.stats.expanded << ',' << sol.stats.generated << ','
            << fmt12(sol.stats.wall_time_s) << ','
            << (sol.feasible ? "ok" : "infeasible") << "\n";
      }
      emit(csv_path, csv.str());
      return 0;
    }

    if (c_bench->parsed()) {
      Scenario s = load_with_warnings(scenario_path, ell_override);
      if (int rc = report_violations(validate(s)); rc != 0) return rc;
      std::ostringstream csv;
      csv << "heuristic,expanded,generated,wall_time,cost_a,cost_b,max_cost,status\n";
      bool any_feasible = false;
      for (const char* name : {"none", "sld", "spd", "jr"}) {
        PlanConfig cfg;
        cfg.heuristic = heuristic_from_name(name);
        cfg.prune = !no_prune;
        Solution sol = plan(s, cfg);
        any_feasible = any_feasible || sol.feasible;
        csv << name << ',' << sol.stats.expanded << ',' << sol.stats.generated << ','
            << fmt12(sol.stats.wall_time_s) << ',';
        if (sol.feasible)
          csv << fmt12(sol.cost_a) << ',' << fmt12(sol.cost_b) << ','
              << fmt12(sol.max_cost()) << ",ok\n";
        else
          csv << ",,,infeasible\n";
      }
      emit(csv_path, csv.str());
      return any_feasible ? 0 : 3;
    }

    if (c_verify->parsed()) {
      Scenario s = load_with_warnings(scenario_path, ell_override);
      std::ifstream f(solution_path);
      if (!f) throw std::runtime_error("cannot read " + solution_path);
      json j = json::parse(f);
      if (!j.value("feasible", false)) {
        std::cerr << "solution is marked infeasible; nothing to verify\n";
        return 1;
      }
      Polyline pa = polyline_from_json(j.at("pi_a"), "pi_a");
      Polyline pb = polyline_from_json(j.at("pi_b"), "pi_b");
      int bad = 0;
      if (j.contains("cost_a") &&
          std::abs(polyline_length(pa) - j["cost_a"].get<double>()) > 1e-9) {
        std::cerr << "COST_MISMATCH: pi_a length differs from cost_a\n";
        ++bad;
      }
      if (j.contains("cost_b") &&
          std::abs(polyline_length(pb) - j["cost_b"].get<double>()) > 1e-9) {
        std::cerr << "COST_MISMATCH: pi_b length differs from cost_b\n";
        ++bad;
      }
      Tightener tg(s.obstacles, domain_for(s, pa, pb));
      Trajectory tr = make_execution(pa, pb, mv);
      ExecutionReport rep = verify_execution(s, tg, tr, samples);
      for (const auto& v : rep.violations)
        std::cerr << v.kind << " at lambda=" << fmt12(v.lam) << ": " << v.detail << "\n";
      if (bad == 0 && rep.ok()) {
        std::cerr << "verified: T=" << fmt12(tr.T)
                  << " peak_cable=" << fmt12(rep.max_cable) << " ell=" << fmt12(s.ell)
                  << "\n";
        return 0;
      }
      return 1;
    }

    if (c_render->parsed()) {
      Scenario s = load_with_warnings(scenario_path, ell_override);
      Polyline pa, pb, fc;
      bool have_sol = false;
      if (!solution_path.empty()) {
        std::ifstream f(solution_path);
        if (!f) throw std::runtime_error("cannot read " + solution_path);
        json j = json::parse(f);
        if (j.value("feasible", false)) {
          pa = polyline_from_json(j.at("pi_a"), "pi_a");
          pb = polyline_from_json(j.at("pi_b"), "pi_b");
          fc = polyline_from_json(j.at("final_cable"), "final_cable");
          have_sol = true;
        }
      }
      if (have_sol)
        write_svg(svg_path, s, &pa, &pb, &fc);
      else
        write_svg(svg_path, s, nullptr, nullptr, nullptr);
      return 0;
    }
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
