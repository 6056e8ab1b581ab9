#include "tether/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tether {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string render_svg(const Scenario& s, const Polyline* tau_a,
                       const Polyline* tau_b, const Polyline* final_cable) {
  std::vector<Vec2> extra{s.ra, s.rb, s.da, s.db};
  extra.insert(extra.end(), s.cable.begin(), s.cable.end());
  for (const Polyline* pl : {tau_a, tau_b, final_cable})
    if (pl) extra.insert(extra.end(), pl->begin(), pl->end());
  Eigen::AlignedBox2d bb = bounding_box(s.obstacles, extra);
  double span = std::max(bb.sizes().x(), bb.sizes().y());
  if (span <= 0) span = 1.0;
  double margin = 0.05 * span;
  double w = bb.sizes().x() + 2 * margin, h = bb.sizes().y() + 2 * margin;
  const double width = 800.0;
  double k = width / w;
  double height = h * k;

  auto X = [&](double x) { return (x - bb.min().x() + margin) * k; };
  auto Y = [&](double y) { return height - (y - bb.min().y() + margin) * k; };
  auto pt = [&](const Vec2& p) { return num(X(p.x())) + "," + num(Y(p.y())); };
  double sw = std::max(1.0, 0.004 * width);
  double dot = 2.2 * sw;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width)
      << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << ' '
      << num(height) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (const auto& poly : s.obstacles) {
    out << "<polygon points=\"";
    for (int i = 0; i < poly.size(); ++i) out << (i ? " " : "") << pt(poly.v[i]);
    out << "\" fill=\"#c8c8d0\" stroke=\"#606068\" stroke-width=\"" << num(sw)
        << "\"/>\n";
  }

  auto polyline = [&](const Polyline& pl, const std::string& color, double width_mul,
                      const std::string& dash) {
    if (pl.size() < 2) return;
    out << "<polyline points=\"";
    for (size_t i = 0; i < pl.size(); ++i) out << (i ? " " : "") << pt(pl[i]);
    out << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
        << num(sw * width_mul) << "\"";
    if (!dash.empty()) out << " stroke-dasharray=\"" << dash << "\"";
    out << " stroke-linejoin=\"round\" stroke-linecap=\"round\"/>\n";
  };

  polyline(s.cable, "#2e9e44", 1.2, "");
  std::string dash = num(3 * sw) + "," + num(2 * sw);
  if (tau_a) polyline(*tau_a, "#d04040", 1.0, dash);
  if (tau_b) polyline(*tau_b, "#4060d0", 1.0, dash);
  if (final_cable) {
    polyline(*final_cable, "#8b1a1a", 1.6, "");
    for (const Vec2& p : *final_cable)
      out << "<circle cx=\"" << num(X(p.x())) << "\" cy=\"" << num(Y(p.y()))
          << "\" r=\"" << num(0.8 * dot) << "\" fill=\"#8b1a1a\"/>\n";
  }

  auto disk = [&](const Vec2& p, const std::string& color, bool filled) {
    out << "<circle cx=\"" << num(X(p.x())) << "\" cy=\"" << num(Y(p.y()))
        << "\" r=\"" << num(dot) << "\" fill=\""
        << (filled ? color : std::string("white")) << "\" stroke=\"" << color
        << "\" stroke-width=\"" << num(sw) << "\"/>\n";
  };
  disk(s.ra, "#d04040", true);
  disk(s.rb, "#4060d0", true);
  disk(s.da, "#d04040", false);
  disk(s.db, "#4060d0", false);

  out << "</svg>\n";
  return out.str();
}

void write_svg(const std::string& path, const Scenario& s, const Polyline* tau_a,
               const Polyline* tau_b, const Polyline* final_cable) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << render_svg(s, tau_a, tau_b, final_cable);
}

}  // namespace tether
