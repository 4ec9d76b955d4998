#include "axistat/io/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <cstdio>

#include "axistat/io/format.hpp"

namespace axistat::io {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string class_colour(StabilityClass k) {
  switch (k) {
    case StabilityClass::StableNode:
    case StabilityClass::StableSpiral: return "#2a9d3a";
    case StabilityClass::UnstableNode:
    case StabilityClass::UnstableSpiral: return "#d62728";
    case StabilityClass::Center: return "#9467bd";
    case StabilityClass::Saddle: return "#ff7f0e";
    case StabilityClass::Degenerate: return "#7f7f7f";
  }
  return "#000";
}

}  // namespace

void SvgPlot::fit(double pad) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  auto take = [&](double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y)) return;
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  };
  for (const auto& l : lines) {
    for (const auto& p : l.points) take(p[0], p[1]);
  }
  for (const auto& m : markers) take(m.x, m.y);
  if (!(x0 <= x1)) return;
  const double span = std::max({x1 - x0, y1 - y0, 1e-12});
  x_min = x0 - pad * span;
  x_max = x1 + pad * span;
  y_min = y0 - pad * span;
  y_max = y1 + pad * span;
}

std::string SvgPlot::render(int width, int height) const {
  const double margin = 48.0;
  const double pw = width - 2 * margin;
  const double ph = height - 2 * margin;
  double sx = pw / (x_max - x_min);
  double sy = ph / (y_max - y_min);
  double ox = margin, oy = margin;
  if (equal_axes) {
    const double s = std::min(sx, sy);
    ox += (pw - s * (x_max - x_min)) / 2;
    oy += (ph - s * (y_max - y_min)) / 2;
    sx = sy = s;
  }
  auto X = [&](double x) { return ox + (x - x_min) * sx; };
  auto Y = [&](double y) { return height - oy - (y - y_min) * sy; };
  auto inside = [&](double x, double y) {
    return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<rect x=\"" << num(X(x_min)) << "\" y=\"" << num(Y(y_max)) << "\" width=\""
     << num((x_max - x_min) * sx) << "\" height=\"" << num((y_max - y_min) * sy)
     << "\" fill=\"none\" stroke=\"#999\"/>\n";
  if (x_min < 0 && x_max > 0) {
    os << "<line x1=\"" << num(X(0)) << "\" y1=\"" << num(Y(y_min)) << "\" x2=\"" << num(X(0))
       << "\" y2=\"" << num(Y(y_max)) << "\" stroke=\"#ccc\"/>\n";
  }
  if (y_min < 0 && y_max > 0) {
    os << "<line x1=\"" << num(X(x_min)) << "\" y1=\"" << num(Y(0)) << "\" x2=\"" << num(X(x_max))
       << "\" y2=\"" << num(Y(0)) << "\" stroke=\"#ccc\"/>\n";
  }
  for (const auto& a : arrows) {
    if (!inside(a.x, a.y)) continue;
    const double x1 = X(a.x), y1 = Y(a.y);
    const double x2 = X(a.x + a.dx), y2 = Y(a.y + a.dy);
    os << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\""
       << num(y2) << "\" stroke=\"#b0b0b0\" stroke-width=\"0.8\"/>\n";
    os << "<circle cx=\"" << num(x2) << "\" cy=\"" << num(y2)
       << "\" r=\"1.1\" fill=\"#808080\"/>\n";
  }
  os << "<g fill=\"none\" stroke-linejoin=\"round\">\n";
  for (const auto& l : lines) {
    os << "<polyline stroke=\"" << l.stroke << "\" stroke-width=\"" << l.width << '"';
    if (l.dashed) os << " stroke-dasharray=\"5,4\"";
    os << " points=\"";
    // Break the polyline where it leaves the window.
    bool open = true;
    for (const auto& p : l.points) {
      if (!inside(p[0], p[1])) {
        if (open) {
          os << "\"/>\n<polyline stroke=\"" << l.stroke << "\" stroke-width=\"" << l.width << '"';
          if (l.dashed) os << " stroke-dasharray=\"5,4\"";
          os << " points=\"";
        }
        open = false;
        continue;
      }
      open = true;
      os << num(X(p[0])) << ',' << num(Y(p[1])) << ' ';
    }
    os << "\"/>\n";
  }
  os << "</g>\n";
  for (const auto& m : markers) {
    if (!inside(m.x, m.y)) continue;
    os << "<circle cx=\"" << num(X(m.x)) << "\" cy=\"" << num(Y(m.y)) << "\" r=\"" << m.radius
       << "\" fill=\"" << m.fill << "\"/>\n";
    if (!m.label.empty()) {
      os << "<text x=\"" << num(X(m.x) + 5) << "\" y=\"" << num(Y(m.y) - 5)
         << "\" font-size=\"10\" font-family=\"sans-serif\">" << escape(m.label) << "</text>\n";
    }
  }
  auto label = [&](double x, double y, const std::string& text, const char* anchor) {
    os << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\"12\" font-family=\"sans-serif\" text-anchor=\""
       << anchor << "\">" << escape(text) << "</text>\n";
  };
  label(width / 2.0, 24, title, "middle");
  label(width / 2.0, height - 12.0, x_label, "middle");
  label(14, height / 2.0, y_label, "start");
  os << "</svg>\n";
  return os.str();
}

std::string generator_svg(const Trajectory& traj, const std::string& title) {
  SvgPlot plot;
  plot.title = title;
  plot.equal_axes = true;
  SvgPolyline curve, mirror;
  mirror.dashed = true;
  mirror.stroke = "#7a9cc6";
  mirror.width = 1.0;
  for (const CurveState& c : traj.samples) {
    curve.points.push_back({c.x, c.z});
    mirror.points.push_back({-c.x, c.z});
  }
  plot.lines.push_back(std::move(mirror));
  plot.lines.push_back(std::move(curve));
  plot.markers.push_back({0.0, 0.0, "#d62728", 3.5, "0"});
  plot.fit();
  return plot.render();
}

std::string phase_portrait_svg(Alpha alpha, const PhaseWindow& w, int grid) {
  SvgPlot plot;
  plot.title = "phase portrait, alpha = " + format_double(alpha.value());
  plot.x_label = "psi";
  plot.y_label = "theta";
  plot.x_min = w.psi_min;
  plot.x_max = w.psi_max;
  plot.y_min = w.theta_min;
  plot.y_max = w.theta_max;
  plot.equal_axes = true;
  const double cell = std::min((w.psi_max - w.psi_min), (w.theta_max - w.theta_min)) / grid;
  for (const FieldSample& f : sample_field(alpha, w, grid, grid)) {
    const double n = std::hypot(f.v[0], f.v[1]);
    if (n == 0.0) continue;
    const double len = 0.4 * cell / n;
    plot.arrows.push_back({f.at.psi, f.at.theta, f.v[0] * len, f.v[1] * len});
  }
  for (const PhaseTrace& tr : separatrices(alpha, w)) {
    SvgPolyline l;
    l.stroke = "#1f4e99";
    l.width = 1.2;
    for (const PhaseState& p : tr.points) l.points.push_back({p.psi, p.theta});
    plot.lines.push_back(std::move(l));
  }
  for (const EquilibriumPoint& e : equilibria_in_window(alpha, w)) {
    plot.markers.push_back({e.location.psi, e.location.theta, class_colour(e.klass), 3.5,
                            std::string(to_string(e.family))});
  }
  return plot.render(760, 560);
}

}  // namespace axistat::io
