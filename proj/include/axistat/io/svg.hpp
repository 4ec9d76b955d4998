#pragma once

#include <array>
#include <string>
#include <vector>

#include "axistat/alpha.hpp"
#include "axistat/phase_plane.hpp"
#include "axistat/trajectory.hpp"

namespace axistat::io {

struct SvgPolyline {
  std::vector<std::array<double, 2>> points;
  std::string stroke = "#1f4e99";
  double width = 1.5;
  bool dashed = false;
};

struct SvgMarker {
  double x = 0.0, y = 0.0;
  std::string fill = "#000";
  double radius = 3.0;
  std::string label;
};

struct SvgArrow {
  double x = 0.0, y = 0.0, dx = 0.0, dy = 0.0;  // data units
};

/// Minimal 2D plot: data window mapped onto the canvas, y pointing up.
struct SvgPlot {
  std::string title;
  std::string x_label = "x";
  std::string y_label = "z";
  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  bool equal_axes = false;
  std::vector<SvgPolyline> lines;
  std::vector<SvgMarker> markers;
  std::vector<SvgArrow> arrows;

  /// Grows the data window to include every line and marker, with padding.
  void fit(double pad = 0.05);
  std::string render(int width = 720, int height = 540) const;
};

/// Generating curve in the (x, z)-plane with its mirror image, equal axes,
/// origin marked.
std::string generator_svg(const Trajectory& traj, const std::string& title);

/// Direction field, separatrices of the saddles and classified equilibria.
std::string phase_portrait_svg(Alpha alpha, const PhaseWindow& window, int grid = 40);

}  // namespace axistat::io
