#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "axistat/alpha.hpp"
#include "axistat/arclength.hpp"
#include "axistat/trajectory.hpp"

namespace axistat {

enum class Verdict {
  EntireGraph,
  OscillatingGraphOutsideCompact,
  CircleOrigin,
  ClosedOscillating,
  CircleAlphaMinus4,
  ClosedBigraph,
  Inconclusive,
};

std::string_view to_string(Verdict v);

struct CircleFit {
  double cx = 0.0;
  double cz = 0.0;
  double radius = 0.0;
  double max_residual = 0.0;  // max | |sample - centre| - radius |
};

struct Evidence {
  std::size_t axis_crossings = 0;
  std::size_t crossings_above = 0;  // crossings from z > 0 to z < 0
  std::size_t crossings_below = 0;  // crossings from z < 0 to z > 0
  double min_rho = 0.0;
  double max_x = 0.0;
  double min_z = 0.0;
  double max_z = 0.0;
  double psi_min = 0.0;  // over s > 0
  double psi_max = 0.0;
  double min_dx = 0.0;   // min cos psi over s > 0
  double min_abs_cos_after_last_crossing = 0.0;
  std::optional<double> circle_residual;  // max |x^2 + (z-c)^2 - r^2| for the exact cases
  std::size_t self_intersections = 0;
  bool z_positive = false;
  bool z_monotone_after_apex = false;
  std::optional<EventKind> terminal;
  double s_end = 0.0;
};

struct BehaviorReport {
  double alpha = 0.0;
  double z0 = 1.0;
  Regime regime = Regime::Positive;
  Verdict verdict = Verdict::Inconclusive;
  Evidence evidence;
  std::string reason;  // empty unless inconclusive; notes otherwise
};

struct ClassifierThresholds {
  std::size_t min_crossings = 3;
  double graph_reach = 20.0;      // max x must reach this many z0
  double circle_tol = 1e-8;       // times z0^2
  double min_abs_cos = 0.05;      // after the last crossing, -2 < alpha < 0
};

/// Verdict for an AXIS trajectory. Finite-window certificate: every verdict
/// other than INCONCLUSIVE has its evidence thresholds met on the computed range.
BehaviorReport classify(const Trajectory& traj, Alpha alpha, const ClassifierThresholds& th = {});

/// Kasa algebraic least-squares circle in the (x, z)-plane.
CircleFit circle_fit(const Trajectory& traj);

struct Segment2 {
  double ax, az, bx, bz;
};

/// Transverse crossings between non-adjacent polyline segments.
std::size_t self_intersection_count(const std::vector<Segment2>& segments);
std::size_t self_intersection_count(const Trajectory& traj);

struct BoundaryCircle {
  double radius = 0.0;
  double height = 0.0;
};

/// Boundary circle of the surface generated by the curve cut at s_cut.
BoundaryCircle boundary_circle_extract(const Trajectory& traj, double s_cut);

struct ClassifyRun {
  Trajectory trajectory;
  BehaviorReport report;
};

/// Integrates AXIS data and classifies. For -2 < alpha < 0 the run is extended
/// (s_max times 10, up to 1e9 z0) until enough crossings are seen, because the
/// crossings grow geometrically far apart. For -4 < alpha < -2 the origin
/// threshold is lowered to resolve crossings near the origin.
ClassifyRun classify_axis(Alpha alpha, double z0 = 1.0, IntegrateOptions opts = {},
                          const ClassifierThresholds& th = {});

/// Origin threshold used by classify_axis for -4 < alpha < -2, times z0.
inline constexpr double kSpiralOriginEps = 1e-9;

}  // namespace axistat
