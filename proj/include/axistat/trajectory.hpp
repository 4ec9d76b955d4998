#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace axistat {

/// Point of an arc-length parametrized generating curve (x(s), 0, z(s)) with
/// tangent angle psi. dpsi is the curve curvature psi'(s), carried so that the
/// surface curvatures can be evaluated without differencing.
struct CurveState {
  double s = 0.0;
  double x = 0.0;
  double z = 0.0;
  double psi = 0.0;
  double dpsi = 0.0;
};

enum class EventKind {
  CrossXAxis,
  VerticalTangent,
  HorizontalTangent,
  OriginApproach,
  XCollapse,
  AxisReturn,
  SMax,
};

std::string_view to_string(EventKind kind);
std::optional<EventKind> event_kind_from_string(std::string_view name);

struct Event {
  EventKind kind;
  double s;
};

enum class InitialMode { Axis, Plane };

/// AXIS: (x, z, psi)(0) = (0, z0, 0). PLANE: (x, z, psi)(0) = (z0, 0, pi/2);
/// z0 acts as the length scale in both modes.
struct InitialData {
  InitialMode mode = InitialMode::Axis;
  double z0 = 1.0;
};

std::string_view to_string(InitialMode mode);

struct Trajectory {
  double alpha = 0.0;
  InitialData init;
  std::vector<CurveState> samples;  // strictly increasing in s
  std::vector<Event> events;        // in order of s
  bool reflected = false;           // glued with its mirror image about the x-axis

  double s_begin() const { return samples.front().s; }
  double s_end() const { return samples.back().s; }
  bool has_event(EventKind kind) const;
  std::size_t count_events(EventKind kind) const;
  /// Kind of the last event if it ended the integration.
  std::optional<EventKind> terminal_event() const;

  /// Cubic Hermite interpolation using (cos psi, sin psi, psi') as derivatives.
  CurveState state_at(double s) const;
};

}  // namespace axistat
