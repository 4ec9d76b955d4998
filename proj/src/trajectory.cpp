#include "axistat/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "axistat/error.hpp"

namespace axistat {

namespace {

constexpr std::pair<EventKind, std::string_view> kEventNames[] = {
    {EventKind::CrossXAxis, "CROSS_X_AXIS"},
    {EventKind::VerticalTangent, "VERTICAL_TANGENT"},
    {EventKind::HorizontalTangent, "HORIZONTAL_TANGENT"},
    {EventKind::OriginApproach, "ORIGIN_APPROACH"},
    {EventKind::XCollapse, "X_COLLAPSE"},
    {EventKind::AxisReturn, "AXIS_RETURN"},
    {EventKind::SMax, "S_MAX"},
};

bool is_terminal(EventKind k) {
  return k == EventKind::OriginApproach || k == EventKind::XCollapse ||
         k == EventKind::AxisReturn || k == EventKind::SMax;
}

double hermite(double y0, double y1, double d0, double d1, double h, double t) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * d0 + (-2 * t3 + 3 * t2) * y1 +
         (t3 - t2) * h * d1;
}

}  // namespace

std::string_view to_string(EventKind kind) {
  for (const auto& [k, name] : kEventNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<EventKind> event_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kEventNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::string_view to_string(InitialMode mode) { return mode == InitialMode::Axis ? "axis" : "plane"; }

bool Trajectory::has_event(EventKind kind) const { return count_events(kind) > 0; }

std::size_t Trajectory::count_events(EventKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(events.begin(), events.end(), [kind](const Event& e) { return e.kind == kind; }));
}

std::optional<EventKind> Trajectory::terminal_event() const {
  if (events.empty() || !is_terminal(events.back().kind)) return std::nullopt;
  return events.back().kind;
}

CurveState Trajectory::state_at(double s) const {
  if (samples.empty() || s < samples.front().s || s > samples.back().s) {
    throw Error(ErrorKind::InvalidArgument, "arc length outside the trajectory range");
  }
  auto it = std::lower_bound(samples.begin(), samples.end(), s,
                             [](const CurveState& c, double v) { return c.s < v; });
  if (it == samples.begin()) return *it;
  const CurveState& b = *it;
  const CurveState& a = *(it - 1);
  const double h = b.s - a.s;
  const double t = (s - a.s) / h;
  CurveState out;
  out.s = s;
  out.x = hermite(a.x, b.x, std::cos(a.psi), std::cos(b.psi), h, t);
  out.z = hermite(a.z, b.z, std::sin(a.psi), std::sin(b.psi), h, t);
  out.psi = hermite(a.psi, b.psi, a.dpsi, b.dpsi, h, t);
  out.dpsi = a.dpsi + t * (b.dpsi - a.dpsi);
  return out;
}

}  // namespace axistat
