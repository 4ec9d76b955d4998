#pragma once

// Autonomous reduction of the arc-length system with the polar angle
// tan theta = z/x and time dt = ds/x:
//   psi'   = -sin psi - alpha cos theta sin(psi - theta)
//   theta' =  cos theta sin(psi - theta)

#include <array>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "axistat/alpha.hpp"
#include "axistat/trajectory.hpp"

namespace axistat {

struct PhaseState {
  double psi = 0.0;
  double theta = 0.0;
};

using Mat2 = std::array<std::array<double, 2>, 2>;
using Vec2 = std::array<double, 2>;

enum class Family { P1, P2, P3 };
enum class StabilityClass {
  StableNode,
  UnstableNode,
  StableSpiral,
  UnstableSpiral,
  Center,
  Saddle,
  Degenerate,
};

std::string_view to_string(Family f);
std::string_view to_string(StabilityClass k);

struct EquilibriumPoint {
  PhaseState location;
  Family family = Family::P1;
  StabilityClass klass = StabilityClass::Degenerate;
  std::array<std::complex<double>, 2> eigenvalues{};
  std::optional<Vec2> unstable_direction;
};

Vec2 rhs_phase(PhaseState s, Alpha alpha);

/// P1 = (2n pi, k pi), P2 = ((2n-1) pi, k pi), P3 = (n pi, pi/2 + k pi).
EquilibriumPoint equilibrium(Family family, int n, int k);

/// Exact Jacobian of the phase field at an equilibrium. Throws InvalidArgument
/// if the field does not vanish there (beyond 1e-12).
Mat2 jacobian(const EquilibriumPoint& point, Alpha alpha);

/// Jacobian by central differences; used to cross-check jacobian().
Mat2 jacobian_fd(PhaseState s, Alpha alpha, double h = 1e-6);

struct Classification {
  StabilityClass klass = StabilityClass::Degenerate;
  std::array<std::complex<double>, 2> eigenvalues{};
};

/// Eigenvalues from the characteristic polynomial; class from trace and
/// determinant. |trace| <= tol_center with a complex pair counts as a centre.
Classification classify_equilibrium(const Mat2& m, double tol_center = 1e-9);

struct RegimeRow {
  EquilibriumPoint p1, p2, p3;
};

/// Classified representatives P1 = (0,0), P2 = (-pi,0), P3 = (0,pi/2).
RegimeRow regime_table(Alpha alpha);

/// Expected classes for each regime, independent of any eigenvalue computation.
std::array<StabilityClass, 3> expected_classes(Alpha alpha);

/// (-alpha, 2)/|(-alpha, 2)|: eigenvector of the P3 Jacobian for eigenvalue 1
/// at P3 = (0, pi/2).
Vec2 unstable_direction_P3(Alpha alpha);

enum class PhaseStop { Equilibrium, TimeLimit, Periodic, Escape };
std::string_view to_string(PhaseStop s);

struct PhaseTrace {
  std::vector<double> t;
  std::vector<PhaseState> points;
  PhaseStop stop = PhaseStop::TimeLimit;
  double period = 0.0;  // set when stop == Periodic
};

struct TraceOptions {
  double t_span = 200.0;
  double rtol = 1e-11;
  double atol = 1e-13;
  double rest_speed = 1e-10;   // |field| below which the trace has arrived
  bool detect_period = false;  // stop at the first return to the start
  double period_tol = 1e-6;
  double escape = 50.0;        // stop once |psi| or |theta| exceeds this
};

/// Integrates the phase field from `start` in the given time direction (+1/-1).
PhaseTrace trace_phase(PhaseState start, Alpha alpha, int direction, const TraceOptions& opts = {});

struct PhaseTraces {
  PhaseTrace forward;
  PhaseTrace backward;
};

/// Both time directions; the reduction does not fix an orientation.
PhaseTraces trace_phase_trajectory(PhaseState start, Alpha alpha, const TraceOptions& opts = {});

/// Branch of the unstable manifold of P3 = (0, pi/2) that enters x > 0
/// (theta < pi/2), seeded at offset delta along unstable_direction_P3.
PhaseTrace unstable_manifold_P3(Alpha alpha, double delta = 1e-6, const TraceOptions& opts = {});

/// Equilibrium the manifold is expected to end at: P1 = (0,0) for alpha > -2,
/// P2 = (-pi, 0) for alpha < -2. Empty for alpha = -2 (centres).
std::optional<PhaseState> predicted_limit(Alpha alpha);

/// Nearest equilibrium of the given family to a point.
PhaseState nearest_equilibrium(PhaseState s, Family family);

struct ProjectedCurve {
  std::vector<double> s;
  std::vector<PhaseState> points;
  std::vector<Vec2> tangent;  // d/ds of (psi, theta) from the curve data
};

/// (psi(s), atan2(z, x)) with theta continued across branch cuts.
/// Throws DomainViolation for samples with x < 0.
ProjectedCurve project_to_phase(const Trajectory& traj);

struct AlignmentReport {
  double max_angle = 0.0;    // radians, over points with |field| > min_speed
  std::size_t checked = 0;
  std::size_t skipped = 0;
};

/// Angle between the projected tangent and the phase field.
AlignmentReport tangency_alignment(const ProjectedCurve& curve, Alpha alpha,
                                   double min_speed = 1e-8);

struct PhaseWindow {
  double psi_min = -1.5 * std::numbers::pi;
  double psi_max = 1.5 * std::numbers::pi;
  double theta_min = -std::numbers::pi;
  double theta_max = std::numbers::pi;
};

/// Parses "PSIMIN:PSIMAX:THETAMIN:THETAMAX"; each bound may carry a "pi" suffix.
PhaseWindow parse_window(const std::string& spec);

/// Classified equilibria of all three families inside the window (borders included).
std::vector<EquilibriumPoint> equilibria_in_window(Alpha alpha, const PhaseWindow& w);

struct FieldSample {
  PhaseState at;
  Vec2 v;
};

/// Phase field on an nx by ny grid of cell centres.
std::vector<FieldSample> sample_field(Alpha alpha, const PhaseWindow& w, int nx, int ny);

/// Stable and unstable manifold branches of every P3 inside the window.
std::vector<PhaseTrace> separatrices(Alpha alpha, const PhaseWindow& w, double delta = 1e-6);

}  // namespace axistat
