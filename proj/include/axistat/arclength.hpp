#pragma once

// Arc-length form of the rotational stationary equation:
//   x' = cos psi,  z' = sin psi,
//   psi' = alpha (z cos psi - x sin psi)/(x^2+z^2) - sin psi/x.

#include <array>
#include <vector>

#include "axistat/alpha.hpp"
#include "axistat/trajectory.hpp"

namespace axistat {

struct IntegrateOptions {
  double s_max = 0.0;          // 0 selects 50 z0
  double rtol = 1e-10;
  double atol = 1e-12;         // positions: atol |p|; angle: atol
  double eps_origin = 1e-3;    // times z0
  double eps_x = 1e-6;         // times z0
  double handoff = 0.05;       // largest handoff radius, times z0
  double max_turn = 1e-3;      // tangent turning per step, radians
  double max_step_rel = 0.01;  // step length per unit |p|
};

/// (x', z', psi'). Throws DomainViolation for x <= 0 or at the origin.
std::array<double, 3> rhs(const CurveState& state, Alpha alpha);

/// AXIS data starts from the singular fixed-point solution near the axis and
/// hands off to adaptive arc-length integration; PLANE data starts directly.
Trajectory integrate(const InitialData& init, Alpha alpha, const IntegrateOptions& opts = {});

/// Glues a PLANE trajectory with its mirror image (x, -z, pi - psi)(-s).
Trajectory reflect_plane_solution(const Trajectory& traj);

/// (lambda x, lambda z, psi)(s/lambda), reparametrized by arc length.
Trajectory dilate_trajectory(const Trajectory& traj, double lambda);

/// Pointwise H - alpha <nu,p>/|p|^2 on the revolved surface with k1 = psi',
/// k2 = sin psi/x (k2 = psi' on the axis).
std::vector<double> trajectory_residuals(const Trajectory& traj, Alpha alpha);

}  // namespace axistat
