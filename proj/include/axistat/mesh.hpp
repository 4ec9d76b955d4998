#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "axistat/alpha.hpp"
#include "axistat/geometry.hpp"
#include "axistat/trajectory.hpp"

namespace axistat {

/// Triangulated surface of revolution about the z-axis. Ring vertices are
/// (x cos t, x sin t, z) for t = 2 pi j/segments; a generator end on the axis
/// (x below the apex threshold, or an AXIS_RETURN end) or at an origin approach
/// becomes one apex vertex.
struct RevolvedMesh {
  std::vector<Point3> vertices;
  std::vector<Point3> normals;  // analytic unit normals, one per vertex
  std::vector<std::array<std::size_t, 3>> triangles;
  std::vector<CurveState> generator;
  int angular_segments = 0;
  std::size_t rings = 0;
  bool apex_front = false;
  bool apex_back = false;

  std::size_t edge_count() const;
  long euler_characteristic() const;
};

struct RevolveOptions {
  double apex_x = 1e-6;  // times z0; generator ends closer to the axis collapse
  bool close_at_origin = true;  // an ORIGIN_APPROACH end gets an apex at 0
};

RevolvedMesh revolve(const Trajectory& traj, int segments, const RevolveOptions& opts = {});

/// Keeps at most `max_points` generator samples, always keeping both ends.
Trajectory decimate(const Trajectory& traj, std::size_t max_points);

struct ResidualStats {
  double max = 0.0;
  double mean = 0.0;
  std::size_t count = 0;
};

/// Stationary residual from the analytic curvatures of the generator samples
/// (k1 = psi', k2 = sin psi/x); it does not depend on the rotation angle.
ResidualStats mesh_residual_stats(const RevolvedMesh& mesh, Alpha alpha);

/// Wavefront OBJ with 17 significant digits.
void write_obj(std::ostream& os, const RevolvedMesh& mesh);

}  // namespace axistat
