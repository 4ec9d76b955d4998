#pragma once

// Closed-form checks for model surfaces and for surfaces invariant under
// rotations about an offset axis or screw motions. The stationary equation is
// multiplied by a positive factor that turns it into a finite sum
//   A0(s) + A1(s) t + A2(s) t^2 + A3(s) sin t + A4(s) cos t,
// whose coefficients are extracted numerically from the residual.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "axistat/alpha.hpp"
#include "axistat/geometry.hpp"
#include "axistat/trajectory.hpp"

namespace axistat {

using Profile = std::vector<CurveState>;

// ---- model surfaces -------------------------------------------------------

enum class IsoKind { Plane, Sphere, Cylinder };
std::string_view to_string(IsoKind k);

/// Plane <normal, p> = offset; sphere |p - center| = radius; vertical cylinder
/// of given radius about the z-axis. Normals point inward on spheres and
/// cylinders and along `normal` on planes.
struct IsoParams {
  IsoKind kind = IsoKind::Plane;
  Point3 normal{0.0, 0.0, 1.0};
  double offset = 0.0;
  Point3 center{};
  double radius = 1.0;
};

struct IsoResult {
  bool stationary = false;
  double max_abs_residual = 0.0;
  std::optional<SurfaceSample> witness;  // worst sample when not stationary
  double witness_residual = 0.0;
};

/// Samples the surface and evaluates the residual. Stationary iff every sample
/// has |residual| <= 1e-9.
IsoResult verify_isoparametric(const IsoParams& params, Alpha alpha);

// ---- offset rotation axis --------------------------------------------------

struct OffsetCoefficients {
  std::vector<double> s;
  std::vector<double> a0, a1;                  // from the residual
  std::vector<double> a0_closed, a1_closed;    // closed forms, for cross-checking
};

/// Surface of revolution of `profile` about the line {x = q1, y = 0}. The
/// residual times x |p|^2 equals A0 + A1 cos t.
OffsetCoefficients offset_axis_coefficients(double q1, const Profile& profile, Alpha alpha);

struct OffsetSphere {
  double cx = 0.0;  // centre in the (x, z)-plane
  double cz = 0.0;
  double radius = 0.0;
  Profile profile;  // distance to the offset axis and height, open arc
};

/// Circle (x - q1)^2 + (z - c/2)^2 = q1^2 + c^2/4, which passes through the
/// origin, as a profile about the axis x = q1.
OffsetSphere offset_axis_sphere_profile(double q1, double c, std::size_t samples = 201);

// ---- helicoidal surfaces ---------------------------------------------------

/// Phi(s,t) = (q1 + x cos t, x sin t, z + h t).
struct HelicoidalParams {
  double q1 = 0.0;
  double h = 0.0;
  Profile profile;
};

struct ResidualCoefficients {
  std::vector<double> s;
  std::vector<std::array<double, 5>> a;  // A0..A4 per profile sample

  double max_abs(std::size_t k) const;
  double evaluate(std::size_t i, double t) const;
};

/// x^2 + h^2 cos^2 psi; the parametrization is regular iff W > 0.
double regularity_w(const CurveState& c, double h);

struct HelicoidalPoint {
  Point3 position;
  Point3 normal;
  double mean_curvature = 0.0;
  double w = 0.0;
};

/// Position, unit normal and mean curvature from the fundamental forms.
HelicoidalPoint helicoidal_point(const CurveState& c, double q1, double h, double t);

/// H - alpha <nu,p>/|p|^2 evaluated directly.
double helicoidal_residual(const CurveState& c, double q1, double h, double t, Alpha alpha);

/// Coefficients of W^{3/2} |p|^2 (alpha <nu,p>/|p|^2 - H). A3 equals
/// alpha h q1 cos psi W. Throws Regularity if W <= 0 on the profile.
ResidualCoefficients helicoidal_coefficients(const HelicoidalParams& params, Alpha alpha);

/// Coefficients of W^{3/2} (alpha <nu,p> - H) for H = alpha <nu,p>.
ResidualCoefficients shrinker_coefficients(const HelicoidalParams& params, Alpha alpha);

// ---- scans -----------------------------------------------------------------

struct ScanGrid {
  std::vector<double> alpha{-6, -5, -4, -3, -2.5, -2, -1, -0.5, 0.5, 1, 2};
  std::vector<double> h{0.5, 1, 2};
  std::vector<double> q1{0, 0.5, 1};
  std::vector<double> x0{0.5, 1, 2};
};

/// Threshold above which a coefficient counts as forced nonzero.
inline constexpr double kForcedNonzero = 1e-6;

struct ScanCell {
  double alpha = 0.0, h = 0.0, q1 = 0.0, x0 = 0.0;
  double c = 0.0;       // offset suite: sphere height parameter
  std::string branch;   // profile family the cell was evaluated on
  std::string verdict;  // BLOCKED, VANISHING, STATIONARY, NOT_STATIONARY, ...
  std::optional<int> blocking;  // index k of the blocking A_k
  double max_abs_value = 0.0;
  std::array<double, 5> coefficient_max{};
};

struct ScanReport {
  std::string suite;
  std::vector<ScanCell> cells;
  bool consistent = true;  // every cell has the expected outcome
};

/// "generic": psi = 0.4 + s/2 on [0, 1] starting at x = x0;
/// "vertical": x = x0, psi = -pi/2 (cos psi = 0);
/// "horizontal": psi = 0, z = z0.
Profile test_profile(std::string_view branch, double x0, double z0 = 0.5);

ScanReport helicoidal_nonexistence_scan(const ScanGrid& grid = {});
ScanReport shrinker_axis_scan(const ScanGrid& grid = {});
ScanReport isoparametric_scan();

/// Spheres through the origin revolved about offset axes, q1 in {0.5, 1, 2},
/// c in {-1, 0.5, 2}, alpha in {-5, -4, -3, -2, 1}: VANISHING exactly at
/// alpha = -4, and the extracted coefficients agree with the closed forms.
ScanReport offset_axis_scan();

nlohmann::json to_json(const ScanReport& report);

}  // namespace axistat
