#pragma once

#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "axistat/alpha.hpp"

namespace axistat {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm2() const noexcept { return x * x + y * y + z * z; }
  double norm() const noexcept { return std::sqrt(norm2()); }

  friend Point3 operator+(Point3 a, Point3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Point3 operator-(Point3 a, Point3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Point3 operator*(double s, Point3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend bool operator==(const Point3&, const Point3&) = default;
};

inline double dot(Point3 a, Point3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Point3 cross(Point3 a, Point3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
Point3 normalized(Point3 a);

/// Row-major 3x3 matrix.
using Mat3 = std::array<std::array<double, 3>, 3>;

Point3 apply(const Mat3& m, Point3 p);
Mat3 rotation_about_axis(Point3 axis, double angle);

/// A point of an oriented surface together with its curvature data.
/// mean_curvature is the sum of the principal curvatures.
struct SurfaceSample {
  Point3 position;
  Point3 normal;
  double mean_curvature = 0.0;
  double principal_k1 = 0.0;
  double principal_k2 = 0.0;

  static SurfaceSample from_principal(Point3 position, Point3 normal, double k1, double k2);
};

/// H - alpha <nu,p>/|p|^2, in units of 1/length. Throws ErrorKind::OriginPoint at p = 0.
double stationary_residual(const SurfaceSample& sample, Alpha alpha);

/// Weighted mean curvature of the sphere of given radius centred at the origin,
/// inward orientation: (2 + alpha)/radius.
double sphere_weighted_h(double radius, Alpha alpha);

/// Weighted mean curvature of the vertical cylinder about the z-axis at height z,
/// inward orientation.
double cylinder_weighted_h(double radius, double z, Alpha alpha);

struct LaplacianIdentity {
  double lhs = 0.0;  // 4 + 2H<nu,p>, valid on any surface
  double rhs = 0.0;  // 4 + 2 alpha <nu,p>^2/|p|^2, valid on stationary surfaces
};

LaplacianIdentity laplacian_norm_identity(const SurfaceSample& sample, Alpha alpha);

/// Dilation from the origin. Positions scale by lambda, curvatures by 1/lambda.
SurfaceSample dilate(const SurfaceSample& sample, double lambda);
std::vector<SurfaceSample> dilate(std::span<const SurfaceSample> samples, double lambda);

/// Vector isometry about the origin. The matrix must be orthogonal to 1e-12.
SurfaceSample rotate_about_origin(const SurfaceSample& sample, const Mat3& rotation);
std::vector<SurfaceSample> rotate_about_origin(std::span<const SurfaceSample> samples,
                                               const Mat3& rotation);

/// Sample of the surface of revolution about the z-axis generated by the planar
/// curve point (x, z) with tangent angle psi, at rotation angle t. Principal
/// curvatures are psi' and sin(psi)/x.
SurfaceSample revolved_sample(double x, double z, double psi, double dpsi, double t = 0.0);

}  // namespace axistat
