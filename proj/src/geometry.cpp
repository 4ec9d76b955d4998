#include "axistat/geometry.hpp"

#include <cmath>
#include <string>

#include "axistat/error.hpp"

namespace axistat {

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Positive: return "positive";
    case Regime::NegTwoToZero: return "(-2,0)";
    case Regime::ExactNegTwo: return "-2";
    case Regime::NegFourToNegTwo: return "(-4,-2)";
    case Regime::ExactNegFour: return "-4";
    case Regime::BelowNegFour: return "below -4";
  }
  return "?";
}

Alpha::Alpha(double value) : value_(value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::InvalidArgument, "alpha must be finite");
  }
  if (value == 0.0) {
    throw Error(ErrorKind::InvalidArgument,
                "alpha = 0 is the area functional (minimal surfaces) and is excluded");
  }
}

Regime Alpha::regime() const noexcept {
  if (value_ > 0.0) return Regime::Positive;
  if (value_ > -2.0) return Regime::NegTwoToZero;
  if (value_ == -2.0) return Regime::ExactNegTwo;
  if (value_ > -4.0) return Regime::NegFourToNegTwo;
  if (value_ == -4.0) return Regime::ExactNegFour;
  return Regime::BelowNegFour;
}

Point3 normalized(Point3 a) {
  const double n = a.norm();
  if (n == 0.0) throw Error(ErrorKind::InvalidArgument, "cannot normalize a zero vector");
  return (1.0 / n) * a;
}

Point3 apply(const Mat3& m, Point3 p) {
  return {m[0][0] * p.x + m[0][1] * p.y + m[0][2] * p.z,
          m[1][0] * p.x + m[1][1] * p.y + m[1][2] * p.z,
          m[2][0] * p.x + m[2][1] * p.y + m[2][2] * p.z};
}

Mat3 rotation_about_axis(Point3 axis, double angle) {
  const Point3 u = normalized(axis);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double t = 1.0 - c;
  return {{{c + u.x * u.x * t, u.x * u.y * t - u.z * s, u.x * u.z * t + u.y * s},
           {u.y * u.x * t + u.z * s, c + u.y * u.y * t, u.y * u.z * t - u.x * s},
           {u.z * u.x * t - u.y * s, u.z * u.y * t + u.x * s, c + u.z * u.z * t}}};
}

SurfaceSample SurfaceSample::from_principal(Point3 position, Point3 normal, double k1,
                                            double k2) {
  return {position, normal, k1 + k2, k1, k2};
}

namespace {

void require_off_origin(Point3 p) {
  if (p.norm2() == 0.0) {
    throw Error(ErrorKind::OriginPoint, "the origin does not belong to a stationary surface");
  }
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw Error(ErrorKind::InvalidArgument, std::string(what) + " must be positive");
}

}  // namespace

double stationary_residual(const SurfaceSample& sample, Alpha alpha) {
  require_off_origin(sample.position);
  const double support = dot(sample.normal, sample.position);
  return sample.mean_curvature - alpha.value() * support / sample.position.norm2();
}

double sphere_weighted_h(double radius, Alpha alpha) {
  require_positive(radius, "sphere radius");
  return (2.0 + alpha.value()) / radius;
}

double cylinder_weighted_h(double radius, double z, Alpha alpha) {
  require_positive(radius, "cylinder radius");
  const double r2 = radius * radius;
  return ((1.0 + alpha.value()) * r2 + z * z) / (radius * (r2 + z * z));
}

LaplacianIdentity laplacian_norm_identity(const SurfaceSample& sample, Alpha alpha) {
  require_off_origin(sample.position);
  const double support = dot(sample.normal, sample.position);
  return {4.0 + 2.0 * sample.mean_curvature * support,
          4.0 + 2.0 * alpha.value() * support * support / sample.position.norm2()};
}

SurfaceSample dilate(const SurfaceSample& sample, double lambda) {
  require_positive(lambda, "dilation factor");
  return {lambda * sample.position, sample.normal, sample.mean_curvature / lambda,
          sample.principal_k1 / lambda, sample.principal_k2 / lambda};
}

std::vector<SurfaceSample> dilate(std::span<const SurfaceSample> samples, double lambda) {
  std::vector<SurfaceSample> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(dilate(s, lambda));
  return out;
}

namespace {

void require_orthogonal(const Mat3& m) {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 3; ++k) acc += m[k][i] * m[k][j];
      worst = std::max(worst, std::abs(acc - (i == j ? 1.0 : 0.0)));
    }
  }
  if (!(worst <= 1e-12)) {
    throw Error(ErrorKind::InvalidArgument, "rotation matrix is not orthogonal");
  }
}

}  // namespace

SurfaceSample rotate_about_origin(const SurfaceSample& sample, const Mat3& rotation) {
  require_orthogonal(rotation);
  return {apply(rotation, sample.position), apply(rotation, sample.normal),
          sample.mean_curvature, sample.principal_k1, sample.principal_k2};
}

std::vector<SurfaceSample> rotate_about_origin(std::span<const SurfaceSample> samples,
                                               const Mat3& rotation) {
  require_orthogonal(rotation);
  std::vector<SurfaceSample> out;
  out.reserve(samples.size());
  for (const auto& s : samples) {
    out.push_back({apply(rotation, s.position), apply(rotation, s.normal), s.mean_curvature,
                   s.principal_k1, s.principal_k2});
  }
  return out;
}

SurfaceSample revolved_sample(double x, double z, double psi, double dpsi, double t) {
  const double sp = std::sin(psi);
  const double cp = std::cos(psi);
  const double ct = std::cos(t);
  const double st = std::sin(t);
  // On the axis the surface is umbilic, so both curvatures equal psi'.
  const double k2 = x > 0.0 ? sp / x : dpsi;
  return SurfaceSample::from_principal({x * ct, x * st, z}, {-sp * ct, -sp * st, cp}, dpsi, k2);
}

}  // namespace axistat
