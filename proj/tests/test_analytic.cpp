#include <doctest.h>

#include <cmath>
#include <numbers>

#include "axistat/analytic.hpp"
#include "axistat/error.hpp"

using namespace axistat;

namespace {

CurveState generic_state(double s) {
  const double psi = 0.4 + 0.5 * s;
  return {s, 1.0 + 2.0 * (std::sin(psi) - std::sin(0.4)), 2.0 * (std::cos(0.4) - std::cos(psi)), psi, 0.5};
}

}  // namespace

TEST_CASE("helicoidal curvature against symbolic differentiation") {
  // H, <nu,p>, |p|^2 at s = 0.3, t = 0.7 from tests/oracles/generate.py (sympy).
  struct Ref {
    double q1, h, H, nu_p, p2;
  };
  const Ref refs[] = {
      {0.5, 1.0, 0.91250899514944153736, 0.056868501281389061537, 3.5235105652075382168},
      {0.0, 2.0, 0.77504764102273224074, 0.38663628910327958969, 3.9667111658826207146},
      {1.0, 0.0, 0.91268980678869630037, -0.94491831649956809074, 4.5603099645324557191},
  };
  const CurveState c = generic_state(0.3);
  for (const Ref& r : refs) {
    const HelicoidalPoint p = helicoidal_point(c, r.q1, r.h, 0.7);
    CHECK(p.mean_curvature == doctest::Approx(r.H).epsilon(1e-13));
    CHECK(dot(p.normal, p.position) == doctest::Approx(r.nu_p).epsilon(1e-13));
    CHECK(p.position.norm2() == doctest::Approx(r.p2).epsilon(1e-13));
    CHECK(p.w == doctest::Approx(regularity_w(c, r.h)));
  }
}

TEST_CASE("zero pitch about the z-axis gives the rotational curvature") {
  const CurveState c = generic_state(0.6);
  for (double t : {0.0, 1.0, 4.0}) {
    const HelicoidalPoint p = helicoidal_point(c, 0.0, 0.0, t);
    CHECK(p.mean_curvature == doctest::Approx(c.dpsi + std::sin(c.psi) / c.x).epsilon(1e-13));
  }
}

TEST_CASE("helicoidal coefficients: finite sum and closed forms") {
  const double a = -2.5, q1 = 0.7, h = 1.3;
  HelicoidalParams hp{q1, h, test_profile("generic", 0.8)};
  const ResidualCoefficients rc = helicoidal_coefficients(hp, Alpha(a));
  REQUIRE(rc.a.size() == hp.profile.size());
  for (std::size_t i = 0; i < rc.a.size(); ++i) {
    const CurveState& c = hp.profile[i];
    // The five-term sum reproduces the residual at angles outside the fit set.
    for (double t : {-2.0, 0.4, 1.3, 5.0, 9.0}) {
      const HelicoidalPoint p = helicoidal_point(c, q1, h, t);
      const double e = -p.w * std::sqrt(p.w) * p.position.norm2() * helicoidal_residual(c, q1, h, t, Alpha(a));
      CHECK(rc.evaluate(i, t) == doctest::Approx(e).epsilon(1e-9).scale(1.0));
    }
    const double x = c.x, z = c.z, sp = std::sin(c.psi), cp = std::cos(c.psi);
    const double w = x * x + h * h * cp * cp;
    const double n = x * (x * x + h * h) * c.dpsi + sp * (x * x + 2 * h * h * cp * cp);
    CHECK(rc.a[i][0] == doctest::Approx(a * w * (-x * x * sp + x * z * cp) - n * (q1 * q1 + x * x + z * z)).epsilon(1e-9));
    CHECK(rc.a[i][1] == doctest::Approx(a * w * x * h * cp - 2 * z * h * n).epsilon(1e-9));
    CHECK(rc.a[i][2] == doctest::Approx(-h * h * n).epsilon(1e-9));
    CHECK(rc.a[i][3] == doctest::Approx(a * w * h * q1 * cp).epsilon(1e-9));
    CHECK(rc.a[i][4] == doctest::Approx(-a * w * x * q1 * sp - 2 * q1 * x * n).epsilon(1e-9));
  }
}

TEST_CASE("vertical profiles") {
  const double a = 1.5, q1 = 0.5, h = 2.0, x0 = 1.2;
  const HelicoidalParams hp{q1, h, test_profile("vertical", x0)};
  const ResidualCoefficients hel = helicoidal_coefficients(hp, Alpha(a));
  CHECK(hel.a[3][2] == doctest::Approx(h * h * x0 * x0));
  CHECK(hel.max_abs(3) < 1e-12);
  const ResidualCoefficients shr = shrinker_coefficients(hp, Alpha(a));
  CHECK(shr.a[5][4] == doctest::Approx(a * q1 * x0 * x0 * x0));
  CHECK(shr.max_abs(1) < 1e-12);
  CHECK(shr.max_abs(2) < 1e-12);
}

TEST_CASE("shrinker coefficients") {
  const double a = -1.2, q1 = 0.8;
  for (double h : {0.0, 0.9}) {
    const HelicoidalParams hp{q1, h, test_profile("generic", 1.1)};
    const ResidualCoefficients rc = shrinker_coefficients(hp, Alpha(a));
    for (std::size_t i = 0; i < rc.a.size(); ++i) {
      const CurveState& c = hp.profile[i];
      const double w = regularity_w(c, h);
      CHECK(rc.a[i][1] == doctest::Approx(a * w * c.x * h * std::cos(c.psi)).epsilon(1e-9).scale(1.0));
      CHECK(std::abs(rc.a[i][2]) < 1e-9);
      if (h == 0.0) {
        CHECK(std::abs(rc.a[i][4]) == doctest::Approx(std::abs(a * q1 * std::pow(c.x, 3) * std::sin(c.psi))));
      }
    }
  }
  // Horizontal profile at height z0 without twist: A0 = alpha x^3 z0.
  const HelicoidalParams flat{0.0, 0.0, test_profile("horizontal", 1.0, 0.5)};
  const ResidualCoefficients rc = shrinker_coefficients(flat, Alpha(-3.0));
  for (std::size_t i = 0; i < rc.a.size(); ++i) {
    CHECK(rc.a[i][0] == doctest::Approx(-3.0 * std::pow(flat.profile[i].x, 3) * 0.5));
  }
}

TEST_CASE("offset axis") {
  const Profile prof = test_profile("generic", 1.0);
  const OffsetCoefficients oc = offset_axis_coefficients(0.6, prof, Alpha(-1.7));
  for (std::size_t i = 0; i < oc.s.size(); ++i) {
    CHECK(oc.a0[i] == doctest::Approx(oc.a0_closed[i]).epsilon(1e-12));
    CHECK(oc.a1[i] == doctest::Approx(oc.a1_closed[i]).epsilon(1e-12));
  }
  const OffsetSphere sph = offset_axis_sphere_profile(0.5, 2.0);
  CHECK(sph.radius == doctest::Approx(std::sqrt(0.25 + 1.0)));
  for (const CurveState& c : sph.profile) {
    CHECK(c.x > 0.0);
    CHECK(c.x * c.x + (c.z - 1.0) * (c.z - 1.0) == doctest::Approx(sph.radius * sph.radius));
  }
  const OffsetCoefficients on = offset_axis_coefficients(0.5, sph.profile, Alpha(-4.0));
  for (std::size_t i = 0; i < on.s.size(); ++i) {
    CHECK(std::abs(on.a0[i]) < 1e-12);
    CHECK(std::abs(on.a1[i]) < 1e-12);
  }
  CHECK_THROWS_AS(offset_axis_sphere_profile(0.0, 1.0), Error);
}

TEST_CASE("model surfaces") {
  IsoParams plane;
  plane.normal = {0.0, 0.0, 1.0};
  plane.offset = 0.3;
  const IsoResult off = verify_isoparametric(plane, Alpha(1.0));
  CHECK_FALSE(off.stationary);
  REQUIRE(off.witness.has_value());
  CHECK(std::abs(off.witness_residual) == doctest::Approx(off.max_abs_residual));
  plane.normal = {};
  CHECK_THROWS_AS(verify_isoparametric(plane, Alpha(1.0)), Error);

  IsoParams sph;
  sph.kind = IsoKind::Sphere;
  sph.radius = 2.0;
  CHECK(verify_isoparametric(sph, Alpha(-2.0)).stationary);
  CHECK_FALSE(verify_isoparametric(sph, Alpha(-4.0)).stationary);
  sph.center = {0.0, 2.0, 0.0};
  CHECK(verify_isoparametric(sph, Alpha(-4.0)).stationary);
}

TEST_CASE("scans") {
  const ScanReport hel = helicoidal_nonexistence_scan();
  CHECK(hel.consistent);
  CHECK(hel.cells.size() == 11 * 3 * 3 * 3 * 2);
  for (const ScanCell& c : hel.cells) {
    CHECK(c.verdict == "BLOCKED");
    CHECK(c.blocking.has_value());
    CHECK(c.max_abs_value > kForcedNonzero);
  }

  const ScanReport shr = shrinker_axis_scan();
  CHECK(shr.consistent);
  for (const ScanCell& c : shr.cells) {
    // Twisted cells survive only as cylinders about the z-axis with alpha = -1/x0^2.
    if (c.h != 0.0 && c.verdict == "VANISHING") {
      CHECK(c.q1 == 0.0);
      CHECK(c.branch == "vertical");
      CHECK(c.alpha * c.x0 * c.x0 == doctest::Approx(-1.0));
    }
  }

  CHECK(isoparametric_scan().consistent);
  CHECK(offset_axis_scan().consistent);

  const nlohmann::json j = to_json(hel);
  CHECK(j["schema"] == 1);
  CHECK(j["suite"] == "helicoidal");
  const auto& cell = j["cells"][0];
  CHECK(cell.contains("params"));
  CHECK(cell.contains("verdict"));
  CHECK(cell.contains("blocking_coefficient"));
  CHECK(cell.contains("max_abs_value"));
  CHECK_THROWS_AS(test_profile("spiral", 1.0), Error);
}
