#include <doctest.h>

#include <cmath>
#include <numbers>

#include "axistat/arclength.hpp"
#include "axistat/error.hpp"

using namespace axistat;

namespace {

constexpr double kPi = std::numbers::pi;

// s at which x(s) = target on the first monotone stretch.
double solve_for_x(const Trajectory& t, double target) {
  double lo = t.s_begin(), hi = lo;
  for (const CurveState& c : t.samples) {
    if (c.x >= target) {
      hi = c.s;
      break;
    }
    lo = c.s;
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (t.state_at(mid).x < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("right-hand side") {
  const auto f = rhs({0.0, 1.0, 2.0, 0.3, 0.0}, Alpha(2.0));
  CHECK(f[0] == doctest::Approx(std::cos(0.3)));
  CHECK(f[1] == doctest::Approx(std::sin(0.3)));
  CHECK(f[2] == doctest::Approx(2.0 * (2 * std::cos(0.3) - std::sin(0.3)) / 5.0 - std::sin(0.3)));
  CHECK_THROWS_AS(rhs({0.0, 0.0, 1.0, 0.0, 0.0}, Alpha(1.0)), Error);
  CHECK_THROWS_AS(rhs({0.0, -1.0, 1.0, 0.0, 0.0}, Alpha(1.0)), Error);
}

TEST_CASE("plane data against an independent integration") {
  // Reference states from scipy DOP853 (rtol 1e-13), tests/oracles/generate.py.
  struct Ref {
    double a, s, x, z, psi;
  };
  const Ref refs[] = {
      {1, 0.5, 1.2048402938891796, 0.44237328944191417, 0.80305243960474171},
      {1, 1.0, 1.6065944468483557, 0.73709101630482765, 0.51059834360568546},
      {1, 2.0, 2.526792696086344, 1.1251390067108178, 0.32723636910352111},
      {-3, 0.25, 0.9384889564074852, 0.23958424708298043, 2.0761032706714233},
      {-3, 0.5, 0.76645403637786214, 0.41680216527548747, 2.6156750604705881},
      {-3, 0.75, 0.52663477011793292, 0.47176615054423754, 3.2346251150010299},
  };
  for (const Ref& r : refs) {
    IntegrateOptions o;
    o.s_max = 2.5;
    const Trajectory t = integrate({InitialMode::Plane, 1.0}, Alpha(r.a), o);
    REQUIRE(t.s_end() >= r.s);
    const CurveState c = t.state_at(r.s);
    CHECK(std::abs(c.x - r.x) < 1e-8);
    CHECK(std::abs(c.z - r.z) < 1e-8);
    CHECK(std::abs(c.psi - r.psi) < 1e-8);
  }
}

TEST_CASE("axis data against an independent graph integration") {
  // u(0.5) and u'(0.5) for alpha = 1, u0 = 1 from tests/oracles/generate.py.
  const Trajectory t = integrate({InitialMode::Axis, 1.0}, Alpha(1.0));
  const CurveState c = t.state_at(solve_for_x(t, 0.5));
  CHECK(std::abs(c.z - 1.0570629348208445) < 1e-8);
  CHECK(std::abs(std::tan(c.psi) - 0.20953307458618975) < 1e-7);
}

TEST_CASE("exact circles") {
  for (double z0 : {0.5, 1.0, 3.0}) {
    const Trajectory m2 = integrate({InitialMode::Axis, z0}, Alpha(-2.0));
    double w2 = 0.0;
    for (const CurveState& c : m2.samples) w2 = std::max(w2, std::abs(c.x * c.x + c.z * c.z - z0 * z0));
    CHECK(w2 < 1e-8 * z0 * z0);
    CHECK(m2.terminal_event() == EventKind::AxisReturn);
    CHECK(m2.s_end() == doctest::Approx(kPi * z0).epsilon(1e-5));

    const Trajectory m4 = integrate({InitialMode::Axis, z0}, Alpha(-4.0));
    double w4 = 0.0;
    for (const CurveState& c : m4.samples) {
      w4 = std::max(w4, std::abs(c.x * c.x + (c.z - z0 / 2) * (c.z - z0 / 2) - z0 * z0 / 4));
    }
    CHECK(w4 < 1e-8 * z0 * z0);
    CHECK(m4.terminal_event() == EventKind::OriginApproach);
  }
}

TEST_CASE("sample curvature matches differences of the tangent angle") {
  for (double a : {1.0, -1.0, -3.0, -5.0}) {
    const Trajectory t = integrate({InitialMode::Axis, 1.0}, Alpha(a));
    double worst_k = 0.0, worst_t = 0.0;
    for (std::size_t i = 1; i + 1 < t.samples.size(); ++i) {
      const CurveState& p = t.samples[i - 1];
      const CurveState& c = t.samples[i];
      const CurveState& n = t.samples[i + 1];
      const double h1 = c.s - p.s, h2 = n.s - c.s;
      if (std::max(h1, h2) > 1e-3 * std::hypot(c.x, c.z) || std::min(h1, h2) < 1e-9) continue;
      // Three-point derivative on a non-uniform grid.
      auto d = [&](double fp, double fc, double fn) {
        return (-h2 / (h1 * (h1 + h2))) * fp + ((h2 - h1) / (h1 * h2)) * fc + (h1 / (h2 * (h1 + h2))) * fn;
      };
      const double k = d(p.psi, c.psi, n.psi);
      worst_k = std::max(worst_k, std::abs(k - c.dpsi) / (1.0 + std::abs(c.dpsi)));
      worst_t = std::max(worst_t, std::abs(std::hypot(d(p.x, c.x, n.x), d(p.z, c.z, n.z)) - 1.0));
    }
    CHECK(worst_k < 1e-5);
    CHECK(worst_t < 1e-6);
  }
}

TEST_CASE("events and regime properties") {
  const Trajectory pos = integrate({InitialMode::Axis, 1.0}, Alpha(1.0));
  for (const CurveState& c : pos.samples) {
    if (c.s > 0.0) {
      CHECK(c.psi > 0.0);
      CHECK(c.psi < kPi / 2);
    }
  }
  CHECK(pos.terminal_event() == EventKind::SMax);
  CHECK(pos.s_end() == doctest::Approx(50.0));

  IntegrateOptions o;
  o.s_max = 5000.0;
  const Trajectory osc = integrate({InitialMode::Axis, 1.0}, Alpha(-1.0), o);
  REQUIRE(osc.count_events(EventKind::CrossXAxis) >= 2);
  for (const Event& e : osc.events) {
    if (e.kind != EventKind::CrossXAxis) continue;
    const double ds = 1e-6 * (1.0 + e.s);
    CHECK(osc.state_at(e.s - ds).z * osc.state_at(e.s + ds).z < 0.0);
    const CurveState at = osc.state_at(e.s);
    CHECK(std::abs(at.z) < 1e-9 * (1.0 + at.x));
  }

  // Axis start is orthogonal: psi -> 0 and x -> 0 as s -> 0.
  CHECK(osc.samples.front().x == 0.0);
  CHECK(osc.samples.front().psi == 0.0);
  CHECK(osc.samples.front().dpsi == doctest::Approx(-0.5));
}

TEST_CASE("dilation against a direct solve") {
  IntegrateOptions o;
  o.s_max = 10.0;
  const Trajectory base = integrate({InitialMode::Axis, 1.0}, Alpha(1.0), o);
  o.s_max = 30.0;
  const Trajectory direct = integrate({InitialMode::Axis, 3.0}, Alpha(1.0), o);
  const Trajectory scaled = dilate_trajectory(base, 3.0);
  CHECK(scaled.init.z0 == 3.0);
  double worst = 0.0;
  for (double s = 0.0; s <= 29.0; s += 0.37) {
    const CurveState a = scaled.state_at(s);
    const CurveState b = direct.state_at(s);
    worst = std::max({worst, std::abs(a.x - b.x), std::abs(a.z - b.z)});
  }
  CHECK(worst < 1e-6);
  CHECK_THROWS_AS(dilate_trajectory(base, -1.0), Error);
}

TEST_CASE("reflected plane solutions") {
  IntegrateOptions o;
  o.s_max = 3.0;
  const Trajectory half = integrate({InitialMode::Plane, 1.0}, Alpha(1.0), o);
  const Trajectory full = reflect_plane_solution(half);
  CHECK(full.reflected);
  CHECK(full.s_begin() == doctest::Approx(-half.s_end()));
  for (double s : {0.4, 1.3, 2.9}) {
    const CurveState p = full.state_at(s);
    const CurveState m = full.state_at(-s);
    CHECK(m.x == doctest::Approx(p.x));
    CHECK(m.z == doctest::Approx(-p.z));
  }
  double worst = 0.0;
  for (double r : trajectory_residuals(full, Alpha(1.0))) worst = std::max(worst, std::abs(r));
  CHECK(worst < 1e-7);
}
