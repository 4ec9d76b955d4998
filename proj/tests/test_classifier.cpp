#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "axistat/classifier.hpp"
#include "axistat/error.hpp"

using namespace axistat;

namespace {

// Brute-force reference for the intersection count.
std::size_t brute_force(const std::vector<Segment2>& s) {
  auto orient = [](double ax, double az, double bx, double bz, double cx, double cz) {
    const double v = (bx - ax) * (cz - az) - (bz - az) * (cx - ax);
    return (v > 0) - (v < 0);
  };
  std::size_t n = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 2; j < s.size(); ++j) {
      const Segment2& a = s[i];
      const Segment2& b = s[j];
      if (a.ax == b.bx && a.az == b.bz) continue;
      const int o1 = orient(a.ax, a.az, a.bx, a.bz, b.ax, b.az);
      const int o2 = orient(a.ax, a.az, a.bx, a.bz, b.bx, b.bz);
      const int o3 = orient(b.ax, b.az, b.bx, b.bz, a.ax, a.az);
      const int o4 = orient(b.ax, b.az, b.bx, b.bz, a.bx, a.bz);
      if (o1 * o2 < 0 && o3 * o4 < 0) ++n;
    }
  }
  return n;
}

std::vector<Segment2> polyline(const std::vector<std::array<double, 2>>& p) {
  std::vector<Segment2> s;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) s.push_back({p[i][0], p[i][1], p[i + 1][0], p[i + 1][1]});
  return s;
}

}  // namespace

TEST_CASE("verdicts per regime") {
  const std::pair<double, Verdict> cases[] = {
      {2.0, Verdict::EntireGraph},
      {0.5, Verdict::EntireGraph},
      {-0.5, Verdict::OscillatingGraphOutsideCompact},
      {-1.8, Verdict::OscillatingGraphOutsideCompact},
      {-2.0, Verdict::CircleOrigin},
      {-2.5, Verdict::ClosedOscillating},
      {-3.5, Verdict::ClosedOscillating},
      {-4.0, Verdict::CircleAlphaMinus4},
      {-4.5, Verdict::ClosedBigraph},
      {-8.0, Verdict::ClosedBigraph},
  };
  for (const auto& [a, want] : cases) {
    for (double z0 : {1.0, 2.5}) {
      const ClassifyRun run = classify_axis(Alpha(a), z0);
      INFO("alpha = " << a << ", z0 = " << z0 << ", reason: " << run.report.reason);
      CHECK(run.report.verdict == want);
    }
  }
}

TEST_CASE("evidence for the closed cases") {
  const ClassifyRun m2 = classify_axis(Alpha(-2.0));
  REQUIRE(m2.report.evidence.circle_residual.has_value());
  CHECK(*m2.report.evidence.circle_residual < 1e-8);
  const ClassifyRun m5 = classify_axis(Alpha(-5.0));
  CHECK(m5.report.evidence.min_z > 0.0);
  CHECK(m5.report.evidence.self_intersections == 0);
  CHECK(m5.report.evidence.z_monotone_after_apex);
  const ClassifyRun m3 = classify_axis(Alpha(-3.0));
  CHECK(m3.report.evidence.axis_crossings >= 3);
  CHECK(m3.report.evidence.terminal == EventKind::OriginApproach);
}

TEST_CASE("classification needs axis data") {
  IntegrateOptions o;
  o.s_max = 1.0;
  const Trajectory t = integrate({InitialMode::Plane, 1.0}, Alpha(1.0), o);
  CHECK_THROWS_AS(classify(t, Alpha(1.0)), Error);
}

TEST_CASE("circle fit recovers an exact circle") {
  Trajectory t;
  for (int i = 0; i <= 50; ++i) {
    const double a = 0.05 * i;
    t.samples.push_back({a, 3.0 + 0.7 * std::cos(a), -2.0 + 0.7 * std::sin(a), 0.0, 0.0});
  }
  const CircleFit f = circle_fit(t);
  CHECK(f.cx == doctest::Approx(3.0));
  CHECK(f.cz == doctest::Approx(-2.0));
  CHECK(f.radius == doctest::Approx(0.7));
  CHECK(f.max_residual < 1e-12);
}

TEST_CASE("self-intersection counting") {
  // (cos t, sin 2t) passes the origin at t = pi/2 and 3 pi/2, between vertices.
  std::vector<std::array<double, 2>> eight;
  for (int i = 0; i < 400; ++i) {
    const double t = 0.1 + (2 * std::numbers::pi - 0.2) * (i + 0.3) / 400.0;
    eight.push_back({std::cos(t), std::sin(2 * t)});
  }
  CHECK(self_intersection_count(polyline(eight)) == 1);
  const auto square = polyline({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}});
  CHECK(self_intersection_count(square) == 0);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<std::array<double, 2>> p;
    for (int i = 0; i < 120; ++i) p.push_back({u(rng), u(rng)});
    const auto segs = polyline(p);
    CHECK(self_intersection_count(segs) == brute_force(segs));
  }
}

TEST_CASE("boundary circle of a cut surface") {
  const ClassifyRun run = classify_axis(Alpha(-2.0));
  const BoundaryCircle b = boundary_circle_extract(run.trajectory, std::numbers::pi / 2);
  CHECK(b.radius == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::abs(b.height) < 1e-8);
}
