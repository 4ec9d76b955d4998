#include "axistat/singular_ivp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "axistat/error.hpp"
#include "axistat/ode/dopri5.hpp"
#include "axistat/simd/kernels.hpp"

namespace axistat {

FixedPointConfig existence_bounds(Alpha alpha, double u0, double epsilon) {
  if (!(u0 > 0.0)) throw Error(ErrorKind::InvalidArgument, "u0 must be positive");
  if (!(epsilon > 0.0 && epsilon < std::min(1.0, u0))) {
    throw Error(ErrorKind::InvalidArgument, "epsilon must lie in (0, min{1, u0})");
  }
  const double a = std::abs(alpha.value());
  const double gap = u0 - epsilon;

  FixedPointConfig c;
  c.u0 = u0;
  c.epsilon = epsilon;
  c.M = a * (u0 + 2.0) / (gap * gap);
  c.r1_bound = std::min({1.0 / c.M, std::sqrt(3.0) / 2.0 * epsilon,
                         2.0 * epsilon / (c.M * std::sqrt(4.0 + epsilon * epsilon))});

  // d/dx x/sqrt(1-x^2) = (1-x^2)^{-3/2}, largest at |x| = 1/2.
  c.Lf = std::pow(0.75, -1.5);

  // On x in [0,eps], y in [u0-eps, u0+eps], |z| <= eps:
  //   g_y = alpha (x^2 - y^2 + 2xyz)/((x^2+y^2)^2 sqrt(1+z^2))
  //   g_z = -alpha (x + y z)/((x^2+y^2) (1+z^2)^{3/2})
  const double ymax = u0 + epsilon;
  const double gy = a * (epsilon * epsilon + ymax * ymax + 2.0 * epsilon * ymax * epsilon) /
                    (gap * gap * gap * gap);
  const double gz = a * (epsilon + ymax * epsilon) / (gap * gap);
  c.Lg = std::max(gy, gz);

  const double lip = c.Lf * c.Lg;
  // (r1) is a strict inequality; shave a relative 1e-3 off the minimum.
  c.R_theory = 0.999 * std::min({c.r1_bound, 1.0 / std::sqrt(lip), 1.0 / (2.0 * lip)});
  c.R = c.R_theory;
  return c;
}

FixedPointConfig default_config(Alpha alpha, double u0) {
  return existence_bounds(alpha, u0, std::min(1.0, u0) / 2.0);
}

FixedPointConfig pragmatic(FixedPointConfig config) {
  config.R = std::min(0.1 * config.u0, 10.0 * config.R_theory);
  return config;
}

std::vector<double> uniform_grid(double R, std::size_t points) {
  if (points < 3 || points % 2 == 0) {
    throw Error(ErrorKind::InvalidArgument, "Simpson grid needs an odd number (>= 3) of nodes");
  }
  std::vector<double> r(points);
  const double h = R / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) r[i] = h * static_cast<double>(i);
  r.back() = R;
  return r;
}

std::vector<double> cumulative_simpson(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  std::vector<double> out(n, 0.0);
  if (n < 3) {
    for (std::size_t i = 1; i < n; ++i) out[i] = out[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
    return out;
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (i % 2 == 0) {
      out[i] = out[i - 2] + h / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
    } else if (i + 1 < n) {
      // Single panel from the quadratic through (i-1, i, i+1).
      out[i] = out[i - 1] + h / 12.0 * (5.0 * f[i - 1] + 8.0 * f[i] - f[i + 1]);
    } else {
      out[i] = out[i - 1] + h / 12.0 * (-f[i - 2] + 8.0 * f[i - 1] + 5.0 * f[i]);
    }
  }
  return out;
}

namespace {

double grid_step(const RadialProfile& p) {
  if (p.size() < 3 || p.r.front() != 0.0) {
    throw Error(ErrorKind::InvalidArgument, "profile must live on a uniform grid starting at 0");
  }
  return p.r.back() / static_cast<double>(p.size() - 1);
}

// Returns int_0^r t g(t, u, u') dt at every node.
std::vector<double> weighted_source(const RadialProfile& p, Alpha alpha, double h) {
  std::vector<double> q(p.size());
  simd::picard_integrand(p.r, p.u, p.du, alpha.value(), q);
  return cumulative_simpson(q, h);
}

}  // namespace

RadialProfile picard_apply(const RadialProfile& profile, Alpha alpha, double u0) {
  const double h = grid_step(profile);
  const std::size_t n = profile.size();
  const std::vector<double> inner = weighted_source(profile, alpha, h);

  std::vector<double> mean(n);
  mean[0] = 0.0;
  for (std::size_t i = 1; i < n; ++i) mean[i] = inner[i] / profile.r[i];

  RadialProfile out;
  out.r = profile.r;
  out.du.resize(n);
  const double worst = simd::inverse_slope(mean, out.du);
  if (!(worst < 1.0)) {
    throw Error(ErrorKind::DomainViolation,
                "inner integral left (-1, 1); the solve radius is too large");
  }
  out.u = cumulative_simpson(out.du, h);
  for (double& v : out.u) v += u0;
  return out;
}

double c1_distance(const RadialProfile& a, const RadialProfile& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::InvalidArgument, "profiles on different grids");
  double du = 0.0, dd = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    du = std::max(du, std::abs(a.u[i] - b.u[i]));
    dd = std::max(dd, std::abs(a.du[i] - b.du[i]));
  }
  return du + dd;
}

SingularSolution solve_singular(Alpha alpha, double u0, const FixedPointConfig& config) {
  if (!(config.R > 0.0)) throw Error(ErrorKind::InvalidArgument, "solve radius must be positive");
  if (config.u0 != u0) throw Error(ErrorKind::InvalidArgument, "config built for a different u0");

  RadialProfile current;
  current.r = uniform_grid(config.R, config.grid_points);
  current.u.assign(current.size(), u0);
  current.du.assign(current.size(), 0.0);

  IterationReport report;
  double previous = -1.0;
  // Ratios of differences at rounding level carry no information.
  const double floor = 1e3 * std::numeric_limits<double>::epsilon() * (1.0 + u0);
  for (int k = 1; k <= config.max_iter; ++k) {
    RadialProfile next = picard_apply(current, alpha, u0);
    const double d = c1_distance(next, current);
    if (previous > floor && d > floor) {
      report.observed_contraction = std::max(report.observed_contraction, d / previous);
    }
    previous = d;
    current = std::move(next);
    report.iterations = k;
    report.final_defect = d;
    if (d <= config.tol) {
      report.integrated_defect = integrated_defect(current, alpha, u0);
      return {std::move(current), report};
    }
  }
  throw Error(ErrorKind::NotConverged, "Picard iteration did not reach the tolerance");
}

double integrated_defect(const RadialProfile& profile, Alpha alpha, double u0) {
  const double h = grid_step(profile);
  const std::vector<double> inner = weighted_source(profile, alpha, h);
  const std::vector<double> height = cumulative_simpson(profile.du, h);
  double worst = 0.0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const double d = profile.du[i];
    const double flux = profile.r[i] * d / std::sqrt(1.0 + d * d);
    worst = std::max(worst, std::abs(flux - inner[i]));
    worst = std::max(worst, std::abs(profile.u[i] - u0 - height[i]));
  }
  return worst;
}

double regularity_limit(const RadialProfile& profile) {
  if (profile.size() < 4 || profile.r[0] != 0.0) {
    throw Error(ErrorKind::InvalidArgument, "need a profile starting at r = 0 with 4+ nodes");
  }
  // 2u'/r is even in r: fit a + b r^2 + c r^4 through three nodes.
  double rho[3], q[3];
  for (int i = 0; i < 3; ++i) {
    const double r = profile.r[i + 1];
    rho[i] = r * r;
    q[i] = 2.0 * profile.du[i + 1] / r;
  }
  // Lagrange interpolation evaluated at rho = 0.
  double a = 0.0;
  for (int i = 0; i < 3; ++i) {
    double w = 1.0;
    for (int j = 0; j < 3; ++j) {
      if (j != i) w *= (0.0 - rho[j]) / (rho[i] - rho[j]);
    }
    a += w * q[i];
  }
  return a;
}

double graph_second_derivative(double r, double u, double du, Alpha alpha) {
  if (r == 0.0) return alpha.value() / (2.0 * u);
  const double w = 1.0 + du * du;
  return w * (alpha.value() * (u - r * du) / (r * r + u * u) - du / r);
}

std::string_view to_string(GraphStop stop) {
  switch (stop) {
    case GraphStop::RMax: return "r_max";
    case GraphStop::VerticalTangent: return "vertical_tangent";
    case GraphStop::UZero: return "u_zero";
  }
  return "?";
}

ContinuedProfile continue_profile(const RadialProfile& profile, Alpha alpha, double r_max) {
  if (profile.size() < 2) throw Error(ErrorKind::InvalidArgument, "profile too short to continue");
  const double r_start = profile.r.back();
  ContinuedProfile out{profile, GraphStop::RMax};
  if (!(r_max > r_start)) return out;

  using S = ode::State<2>;
  auto rhs = [alpha](double r, const S& y, S& dy) {
    dy[0] = y[1];
    dy[1] = graph_second_derivative(r, y[0], y[1], alpha);
  };
  ode::StepOptions opts;
  opts.h_max = 0.05 * std::max(r_start, profile.u.front());
  ode::Dopri5<2> stepper(rhs, r_start, S{profile.u.back(), profile.du.back()}, opts);

  auto push = [&out](double r, const S& y) {
    out.profile.r.push_back(r);
    out.profile.u.push_back(y[0]);
    out.profile.du.push_back(y[1]);
  };

  while (stepper.t() < r_max) {
    const auto& seg = stepper.step(r_max - stepper.t());
    auto slope_event = [](double, const S& y) { return std::abs(y[1]) - kVerticalSlope; };
    auto height_event = [](double, const S& y) { return y[0]; };
    const double gv0 = slope_event(seg.t0, seg.y0);
    const double gh0 = height_event(seg.t0, seg.y0);
    const bool vertical = slope_event(seg.t1(), seg.y1) >= 0.0;
    const bool ground = height_event(seg.t1(), seg.y1) <= 0.0;
    if (vertical || ground) {
      const double tv = vertical ? ode::bisect_event(seg, slope_event, gv0, 1e-14) : seg.t1();
      const double th = ground ? ode::bisect_event(seg, height_event, gh0, 1e-14) : seg.t1();
      const double t_stop = std::min(tv, th);
      push(t_stop, seg(t_stop));
      out.stop = (vertical && tv <= th) ? GraphStop::VerticalTangent : GraphStop::UZero;
      return out;
    }
    push(seg.t1(), seg.y1);
  }
  return out;
}

}  // namespace axistat
