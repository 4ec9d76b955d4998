#include "axistat/arclength.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "axistat/error.hpp"
#include "axistat/ode/dopri5.hpp"
#include "axistat/simd/kernels.hpp"
#include "axistat/singular_ivp.hpp"

namespace axistat {

namespace {

using S = ode::State<3>;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t kMaxSteps = 20'000'000;

double curvature(double x, double z, double psi, double a) {
  const double sp = std::sin(psi);
  const double cp = std::cos(psi);
  return a * (z * cp - x * sp) / (x * x + z * z) - sp / x;
}

CurveState make_state(double s, const S& y, double a) {
  return {s, y[0], y[1], y[2], curvature(y[0], y[1], y[2], a)};
}

// Solves the radial problem at unit height and samples it as an arc-length
// curve up to the handoff radius.
std::vector<CurveState> axis_seed(Alpha alpha, double handoff) {
  FixedPointConfig cfg = pragmatic(default_config(alpha, 1.0));
  cfg.R = std::min(cfg.R, handoff);
  SingularSolution sol;
  try {
    sol = solve_singular(alpha, 1.0, cfg);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DomainViolation && e.kind() != ErrorKind::NotConverged) throw;
    cfg.R = std::min(cfg.R_theory, handoff);
    sol = solve_singular(alpha, 1.0, cfg);
  }
  const RadialProfile& p = sol.profile;
  const std::size_t n = p.size();
  const double h = p.r.back() / static_cast<double>(n - 1);
  std::vector<double> speed(n);
  for (std::size_t i = 0; i < n; ++i) speed[i] = std::sqrt(1.0 + p.du[i] * p.du[i]);
  const std::vector<double> arc = cumulative_simpson(speed, h);

  std::vector<CurveState> out;
  auto push = [&](std::size_t i) {
    const double d2u = graph_second_derivative(p.r[i], p.u[i], p.du[i], alpha);
    const double w = 1.0 + p.du[i] * p.du[i];
    out.push_back({arc[i], p.r[i], p.u[i], std::atan(p.du[i]), d2u / (w * std::sqrt(w))});
  };
  const std::size_t stride = 16;
  for (std::size_t i = 0; i < n; i += stride) push(i);
  if ((n - 1) % stride != 0) push(n - 1);
  return out;
}

struct Crossing {
  EventKind kind;
  double s;
};

}  // namespace

std::array<double, 3> rhs(const CurveState& st, Alpha alpha) {
  if (!(st.x > 0.0)) throw Error(ErrorKind::DomainViolation, "generating curve reached x <= 0");
  if (st.x * st.x + st.z * st.z == 0.0) throw Error(ErrorKind::OriginPoint, "curve at the origin");
  return {std::cos(st.psi), std::sin(st.psi), curvature(st.x, st.z, st.psi, alpha.value())};
}

Trajectory integrate(const InitialData& init, Alpha alpha, const IntegrateOptions& opts) {
  if (!(init.z0 > 0.0) || !std::isfinite(init.z0)) {
    throw Error(ErrorKind::InvalidArgument, "z0 must be positive and finite");
  }
  const double z0 = init.z0;
  const double a = alpha.value();
  const double s_max = opts.s_max > 0.0 ? opts.s_max : 50.0 * z0;
  const double eps_origin = opts.eps_origin * z0;
  const double eps_x = opts.eps_x * z0;

  Trajectory tr;
  tr.alpha = a;
  tr.init = init;

  if (init.mode == InitialMode::Axis) {
    for (CurveState c : axis_seed(alpha, opts.handoff)) {
      c.s *= z0;
      c.x *= z0;
      c.z *= z0;
      c.dpsi /= z0;
      if (c.s > s_max) break;
      tr.samples.push_back(c);
    }
    if (tr.samples.back().s >= s_max || tr.samples.size() < 2) {
      tr.events.push_back({EventKind::SMax, tr.samples.back().s});
      return tr;
    }
  } else {
    tr.samples.push_back(make_state(0.0, S{z0, 0.0, std::numbers::pi / 2}, a));
  }

  auto f = [a](double, const S& y, S& dy) {
    const double x = y[0];
    if (!(x > 0.0)) {
      dy.fill(kNaN);
      return;
    }
    dy[0] = std::cos(y[2]);
    dy[1] = std::sin(y[2]);
    dy[2] = curvature(x, y[1], y[2], a);
  };
  const double atol = opts.atol;
  auto abs_tol = [atol](const S& y, S& sc) {
    sc[0] = sc[1] = atol * std::hypot(y[0], y[1]);
    sc[2] = atol;
  };
  ode::StepOptions so;
  so.rtol = opts.rtol;
  so.atol = opts.atol;
  const CurveState& first = tr.samples.back();
  ode::Dopri5<3> stepper(f, first.s, S{first.x, first.z, first.psi}, so, abs_tol);

  auto g_z = [](double, const S& y) { return y[1]; };
  auto g_cos = [](double, const S& y) { return std::cos(y[2]); };
  auto g_sin = [](double, const S& y) { return std::sin(y[2]); };
  auto g_rho = [eps_origin](double, const S& y) { return std::hypot(y[0], y[1]) - eps_origin; };
  auto g_x = [eps_x](double, const S& y) { return y[0] - eps_x; };

  for (std::size_t steps = 0;; ++steps) {
    if (steps > kMaxSteps) throw Error(ErrorKind::NotConverged, "step budget exhausted");
    const double s_now = stepper.t();
    const double remaining = s_max - s_now;
    if (remaining <= 1e-13 * s_max) {
      tr.events.push_back({EventKind::SMax, s_now});
      break;
    }
    const S& y = stepper.y();
    const double rho = std::hypot(y[0], y[1]);
    const double turn = std::abs(stepper.dydt()[2]);
    double cap = std::min(opts.max_step_rel * rho, remaining);
    if (turn > 0.0) cap = std::min(cap, opts.max_turn / turn);
    const auto& seg = stepper.step(cap);

    std::vector<Crossing> found;
    const double tol = 1e-12;
    auto scan = [&](auto&& g, EventKind kind) {
      const double g0 = g(seg.t0, seg.y0);
      const double g1 = g(seg.t1(), seg.y1);
      if (g0 != 0.0 && (g0 < 0.0) != (g1 < 0.0)) {
        found.push_back({kind, ode::bisect_event(seg, g, g0, tol)});
      }
    };
    scan(g_z, EventKind::CrossXAxis);
    scan(g_cos, EventKind::VerticalTangent);
    scan(g_sin, EventKind::HorizontalTangent);

    double t_stop = std::numeric_limits<double>::infinity();
    std::optional<EventKind> terminal;
    if (g_rho(seg.t1(), seg.y1) < 0.0) {
      const double ts = ode::bisect_event(seg, g_rho, g_rho(seg.t0, seg.y0), tol);
      const S ys = seg(ts);
      const S ds = [&] { S d; f(ts, ys, d); return d; }();
      if (ys[0] * ds[0] + ys[1] * ds[1] < 0.0) {
        t_stop = ts;
        terminal = EventKind::OriginApproach;
      }
    }
    if (g_x(seg.t1(), seg.y1) < 0.0) {
      const double ts = ode::bisect_event(seg, g_x, g_x(seg.t0, seg.y0), tol);
      if (ts < t_stop) {
        t_stop = ts;
        terminal = std::abs(std::sin(seg(ts)[2])) < 1e-3 ? EventKind::AxisReturn
                                                         : EventKind::XCollapse;
      }
    }

    std::sort(found.begin(), found.end(),
              [](const Crossing& l, const Crossing& r) { return l.s < r.s; });
    for (const Crossing& c : found) {
      if (c.s <= t_stop) tr.events.push_back({c.kind, c.s});
    }
    if (terminal) {
      tr.samples.push_back(make_state(t_stop, seg(t_stop), a));
      tr.events.push_back({*terminal, t_stop});
      break;
    }
    tr.samples.push_back(make_state(seg.t1(), seg.y1, a));
  }
  return tr;
}

Trajectory reflect_plane_solution(const Trajectory& traj) {
  if (traj.init.mode != InitialMode::Plane) {
    throw Error(ErrorKind::InvalidArgument, "reflection applies to PLANE trajectories only");
  }
  if (traj.samples.empty()) throw Error(ErrorKind::InvalidArgument, "empty trajectory");
  auto mirror = [](const CurveState& c) {
    return CurveState{-c.s, c.x, -c.z, std::numbers::pi - c.psi, c.dpsi};
  };
  Trajectory out;
  out.alpha = traj.alpha;
  out.init = traj.init;
  out.reflected = true;

  if (traj.reflected) {
    // Already symmetric: apply the map to the whole curve.
    for (auto it = traj.samples.rbegin(); it != traj.samples.rend(); ++it) {
      out.samples.push_back(mirror(*it));
    }
    for (auto it = traj.events.rbegin(); it != traj.events.rend(); ++it) {
      out.events.push_back({it->kind, -it->s});
    }
    return out;
  }
  if (traj.samples.front().s != 0.0) {
    throw Error(ErrorKind::InvalidArgument, "PLANE trajectory must start at s = 0");
  }
  for (auto it = traj.samples.rbegin(); it != traj.samples.rend(); ++it) {
    if (it->s > 0.0) out.samples.push_back(mirror(*it));
  }
  out.samples.insert(out.samples.end(), traj.samples.begin(), traj.samples.end());
  for (auto it = traj.events.rbegin(); it != traj.events.rend(); ++it) {
    out.events.push_back({it->kind, -it->s});
  }
  out.events.insert(out.events.end(), traj.events.begin(), traj.events.end());
  return out;
}

Trajectory dilate_trajectory(const Trajectory& traj, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorKind::InvalidArgument, "dilation factor must be positive");
  }
  Trajectory out = traj;
  out.init.z0 *= lambda;
  for (CurveState& c : out.samples) {
    c.s *= lambda;
    c.x *= lambda;
    c.z *= lambda;
    c.dpsi /= lambda;
  }
  for (Event& e : out.events) e.s *= lambda;
  return out;
}

std::vector<double> trajectory_residuals(const Trajectory& traj, Alpha alpha) {
  const std::size_t n = traj.samples.size();
  std::vector<double> x(n), z(n), sp(n), cp(n), dp(n), out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const CurveState& c = traj.samples[i];
    x[i] = c.x;
    z[i] = c.z;
    sp[i] = std::sin(c.psi);
    cp[i] = std::cos(c.psi);
    dp[i] = c.dpsi;
  }
  simd::rotational_residual(x, z, sp, cp, dp, alpha.value(), out);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0.0) {
      const double r2 = z[i] * z[i];
      if (r2 == 0.0) throw Error(ErrorKind::OriginPoint, "sample at the origin");
      out[i] = 2.0 * dp[i] - alpha.value() * z[i] * cp[i] / r2;
    }
  }
  return out;
}

}  // namespace axistat
