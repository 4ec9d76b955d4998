#include "axistat/phase_plane.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "axistat/error.hpp"
#include "axistat/ode/dopri5.hpp"
#include "axistat/simd/kernels.hpp"

namespace axistat {

namespace {

constexpr double kPi = std::numbers::pi;

// Exact sine and cosine of m pi/2.
double quarter_sin(int m) {
  constexpr double v[4] = {0.0, 1.0, 0.0, -1.0};
  return v[((m % 4) + 4) % 4];
}
double quarter_cos(int m) { return quarter_sin(m + 1); }

Mat2 jacobian_at(double cp, double st, double ct, double sd, double cd, double a) {
  // sd, cd: sine and cosine of psi - theta.
  return {{{-cp - a * ct * cd, a * st * sd + a * ct * cd},
           {ct * cd, -st * sd - ct * cd}}};
}

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::P1: return "P1";
    case Family::P2: return "P2";
    case Family::P3: return "P3";
  }
  return "?";
}

std::string_view to_string(StabilityClass k) {
  switch (k) {
    case StabilityClass::StableNode: return "STABLE_NODE";
    case StabilityClass::UnstableNode: return "UNSTABLE_NODE";
    case StabilityClass::StableSpiral: return "STABLE_SPIRAL";
    case StabilityClass::UnstableSpiral: return "UNSTABLE_SPIRAL";
    case StabilityClass::Center: return "CENTER";
    case StabilityClass::Saddle: return "SADDLE";
    case StabilityClass::Degenerate: return "DEGENERATE";
  }
  return "?";
}

std::string_view to_string(PhaseStop s) {
  switch (s) {
    case PhaseStop::Equilibrium: return "equilibrium";
    case PhaseStop::TimeLimit: return "time_limit";
    case PhaseStop::Periodic: return "periodic";
    case PhaseStop::Escape: return "escape";
  }
  return "?";
}

Vec2 rhs_phase(PhaseState s, Alpha alpha) {
  const double ct = std::cos(s.theta);
  const double sd = std::sin(s.psi - s.theta);
  return {-std::sin(s.psi) - alpha.value() * ct * sd, ct * sd};
}

EquilibriumPoint equilibrium(Family family, int n, int k) {
  EquilibriumPoint p;
  p.family = family;
  switch (family) {
    case Family::P1: p.location = {2.0 * n * kPi, k * kPi}; break;
    case Family::P2: p.location = {(2.0 * n - 1.0) * kPi, k * kPi}; break;
    case Family::P3: p.location = {n * kPi, kPi / 2 + k * kPi}; break;
  }
  return p;
}

Mat2 jacobian(const EquilibriumPoint& point, Alpha alpha) {
  const PhaseState loc = point.location;
  const Vec2 f = rhs_phase(loc, alpha);
  const double scale = 1.0 + std::abs(alpha.value());
  if (std::abs(f[0]) > 1e-12 * scale || std::abs(f[1]) > 1e-12) {
    throw Error(ErrorKind::InvalidArgument, "point is not an equilibrium of the phase field");
  }
  // Equilibria sit on multiples of pi/2; use exact trigonometric values there.
  const double mp = loc.psi / (kPi / 2);
  const double mt = loc.theta / (kPi / 2);
  const int ip = static_cast<int>(std::lround(mp));
  const int it = static_cast<int>(std::lround(mt));
  const double a = alpha.value();
  if (std::abs(mp - ip) < 1e-9 && std::abs(mt - it) < 1e-9) {
    return jacobian_at(quarter_cos(ip), quarter_sin(it), quarter_cos(it),
                       quarter_sin(ip - it), quarter_cos(ip - it), a);
  }
  const double d = loc.psi - loc.theta;
  return jacobian_at(std::cos(loc.psi), std::sin(loc.theta),
                     std::cos(loc.theta), std::sin(d), std::cos(d), a);
}

Mat2 jacobian_fd(PhaseState s, Alpha alpha, double h) {
  const Vec2 fp = rhs_phase({s.psi + h, s.theta}, alpha);
  const Vec2 fm = rhs_phase({s.psi - h, s.theta}, alpha);
  const Vec2 gp = rhs_phase({s.psi, s.theta + h}, alpha);
  const Vec2 gm = rhs_phase({s.psi, s.theta - h}, alpha);
  Mat2 j;
  for (int i = 0; i < 2; ++i) {
    j[i][0] = (fp[i] - fm[i]) / (2 * h);
    j[i][1] = (gp[i] - gm[i]) / (2 * h);
  }
  return j;
}

Classification classify_equilibrium(const Mat2& m, double tol_center) {
  const double tr = m[0][0] + m[1][1];
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const double disc = tr * tr - 4.0 * det;
  Classification c;
  if (disc >= 0.0) {
    const double r = std::sqrt(disc);
    c.eigenvalues = {std::complex<double>((tr - r) / 2, 0.0), std::complex<double>((tr + r) / 2, 0.0)};
  } else {
    const double im = std::sqrt(-disc) / 2;
    c.eigenvalues = {std::complex<double>(tr / 2, -im), std::complex<double>(tr / 2, im)};
  }
  if (det == 0.0) {
    c.klass = StabilityClass::Degenerate;
  } else if (det < 0.0) {
    c.klass = StabilityClass::Saddle;
  } else if (disc < 0.0) {
    if (std::abs(tr) <= tol_center) {
      c.klass = StabilityClass::Center;
    } else {
      c.klass = tr < 0.0 ? StabilityClass::StableSpiral : StabilityClass::UnstableSpiral;
    }
  } else if (tr == 0.0) {
    c.klass = StabilityClass::Degenerate;
  } else {
    c.klass = tr < 0.0 ? StabilityClass::StableNode : StabilityClass::UnstableNode;
  }
  return c;
}

RegimeRow regime_table(Alpha alpha) {
  RegimeRow row{equilibrium(Family::P1, 0, 0), equilibrium(Family::P2, 0, 0),
                equilibrium(Family::P3, 0, 0)};
  for (EquilibriumPoint* p : {&row.p1, &row.p2, &row.p3}) {
    const Classification c = classify_equilibrium(jacobian(*p, alpha));
    p->klass = c.klass;
    p->eigenvalues = c.eigenvalues;
  }
  row.p3.unstable_direction = unstable_direction_P3(alpha);
  return row;
}

std::array<StabilityClass, 3> expected_classes(Alpha alpha) {
  using K = StabilityClass;
  switch (alpha.regime()) {
    case Regime::Positive: return {K::StableNode, K::UnstableNode, K::Saddle};
    case Regime::NegTwoToZero: return {K::StableSpiral, K::UnstableSpiral, K::Saddle};
    case Regime::ExactNegTwo: return {K::Center, K::Center, K::Saddle};
    case Regime::NegFourToNegTwo: return {K::UnstableSpiral, K::StableSpiral, K::Saddle};
    case Regime::ExactNegFour:
    case Regime::BelowNegFour: return {K::UnstableNode, K::StableNode, K::Saddle};
  }
  return {K::Degenerate, K::Degenerate, K::Degenerate};
}

Vec2 unstable_direction_P3(Alpha alpha) {
  const double a = alpha.value();
  const double n = std::hypot(a, 2.0);
  return {-a / n, 2.0 / n};
}

PhaseTrace trace_phase(PhaseState start, Alpha alpha, int direction, const TraceOptions& opts) {
  if (direction != 1 && direction != -1) {
    throw Error(ErrorKind::InvalidArgument, "direction must be +1 or -1");
  }
  using S = ode::State<2>;
  const double sign = direction;
  auto f = [alpha, sign](double, const S& y, S& dy) {
    const Vec2 v = rhs_phase({y[0], y[1]}, alpha);
    dy[0] = sign * v[0];
    dy[1] = sign * v[1];
  };
  ode::StepOptions so;
  so.rtol = opts.rtol;
  so.atol = opts.atol;
  so.h_max = 0.25;
  const S y0{start.psi, start.theta};
  ode::Dopri5<2> stepper(f, 0.0, y0, so);

  PhaseTrace out;
  out.t.push_back(0.0);
  out.points.push_back(start);
  const S f0 = stepper.dydt();
  const double f0n = std::hypot(f0[0], f0[1]);
  auto section = [&](double, const S& y) {
    return (y[0] - y0[0]) * f0[0] + (y[1] - y0[1]) * f0[1];
  };
  bool left = false;

  while (stepper.t() < opts.t_span) {
    const auto& seg = stepper.step(opts.t_span - stepper.t());
    if (opts.detect_period && f0n > 0.0) {
      const double g0 = section(seg.t0, seg.y0);
      const double g1 = section(seg.t1(), seg.y1);
      if (left && g0 < 0.0 && g1 >= 0.0) {
        const double tc = ode::bisect_event(seg, section, g0, 1e-13);
        const S yc = seg(tc);
        if (std::hypot(yc[0] - y0[0], yc[1] - y0[1]) < opts.period_tol) {
          out.t.push_back(tc);
          out.points.push_back({yc[0], yc[1]});
          out.stop = PhaseStop::Periodic;
          out.period = tc;
          return out;
        }
      }
      if (g1 < 0.0) left = true;
    }
    out.t.push_back(seg.t1());
    out.points.push_back({seg.y1[0], seg.y1[1]});
    const S& d = stepper.dydt();
    if (std::hypot(d[0], d[1]) < opts.rest_speed) {
      out.stop = PhaseStop::Equilibrium;
      return out;
    }
    if (std::abs(seg.y1[0]) > opts.escape || std::abs(seg.y1[1]) > opts.escape) {
      out.stop = PhaseStop::Escape;
      return out;
    }
  }
  out.stop = PhaseStop::TimeLimit;
  return out;
}

PhaseTraces trace_phase_trajectory(PhaseState start, Alpha alpha, const TraceOptions& opts) {
  return {trace_phase(start, alpha, +1, opts), trace_phase(start, alpha, -1, opts)};
}

PhaseTrace unstable_manifold_P3(Alpha alpha, double delta, const TraceOptions& opts) {
  const Vec2 v = unstable_direction_P3(alpha);
  const PhaseState p3 = equilibrium(Family::P3, 0, 0).location;
  // v has positive theta component; stepping against it enters theta < pi/2.
  return trace_phase({p3.psi - delta * v[0], p3.theta - delta * v[1]}, alpha, +1, opts);
}

std::optional<PhaseState> predicted_limit(Alpha alpha) {
  const double a = alpha.value();
  if (a > -2.0) return PhaseState{0.0, 0.0};
  if (a < -2.0) return PhaseState{-kPi, 0.0};
  return std::nullopt;
}

PhaseState nearest_equilibrium(PhaseState s, Family family) {
  const double two_pi = 2.0 * kPi;
  switch (family) {
    case Family::P1:
      return {two_pi * std::round(s.psi / two_pi), kPi * std::round(s.theta / kPi)};
    case Family::P2:
      return {two_pi * std::round((s.psi + kPi) / two_pi) - kPi, kPi * std::round(s.theta / kPi)};
    case Family::P3:
      return {kPi * std::round(s.psi / kPi), kPi * std::round((s.theta - kPi / 2) / kPi) + kPi / 2};
  }
  return s;
}

ProjectedCurve project_to_phase(const Trajectory& traj) {
  ProjectedCurve out;
  out.s.reserve(traj.samples.size());
  double prev = 0.0;
  bool first = true;
  for (const CurveState& c : traj.samples) {
    if (c.x < 0.0) throw Error(ErrorKind::DomainViolation, "sample with x < 0 cannot be projected");
    const double r2 = c.x * c.x + c.z * c.z;
    if (r2 == 0.0) throw Error(ErrorKind::OriginPoint, "sample at the origin");
    double th = std::atan2(c.z, c.x);
    if (!first) th += 2.0 * kPi * std::round((prev - th) / (2.0 * kPi));
    first = false;
    prev = th;
    out.s.push_back(c.s);
    out.points.push_back({c.psi, th});
    out.tangent.push_back({c.dpsi, std::sin(c.psi - th) / std::sqrt(r2)});
  }
  return out;
}

AlignmentReport tangency_alignment(const ProjectedCurve& curve, Alpha alpha, double min_speed) {
  AlignmentReport rep;
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const Vec2 f = rhs_phase(curve.points[i], alpha);
    const Vec2& t = curve.tangent[i];
    const double fn = std::hypot(f[0], f[1]);
    const double tn = std::hypot(t[0], t[1]);
    if (fn <= min_speed || tn == 0.0) {
      ++rep.skipped;
      continue;
    }
    const double crs = f[0] * t[1] - f[1] * t[0];
    const double dt = f[0] * t[0] + f[1] * t[1];
    rep.max_angle = std::max(rep.max_angle, std::atan2(std::abs(crs), dt));
    ++rep.checked;
  }
  return rep;
}

}  // namespace axistat

namespace axistat {

namespace {

std::optional<double> parse_bound(std::string_view t) {
  double mult = 1.0;
  if (t.size() >= 2 && t.substr(t.size() - 2) == "pi") {
    mult = kPi;
    t.remove_suffix(2);
    if (t.empty() || t == "+") return mult;
    if (t == "-") return -mult;
  }
  double v = 0.0;
  const char* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v * mult;
}

// Eigenvector of an upper or lower triangular 2x2 matrix (or general) for a
// real eigenvalue lambda.
Vec2 eigenvector(const Mat2& j, double lambda) {
  Vec2 v;
  if (j[0][1] != 0.0) {
    v = {j[0][1], lambda - j[0][0]};
  } else if (j[1][0] != 0.0) {
    v = {lambda - j[1][1], j[1][0]};
  } else {
    v = (j[0][0] == lambda) ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0};
  }
  const double n = std::hypot(v[0], v[1]);
  return {v[0] / n, v[1] / n};
}

}  // namespace

PhaseWindow parse_window(const std::string& spec) {
  std::array<double, 4> vals{};
  std::size_t start = 0;
  for (int i = 0; i < 4; ++i) {
    const std::size_t colon = spec.find(':', start);
    if ((i < 3) == (colon == std::string::npos)) {
      throw Error(ErrorKind::InvalidArgument, "window must be PSIMIN:PSIMAX:THETAMIN:THETAMAX");
    }
    const std::string_view tok(spec.data() + start,
                               (colon == std::string::npos ? spec.size() : colon) - start);
    const auto v = parse_bound(tok);
    if (!v) throw Error(ErrorKind::InvalidArgument, "bad window bound '" + std::string(tok) + "'");
    vals[static_cast<std::size_t>(i)] = *v;
    start = colon + 1;
  }
  PhaseWindow w{vals[0], vals[1], vals[2], vals[3]};
  if (!(w.psi_min < w.psi_max && w.theta_min < w.theta_max)) {
    throw Error(ErrorKind::InvalidArgument, "window bounds must be increasing");
  }
  return w;
}

std::vector<EquilibriumPoint> equilibria_in_window(Alpha alpha, const PhaseWindow& w) {
  std::vector<EquilibriumPoint> out;
  const double slack = 1e-12;
  auto inside = [&](PhaseState p) {
    return p.psi >= w.psi_min - slack && p.psi <= w.psi_max + slack &&
           p.theta >= w.theta_min - slack && p.theta <= w.theta_max + slack;
  };
  const int n_lo = static_cast<int>(std::floor(w.psi_min / (2 * kPi))) - 1;
  const int n_hi = static_cast<int>(std::ceil(w.psi_max / (2 * kPi))) + 1;
  const int k_lo = static_cast<int>(std::floor(w.theta_min / kPi)) - 1;
  const int k_hi = static_cast<int>(std::ceil(w.theta_max / kPi)) + 1;
  for (Family fam : {Family::P1, Family::P2, Family::P3}) {
    const int lo = fam == Family::P3 ? 2 * n_lo : n_lo;
    const int hi = fam == Family::P3 ? 2 * n_hi : n_hi;
    for (int n = lo; n <= hi; ++n) {
      for (int k = k_lo; k <= k_hi; ++k) {
        EquilibriumPoint p = equilibrium(fam, n, k);
        if (!inside(p.location)) continue;
        const Mat2 j = jacobian(p, alpha);
        const Classification c = classify_equilibrium(j);
        p.klass = c.klass;
        p.eigenvalues = c.eigenvalues;
        if (c.klass == StabilityClass::Saddle) {
          p.unstable_direction = eigenvector(j, std::max(c.eigenvalues[0].real(), c.eigenvalues[1].real()));
        }
        out.push_back(p);
      }
    }
  }
  return out;
}

std::vector<FieldSample> sample_field(Alpha alpha, const PhaseWindow& w, int nx, int ny) {
  if (nx < 1 || ny < 1) throw Error(ErrorKind::InvalidArgument, "grid must be at least 1x1");
  const std::size_t n = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  std::vector<double> sp(n), cp(n), st(n), ct(n), h1(n), h2(n);
  std::vector<FieldSample> out(n);
  const double dx = (w.psi_max - w.psi_min) / nx;
  const double dy = (w.theta_max - w.theta_min) / ny;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t idx = static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i);
      const PhaseState p{w.psi_min + (i + 0.5) * dx, w.theta_min + (j + 0.5) * dy};
      out[idx].at = p;
      sp[idx] = std::sin(p.psi);
      cp[idx] = std::cos(p.psi);
      st[idx] = std::sin(p.theta);
      ct[idx] = std::cos(p.theta);
    }
  }
  simd::phase_field(sp, cp, st, ct, alpha.value(), h1, h2);
  for (std::size_t i = 0; i < n; ++i) out[i].v = {h1[i], h2[i]};
  return out;
}

std::vector<PhaseTrace> separatrices(Alpha alpha, const PhaseWindow& w, double delta) {
  std::vector<PhaseTrace> out;
  TraceOptions opts;
  opts.t_span = 40.0;
  opts.rtol = 1e-9;
  opts.atol = 1e-11;
  const double margin = 1.0;
  for (const EquilibriumPoint& p : equilibria_in_window(alpha, w)) {
    if (p.family != Family::P3) continue;
    const Mat2 j = jacobian(p, alpha);
    const double lu = std::max(p.eigenvalues[0].real(), p.eigenvalues[1].real());
    const double ls = std::min(p.eigenvalues[0].real(), p.eigenvalues[1].real());
    const Vec2 vu = eigenvector(j, lu);
    const Vec2 vs = eigenvector(j, ls);
    for (double sgn : {1.0, -1.0}) {
      const PhaseState su{p.location.psi + sgn * delta * vu[0], p.location.theta + sgn * delta * vu[1]};
      const PhaseState ss{p.location.psi + sgn * delta * vs[0], p.location.theta + sgn * delta * vs[1]};
      for (PhaseTrace tr : {trace_phase(su, alpha, +1, opts), trace_phase(ss, alpha, -1, opts)}) {
        // Drop the part that wanders far outside the window.
        std::size_t keep = 0;
        for (; keep < tr.points.size(); ++keep) {
          const PhaseState& q = tr.points[keep];
          if (q.psi < w.psi_min - margin || q.psi > w.psi_max + margin ||
              q.theta < w.theta_min - margin || q.theta > w.theta_max + margin) {
            break;
          }
        }
        tr.points.resize(std::min(keep + 1, tr.points.size()));
        tr.t.resize(tr.points.size());
        out.push_back(std::move(tr));
      }
    }
  }
  return out;
}

}  // namespace axistat
