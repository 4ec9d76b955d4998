#include "axistat/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "axistat/error.hpp"

namespace axistat {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::EntireGraph: return "ENTIRE_GRAPH";
    case Verdict::OscillatingGraphOutsideCompact: return "OSCILLATING_GRAPH_OUTSIDE_COMPACT";
    case Verdict::CircleOrigin: return "CIRCLE_ORIGIN";
    case Verdict::ClosedOscillating: return "CLOSED_OSCILLATING";
    case Verdict::CircleAlphaMinus4: return "CIRCLE_ALPHA_MINUS4";
    case Verdict::ClosedBigraph: return "CLOSED_BIGRAPH";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

namespace {

Evidence gather(const Trajectory& traj, Regime regime) {
  Evidence ev;
  const auto& smp = traj.samples;
  const double inf = std::numeric_limits<double>::infinity();
  ev.min_rho = inf;
  ev.max_x = -inf;
  ev.min_z = inf;
  ev.max_z = -inf;
  ev.psi_min = inf;
  ev.psi_max = -inf;
  ev.min_dx = inf;
  ev.s_end = traj.s_end();
  ev.terminal = traj.terminal_event();
  ev.axis_crossings = traj.count_events(EventKind::CrossXAxis);

  double last_cross = -inf;
  for (const Event& e : traj.events) {
    if (e.kind == EventKind::CrossXAxis) last_cross = e.s;
  }

  std::size_t apex = 0;
  double min_cos_after = inf;
  for (std::size_t i = 0; i < smp.size(); ++i) {
    const CurveState& c = smp[i];
    ev.min_rho = std::min(ev.min_rho, std::hypot(c.x, c.z));
    ev.max_x = std::max(ev.max_x, c.x);
    ev.min_z = std::min(ev.min_z, c.z);
    if (c.z > ev.max_z) {
      ev.max_z = c.z;
      apex = i;
    }
    if (c.s > traj.s_begin()) {
      ev.psi_min = std::min(ev.psi_min, c.psi);
      ev.psi_max = std::max(ev.psi_max, c.psi);
      ev.min_dx = std::min(ev.min_dx, std::cos(c.psi));
    }
    if (c.s > last_cross) min_cos_after = std::min(min_cos_after, std::abs(std::cos(c.psi)));
    if (i > 0) {
      const double za = smp[i - 1].z;
      if (za > 0.0 && c.z <= 0.0) ++ev.crossings_above;
      if (za < 0.0 && c.z >= 0.0) ++ev.crossings_below;
    }
  }
  ev.min_abs_cos_after_last_crossing = min_cos_after == inf ? 0.0 : min_cos_after;
  ev.z_positive = ev.min_z > 0.0;
  ev.z_monotone_after_apex = true;
  for (std::size_t i = apex + 1; i < smp.size(); ++i) {
    if (!(smp[i].z < smp[i - 1].z)) {
      ev.z_monotone_after_apex = false;
      break;
    }
  }

  const double z0 = traj.init.z0;
  if (regime == Regime::ExactNegTwo || regime == Regime::ExactNegFour) {
    const double c = regime == Regime::ExactNegTwo ? 0.0 : z0 / 2;
    const double r = regime == Regime::ExactNegTwo ? z0 : z0 / 2;
    double worst = 0.0;
    for (const CurveState& s : smp) {
      worst = std::max(worst, std::abs(s.x * s.x + (s.z - c) * (s.z - c) - r * r));
    }
    ev.circle_residual = worst;
  }
  ev.self_intersections = self_intersection_count(traj);
  return ev;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

BehaviorReport classify(const Trajectory& traj, Alpha alpha, const ClassifierThresholds& th) {
  if (traj.init.mode != InitialMode::Axis) {
    throw Error(ErrorKind::InvalidArgument, "classification needs AXIS initial data");
  }
  if (traj.samples.size() < 2) throw Error(ErrorKind::InvalidArgument, "trajectory too short");
  BehaviorReport rep;
  rep.alpha = alpha.value();
  rep.z0 = traj.init.z0;
  rep.regime = alpha.regime();
  rep.evidence = gather(traj, rep.regime);
  const Evidence& ev = rep.evidence;
  const double z0 = traj.init.z0;
  const bool reached_smax = ev.terminal == EventKind::SMax;
  const bool reached_origin = ev.terminal == EventKind::OriginApproach;
  constexpr double half_pi = std::numbers::pi / 2;

  auto fail = [&rep](std::string why) {
    rep.verdict = Verdict::Inconclusive;
    rep.reason = std::move(why);
    return rep;
  };

  switch (rep.regime) {
    case Regime::Positive:
      if (!reached_smax) return fail("run ended before s_max");
      if (!(ev.psi_min > 0.0 && ev.psi_max < half_pi)) return fail("psi left (0, pi/2)");
      if (!(ev.min_dx > 0.0)) return fail("x not strictly increasing");
      if (ev.max_x < th.graph_reach * z0) {
        return fail("max x " + fmt(ev.max_x / z0) + " z0 below the " + fmt(th.graph_reach) +
                    " z0 window");
      }
      rep.verdict = Verdict::EntireGraph;
      rep.reason = "finite-window certificate up to max x";
      return rep;

    case Regime::NegTwoToZero:
      if (!reached_smax) return fail("run ended before s_max");
      if (ev.axis_crossings < th.min_crossings) {
        return fail("only " + std::to_string(ev.axis_crossings) + " axis crossings");
      }
      if (ev.min_abs_cos_after_last_crossing < th.min_abs_cos) {
        return fail("tangent near vertical after the last crossing");
      }
      rep.verdict = Verdict::OscillatingGraphOutsideCompact;
      return rep;

    case Regime::ExactNegTwo:
      if (!ev.circle_residual || *ev.circle_residual >= th.circle_tol * z0 * z0) {
        return fail("circle residual above tolerance");
      }
      rep.verdict = Verdict::CircleOrigin;
      return rep;

    case Regime::NegFourToNegTwo:
      if (!reached_origin) return fail("no origin approach");
      if (ev.axis_crossings < th.min_crossings) {
        return fail("only " + std::to_string(ev.axis_crossings) + " crossings before the origin");
      }
      if (!(ev.min_z < 0.0 && ev.max_z > 0.0)) return fail("curve stays in one half-plane");
      rep.verdict = Verdict::ClosedOscillating;
      rep.reason = "crossing count is a lower bound (truncated at the origin threshold)";
      return rep;

    case Regime::ExactNegFour:
      if (!ev.circle_residual || *ev.circle_residual >= th.circle_tol * z0 * z0) {
        return fail("circle residual above tolerance");
      }
      rep.verdict = Verdict::CircleAlphaMinus4;
      return rep;

    case Regime::BelowNegFour:
      if (!reached_origin) return fail("no origin approach");
      if (!ev.z_positive) return fail("curve reaches z <= 0");
      if (!ev.z_monotone_after_apex) return fail("z not monotone after the apex");
      if (ev.self_intersections != 0) return fail("curve self-intersects");
      rep.verdict = Verdict::ClosedBigraph;
      return rep;
  }
  return fail("unknown regime");
}

CircleFit circle_fit(const Trajectory& traj) {
  const auto& smp = traj.samples;
  const std::size_t n = smp.size();
  if (n < 10) throw Error(ErrorKind::InvalidArgument, "circle fit needs at least 10 samples");
  // Centre and scale the data to keep the normal equations well conditioned.
  double mx = 0.0, mz = 0.0;
  for (const CurveState& c : smp) {
    mx += c.x;
    mz += c.z;
  }
  mx /= static_cast<double>(n);
  mz /= static_cast<double>(n);
  double scale = 0.0;
  for (const CurveState& c : smp) scale = std::max(scale, std::hypot(c.x - mx, c.z - mz));
  if (scale == 0.0) throw Error(ErrorKind::InvalidArgument, "samples coincide");

  Eigen::MatrixXd A(n, 3);
  Eigen::VectorXd b(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = (smp[i].x - mx) / scale;
    const double v = (smp[i].z - mz) / scale;
    A(static_cast<Eigen::Index>(i), 0) = u;
    A(static_cast<Eigen::Index>(i), 1) = v;
    A(static_cast<Eigen::Index>(i), 2) = 1.0;
    b(static_cast<Eigen::Index>(i)) = -(u * u + v * v);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  qr.setThreshold(1e-10);
  if (qr.rank() < 3) throw Error(ErrorKind::InvalidArgument, "samples are collinear");
  const Eigen::Vector3d p = qr.solve(b);
  const double cu = -p(0) / 2;
  const double cv = -p(1) / 2;
  const double r2 = cu * cu + cv * cv - p(2);
  // A tiny curvature can pass the rank test yet describe a line.
  if (!(r2 > 0.0) || r2 > 1e16) throw Error(ErrorKind::InvalidArgument, "samples are collinear");

  CircleFit fit;
  fit.cx = mx + scale * cu;
  fit.cz = mz + scale * cv;
  fit.radius = scale * std::sqrt(r2);
  for (const CurveState& c : smp) {
    fit.max_residual =
        std::max(fit.max_residual, std::abs(std::hypot(c.x - fit.cx, c.z - fit.cz) - fit.radius));
  }
  return fit;
}

namespace {

struct Box {
  double x0, x1, z0, z1;
  bool overlaps(const Box& o) const {
    return x0 <= o.x1 && o.x0 <= x1 && z0 <= o.z1 && o.z0 <= z1;
  }
};

struct Node {
  Box box;
  std::size_t lo, hi;  // segment range
  int left = -1, right = -1;
};

class SegmentBvh {
 public:
  explicit SegmentBvh(const std::vector<Segment2>& segs) : segs_(segs) {
    if (!segs_.empty()) build(0, segs_.size());
  }

  std::size_t count() {
    if (nodes_.empty()) return 0;
    self(0);
    return hits_;
  }

 private:
  static constexpr std::size_t kLeaf = 8;

  int build(std::size_t lo, std::size_t hi) {
    Box b{segs_[lo].ax, segs_[lo].ax, segs_[lo].az, segs_[lo].az};
    for (std::size_t i = lo; i < hi; ++i) {
      const Segment2& s = segs_[i];
      b.x0 = std::min({b.x0, s.ax, s.bx});
      b.x1 = std::max({b.x1, s.ax, s.bx});
      b.z0 = std::min({b.z0, s.az, s.bz});
      b.z1 = std::max({b.z1, s.az, s.bz});
    }
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back({b, lo, hi});
    if (hi - lo > kLeaf) {
      // Polyline order keeps contiguous ranges spatially coherent.
      const std::size_t mid = lo + (hi - lo) / 2;
      const int l = build(lo, mid);
      const int r = build(mid, hi);
      nodes_[id].left = l;
      nodes_[id].right = r;
    }
    return id;
  }

  static double orient(double ax, double az, double bx, double bz, double cx, double cz) {
    return (bx - ax) * (cz - az) - (bz - az) * (cx - ax);
  }

  static bool shares_endpoint(const Segment2& a, const Segment2& b) {
    auto same = [](double x0, double z0, double x1, double z1) { return x0 == x1 && z0 == z1; };
    return same(a.ax, a.az, b.ax, b.az) || same(a.ax, a.az, b.bx, b.bz) ||
           same(a.bx, a.bz, b.ax, b.az) || same(a.bx, a.bz, b.bx, b.bz);
  }

  void pair(std::size_t i, std::size_t j) {
    const Segment2& a = segs_[i];
    const Segment2& b = segs_[j];
    if (shares_endpoint(a, b)) return;
    const double o1 = orient(a.ax, a.az, a.bx, a.bz, b.ax, b.az);
    const double o2 = orient(a.ax, a.az, a.bx, a.bz, b.bx, b.bz);
    const double o3 = orient(b.ax, b.az, b.bx, b.bz, a.ax, a.az);
    const double o4 = orient(b.ax, b.az, b.bx, b.bz, a.bx, a.bz);
    if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))) {
      ++hits_;
    }
  }

  void self(int id) {
    const Node& n = nodes_[id];
    if (n.left < 0) {
      for (std::size_t i = n.lo; i < n.hi; ++i) {
        for (std::size_t j = i + 1; j < n.hi; ++j) pair(i, j);
      }
      return;
    }
    self(n.left);
    self(n.right);
    cross(n.left, n.right);
  }

  void cross(int a, int b) {
    const Node& na = nodes_[a];
    const Node& nb = nodes_[b];
    if (!na.box.overlaps(nb.box)) return;
    if (na.left < 0 && nb.left < 0) {
      for (std::size_t i = na.lo; i < na.hi; ++i) {
        for (std::size_t j = nb.lo; j < nb.hi; ++j) pair(i, j);
      }
      return;
    }
    if (nb.left < 0 || (na.left >= 0 && na.hi - na.lo >= nb.hi - nb.lo)) {
      cross(na.left, b);
      cross(na.right, b);
    } else {
      cross(a, nb.left);
      cross(a, nb.right);
    }
  }

  const std::vector<Segment2>& segs_;
  std::vector<Node> nodes_;
  std::size_t hits_ = 0;
};

}  // namespace

std::size_t self_intersection_count(const std::vector<Segment2>& segments) {
  return SegmentBvh(segments).count();
}

std::size_t self_intersection_count(const Trajectory& traj) {
  std::vector<Segment2> segs;
  for (std::size_t i = 1; i < traj.samples.size(); ++i) {
    const CurveState& a = traj.samples[i - 1];
    const CurveState& b = traj.samples[i];
    segs.push_back({a.x, a.z, b.x, b.z});
  }
  return self_intersection_count(segs);
}

BoundaryCircle boundary_circle_extract(const Trajectory& traj, double s_cut) {
  if (traj.samples.empty() || s_cut < traj.s_begin() || s_cut > traj.s_end()) {
    throw Error(ErrorKind::InvalidArgument, "cut outside the trajectory range");
  }
  const CurveState c = traj.state_at(s_cut);
  return {c.x, c.z};
}

ClassifyRun classify_axis(Alpha alpha, double z0, IntegrateOptions opts,
                          const ClassifierThresholds& th) {
  const InitialData init{InitialMode::Axis, z0};
  if (opts.s_max <= 0.0) opts.s_max = 50.0 * z0;
  if (alpha.regime() == Regime::NegFourToNegTwo) {
    opts.eps_origin = std::min(opts.eps_origin, kSpiralOriginEps);
    // The spiral passes close to the axis only near the origin; keep the
    // collapse test below the origin threshold.
    opts.eps_x = std::min(opts.eps_x, 1e-3 * opts.eps_origin);
  }
  Trajectory traj = integrate(init, alpha, opts);
  if (alpha.regime() == Regime::NegTwoToZero) {
    while (traj.count_events(EventKind::CrossXAxis) < th.min_crossings &&
           traj.terminal_event() == EventKind::SMax && opts.s_max < 1e9 * z0) {
      opts.s_max *= 10.0;
      traj = integrate(init, alpha, opts);
    }
  }
  BehaviorReport rep = classify(traj, alpha, th);
  return {std::move(traj), std::move(rep)};
}

}  // namespace axistat
