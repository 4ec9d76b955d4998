#include "axistat/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "axistat/error.hpp"

namespace axistat {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kStationaryTol = 1e-9;

// Sample angles for the coefficient fit and the inverse of the basis matrix
// [1, t, t^2, sin t, cos t] evaluated there.
constexpr std::array<double, 5> kFitT = {0.0, kPi / 4, kPi / 2, 3 * kPi / 4, kPi};

const Eigen::Matrix<double, 5, 5>& fit_inverse() {
  static const Eigen::Matrix<double, 5, 5> inv = [] {
    Eigen::Matrix<double, 5, 5> b;
    for (int j = 0; j < 5; ++j) {
      const double t = kFitT[static_cast<std::size_t>(j)];
      b(j, 0) = 1.0;
      b(j, 1) = t;
      b(j, 2) = t * t;
      b(j, 3) = std::sin(t);
      b(j, 4) = std::cos(t);
    }
    return Eigen::Matrix<double, 5, 5>(b.fullPivLu().inverse());
  }();
  return inv;
}

template <class F>
ResidualCoefficients extract(const HelicoidalParams& p, F&& energy) {
  ResidualCoefficients rc;
  const auto& inv = fit_inverse();
  for (const CurveState& c : p.profile) {
    if (!(c.x > 0.0)) throw Error(ErrorKind::InvalidArgument, "profile needs x > 0");
    if (!(regularity_w(c, p.h) > 0.0)) throw Error(ErrorKind::Regularity, "W <= 0 on the profile");
    Eigen::Matrix<double, 5, 1> e;
    for (int j = 0; j < 5; ++j) e(j) = energy(c, kFitT[static_cast<std::size_t>(j)]);
    const Eigen::Matrix<double, 5, 1> a = inv * e;
    rc.s.push_back(c.s);
    rc.a.push_back({a(0), a(1), a(2), a(3), a(4)});
  }
  return rc;
}

Point3 any_orthogonal(Point3 n) {
  const Point3 trial = std::abs(n.x) < 0.9 ? Point3{1, 0, 0} : Point3{0, 1, 0};
  return normalized(cross(n, trial));
}

}  // namespace

std::string_view to_string(IsoKind k) {
  switch (k) {
    case IsoKind::Plane: return "plane";
    case IsoKind::Sphere: return "sphere";
    case IsoKind::Cylinder: return "cylinder";
  }
  return "?";
}

IsoResult verify_isoparametric(const IsoParams& p, Alpha alpha) {
  std::vector<SurfaceSample> samples;
  switch (p.kind) {
    case IsoKind::Plane: {
      if (p.normal.norm() == 0.0) throw Error(ErrorKind::InvalidArgument, "plane normal is zero");
      const Point3 n = normalized(p.normal);
      const Point3 u = any_orthogonal(n);
      const Point3 v = cross(n, u);
      const Point3 base = p.offset * n;
      for (int i = -3; i <= 3; ++i) {
        for (int j = -3; j <= 3; ++j) {
          const Point3 q = base + (0.7 * i) * u + (0.55 * j) * v;
          if (q.norm() < 1e-9) continue;
          samples.push_back(SurfaceSample::from_principal(q, n, 0.0, 0.0));
        }
      }
      break;
    }
    case IsoKind::Sphere: {
      if (!(p.radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "sphere radius must be positive");
      for (int i = 0; i <= 8; ++i) {
        const double th = kPi * i / 8.0;
        for (int j = 0; j < 12; ++j) {
          const double ph = 2 * kPi * j / 12.0 + 0.1;
          const Point3 d{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
          const Point3 q = p.center + p.radius * d;
          if (q.norm() < 1e-6 * p.radius) continue;
          samples.push_back(SurfaceSample::from_principal(q, -1.0 * d, 1.0 / p.radius, 1.0 / p.radius));
        }
      }
      break;
    }
    case IsoKind::Cylinder: {
      if (!(p.radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "cylinder radius must be positive");
      for (int i = -3; i <= 3; ++i) {
        for (int j = 0; j < 12; ++j) {
          const double t = 2 * kPi * j / 12.0;
          const Point3 q{p.radius * std::cos(t), p.radius * std::sin(t), 0.6 * i};
          samples.push_back(
              SurfaceSample::from_principal(q, {-std::cos(t), -std::sin(t), 0.0}, 1.0 / p.radius, 0.0));
        }
      }
      break;
    }
  }
  IsoResult res;
  for (const SurfaceSample& s : samples) {
    const double r = stationary_residual(s, alpha);
    if (std::abs(r) > res.max_abs_residual) {
      res.max_abs_residual = std::abs(r);
      res.witness = s;
      res.witness_residual = r;
    }
  }
  res.stationary = res.max_abs_residual <= kStationaryTol;
  if (res.stationary) res.witness.reset();
  return res;
}

OffsetCoefficients offset_axis_coefficients(double q1, const Profile& profile, Alpha alpha) {
  const double a = alpha.value();
  OffsetCoefficients out;
  for (const CurveState& c : profile) {
    if (!(c.x > 0.0)) throw Error(ErrorKind::InvalidArgument, "profile needs x > 0");
    const double sp = std::sin(c.psi);
    const double cp = std::cos(c.psi);
    const double h = c.dpsi + sp / c.x;
    // x |p|^2 (H - alpha <nu,p>/|p|^2) at t = 0 and t = pi.
    auto e = [&](double ct) {
      const double px = q1 + c.x * ct;
      const double p2 = px * px + c.z * c.z;
      const double nu_p = -sp * ct * px + cp * c.z;
      return c.x * (p2 * h - a * nu_p);
    };
    const double e0 = e(1.0);
    const double epi = e(-1.0);
    const double x = c.x, z = c.z;
    out.s.push_back(c.s);
    out.a0.push_back(0.5 * (e0 + epi));
    out.a1.push_back(0.5 * (e0 - epi));
    out.a1_closed.push_back(x * q1 * (2 * x * c.dpsi + (2 + a) * sp));
    out.a0_closed.push_back(sp * (q1 * q1 + (a + 1) * x * x + z * z) +
                            x * c.dpsi * (q1 * q1 + x * x + z * z) - a * x * z * cp);
  }
  return out;
}

OffsetSphere offset_axis_sphere_profile(double q1, double c, std::size_t samples) {
  if (q1 == 0.0) throw Error(ErrorKind::InvalidArgument, "offset q1 must be nonzero");
  if (samples < 2) throw Error(ErrorKind::InvalidArgument, "need at least 2 samples");
  OffsetSphere out;
  out.cx = q1;
  out.cz = c / 2;
  out.radius = std::sqrt(q1 * q1 + c * c / 4);
  const double rho = out.radius;
  for (std::size_t i = 0; i < samples; ++i) {
    const double s = kPi * rho * (static_cast<double>(i) + 0.5) / static_cast<double>(samples);
    const double psi = s / rho;
    out.profile.push_back({s, rho * std::sin(psi), c / 2 - rho * std::cos(psi), psi, 1.0 / rho});
  }
  return out;
}

double ResidualCoefficients::max_abs(std::size_t k) const {
  double m = 0.0;
  for (const auto& row : a) m = std::max(m, std::abs(row[k]));
  return m;
}

double ResidualCoefficients::evaluate(std::size_t i, double t) const {
  const auto& r = a[i];
  return r[0] + r[1] * t + r[2] * t * t + r[3] * std::sin(t) + r[4] * std::cos(t);
}

double regularity_w(const CurveState& c, double h) {
  const double cp = std::cos(c.psi);
  return c.x * c.x + h * h * cp * cp;
}

HelicoidalPoint helicoidal_point(const CurveState& c, double q1, double h, double t) {
  const double sp = std::sin(c.psi), cp = std::cos(c.psi);
  const double st = std::sin(t), ct = std::cos(t);
  const double x = c.x;
  const Point3 ps{cp * ct, cp * st, sp};
  const Point3 pt{-x * st, x * ct, h};
  const Point3 pss = c.dpsi * Point3{-sp * ct, -sp * st, cp};
  const Point3 pst{-cp * st, cp * ct, 0.0};
  const Point3 ptt{-x * ct, -x * st, 0.0};
  const Point3 raw = cross(ps, pt);
  const double w = raw.norm2();
  if (!(w > 0.0)) throw Error(ErrorKind::Regularity, "helicoidal parametrization is singular");
  const Point3 n = (1.0 / std::sqrt(w)) * raw;
  const double E = dot(ps, ps), F = dot(ps, pt), G = dot(pt, pt);
  const double L = dot(pss, n), M = dot(pst, n), N = dot(ptt, n);
  HelicoidalPoint out;
  out.position = {q1 + x * ct, x * st, c.z + h * t};
  out.normal = n;
  out.mean_curvature = (E * N - 2 * F * M + G * L) / (E * G - F * F);
  out.w = w;
  return out;
}

double helicoidal_residual(const CurveState& c, double q1, double h, double t, Alpha alpha) {
  const HelicoidalPoint hp = helicoidal_point(c, q1, h, t);
  const double p2 = hp.position.norm2();
  if (p2 == 0.0) throw Error(ErrorKind::OriginPoint, "surface point at the origin");
  return hp.mean_curvature - alpha.value() * dot(hp.normal, hp.position) / p2;
}

ResidualCoefficients helicoidal_coefficients(const HelicoidalParams& p, Alpha alpha) {
  return extract(p, [&](const CurveState& c, double t) {
    const HelicoidalPoint hp = helicoidal_point(c, p.q1, p.h, t);
    const double p2 = hp.position.norm2();
    return -hp.w * std::sqrt(hp.w) * p2 * helicoidal_residual(c, p.q1, p.h, t, alpha);
  });
}

ResidualCoefficients shrinker_coefficients(const HelicoidalParams& p, Alpha alpha) {
  return extract(p, [&](const CurveState& c, double t) {
    const HelicoidalPoint hp = helicoidal_point(c, p.q1, p.h, t);
    return hp.w * std::sqrt(hp.w) *
           (alpha.value() * dot(hp.normal, hp.position) - hp.mean_curvature);
  });
}

Profile test_profile(std::string_view branch, double x0, double z0) {
  Profile out;
  const int n = 21;
  for (int i = 0; i < n; ++i) {
    const double s = static_cast<double>(i) / (n - 1);
    if (branch == "generic") {
      const double psi = 0.4 + 0.5 * s;
      out.push_back({s, x0 + 2 * (std::sin(psi) - std::sin(0.4)),
                     z0 + 2 * (std::cos(0.4) - std::cos(psi)), psi, 0.5});
    } else if (branch == "vertical") {
      out.push_back({s, x0, z0 - s, -kPi / 2, 0.0});
    } else if (branch == "horizontal") {
      out.push_back({s, x0 + s, z0, 0.0, 0.0});
    } else {
      throw Error(ErrorKind::InvalidArgument, "unknown profile family '" + std::string(branch) + "'");
    }
  }
  return out;
}

namespace {

ScanCell evaluate_cell(const ResidualCoefficients& rc, const std::vector<int>& order) {
  ScanCell cell;
  for (std::size_t k = 0; k < 5; ++k) cell.coefficient_max[k] = rc.max_abs(k);
  cell.verdict = "VANISHING";
  for (int k : order) {
    const double m = cell.coefficient_max[static_cast<std::size_t>(k)];
    if (m > kForcedNonzero) {
      cell.verdict = "BLOCKED";
      cell.blocking = k;
      cell.max_abs_value = m;
      return cell;
    }
  }
  cell.max_abs_value = *std::max_element(cell.coefficient_max.begin(), cell.coefficient_max.end());
  return cell;
}

}  // namespace

ScanReport helicoidal_nonexistence_scan(const ScanGrid& grid) {
  ScanReport rep;
  rep.suite = "helicoidal";
  for (double a : grid.alpha) {
    const Alpha alpha(a);
    for (double h : grid.h) {
      if (h == 0.0) continue;  // rotational; existence allowed
      for (double q1 : grid.q1) {
        for (double x0 : grid.x0) {
          for (const char* branch : {"generic", "vertical"}) {
            const HelicoidalParams hp{q1, h, test_profile(branch, x0)};
            const ResidualCoefficients rc = helicoidal_coefficients(hp, alpha);
            // Case split of the argument: q1 != 0 is decided by A3, q1 = 0 by A2.
            ScanCell cell = q1 != 0.0 ? evaluate_cell(rc, {3, 2, 1, 4, 0})
                                      : evaluate_cell(rc, {2, 1, 3, 4, 0});
            cell.alpha = a;
            cell.h = h;
            cell.q1 = q1;
            cell.x0 = x0;
            cell.branch = branch;
            if (cell.verdict != "BLOCKED") rep.consistent = false;
            rep.cells.push_back(std::move(cell));
          }
        }
      }
    }
  }
  return rep;
}

ScanReport shrinker_axis_scan(const ScanGrid& grid) {
  ScanReport rep;
  rep.suite = "shrinker";
  std::vector<double> hs{0.0};
  for (double h : grid.h) {
    if (h != 0.0) hs.push_back(h);
  }
  for (double a : grid.alpha) {
    const Alpha alpha(a);
    for (double h : hs) {
      for (double q1 : grid.q1) {
        for (double x0 : grid.x0) {
          struct Branch {
            const char* name;
            Profile profile;
            std::vector<int> order;
          };
          std::vector<Branch> branches;
          if (h != 0.0) {
            // A1 = alpha h x cos psi W forces cos psi = 0; then A4 = alpha q1 x0^3.
            branches.push_back({"generic", test_profile("generic", x0), {1, 4, 3, 0}});
            branches.push_back({"vertical", test_profile("vertical", x0), {4, 1, 3, 0}});
          } else {
            // A4 forces q1 = 0 or sin psi = 0; the latter leaves z = z0 and A0 forces z0 = 0.
            branches.push_back({"generic", test_profile("generic", x0), {4, 0}});
            branches.push_back({"horizontal", test_profile("horizontal", x0, 0.5), {4, 0}});
            branches.push_back({"plane", test_profile("horizontal", x0, 0.0), {4, 0}});
          }
          for (const Branch& b : branches) {
            const HelicoidalParams hp{q1, h, b.profile};
            ScanCell cell = evaluate_cell(shrinker_coefficients(hp, alpha), b.order);
            cell.alpha = a;
            cell.h = h;
            cell.q1 = q1;
            cell.x0 = x0;
            cell.branch = b.name;
            const bool plane = cell.branch == "plane";
            if (q1 != 0.0) {
              // Only the plane z = 0 survives an offset axis, and only without twist.
              const bool ok = plane ? cell.verdict == "VANISHING" : cell.verdict == "BLOCKED";
              if (!ok) rep.consistent = false;
            }
            rep.cells.push_back(std::move(cell));
          }
        }
      }
    }
  }
  return rep;
}

ScanReport isoparametric_scan() {
  ScanReport rep;
  rep.suite = "isoparametric";
  struct Case {
    std::string label;
    IsoParams params;
    int rule;  // 0 never, 1 always, 2 iff alpha = -2, 4 iff alpha = -4
  };
  std::vector<Case> cases;
  const Point3 diag = normalized({1, 2, 2});
  cases.push_back({"plane y=0", {IsoKind::Plane, {0, 1, 0}, 0.0, {}, 1.0}, 1});
  cases.push_back({"plane x+y+z=0", {IsoKind::Plane, {1, 1, 1}, 0.0, {}, 1.0}, 1});
  cases.push_back({"plane z=1", {IsoKind::Plane, {0, 0, 1}, 1.0, {}, 1.0}, 0});
  cases.push_back({"plane (1,2,2).p/3=0.5", {IsoKind::Plane, diag, 0.5, {}, 1.0}, 0});
  for (double r : {0.5, 1.0, 3.0}) {
    cases.push_back({"sphere centre 0 r=" + std::to_string(r), {IsoKind::Sphere, {}, 0.0, {0, 0, 0}, r}, 2});
  }
  cases.push_back({"sphere through 0 centre (0,0,0.5)", {IsoKind::Sphere, {}, 0.0, {0, 0, 0.5}, 0.5}, 4});
  cases.push_back({"sphere through 0 centre (0,0,1)", {IsoKind::Sphere, {}, 0.0, {0, 0, 1}, 1.0}, 4});
  cases.push_back({"sphere through 0 centre 1.5(1,2,2)/3", {IsoKind::Sphere, {}, 0.0, 1.5 * diag, 1.5}, 4});
  cases.push_back({"sphere centre (1,0,0) r=0.5", {IsoKind::Sphere, {}, 0.0, {1, 0, 0}, 0.5}, 0});
  cases.push_back({"sphere centre (0,0,2) r=3", {IsoKind::Sphere, {}, 0.0, {0, 0, 2}, 3.0}, 0});
  for (double r : {0.5, 1.0, 2.0}) {
    cases.push_back({"cylinder r=" + std::to_string(r), {IsoKind::Cylinder, {}, 0.0, {}, r}, 0});
  }
  for (double a : {-5.0, -4.0, -3.0, -2.0, -1.0, 1.0, 2.0}) {
    const Alpha alpha(a);
    for (const Case& c : cases) {
      const IsoResult r = verify_isoparametric(c.params, alpha);
      ScanCell cell;
      cell.alpha = a;
      cell.branch = c.label;
      cell.verdict = r.stationary ? "STATIONARY" : "NOT_STATIONARY";
      cell.max_abs_value = r.max_abs_residual;
      const bool expected = c.rule == 1 || (c.rule == 2 && a == -2.0) || (c.rule == 4 && a == -4.0);
      if (expected != r.stationary) rep.consistent = false;
      rep.cells.push_back(std::move(cell));
    }
  }
  return rep;
}

ScanReport offset_axis_scan() {
  ScanReport rep;
  rep.suite = "offset";
  for (double a : {-5.0, -4.0, -3.0, -2.0, 1.0}) {
    const Alpha alpha(a);
    for (double q1 : {0.5, 1.0, 2.0}) {
      for (double c : {-1.0, 0.5, 2.0}) {
        const OffsetSphere sph = offset_axis_sphere_profile(q1, c);
        const OffsetCoefficients oc = offset_axis_coefficients(q1, sph.profile, alpha);
        ScanCell cell;
        cell.alpha = a;
        cell.q1 = q1;
        cell.c = c;
        cell.branch = "sphere through 0";
        double closed_gap = 0.0;
        double scale = 1.0;
        for (std::size_t i = 0; i < oc.s.size(); ++i) {
          cell.coefficient_max[0] = std::max(cell.coefficient_max[0], std::abs(oc.a0[i]));
          cell.coefficient_max[1] = std::max(cell.coefficient_max[1], std::abs(oc.a1[i]));
          closed_gap = std::max({closed_gap, std::abs(oc.a0[i] - oc.a0_closed[i]),
                                 std::abs(oc.a1[i] - oc.a1_closed[i])});
          scale = std::max({scale, std::abs(oc.a0_closed[i]), std::abs(oc.a1_closed[i])});
        }
        cell.max_abs_value = std::max(cell.coefficient_max[0], cell.coefficient_max[1]);
        const bool vanishing = cell.max_abs_value <= 1e-9 * scale;
        cell.verdict = vanishing ? "VANISHING" : "NONZERO";
        if (!vanishing) cell.blocking = cell.coefficient_max[0] >= cell.coefficient_max[1] ? 0 : 1;
        if (vanishing != (a == -4.0) || closed_gap > 1e-10 * scale) rep.consistent = false;
        rep.cells.push_back(std::move(cell));
      }
    }
  }
  return rep;
}

nlohmann::json to_json(const ScanReport& rep) {
  nlohmann::json cells = nlohmann::json::array();
  for (const ScanCell& c : rep.cells) {
    nlohmann::json params;
    if (rep.suite == "isoparametric") {
      params = {{"alpha", c.alpha}, {"surface", c.branch}};
    } else if (rep.suite == "offset") {
      params = {{"alpha", c.alpha}, {"q1", c.q1}, {"c", c.c}};
    } else {
      params = {{"alpha", c.alpha}, {"h", c.h}, {"q1", c.q1}, {"x0", c.x0}, {"profile", c.branch}};
    }
    nlohmann::json cell = {{"params", params},
                           {"verdict", c.verdict},
                           {"max_abs_value", c.max_abs_value}};
    cell["blocking_coefficient"] =
        c.blocking ? nlohmann::json("A" + std::to_string(*c.blocking)) : nlohmann::json(nullptr);
    cells.push_back(std::move(cell));
  }
  return {{"schema", 1}, {"suite", rep.suite}, {"consistent", rep.consistent}, {"cells", cells}};
}

}  // namespace axistat
