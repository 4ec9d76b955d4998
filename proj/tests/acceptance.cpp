// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "axistat/analytic.hpp"
#include "axistat/arclength.hpp"
#include "axistat/classifier.hpp"
#include "axistat/cli.hpp"
#include "axistat/phase_plane.hpp"
#include "axistat/singular_ivp.hpp"

using namespace axistat;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Reads the s,x,z,psi CSV written by the solve command.
std::vector<std::array<double, 2>> read_xz(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  std::vector<std::array<double, 2>> pts;
  while (std::getline(in, line)) {
    double s, x, z, psi;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &s, &x, &z, &psi) == 4) pts.push_back({x, z});
  }
  return pts;
}

Outcome exact_circles() {
  const auto dir = std::filesystem::temp_directory_path() / "axistat_acceptance";
  std::filesystem::create_directories(dir);
  Outcome o{true, {}};
  struct Case {
    const char* alpha;
    double cz, r2;
  };
  for (const Case& c : {Case{"-2", 0.0, 1.0}, Case{"-4", 0.5, 0.25}}) {
    const std::string out = (dir / (std::string("circle") + c.alpha + ".csv")).string();
    const char* argv[] = {"axistat", "solve", "--alpha", c.alpha, "--z0", "1", "--out", out.c_str()};
    std::ostringstream so, se;
    const auto t0 = Clock::now();
    const int code = cli::run(8, argv, so, se);
    const double dt = seconds_since(t0);
    double worst = 0.0;
    const auto pts = read_xz(out);
    for (const auto& p : pts) {
      worst = std::max(worst, std::abs(p[0] * p[0] + (p[1] - c.cz) * (p[1] - c.cz) - c.r2));
    }
    const bool ok = code == 0 && pts.size() > 100 && worst < 1e-8 && dt < 1.0;
    o.pass = o.pass && ok;
    o.detail += std::string("alpha=") + c.alpha + " max " + fmt("%.2e", worst) + " in " +
                fmt("%.3f", dt) + " s; ";
  }
  return o;
}

Outcome regularity_values() {
  Outcome o{true, {}};
  for (auto [a, u0] : {std::pair{1.0, 1.0}, std::pair{-2.0, 1.0}, std::pair{-3.0, 2.0}}) {
    const Alpha alpha(a);
    const SingularSolution sol = solve_singular(alpha, u0, pragmatic(default_config(alpha, u0)));
    const double gap = std::abs(regularity_limit(sol.profile) - a / u0);
    o.pass = o.pass && gap < 1e-4;
    o.detail += "(" + fmt("%g", a) + "," + fmt("%g", u0) + ") gap " + fmt("%.1e", gap) + "; ";
  }
  return o;
}

Outcome contraction() {
  const Alpha alpha(1.0);
  const double u0 = 1.0, eps = 0.5;
  const FixedPointConfig cfg = existence_bounds(alpha, u0, eps);
  const std::vector<double> r = uniform_grid(cfg.R_theory, 257);
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  // Random C^1 profiles with |u - u0| <= eps and |u'| <= eps on [0, R].
  auto random_profile = [&] {
    const double b1 = unit(rng), b2 = unit(rng), k = 1.0 + 4.0 * std::abs(unit(rng));
    const double scale = eps / (std::abs(b1) + std::abs(b2) + 1e-12);
    RadialProfile p;
    p.r = r;
    for (double ri : r) {
      const double t = ri / cfg.R_theory;
      p.du.push_back(scale * (b1 * std::sin(k * t) + b2 * t));
      p.u.push_back(u0 + scale * cfg.R_theory * (b1 * (1.0 - std::cos(k * t)) / k + b2 * t * t / 2.0));
    }
    return p;
  };
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const RadialProfile p = random_profile();
    const RadialProfile q = random_profile();
    const double d = c1_distance(p, q);
    const double dt = c1_distance(picard_apply(p, alpha, u0), picard_apply(q, alpha, u0));
    worst = std::max(worst, dt / d);
  }
  const bool ok = cfg.M == 12.0 && worst <= 0.5 + 1e-6;
  return {ok, "M = " + fmt("%.17g", cfg.M) + ", worst ratio " + fmt("%.4f", worst) + " over 50 pairs"};
}

Outcome equilibrium_table() {
  using SC = StabilityClass;
  struct Row {
    double alpha;
    SC p1, p2;
  };
  const Row table[] = {
      {1, SC::StableNode, SC::UnstableNode},     {-1, SC::StableSpiral, SC::UnstableSpiral},
      {-2, SC::Center, SC::Center},              {-3, SC::UnstableSpiral, SC::StableSpiral},
      {-4, SC::UnstableNode, SC::StableNode},    {-5, SC::UnstableNode, SC::StableNode},
  };
  bool ok = true;
  double worst_vec = 0.0;
  for (const Row& row : table) {
    const Alpha alpha(row.alpha);
    const RegimeRow rt = regime_table(alpha);
    ok = ok && rt.p1.klass == row.p1 && rt.p2.klass == row.p2 && rt.p3.klass == SC::Saddle;
    const auto& ev = rt.p3.eigenvalues;
    const bool exact = (ev[0] == std::complex<double>(-1, 0) && ev[1] == std::complex<double>(1, 0)) ||
                       (ev[0] == std::complex<double>(1, 0) && ev[1] == std::complex<double>(-1, 0));
    ok = ok && exact;
    // Unstable eigenvector: J v = v, and v parallel to (-alpha, 2).
    const Mat2 j = jacobian(rt.p3, alpha);
    const Vec2 v = unstable_direction_P3(alpha);
    const double res = std::hypot(j[0][0] * v[0] + j[0][1] * v[1] - v[0], j[1][0] * v[0] + j[1][1] * v[1] - v[1]);
    const double par = std::abs(v[0] * 2.0 - v[1] * (-row.alpha));
    worst_vec = std::max({worst_vec, res, par});
  }
  ok = ok && worst_vec < 1e-12;
  return {ok, "six alpha values, eigenvector residual " + fmt("%.1e", worst_vec)};
}

const std::vector<std::pair<double, Verdict>>& verdict_cases() {
  static const std::vector<std::pair<double, Verdict>> v = {
      {1.0, Verdict::EntireGraph},
      {-1.0, Verdict::OscillatingGraphOutsideCompact},
      {-1.8, Verdict::OscillatingGraphOutsideCompact},
      {-3.0, Verdict::ClosedOscillating},
      {-5.0, Verdict::ClosedBigraph},
  };
  return v;
}

Outcome qualitative_verdicts() {
  Outcome o{true, {}};
  const auto t0 = Clock::now();
  for (const auto& [a, want] : verdict_cases()) {
    const ClassifyRun run = classify_axis(Alpha(a));
    const BehaviorReport& r = run.report;
    bool ok = r.verdict == want;
    if (want == Verdict::OscillatingGraphOutsideCompact) ok = ok && r.evidence.axis_crossings >= 3;
    if (want == Verdict::ClosedBigraph) ok = ok && r.evidence.min_z > 0.0 && r.evidence.self_intersections == 0;
    o.pass = o.pass && ok;
    o.detail += fmt("%g", a) + ":" + std::string(to_string(r.verdict)) + (ok ? "" : "(!)") + " ";
  }
  const double dt = seconds_since(t0);
  o.pass = o.pass && dt < 10.0;
  o.detail += "in " + fmt("%.2f", dt) + " s";
  return o;
}

Outcome residual_suite() {
  double worst = 0.0, worst_scale = 0.0;
  bool verdicts = true;
  std::vector<double> alphas{-2.0, -4.0};
  for (const auto& c : verdict_cases()) alphas.push_back(c.first);
  for (double a : alphas) {
    const Alpha alpha(a);
    const ClassifyRun run = classify_axis(alpha);
    const std::vector<double> base = trajectory_residuals(run.trajectory, alpha);
    for (double r : base) worst = std::max(worst, std::abs(r));
    for (double lambda : {0.5, 2.0}) {
      const Trajectory d = dilate_trajectory(run.trajectory, lambda);
      verdicts = verdicts && classify(d, alpha).verdict == run.report.verdict;
      const std::vector<double> res = trajectory_residuals(d, alpha);
      for (std::size_t i = 0; i < res.size(); ++i) {
        const double want = base[i] / lambda;
        const double rel = std::abs(res[i] - want) / std::max(std::abs(want), 1e-300);
        if (want != 0.0 || res[i] != 0.0) worst_scale = std::max(worst_scale, rel);
      }
    }
  }
  const bool ok = worst < 1e-7 && verdicts && worst_scale < 1e-8;
  return {ok, "max residual " + fmt("%.2e", worst) + ", dilation rel. error " + fmt("%.1e", worst_scale) +
                  (verdicts ? ", verdicts preserved" : ", verdict changed")};
}

Outcome nonexistence_scans() {
  const ScanReport hel = helicoidal_nonexistence_scan();
  bool hel_ok = !hel.cells.empty();
  for (const ScanCell& c : hel.cells) hel_ok = hel_ok && (c.h == 0.0 || c.verdict == "BLOCKED");

  const ScanReport shr = shrinker_axis_scan();
  bool shr_ok = !shr.cells.empty();
  for (const ScanCell& c : shr.cells) {
    if (c.h != 0.0 && c.verdict != "BLOCKED") shr_ok = shr_ok && c.q1 == 0.0;
    if (c.h != 0.0 && c.q1 != 0.0) shr_ok = shr_ok && c.verdict == "BLOCKED";
  }

  const ScanReport iso = isoparametric_scan();
  bool iso_ok = !iso.cells.empty();
  for (const ScanCell& c : iso.cells) {
    const std::string& s = c.branch;
    bool expect = false;
    if (s == "plane y=0" || s == "plane x+y+z=0") expect = true;
    if (s.rfind("sphere centre 0", 0) == 0) expect = c.alpha == -2.0;
    if (s.rfind("sphere through 0", 0) == 0) expect = c.alpha == -4.0;
    iso_ok = iso_ok && (c.verdict == "STATIONARY") == expect;
    if (s.rfind("cylinder", 0) == 0) iso_ok = iso_ok && c.verdict == "NOT_STATIONARY";
  }
  return {hel_ok && shr_ok && iso_ok,
          "helicoidal " + std::to_string(hel.cells.size()) + (hel_ok ? " ok" : " FAIL") + ", shrinker " +
              std::to_string(shr.cells.size()) + (shr_ok ? " ok" : " FAIL") + ", isoparametric " +
              std::to_string(iso.cells.size()) + (iso_ok ? " ok" : " FAIL")};
}

Outcome phase_consistency() {
  Outcome o{true, {}};
  for (const auto& [a, want] : verdict_cases()) {
    const Alpha alpha(a);
    const ClassifyRun run = classify_axis(alpha);
    const AlignmentReport al = tangency_alignment(project_to_phase(run.trajectory), alpha);
    const PhaseTrace m = unstable_manifold_P3(alpha);
    const auto limit = predicted_limit(alpha);
    double dist = INFINITY;
    if (limit && !m.points.empty()) {
      dist = std::hypot(m.points.back().psi - limit->psi, m.points.back().theta - limit->theta);
    }
    const bool ok = al.max_angle < 1e-6 && al.checked > 0 && dist < 1e-4;
    o.pass = o.pass && ok;
    o.detail += fmt("%g", a) + ": angle " + fmt("%.1e", al.max_angle) + ", end " + fmt("%.1e", dist) + "; ";
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"exact circles", exact_circles},
      {"regularity value at the axis", regularity_values},
      {"contraction certificate", contraction},
      {"equilibrium table", equilibrium_table},
      {"qualitative verdicts", qualitative_verdicts},
      {"residual and dilation", residual_suite},
      {"nonexistence scans", nonexistence_scans},
      {"phase projection", phase_consistency},
  };
  int failed = 0;
  int k = 0;
  for (const Criterion& c : criteria) {
    ++k;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", k, c.name, o.detail.c_str());
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
