#include "axistat/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "axistat/analytic.hpp"
#include "axistat/arclength.hpp"
#include "axistat/error.hpp"
#include "axistat/io/format.hpp"
#include "axistat/io/svg.hpp"
#include "axistat/mesh.hpp"
#include "axistat/phase_plane.hpp"
#include "axistat/singular_ivp.hpp"

namespace axistat::cli {

namespace {

const CLI::Validator kNonZeroAlpha(
    [](std::string& text) -> std::string {
      char* end = nullptr;
      const double v = std::strtod(text.c_str(), &end);
      if (end == text.c_str() || *end != '\0') return "alpha must be a number";
      if (v == 0.0) {
        return "alpha = 0 is excluded: the density |p|^0 gives the area functional, whose "
               "stationary surfaces are the minimal surfaces";
      }
      if (!std::isfinite(v)) return "alpha must be finite";
      return {};
    },
    "NONZERO");

struct SolveArgs {
  double alpha = 0.0;
  std::string mode = "axis";
  double z0 = 1.0;
  double s_max = 0.0;
  std::string out;
  bool reflect = false;
};

struct PhaseArgs {
  double alpha = 0.0;
  std::string window;
  std::string out;
  bool json = false;
  int grid = 40;
};

struct ClassifyArgs {
  double alpha = 0.0;
  double z0 = 1.0;
  bool json = false;
};

struct VerifyArgs {
  std::string suite;
  std::string out;
};

struct MeshArgs {
  double alpha = 0.0;
  double z0 = 1.0;
  double s_max = 0.0;
  int segments = 64;
  std::size_t max_rings = 4000;
  std::string out;
  std::string svg;
};

struct SweepArgs {
  double from = 0.0;
  double to = 0.0;
  double step = 0.0;
  double z0 = 1.0;
  unsigned jobs = 0;
  std::string out;
};

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    io::write_file(path, text);
  }
}

RadialProfile axis_profile(Alpha alpha, double z0) {
  try {
    return solve_singular(alpha, z0, pragmatic(default_config(alpha, z0))).profile;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DomainViolation && e.kind() != ErrorKind::NotConverged) throw;
    return solve_singular(alpha, z0, default_config(alpha, z0)).profile;
  }
}

int do_solve(const SolveArgs& a, std::ostream& out) {
  const Alpha alpha(a.alpha);
  const InitialData init{a.mode == "plane" ? InitialMode::Plane : InitialMode::Axis, a.z0};
  IntegrateOptions opts;
  opts.s_max = a.s_max;
  Trajectory traj = integrate(init, alpha, opts);
  if (a.reflect && init.mode == InitialMode::Plane) traj = reflect_plane_solution(traj);

  std::ostringstream csv;
  io::write_trajectory_csv(csv, traj);
  emit(a.out, csv.str(), out);
  if (!a.out.empty() && a.out != "-") {
    io::write_file(a.out + ".events.json", io::events_json(traj).dump(2) + "\n");
    if (init.mode == InitialMode::Axis) {
      std::ostringstream prof;
      io::write_profile_csv(prof, axis_profile(alpha, a.z0));
      io::write_file(a.out + ".profile.csv", prof.str());
    }
  }
  return kOk;
}

nlohmann::json complex_pair(const std::array<std::complex<double>, 2>& ev) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& z : ev) arr.push_back({z.real(), z.imag()});
  return arr;
}

int do_phase(const PhaseArgs& a, std::ostream& out) {
  const Alpha alpha(a.alpha);
  const PhaseWindow w = a.window.empty() ? PhaseWindow{} : parse_window(a.window);
  if (!a.out.empty()) io::write_file(a.out, io::phase_portrait_svg(alpha, w, a.grid));
  if (a.json) {
    nlohmann::json eq = nlohmann::json::array();
    for (const EquilibriumPoint& p : equilibria_in_window(alpha, w)) {
      nlohmann::json j = {{"family", to_string(p.family)},
                          {"psi", p.location.psi},
                          {"theta", p.location.theta},
                          {"class", to_string(p.klass)},
                          {"eigenvalues", complex_pair(p.eigenvalues)}};
      if (p.unstable_direction) j["unstable_direction"] = *p.unstable_direction;
      eq.push_back(std::move(j));
    }
    const nlohmann::json doc = {
        {"schema", io::kSchemaVersion},
        {"alpha", a.alpha},
        {"window", {w.psi_min, w.psi_max, w.theta_min, w.theta_max}},
        {"equilibria", eq}};
    out << doc.dump(2) << "\n";
  }
  return kOk;
}

int do_classify(const ClassifyArgs& a, std::ostream& out) {
  const ClassifyRun run = classify_axis(Alpha(a.alpha), a.z0);
  const BehaviorReport& r = run.report;
  if (a.json) {
    out << report_json(r).dump(2) << "\n";
  } else {
    out << to_string(r.verdict) << " (alpha " << io::format_double(r.alpha) << ", "
        << to_string(r.regime) << ", crossings " << r.evidence.axis_crossings << ")";
    if (!r.reason.empty()) out << ": " << r.reason;
    out << "\n";
  }
  return r.verdict == Verdict::Inconclusive ? kInconclusive : kOk;
}

int do_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  ScanReport rep;
  if (a.suite == "isoparametric") {
    rep = isoparametric_scan();
  } else if (a.suite == "offset") {
    rep = offset_axis_scan();
  } else if (a.suite == "helicoidal") {
    rep = helicoidal_nonexistence_scan();
  } else {
    rep = shrinker_axis_scan();
  }
  nlohmann::json doc = to_json(rep);
  emit(a.out, doc.dump(2) + "\n", out);
  if (!rep.consistent) {
    err << "verify: suite '" << a.suite << "' has cells contradicting the expected outcome\n";
    return kError;
  }
  return kOk;
}

int do_mesh(const MeshArgs& a, std::ostream& out) {
  const Alpha alpha(a.alpha);
  IntegrateOptions opts;
  opts.s_max = a.s_max;
  const Trajectory traj = integrate({InitialMode::Axis, a.z0}, alpha, opts);
  const RevolvedMesh mesh = revolve(decimate(traj, a.max_rings), a.segments);
  if (!a.out.empty()) {
    std::ostringstream obj;
    write_obj(obj, mesh);
    io::write_file(a.out, obj.str());
  }
  if (!a.svg.empty()) {
    io::write_file(a.svg, io::generator_svg(traj, "alpha = " + io::format_double(a.alpha)));
  }
  const ResidualStats st = mesh_residual_stats(mesh, alpha);
  const nlohmann::json doc = {{"schema", io::kSchemaVersion},
                              {"vertices", mesh.vertices.size()},
                              {"triangles", mesh.triangles.size()},
                              {"euler_characteristic", mesh.euler_characteristic()},
                              {"residual_max", st.max},
                              {"residual_mean", st.mean}};
  out << doc.dump() << "\n";
  return kOk;
}

int do_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  const std::vector<double> alphas = sweep_alphas(a.from, a.to, a.step);
  std::vector<std::string> lines(alphas.size());
  std::vector<char> failed(alphas.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < alphas.size(); i = next++) {
      try {
        const ClassifyRun run = classify_axis(Alpha(alphas[i]), a.z0);
        lines[i] = report_json(run.report).dump();
      } catch (const std::exception& e) {
        failed[i] = 1;
        lines[i] = nlohmann::json{{"schema", io::kSchemaVersion}, {"alpha", alphas[i]}, {"error", e.what()}}.dump();
      }
    }
  };
  unsigned jobs = a.jobs != 0 ? a.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(alphas.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < jobs; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::string text;
  for (const std::string& l : lines) text += l + "\n";
  emit(a.out, text, out);
  if (std::find(failed.begin(), failed.end(), 1) != failed.end()) {
    err << "sweep: some alpha values failed, see the error entries\n";
    return kError;
  }
  return kOk;
}

}  // namespace

std::vector<double> sweep_alphas(double from, double to, double step) {
  if (!(step != 0.0) || !std::isfinite(step) || !std::isfinite(from) || !std::isfinite(to)) {
    throw Error(ErrorKind::InvalidArgument, "sweep needs finite bounds and a nonzero step");
  }
  const double span = (to - from) / step;
  if (span < -1e-9) throw Error(ErrorKind::InvalidArgument, "step points away from alpha-to");
  const long n = static_cast<long>(std::floor(span + 1e-9));
  std::vector<double> out;
  for (long k = 0; k <= n; ++k) {
    const double a = from + static_cast<double>(k) * step;
    if (std::abs(a) <= 1e-12 * std::abs(step)) continue;
    out.push_back(a);
  }
  return out;
}

nlohmann::json report_json(const BehaviorReport& r) {
  const Evidence& e = r.evidence;
  nlohmann::json ev = {{"axis_crossings", e.axis_crossings},
                       {"crossings_above", e.crossings_above},
                       {"crossings_below", e.crossings_below},
                       {"min_rho", e.min_rho},
                       {"max_x", e.max_x},
                       {"min_z", e.min_z},
                       {"max_z", e.max_z},
                       {"psi_min", e.psi_min},
                       {"psi_max", e.psi_max},
                       {"min_dx", e.min_dx},
                       {"min_abs_cos_after_last_crossing", e.min_abs_cos_after_last_crossing},
                       {"self_intersections", e.self_intersections},
                       {"z_positive", e.z_positive},
                       {"z_monotone_after_apex", e.z_monotone_after_apex},
                       {"s_end", e.s_end}};
  ev["circle_residual"] = e.circle_residual ? nlohmann::json(*e.circle_residual) : nlohmann::json(nullptr);
  ev["terminal"] = e.terminal ? nlohmann::json(to_string(*e.terminal)) : nlohmann::json(nullptr);
  return {{"schema", io::kSchemaVersion},
          {"alpha", r.alpha},
          {"z0", r.z0},
          {"regime", to_string(r.regime)},
          {"verdict", to_string(r.verdict)},
          {"reason", r.reason},
          {"evidence", ev}};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rotational and helicoidal stationary surfaces for the energy |p|^alpha"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* c_solve = app.add_subcommand("solve", "Integrate a generating curve and write it as CSV");
  c_solve->add_option("--alpha", solve.alpha, "Density exponent")->required()->check(kNonZeroAlpha);
  c_solve->add_option("--mode", solve.mode, "Initial data: axis or plane")
      ->check(CLI::IsMember({"axis", "plane"}));
  c_solve->add_option("--z0", solve.z0, "Height of the axis point, or distance of the plane point")
      ->check(CLI::PositiveNumber);
  c_solve->add_option("--s-max", solve.s_max, "Arc length limit (default 50 z0)")->check(CLI::NonNegativeNumber);
  c_solve->add_option("--out", solve.out, "CSV path; sidecars PATH.events.json and PATH.profile.csv");
  c_solve->add_flag("--reflect", solve.reflect, "Plane mode: glue the mirror image");

  PhaseArgs phase;
  auto* c_phase = app.add_subcommand("phase", "Phase portrait of the reduced system");
  c_phase->add_option("--alpha", phase.alpha, "Density exponent")->required()->check(kNonZeroAlpha);
  c_phase->add_option("--window", phase.window, "PSIMIN:PSIMAX:THETAMIN:THETAMAX, 'pi' suffix allowed");
  c_phase->add_option("--out", phase.out, "SVG path");
  c_phase->add_option("--grid", phase.grid, "Arrows per axis")->check(CLI::Range(4, 400));
  c_phase->add_flag("--json", phase.json, "Print equilibria with classes and eigenvalues");

  ClassifyArgs classify;
  auto* c_classify = app.add_subcommand("classify", "Qualitative verdict for axis data");
  c_classify->add_option("--alpha", classify.alpha, "Density exponent")->required()->check(kNonZeroAlpha);
  c_classify->add_option("--z0", classify.z0, "Height of the axis point")->check(CLI::PositiveNumber);
  c_classify->add_flag("--json", classify.json, "Print the full report as JSON");

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify", "Closed-form and nonexistence checks");
  c_verify->add_option("--suite", verify.suite, "isoparametric, offset, helicoidal or shrinker")
      ->required()
      ->check(CLI::IsMember({"isoparametric", "offset", "helicoidal", "shrinker"}));
  c_verify->add_option("--out", verify.out, "JSON path (default stdout)");

  MeshArgs mesh;
  auto* c_mesh = app.add_subcommand("mesh", "Revolve the axis solution into a triangle mesh");
  c_mesh->add_option("--alpha", mesh.alpha, "Density exponent")->required()->check(kNonZeroAlpha);
  c_mesh->add_option("--z0", mesh.z0, "Height of the axis point")->check(CLI::PositiveNumber);
  c_mesh->add_option("--s-max", mesh.s_max, "Arc length limit (default 50 z0)")->check(CLI::NonNegativeNumber);
  c_mesh->add_option("--segments", mesh.segments, "Angular segments")->check(CLI::Range(8, 100000));
  c_mesh->add_option("--max-rings", mesh.max_rings, "Generator samples kept")->check(CLI::Range(2, 10000000));
  c_mesh->add_option("--out", mesh.out, "OBJ path");
  c_mesh->add_option("--svg", mesh.svg, "SVG path for the generating curve");

  SweepArgs sweep;
  auto* c_sweep = app.add_subcommand("sweep", "Classify a range of alpha values, one JSON line each");
  c_sweep->add_option("--alpha-from", sweep.from, "First alpha")->required();
  c_sweep->add_option("--alpha-to", sweep.to, "Last alpha")->required();
  c_sweep->add_option("--step", sweep.step, "Increment")->required();
  c_sweep->add_option("--z0", sweep.z0, "Height of the axis point")->check(CLI::PositiveNumber);
  c_sweep->add_option("--jobs", sweep.jobs, "Worker threads (default: hardware)");
  c_sweep->add_option("--out", sweep.out, "JSONL path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kError;
  }

  try {
    if (*c_solve) return do_solve(solve, out);
    if (*c_phase) return do_phase(phase, out);
    if (*c_classify) return do_classify(classify, out);
    if (*c_verify) return do_verify(verify, out, err);
    if (*c_mesh) return do_mesh(mesh, out);
    if (*c_sweep) return do_sweep(sweep, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

}  // namespace axistat::cli
