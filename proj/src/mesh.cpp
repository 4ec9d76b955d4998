#include "axistat/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <set>
#include <utility>

#include "axistat/error.hpp"
#include "axistat/io/format.hpp"
#include "axistat/simd/kernels.hpp"

namespace axistat {

std::size_t RevolvedMesh::edge_count() const {
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& t : triangles) {
    for (int i = 0; i < 3; ++i) {
      std::size_t a = t[static_cast<std::size_t>(i)];
      std::size_t b = t[static_cast<std::size_t>((i + 1) % 3)];
      if (a > b) std::swap(a, b);
      edges.emplace(a, b);
    }
  }
  return edges.size();
}

long RevolvedMesh::euler_characteristic() const {
  return static_cast<long>(vertices.size()) - static_cast<long>(edge_count()) +
         static_cast<long>(triangles.size());
}

RevolvedMesh revolve(const Trajectory& traj, int segments, const RevolveOptions& opts) {
  if (segments < 8) throw Error(ErrorKind::InvalidArgument, "need at least 8 angular segments");
  const auto& g = traj.samples;
  if (g.size() < 2) throw Error(ErrorKind::InvalidArgument, "generator needs at least 2 samples");
  const double apex_x = opts.apex_x * traj.init.z0;

  RevolvedMesh m;
  m.generator = g;
  m.angular_segments = segments;
  const std::size_t nseg = static_cast<std::size_t>(segments);

  std::size_t first = 0;
  std::size_t last = g.size();
  m.apex_front = g.front().x <= apex_x;
  m.apex_back = g.back().x <= apex_x || traj.terminal_event() == EventKind::AxisReturn;
  if (m.apex_front) ++first;
  if (m.apex_back && last > first) --last;
  const bool origin_cap = opts.close_at_origin && !m.apex_back &&
                          traj.terminal_event() == EventKind::OriginApproach;
  if (first >= last) throw Error(ErrorKind::InvalidArgument, "generator has no off-axis samples");

  auto axis_normal = [](const CurveState& c) { return Point3{0.0, 0.0, std::cos(c.psi) >= 0 ? 1.0 : -1.0}; };

  std::size_t front_apex = 0;
  if (m.apex_front) {
    front_apex = m.vertices.size();
    m.vertices.push_back({0.0, 0.0, g.front().z});
    m.normals.push_back(axis_normal(g.front()));
  }

  std::vector<double> ct(nseg), st(nseg);
  for (std::size_t j = 0; j < nseg; ++j) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(segments);
    ct[j] = std::cos(t);
    st[j] = std::sin(t);
  }
  const std::size_t ring0 = m.vertices.size();
  for (std::size_t i = first; i < last; ++i) {
    const CurveState& c = g[i];
    const double sp = std::sin(c.psi);
    const double cp = std::cos(c.psi);
    for (std::size_t j = 0; j < nseg; ++j) {
      m.vertices.push_back({c.x * ct[j], c.x * st[j], c.z});
      m.normals.push_back({-sp * ct[j], -sp * st[j], cp});
    }
  }
  m.rings = last - first;
  auto ring = [&](std::size_t r, std::size_t j) { return ring0 + r * nseg + (j % nseg); };

  if (m.apex_front) {
    for (std::size_t j = 0; j < nseg; ++j) m.triangles.push_back({front_apex, ring(0, j + 1), ring(0, j)});
  }
  for (std::size_t r = 0; r + 1 < m.rings; ++r) {
    for (std::size_t j = 0; j < nseg; ++j) {
      m.triangles.push_back({ring(r, j), ring(r, j + 1), ring(r + 1, j + 1)});
      m.triangles.push_back({ring(r, j), ring(r + 1, j + 1), ring(r + 1, j)});
    }
  }
  if (m.apex_back || origin_cap) {
    const std::size_t back_apex = m.vertices.size();
    const CurveState& c = g.back();
    m.vertices.push_back({0.0, 0.0, m.apex_back ? c.z : 0.0});
    m.normals.push_back(axis_normal(c));
    const std::size_t r = m.rings - 1;
    for (std::size_t j = 0; j < nseg; ++j) m.triangles.push_back({ring(r, j), ring(r, j + 1), back_apex});
    m.apex_back = true;
  }
  return m;
}

Trajectory decimate(const Trajectory& traj, std::size_t max_points) {
  if (max_points < 2) throw Error(ErrorKind::InvalidArgument, "keep at least 2 points");
  const std::size_t n = traj.samples.size();
  if (n <= max_points) return traj;
  Trajectory out = traj;
  out.samples.clear();
  std::size_t prev = n;
  for (std::size_t k = 0; k < max_points; ++k) {
    const std::size_t i = static_cast<std::size_t>(
        std::llround(static_cast<double>(k) * static_cast<double>(n - 1) / static_cast<double>(max_points - 1)));
    if (i != prev) out.samples.push_back(traj.samples[i]);
    prev = i;
  }
  return out;
}

ResidualStats mesh_residual_stats(const RevolvedMesh& mesh, Alpha alpha) {
  const auto& g = mesh.generator;
  std::vector<double> x, z, sp, cp, dp;
  std::vector<double> axis_res;
  for (const CurveState& c : g) {
    if (!std::isfinite(c.dpsi) || !std::isfinite(c.psi)) {
      throw Error(ErrorKind::InvalidArgument, "generator lacks curvature data");
    }
    if (c.x == 0.0) {
      // k2 = k1 on the axis.
      axis_res.push_back(2.0 * c.dpsi - alpha.value() * std::cos(c.psi) / c.z);
      continue;
    }
    x.push_back(c.x);
    z.push_back(c.z);
    sp.push_back(std::sin(c.psi));
    cp.push_back(std::cos(c.psi));
    dp.push_back(c.dpsi);
  }
  std::vector<double> res(x.size());
  simd::rotational_residual(x, z, sp, cp, dp, alpha.value(), res);
  res.insert(res.end(), axis_res.begin(), axis_res.end());
  ResidualStats st;
  for (double r : res) {
    st.max = std::max(st.max, std::abs(r));
    st.mean += std::abs(r);
  }
  st.count = res.size();
  if (st.count > 0) st.mean /= static_cast<double>(st.count);
  return st;
}

void write_obj(std::ostream& os, const RevolvedMesh& mesh) {
  std::string line;
  os << "# surface of revolution, " << mesh.vertices.size() << " vertices, "
     << mesh.triangles.size() << " triangles\n";
  for (const Point3& v : mesh.vertices) {
    line = "v ";
    io::append_double(line, v.x);
    line += ' ';
    io::append_double(line, v.y);
    line += ' ';
    io::append_double(line, v.z);
    line += '\n';
    os << line;
  }
  for (const Point3& n : mesh.normals) {
    line = "vn ";
    io::append_double(line, n.x);
    line += ' ';
    io::append_double(line, n.y);
    line += ' ';
    io::append_double(line, n.z);
    line += '\n';
    os << line;
  }
  for (const auto& t : mesh.triangles) {
    os << "f " << t[0] + 1 << "//" << t[0] + 1 << ' ' << t[1] + 1 << "//" << t[1] + 1 << ' '
       << t[2] + 1 << "//" << t[2] + 1 << '\n';
  }
  if (!os) throw Error(ErrorKind::Io, "failed to write OBJ data");
}

}  // namespace axistat
