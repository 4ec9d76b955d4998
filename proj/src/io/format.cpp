#include "axistat/io/format.hpp"

#include <charconv>
#include <fstream>
#include <ostream>

#include "axistat/error.hpp"

namespace axistat::io {

void append_double(std::string& out, double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  out.append(buf, res.ptr);
}

std::string format_double(double v) {
  std::string s;
  append_double(s, v);
  return s;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  std::string line;
  os << "s,x,z,psi\n";
  for (const CurveState& c : traj.samples) {
    line.clear();
    append_double(line, c.s);
    line += ',';
    append_double(line, c.x);
    line += ',';
    append_double(line, c.z);
    line += ',';
    append_double(line, c.psi);
    line += '\n';
    os << line;
  }
  if (!os) throw Error(ErrorKind::Io, "failed to write trajectory CSV");
}

void write_profile_csv(std::ostream& os, const RadialProfile& p) {
  std::string line;
  os << "r,u,du\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    line.clear();
    append_double(line, p.r[i]);
    line += ',';
    append_double(line, p.u[i]);
    line += ',';
    append_double(line, p.du[i]);
    line += '\n';
    os << line;
  }
  if (!os) throw Error(ErrorKind::Io, "failed to write profile CSV");
}

nlohmann::json events_json(const Trajectory& traj) {
  nlohmann::json ev = nlohmann::json::array();
  for (const Event& e : traj.events) {
    ev.push_back({{"kind", std::string(to_string(e.kind))}, {"s", e.s}});
  }
  return {{"schema", kSchemaVersion}, {"events", ev}};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw Error(ErrorKind::Io, "failed writing '" + path + "'");
}

}  // namespace axistat::io
