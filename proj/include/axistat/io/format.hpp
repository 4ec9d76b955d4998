#pragma once

// Locale-independent numeric output. Doubles are written with 17 significant
// digits so that every value round-trips.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "axistat/singular_ivp.hpp"
#include "axistat/trajectory.hpp"

namespace axistat::io {

inline constexpr int kSchemaVersion = 1;

void append_double(std::string& out, double v);
std::string format_double(double v);

/// Header `s,x,z,psi`, one row per sample.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

/// Header `r,u,du`, one row per grid point.
void write_profile_csv(std::ostream& os, const RadialProfile& profile);

/// {"schema": 1, "events": [{"kind": ..., "s": ...}]}
nlohmann::json events_json(const Trajectory& traj);

/// Writes `text` to `path`, throwing ErrorKind::Io on failure.
void write_file(const std::string& path, const std::string& text);

}  // namespace axistat::io
