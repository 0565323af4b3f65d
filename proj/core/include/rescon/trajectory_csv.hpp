#pragma once

#include <iosfwd>
#include <string>

#include "rescon/dynamics.hpp"

namespace rescon {

// Trajectory CSV: header `t,x_0..x_{n-1},xhat_0..xhat_{n-1},what_0..what_{n-1}`
// and one row per sample. Numbers are written in shortest round-trip form,
// so reading a file back reproduces the samples bit for bit.

std::string trajectory_csv_header(std::size_t n);
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

/// Reads a trajectory produced under `cfg` on `g`. The header, the row count
/// (cfg.step_count() + 1) and the sample times (k * dt) must all match;
/// otherwise ParseError with the offending line.
Trajectory read_trajectory_csv(std::istream& in, const Graph& g, const SimConfig& cfg,
                               const std::string& source = "<input>");
Trajectory read_trajectory_csv(const std::string& path, const Graph& g, const SimConfig& cfg);

/// Shortest decimal that parses back to exactly `v`.
std::string format_double(double v);

}  // namespace rescon
