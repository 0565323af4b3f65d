#include "rescon/trajectory_csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "rescon/errors.hpp"

namespace rescon {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string trajectory_csv_header(std::size_t n) {
  std::string h = "t";
  for (const char* prefix : {"x_", "xhat_", "what_"})
    for (std::size_t i = 0; i < n; ++i) h += "," + std::string(prefix) + std::to_string(i);
  return h;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  const std::size_t n = traj.node_count();
  out << trajectory_csv_header(n) << '\n';
  std::string line;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    line = format_double(traj.time(k));
    for (auto part : {traj.x(k), traj.x_hat(k), traj.w_hat(k)})
      for (double v : part) {
        line += ',';
        line += format_double(v);
      }
    line += '\n';
    out << line;
  }
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_trajectory_csv(out, traj);
  if (!out) throw Error("write failed for '" + path + "'");
}

Trajectory read_trajectory_csv(std::istream& in, const Graph& g, const SimConfig& cfg,
                               const std::string& source) {
  const std::size_t n = g.node_count();
  const std::size_t expected_rows = cfg.step_count() + 1;
  std::string line;
  std::size_t lineno = 1;

  if (!std::getline(in, line)) throw ParseError(source, 1, "empty trajectory file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != trajectory_csv_header(n)) {
    throw ParseError(source, 1, "header does not match a " + std::to_string(n) + "-agent trajectory");
  }

  Trajectory traj(g, cfg);
  traj.reserve(expected_rows);
  std::vector<double> row(1 + 3 * n);
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (traj.size() == expected_rows) throw ParseError(source, lineno, "more rows than the scenario implies");

    std::string_view rest(line);
    for (std::size_t c = 0; c < row.size(); ++c) {
      const std::size_t comma = rest.find(',');
      const std::string_view field = rest.substr(0, comma);
      const auto* end = field.data() + field.size();
      const auto [p, ec] = std::from_chars(field.data(), end, row[c]);
      if (ec != std::errc() || p != end) {
        throw ParseError(source, lineno, "column " + std::to_string(c + 1) + " is not a number");
      }
      const bool last = c + 1 == row.size();
      if (last != (comma == std::string_view::npos)) {
        throw ParseError(source, lineno, "expected " + std::to_string(row.size()) + " columns");
      }
      if (!last) rest.remove_prefix(comma + 1);
    }
    const double expected_t = static_cast<double>(traj.size()) * cfg.dt;
    if (row[0] != expected_t) {
      throw ParseError(source, lineno, "sample time " + format_double(row[0]) + " does not match k*dt = " +
                                           format_double(expected_t));
    }
    const std::span<const double> r(row);
    traj.append(row[0], r.subspan(1, n), r.subspan(1 + n, n), r.subspan(1 + 2 * n, n));
  }
  if (traj.size() != expected_rows) {
    throw ParseError(source, lineno,
                     "truncated trajectory: " + std::to_string(traj.size()) + " rows, expected " +
                         std::to_string(expected_rows));
  }
  return traj;
}

Trajectory read_trajectory_csv(const std::string& path, const Graph& g, const SimConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return read_trajectory_csv(in, g, cfg, path);
}

}  // namespace rescon
