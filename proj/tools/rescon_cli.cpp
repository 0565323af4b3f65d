#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rescon/edge_list.hpp"
#include "rescon/errors.hpp"
#include "rescon/report.hpp"
#include "rescon/scenario.hpp"
#include "rescon/stability.hpp"
#include "rescon/trajectory_csv.hpp"

namespace {

using namespace rescon;

enum Exit : int { kOk = 0, kInputError = 1, kVerificationFailed = 2, kNumericalFailure = 3 };

struct RunOptions {
  std::string graph;
  std::string scenario;
  std::string out;
  std::string report;
  std::string trajectory;
  std::optional<double> dt;
  std::optional<double> t_final;
  double tol = kDefaultConsensusTolerance;
};

struct VerifyOptions {
  std::string graph;
  std::vector<double> alphas;
  double tol = kSpectralTolerance;
  std::size_t random_graphs = 0;
  std::uint64_t seed = 1;
  bool double_precision = false;
};

struct SweepOptions {
  std::string graph;
  std::string scenario;
  std::string out;
  std::vector<double> alphas;
  std::optional<double> dt;
  std::optional<double> t_final;
};

struct Loaded {
  Graph graph;
  ScenarioFile scenario;
};

Loaded load_inputs(const std::string& graph_flag, const std::string& scenario_path) {
  ScenarioFile sc = load_scenario(scenario_path);
  std::string graph_path = graph_flag;
  if (graph_path.empty()) {
    if (!sc.graph_path) throw ParseError(scenario_path, 0, "no graph given (use --graph or the 'graph' field)");
    graph_path = *sc.graph_path;
  }
  return {read_edge_list(graph_path), std::move(sc)};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path, 0, "cannot open for writing");
  out << text;
  if (!out) throw ParseError(path, 0, "write failed");
}

void emit_report(const std::string& json, const std::string& summary, const std::string& report_path) {
  std::cout << json << '\n';
  std::cerr << summary;
  if (!report_path.empty()) write_text(report_path, json + '\n');
}

int cmd_simulate(const RunOptions& o, std::optional<double> alpha) {
  const Loaded in = load_inputs(o.graph, o.scenario);
  const auto rs = resolve(in.scenario, in.graph, {alpha, o.dt, o.t_final});
  const Trajectory traj = simulate(in.graph, rs.config, rs.disturbance);
  if (!o.out.empty()) write_trajectory_csv(o.out, traj);
  const RunReport r = make_run_report(traj, rs.disturbance, o.tol, rs.emulator_offset);
  emit_report(to_json_text(r), summary_text(r), o.report);
  return kOk;
}

int cmd_analyze(const RunOptions& o, std::optional<double> alpha) {
  const Loaded in = load_inputs(o.graph, o.scenario);
  const auto rs = resolve(in.scenario, in.graph, {alpha, o.dt, o.t_final});
  const Trajectory traj = read_trajectory_csv(o.trajectory, in.graph, rs.config);
  const RunReport r = make_run_report(traj, rs.disturbance, o.tol, rs.emulator_offset);
  emit_report(to_json_text(r), summary_text(r), o.report);
  return kOk;
}

int cmd_verify(const VerifyOptions& o) {
  std::vector<double> alphas = o.alphas;
  std::vector<Graph> graphs;
  if (o.random_graphs > 0) {
    if (alphas.empty()) alphas = {0.1, 1.0, 10.0};
    std::cerr << "seed: " << o.seed << '\n';
    std::mt19937_64 rng(o.seed);
    for (std::size_t k = 0; k < o.random_graphs; ++k) {
      const std::size_t n = 2 + uniform_index(rng, 11);
      graphs.push_back(random_connected_graph(n, uniform_real(rng, 0.0, 0.5), rng));
    }
  } else {
    if (o.graph.empty()) throw ParseError("<command line>", 0, "verify needs --graph or --random-graphs");
    if (alphas.empty()) throw ParseError("<command line>", 0, "verify needs --alpha");
    graphs.push_back(read_edge_list(o.graph));
  }

  const Precision precision = o.double_precision ? Precision::Double : Precision::Extended;
  std::vector<std::string> docs;
  bool all_stable = true;
  for (const Graph& g : graphs) {
    for (double a : alphas) {
      const StabilityReport rep = verify_stability(g, a, o.tol, precision);
      all_stable = all_stable && rep.verdict;
      docs.push_back(to_json_text(rep));
      std::cerr << summary_text(rep);
    }
  }
  if (docs.size() == 1) {
    std::cout << docs.front() << '\n';
  } else {
    std::cout << "[\n";
    for (std::size_t i = 0; i < docs.size(); ++i) std::cout << docs[i] << (i + 1 < docs.size() ? ",\n" : "\n");
    std::cout << "]\n";
  }
  return all_stable ? kOk : kVerificationFailed;
}

struct SweepRow {
  double alpha = 0.0;
  RunReport report;
};

SweepRow sweep_point(const Graph& g, const ScenarioFile& sc, const SweepOptions& o, double alpha) {
  std::optional<double> horizon = o.t_final ? o.t_final : sc.t_final;
  if (!horizon) horizon = 40.0 / std::abs(verify_stability(g, alpha).abscissa);
  auto rs = resolve(sc, g, {alpha, o.dt, horizon});
  rs.config.protocol = Protocol::Adaptive;
  const Trajectory traj = simulate(g, rs.config, rs.disturbance);
  return {alpha, make_run_report(traj, rs.disturbance, kDefaultConsensusTolerance, rs.emulator_offset)};
}

std::string optional_cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

int cmd_sweep(const SweepOptions& o) {
  if (o.alphas.empty()) throw ParseError("<command line>", 0, "empty --alpha list");
  std::vector<double> alphas = o.alphas;
  std::sort(alphas.begin(), alphas.end());
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
  for (double a : alphas)
    if (!(a > 0.0) || !std::isfinite(a)) throw ParseError("<command line>", 0, "alpha must be positive: " + format_double(a));

  const Loaded in = load_inputs(o.graph, o.scenario);
  if (in.scenario.protocol != Protocol::Adaptive) throw ParseError(in.scenario.source, 0, "sweep needs an adaptive scenario");

  std::vector<std::future<SweepRow>> jobs;
  for (double a : alphas)
    jobs.push_back(std::async(std::launch::async, sweep_point, std::cref(in.graph), std::cref(in.scenario), std::cref(o), a));
  std::vector<SweepRow> rows;
  for (auto& j : jobs) rows.push_back(j.get());

  std::ostringstream csv;
  csv << "alpha,sup_x_tilde,bound,bound_holds,centroid_drift,decay_rate\n";
  for (const auto& row : rows) {
    const RunReport& r = row.report;
    csv << format_double(row.alpha) << ',' << optional_cell(r.sup_x_tilde) << ','
        << optional_cell(r.perturbation_bound) << ',' << (r.bound_holds.value_or(false) ? "true" : "false") << ','
        << optional_cell(r.centroid_drift) << ',' << optional_cell(r.decay_rate) << '\n';
    std::cerr << "alpha " << row.alpha << ": sup|x~| " << r.sup_x_tilde.value_or(NAN) << " <= bound "
              << r.perturbation_bound.value_or(NAN) << (r.bound_holds.value_or(false) ? "" : "  VIOLATED") << '\n';
  }
  if (o.out.empty())
    std::cout << csv.str();
  else
    write_text(o.out, csv.str());
  for (const auto& row : rows)
    if (!row.report.bound_holds.value_or(false) && row.report.bound_assumptions_met.value_or(false))
      return kVerificationFailed;
  return kOk;
}

template <typename F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
}

void add_run_flags(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("--graph", o.graph, "Edge-list file (overrides the scenario's graph)");
  cmd->add_option("--scenario", o.scenario, "Scenario JSON file")->required();
  cmd->add_option("--dt", o.dt, "Step size override");
  cmd->add_option("--t-final", o.t_final, "Horizon override");
  cmd->add_option("--tol", o.tol, "Consensus tolerance for the report")->capture_default_str();
  cmd->add_option("--report", o.report, "Also write the JSON report to this file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Consensus simulator with disturbance-rejecting adaptive protocol"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "rescon 0.1.0");

  RunOptions sim_opts, ana_opts;
  std::optional<double> sim_alpha, ana_alpha;
  VerifyOptions ver_opts;
  SweepOptions swp_opts;

  auto* sim = app.add_subcommand("simulate", "Integrate a scenario; JSON report on stdout");
  add_run_flags(sim, sim_opts);
  sim->add_option("--alpha", sim_alpha, "Adaptation gain override");
  sim->add_option("--out", sim_opts.out, "Trajectory CSV output");

  auto* ana = app.add_subcommand("analyze", "Rebuild the report from a stored trajectory");
  add_run_flags(ana, ana_opts);
  ana->add_option("--alpha", ana_alpha, "Adaptation gain override");
  ana->add_option("--trajectory", ana_opts.trajectory, "Trajectory CSV written by simulate")->required();

  auto* ver = app.add_subcommand("verify", "Check the closed-loop spectrum for given gains");
  ver->add_option("--graph", ver_opts.graph, "Edge-list file");
  ver->add_option("--alpha", ver_opts.alphas, "Gain(s), comma separated")->delimiter(',');
  ver->add_option("--tol", ver_opts.tol, "Verdict requires abscissa < -tol")->capture_default_str();
  ver->add_option("--random-graphs", ver_opts.random_graphs, "Check N seeded random connected graphs instead");
  ver->add_option("--seed", ver_opts.seed, "Seed for --random-graphs")->capture_default_str();
  ver->add_flag("--double", ver_opts.double_precision, "Use double instead of extended precision");

  auto* swp = app.add_subcommand("sweep", "Run one adaptive simulation per gain; CSV table");
  swp->add_option("--graph", swp_opts.graph, "Edge-list file (overrides the scenario's graph)");
  swp->add_option("--scenario", swp_opts.scenario, "Scenario JSON file")->required();
  swp->add_option("--alpha", swp_opts.alphas, "Gains, comma separated")->delimiter(',');
  swp->add_option("--out", swp_opts.out, "CSV output (default stdout)");
  swp->add_option("--dt", swp_opts.dt, "Step size override");
  swp->add_option("--t-final", swp_opts.t_final, "Horizon override (default 40/|abscissa| per gain)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  if (sim->parsed()) return guarded([&] { return cmd_simulate(sim_opts, sim_alpha); });
  if (ana->parsed()) return guarded([&] { return cmd_analyze(ana_opts, ana_alpha); });
  if (ver->parsed()) return guarded([&] { return cmd_verify(ver_opts); });
  return guarded([&] { return cmd_sweep(swp_opts); });
}
