// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Usage: acceptance [--seed=N]
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rescon/report.hpp"
#include "rescon/spectral.hpp"
#include "rescon/stability.hpp"
#include "test_support.hpp"

namespace {

using namespace rescon;
using cd = std::complex<double>;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::uint64_t parse_seed(int argc, char** argv) {
  std::uint64_t seed = 20240611;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a.rfind("--seed=", 0) == 0) seed = std::stoull(a.substr(7));
    else if (a == "--seed" && i + 1 < argc) seed = std::stoull(argv[++i]);
  }
  return seed;
}

struct GridCase {
  Graph graph;
  double alpha;
};

std::vector<GridCase> random_grid(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<GridCase> grid;
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 2 + uniform_index(rng, 11);
    const Graph g = random_connected_graph(n, uniform_real(rng, 0.0, 0.5), rng);
    for (double alpha : {0.1, 1.0, 10.0}) grid.push_back({g, alpha});
  }
  return grid;
}

// spec(M) from closed forms: -lambda_k for the nonzero Laplacian eigenvalues,
// and the roots of s^2 + d_i s + alpha for every node.
std::vector<cd> analytic_spectrum(const Graph& g, double alpha) {
  std::vector<cd> out;
  const auto lam = laplacian_spectrum(g);
  for (std::size_t k = 1; k < lam.size(); ++k) out.emplace_back(-lam[k], 0.0);
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    const double d = static_cast<double>(g.degree(i));
    const cd root = std::sqrt(cd(d * d - 4.0 * alpha, 0.0));
    out.push_back((-d + root) / 2.0);
    out.push_back((-d - root) / 2.0);
  }
  return out;
}

std::vector<Graph> family_graphs() {
  std::vector<Graph> gs;
  for (std::size_t n = 3; n <= 8; ++n) {
    gs.push_back(path_graph(n));
    gs.push_back(cycle_graph(n));
    gs.push_back(complete_graph(n));
  }
  return gs;
}

std::string graph_name(std::size_t index) {
  static const char* kinds[] = {"P", "C", "K"};
  return kinds[index % 3] + std::to_string(3 + index / 3);
}

SimConfig adaptive(const Vector& x0, double alpha, double dt, double t_final) {
  SimConfig cfg;
  cfg.protocol = Protocol::Adaptive;
  cfg.alpha = alpha;
  cfg.dt = dt;
  cfg.t_final = t_final;
  cfg.x0 = x0;
  cfg.x_hat0 = x0;
  cfg.w_hat0.assign(x0.size(), 0.0);
  return cfg;
}

Vector random_vector(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  Vector v(n);
  for (auto& e : v) e = uniform_real(rng, lo, hi);
  return v;
}

// Every entry nonzero: magnitude in [0.5, 1.5], random sign.
Vector all_misbehaving(std::mt19937_64& rng, std::size_t n) {
  Vector w(n);
  for (auto& e : w) e = (uniform_index(rng, 2) == 0 ? -1.0 : 1.0) * uniform_real(rng, 0.5, 1.5);
  return w;
}

// ---------------------------------------------------------------------------

Outcome criterion1(const std::vector<GridCase>& grid) {
  const auto start = std::chrono::steady_clock::now();
  double worst = -INFINITY, worst_vs_analytic = 0.0;
  std::size_t failures = 0;
  for (const auto& c : grid) {
    const auto rep = verify_stability(c.graph, c.alpha);
    worst = std::max(worst, rep.abscissa);
    if (!(rep.abscissa < -1e-8)) ++failures;
    double expected = -INFINITY;
    for (const cd& z : analytic_spectrum(c.graph, c.alpha)) expected = std::max(expected, z.real());
    worst_vs_analytic = std::max(worst_vs_analytic, std::abs(rep.abscissa - expected));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {failures == 0 && secs < 10.0 && worst_vs_analytic <= 1e-7,
          std::to_string(grid.size()) + " cases, max abscissa " + fmt(worst) + ", |abscissa - closed form| <= " +
              fmt(worst_vs_analytic) + ", " + fmt(secs) + " s"};
}

Outcome criterion2(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x5eedULL);
  double worst = 0.0, worst_oracle = 0.0;
  for (int k = 0; k < 200; ++k) {
    const std::size_t p = 1 + uniform_index(rng, 6), q = 1 + uniform_index(rng, 6);
    auto fill = [&](std::size_t r, std::size_t c) {
      DenseMatrix m(r, c);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = uniform_real(rng, -2.0, 2.0);
      return m;
    };
    const DenseMatrix a = fill(p, p), b = fill(p, q), d = fill(q, q);
    const auto chk = block_triangular_det_check(a, b, d);
    worst = std::max(worst, chk.residual / std::max(1.0, std::abs(chk.det_m)));
    DenseMatrix m(p + q, p + q);
    m.set_block(0, 0, a);
    m.set_block(0, p, b);
    m.set_block(p, p, d);
    const double ref = test::determinant_full_pivot(m);
    worst_oracle = std::max(worst_oracle, std::abs(chk.det_m - ref) / std::max(1.0, std::abs(ref)));
  }
  return {worst <= 1e-8 && worst_oracle <= 1e-8,
          "200 assemblies, max relative residual " + fmt(worst) + ", vs full-pivot oracle " + fmt(worst_oracle)};
}

Outcome criterion3(const std::vector<GridCase>& grid) {
  std::size_t mismatches = 0;
  for (const auto& c : grid) {
    const std::size_t n = c.graph.node_count();
    const auto chk = quadratic_inertia_check(DenseMatrix::identity(n), degree_matrix(c.graph),
                                    c.alpha * DenseMatrix::identity(n));
    const Inertia expected{0, 0, 2 * n};
    if (!(chk.predicted == expected && chk.observed == expected)) ++mismatches;
  }
  return {mismatches == 0, std::to_string(grid.size()) + " cases, " + std::to_string(mismatches) +
                               " with inertia != (0, 0, 2n)"};
}

Outcome criterion4(const std::vector<GridCase>& grid) {
  double worst = 0.0, worst_analytic = 0.0;
  for (const auto& c : grid) {
    const auto rep = verify_stability(c.graph, c.alpha);
    worst = std::max(worst, rep.decomposition_residual);
    worst_analytic = std::max(worst_analytic, matching_distance(rep.spectrum, make_spectrum(analytic_spectrum(c.graph, c.alpha))));
  }
  return {worst <= 1e-7 && worst_analytic <= 1e-7,
          "max matching distance " + fmt(worst) + ", vs closed-form spectrum " + fmt(worst_analytic)};
}

Outcome criterion5(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0xc0ffeeULL);
  const auto graphs = family_graphs();
  double worst_err = 0.0, worst_mean = 0.0;
  for (const Graph& g : graphs) {
    const Vector x0 = random_vector(rng, g.node_count(), -1.0, 1.0);
    const SimConfig cfg = SimConfig::with_defaults(g, Protocol::Nominal, 1.0, x0);
    const Trajectory traj = simulate(g, cfg, DisturbanceProfile::none(g.node_count()));
    const auto xf = traj.x(traj.size() - 1);
    worst_err = std::max(worst_err, consensus_error(xf));
    worst_mean = std::max(worst_mean, std::abs(mean(xf) - mean(x0)));
  }
  return {worst_err <= 1e-6 && worst_mean <= 1e-6,
          std::to_string(graphs.size()) + " graphs, max consensus error " + fmt(worst_err) +
              ", max |agreement - mean(x0)| " + fmt(worst_mean)};
}

struct AdaptiveRunSummary {
  std::string name;
  double w_hat_error_inf = 0.0;
  double consensus = 0.0;
  double energy_max_increase = 0.0;
  double centroid_tail = 0.0;
  double agreement_error = 0.0;
  double oracle_error = 0.0;  // vs exact propagation, small graphs only
};

// Adaptive runs on the path/cycle/complete family with every agent disturbed,
// alpha = 1, horizon 40/|abscissa|. Shared by criteria 6, 7 and 11.
std::vector<AdaptiveRunSummary> adaptive_family_runs(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0xadaULL);
  const auto graphs = family_graphs();
  std::vector<AdaptiveRunSummary> out;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const Graph& g = graphs[gi];
    const std::size_t n = g.node_count();
    const double alpha = 1.0;
    const Vector x0 = random_vector(rng, n, -1.0, 1.0);
    const DisturbanceProfile w{all_misbehaving(rng, n)};
    const double abscissa = verify_stability(g, alpha).abscissa;
    const double horizon = 40.0 / std::abs(abscissa);
    const Trajectory traj = simulate(g, adaptive(x0, alpha, kDefaultTimeStep, horizon), w);
    const std::size_t last = traj.size() - 1;

    AdaptiveRunSummary s;
    s.name = graph_name(gi);
    const auto wh = traj.w_hat(last);
    for (std::size_t i = 0; i < n; ++i) s.w_hat_error_inf = std::max(s.w_hat_error_inf, std::abs(wh[i] - w.w[i]));
    s.consensus = consensus_error(traj.x(last));
    s.energy_max_increase = check_energy_decay(traj, w, alpha).max_increase;
    const auto ca = centroid_analysis(traj);
    s.centroid_tail = ca.tail_drift;
    for (double v : traj.x(last)) s.agreement_error = std::max(s.agreement_error, std::abs(v - ca.agreement));

    if (n <= 4) {
      // Exact propagation of y = [x, x_hat, w_hat, 1] at a mid-horizon sample.
      const std::size_t k = last / 8;
      const DenseMatrix phi = test::matrix_exponential(test::adaptive_closed_loop(g, alpha, w.w), traj.time(k));
      Vector y0(3 * n + 1, 0.0);
      for (std::size_t i = 0; i < n; ++i) y0[i] = y0[n + i] = x0[i];
      y0[3 * n] = 1.0;
      const Vector y = phi * std::span<const double>(y0);
      const auto st = traj.state(k);
      for (std::size_t i = 0; i < n; ++i) {
        s.oracle_error = std::max({s.oracle_error, std::abs(st.x[i] - y[i]), std::abs(st.x_hat[i] - y[n + i]),
                                   std::abs(st.w_hat[i] - y[2 * n + i])});
      }
    }
    out.push_back(s);
  }
  return out;
}

Outcome criterion6(const std::vector<AdaptiveRunSummary>& runs) {
  double worst_w = 0.0, worst_c = 0.0, worst_oracle = 0.0;
  std::string worst_name;
  for (const auto& r : runs) {
    if (r.w_hat_error_inf > worst_w) worst_name = r.name;
    worst_w = std::max(worst_w, r.w_hat_error_inf);
    worst_c = std::max(worst_c, r.consensus);
    worst_oracle = std::max(worst_oracle, r.oracle_error);
  }
  return {worst_w <= 1e-4 && worst_c <= 1e-4 && worst_oracle <= 1e-8,
          std::to_string(runs.size()) + " runs, max ||w_hat - w||_inf " + fmt(worst_w) + " (" + worst_name +
              "), max consensus error " + fmt(worst_c) + ", vs exact propagation " + fmt(worst_oracle)};
}

Outcome criterion7(const std::vector<AdaptiveRunSummary>& runs, double bound_runs_max_increase, std::uint64_t seed) {
  double worst_increase = bound_runs_max_increase;
  for (const auto& r : runs) worst_increase = std::max(worst_increase, r.energy_max_increase);

  // Richardson: halving dt must cut the derivative residual by ~4.
  std::mt19937_64 rng(seed ^ 0xe7e7ULL);
  double min_ratio = INFINITY, max_ratio = 0.0;
  const auto graphs = family_graphs();
  for (const Graph& g : graphs) {
    const std::size_t n = g.node_count();
    const Vector x0 = random_vector(rng, n, -1.0, 1.0);
    const DisturbanceProfile w{all_misbehaving(rng, n)};
    auto residual = [&](double dt) {
      return check_energy_decay(simulate(g, adaptive(x0, 1.0, dt, 10.0), w), w, 1.0).max_residual;
    };
    const double ratio = residual(0.02) / residual(0.01);
    min_ratio = std::min(min_ratio, ratio);
    max_ratio = std::max(max_ratio, ratio);
  }
  return {worst_increase <= 1e-9 && min_ratio >= 3.5 && max_ratio <= 4.5,
          "max step increase " + fmt(worst_increase) + ", residual ratio dt/(dt/2) in [" + fmt(min_ratio) + ", " +
              fmt(max_ratio) + "]"};
}

struct BoundRuns {
  Outcome outcome;
  double energy_max_increase = 0.0;
};

BoundRuns criterion8(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0xb0b0ULL);
  std::vector<Graph> graphs{path_graph(2), complete_graph(3), cycle_graph(5), path_graph(6), star_graph(5)};
  for (int k = 0; k < 5; ++k) graphs.push_back(random_connected_graph(2 + uniform_index(rng, 9), 0.3, rng));
  double worst_margin = -INFINITY, max_increase = 0.0;
  std::size_t runs = 0;
  bool ok = true;
  for (const Graph& g : graphs) {
    const std::size_t n = g.node_count();
    const Vector x0 = random_vector(rng, n, -1.0, 1.0);
    const DisturbanceProfile w{all_misbehaving(rng, n)};
    for (double alpha : {0.5, 1.0, 2.0, 4.0}) {
      const double horizon = std::min(20.0 / std::abs(verify_stability(g, alpha).abscissa), 200.0);
      const Trajectory traj = simulate(g, adaptive(x0, alpha, kDefaultTimeStep, horizon), w);
      const auto chk = check_perturbation_bound(traj, w, alpha, 1e-9);
      const double bound = norm2(w.w) / std::sqrt(alpha);
      ok = ok && chk.assumptions_met && chk.sup_x_tilde <= bound + 1e-9 && std::abs(chk.bound - bound) <= 1e-15;
      worst_margin = std::max(worst_margin, chk.sup_x_tilde / bound);
      max_increase = std::max(max_increase, check_energy_decay(traj, w, alpha).max_increase);
      ++runs;
    }
  }
  return {{ok, std::to_string(runs) + " runs, max sup||x~|| / (||w||/sqrt(alpha)) = " + fmt(worst_margin)}, max_increase};
}

Outcome criterion9() {
  struct Case {
    std::string name;
    Graph g;
    double alpha;
    Vector x0;
    Vector w;
  };
  const std::vector<Case> cases{
      {"P2 alpha=1", path_graph(2), 1.0, {0.0, 0.0}, {1.0, 0.0}},
      {"K3 alpha=2", complete_graph(3), 2.0, {1.0, 0.0, -2.0}, {0.5, -1.0, 0.25}},
      {"K3 alpha=1", complete_graph(3), 1.0, {1.0, 0.0, -2.0}, {0.5, -1.0, 0.25}},
  };
  bool ok = true;
  std::ostringstream detail;
  for (const auto& c : cases) {
    const double abscissa = verify_stability(c.g, c.alpha).abscissa;
    const DisturbanceProfile w{c.w};
    const Trajectory traj = simulate(c.g, adaptive(c.x0, c.alpha, kDefaultTimeStep, 30.0 / std::abs(abscissa)), w);
    const auto fit = fit_decay_rate(traj, w);
    const double rel = std::abs(fit.rate - abscissa) / std::abs(abscissa);
    ok = ok && rel <= 0.2;
    detail << c.name << ": fit " << fmt(fit.rate) << " vs " << fmt(abscissa) << " (" << fmt(100 * rel) << "%); ";
  }
  std::string d = detail.str();
  d.resize(d.size() - 2);
  return {ok, d};
}

Outcome criterion10() {
  const Graph g = path_graph(2);
  const DisturbanceProfile w{{1.0, -1.0}};
  SimConfig cfg = SimConfig::with_defaults(g, Protocol::Nominal, 1.0, {0.0, 0.0});
  cfg.t_final = 40.0;
  const Trajectory traj = simulate(g, cfg, w);
  double min_err = INFINITY, oracle = 0.0;
  const DenseMatrix a = test::nominal_closed_loop(g, w.w);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    if (traj.time(k) < 5.0) continue;
    min_err = std::min(min_err, consensus_error(traj.x(k)));
    if (k % 5000 == 0) {
      const Vector y = test::matrix_exponential(a, traj.time(k)) * std::span<const double>(Vector{0.0, 0.0, 1.0});
      oracle = std::max({oracle, std::abs(traj.x(k)[0] - y[0]), std::abs(traj.x(k)[1] - y[1])});
    }
  }
  return {min_err >= 0.9 && oracle <= 1e-9,
          "min consensus error over t >= 5: " + fmt(min_err) + ", vs exact propagation " + fmt(oracle)};
}

Outcome criterion11(const std::vector<AdaptiveRunSummary>& runs) {
  double tail = 0.0, agreement = 0.0;
  for (const auto& r : runs) {
    tail = std::max(tail, r.centroid_tail);
    agreement = std::max(agreement, r.agreement_error);
  }
  return {tail <= 1e-6 && agreement <= 1e-5,
          std::to_string(runs.size()) + " runs, max |c(T) - c(T/2)| " + fmt(tail) + ", max |x_i(T) - c(T)/n| " +
              fmt(agreement)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t seed = parse_seed(argc, argv);
  std::cout << "seed: " << seed << std::endl;

  int failed = 0;
  auto report = [&](int id, const std::string& title, const std::function<Outcome()>& run) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << id << "  " << title << ": " << o.detail << std::endl;
  };

  const auto grid = random_grid(seed);
  report(1, "closed-loop matrix is Hurwitz on random graphs", [&] { return criterion1(grid); });
  report(2, "block-triangular determinant factorizes", [&] { return criterion2(seed); });
  report(3, "quadratic pencil inertia is (0, 0, 2n)", [&] { return criterion3(grid); });
  report(4, "spectrum splits into disagreement and error blocks", [&] { return criterion4(grid); });
  report(5, "undisturbed nominal consensus on the average", [&] { return criterion5(seed); });

  std::vector<AdaptiveRunSummary> runs;
  BoundRuns bound_runs;
  report(6, "adaptive protocol recovers all disturbances", [&] {
    runs = adaptive_family_runs(seed);
    return criterion6(runs);
  });
  report(7, "error energy is nonincreasing", [&] {
    bound_runs = criterion8(seed);
    return criterion7(runs, bound_runs.energy_max_increase, seed);
  });
  report(8, "error stays within ||w||/sqrt(alpha)", [&] {
    if (bound_runs.outcome.detail.empty()) bound_runs = criterion8(seed);
    return bound_runs.outcome;
  });
  report(9, "fitted decay rate matches spectral abscissa", criterion9);
  report(10, "nominal protocol keeps a steady disagreement", criterion10);
  report(11, "emulator centroid settles and fixes the agreement", [&] { return criterion11(runs); });

  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
