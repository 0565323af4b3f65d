#include "rescon/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rescon/errors.hpp"

namespace rescon {

namespace {

void require_connected(const Graph& g) {
  if (!is_connected(g)) throw PreconditionError("graph not connected");
}

void require_positive_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw PreconditionError("alpha must be positive, got " + std::to_string(alpha));
  }
}

Spectrum concat(const Spectrum& a, const Spectrum& b) {
  std::vector<std::complex<double>> v = a.values;
  v.insert(v.end(), b.values.begin(), b.values.end());
  return make_spectrum(std::move(v));
}

}  // namespace

AgreementTransform build_transform(std::size_t n) {
  if (n < 2) throw PreconditionError("build_transform: n must be at least 2");
  AgreementTransform out;
  out.t_matrix = DenseMatrix(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    out.t_matrix(i, 0) = 1.0;
    out.t_matrix(i, i + 1) = -1.0;
  }
  for (std::size_t j = 0; j < n; ++j) out.t_matrix(n - 1, j) = 1.0;

  out.t_inverse = LuDecomposition(out.t_matrix).inverse();
  const double err = max_abs_diff(out.t_matrix * out.t_inverse, DenseMatrix::identity(n));
  if (err > 1e-10) throw Error("build_transform: T T^-1 deviates from I by " + std::to_string(err));
  return out;
}

ReducedBlocks reduced_blocks(const Graph& g) {
  require_connected(g);
  const std::size_t n = g.node_count();
  const auto tr = build_transform(n);
  const DenseMatrix transformed = -(tr.t_matrix * laplacian(g) * tr.t_inverse);
  const DenseMatrix ta = tr.t_matrix * adjacency_matrix(g);
  return {transformed.block(0, 0, n - 1, n - 1), ta.block(0, 0, n - 1, n)};
}

DenseMatrix error_block(const Graph& g, double alpha) {
  const std::size_t n = g.node_count();
  DenseMatrix e(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    e(i, i) = -static_cast<double>(g.degree(i));
    e(i, n + i) = -1.0;
    e(n + i, i) = alpha;
  }
  return e;
}

AugmentedSystem build_m(const Graph& g, double alpha) {
  require_positive_alpha(alpha);
  auto blocks = reduced_blocks(g);
  const std::size_t n = g.node_count();

  AugmentedSystem out;
  out.alpha = alpha;
  out.m_matrix = DenseMatrix(3 * n - 1, 3 * n - 1);
  out.m_matrix.set_block(0, 0, blocks.a1);
  out.m_matrix.set_block(0, n - 1, blocks.a2);
  out.m_matrix.set_block(n - 1, n - 1, error_block(g, alpha));
  out.a1 = std::move(blocks.a1);
  out.a2 = std::move(blocks.a2);
  return out;
}

StabilityReport verify_stability(const Graph& g, double alpha, double tol, Precision precision) {
  require_connected(g);
  require_positive_alpha(alpha);
  const std::size_t n = g.node_count();
  const AugmentedSystem sys = build_m(g, alpha);

  StabilityReport rep;
  rep.node_count = n;
  rep.alpha = alpha;
  rep.tol = tol;
  rep.spectrum = eigenvalues(sys.m_matrix, precision);
  rep.abscissa = rep.spectrum.abscissa();
  rep.verdict = rep.abscissa < -tol;

  const Spectrum a1_spec = eigenvalues(sys.a1, precision);
  const Spectrum err_spec = eigenvalues(error_block(g, alpha), precision);
  rep.decomposition_residual = matching_distance(rep.spectrum, concat(a1_spec, err_spec));

  const Spectrum neg_laplacian = eigenvalues(-laplacian(g));
  rep.laplacian_residual = matching_distance(neg_laplacian, concat(a1_spec, make_spectrum({{0.0, 0.0}})));

  rep.pencil_inertia = quadratic_inertia_check(DenseMatrix::identity(n), degree_matrix(g), alpha * DenseMatrix::identity(n));
  return rep;
}

double energy(std::span<const double> x_tilde, std::span<const double> w_tilde, double alpha) {
  require_positive_alpha(alpha);
  double xx = 0.0, ww = 0.0;
  for (double v : x_tilde) xx += v * v;
  for (double v : w_tilde) ww += v * v;
  return 0.5 * xx + ww / (2.0 * alpha);
}

EnergyDecayCheck check_energy_decay(const Trajectory& traj, const DisturbanceProfile& w, double alpha) {
  const ErrorSeries es = error_series(traj, w);
  const auto deg = traj.graph().degrees();
  const std::size_t samples = traj.size();

  EnergyDecayCheck out;
  out.energy.reserve(samples);
  std::vector<double> dissipation(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    const auto xt = es.x_tilde_at(k);
    out.energy.push_back(energy(xt, es.w_tilde_at(k), alpha));
    double q = 0.0;
    for (std::size_t i = 0; i < xt.size(); ++i) q += static_cast<double>(deg[i]) * xt[i] * xt[i];
    dissipation[k] = q;
  }

  out.max_increase = -std::numeric_limits<double>::infinity();
  out.derivative_residual.reserve(samples > 0 ? samples - 1 : 0);
  for (std::size_t k = 0; k + 1 < samples; ++k) {
    const double dt = traj.time(k + 1) - traj.time(k);
    const double de = out.energy[k + 1] - out.energy[k];
    out.max_increase = std::max(out.max_increase, de);
    const double r = std::abs(de / dt + 0.5 * (dissipation[k] + dissipation[k + 1]));
    out.derivative_residual.push_back(r);
    out.max_residual = std::max(out.max_residual, r);
  }
  if (samples < 2) out.max_increase = 0.0;
  return out;
}

PerturbationBoundCheck check_perturbation_bound(const Trajectory& traj, const DisturbanceProfile& w,
                                                double alpha, double slack) {
  require_positive_alpha(alpha);
  const ErrorSeries es = error_series(traj, w);
  PerturbationBoundCheck out;
  for (std::size_t k = 0; k < es.size(); ++k) out.sup_x_tilde = std::max(out.sup_x_tilde, norm2(es.x_tilde_at(k)));
  out.bound = es.size() > 0 ? norm2(es.w_tilde_at(0)) / std::sqrt(alpha) : 0.0;
  out.holds = out.sup_x_tilde <= out.bound + slack;
  if (traj.size() > 0) {
    const auto xt0 = es.x_tilde_at(0);
    const auto wh0 = traj.w_hat(0);
    out.assumptions_met = std::all_of(xt0.begin(), xt0.end(), [](double v) { return v == 0.0; }) &&
                          std::all_of(wh0.begin(), wh0.end(), [](double v) { return v == 0.0; });
  }
  return out;
}

CentroidAnalysis centroid_analysis(const Trajectory& traj) {
  const std::size_t samples = traj.size();
  const std::size_t n = traj.node_count();
  const auto deg = traj.graph().degrees();

  CentroidAnalysis out;
  if (samples == 0) return out;
  out.c_hat.reserve(samples);
  std::vector<double> rate(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    const auto x = traj.x(k), xh = traj.x_hat(k);
    double c = 0.0, s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      c += xh[i];
      s += static_cast<double>(deg[i]) * (x[i] - xh[i]);
    }
    out.c_hat.push_back(c);
    rate[k] = s;
    out.sup_abs = std::max(out.sup_abs, std::abs(c));
  }
  for (std::size_t k = 0; k + 1 < samples; ++k) {
    const double dt = traj.time(k + 1) - traj.time(k);
    const double fd = (out.c_hat[k + 1] - out.c_hat[k]) / dt;
    out.max_derivative_residual = std::max(out.max_derivative_residual, std::abs(fd - 0.5 * (rate[k] + rate[k + 1])));
  }
  out.initial = out.c_hat.front();
  out.final_value = out.c_hat.back();
  out.tail_drift = std::abs(out.c_hat.back() - out.c_hat[(samples - 1) / 2]);
  out.agreement = out.final_value / static_cast<double>(n);
  return out;
}

std::vector<double> xi_norm_series(const Trajectory& traj, const DisturbanceProfile& w) {
  const ErrorSeries es = error_series(traj, w);
  const std::size_t n = traj.node_count();
  std::vector<double> out(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto xh = traj.x_hat(k);
    double s = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
      const double z = xh[0] - xh[i];
      s += z * z;
    }
    for (double v : es.x_tilde_at(k)) s += v * v;
    for (double v : es.w_tilde_at(k)) s += v * v;
    out[k] = std::sqrt(s);
  }
  return out;
}

DecayFit fit_decay_rate(const Trajectory& traj, const DisturbanceProfile& w) {
  const auto norms = xi_norm_series(traj, w);
  if (norms.empty() || norms.front() == 0.0) throw Error("fit_decay_rate: initial error is zero");
  const double lo = 1e-8 * norms.front(), hi = 1e-2 * norms.front();

  DecayFit fit;
  std::vector<double> ts, ys;
  for (std::size_t k = 0; k < norms.size(); ++k) {
    if (norms[k] < lo || norms[k] > hi) continue;
    ts.push_back(traj.time(k));
    ys.push_back(std::log(norms[k]));
  }
  fit.samples = ts.size();
  if (fit.samples < 2) throw Error("fit_decay_rate: decay window is empty (run too short)");
  fit.window_start = ts.front();
  fit.window_end = ts.back();

  const double t_mean = mean(ts), y_mean = mean(ys);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    sxy += (ts[i] - t_mean) * (ys[i] - y_mean);
    sxx += (ts[i] - t_mean) * (ts[i] - t_mean);
  }
  if (sxx <= 0.0) throw Error("fit_decay_rate: decay window is degenerate");
  fit.rate = sxy / sxx;
  return fit;
}

}  // namespace rescon
