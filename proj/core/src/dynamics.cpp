#include "rescon/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rescon/errors.hpp"

namespace rescon {

namespace {

void require_length(std::span<const double> v, std::size_t n, const char* what) {
  if (v.size() != n) {
    throw DimensionError(std::string(what) + ": expected length " + std::to_string(n) + ", got " +
                         std::to_string(v.size()));
  }
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

std::string to_string(Protocol p) { return p == Protocol::Nominal ? "nominal" : "adaptive"; }

Protocol protocol_from_string(const std::string& s) {
  if (s == "nominal") return Protocol::Nominal;
  if (s == "adaptive") return Protocol::Adaptive;
  throw Error("unknown protocol '" + s + "' (expected 'nominal' or 'adaptive')");
}

bool DisturbanceProfile::any_misbehaving() const {
  return std::any_of(w.begin(), w.end(), [](double v) { return v != 0.0; });
}

SimConfig SimConfig::with_defaults(const Graph& g, Protocol protocol, double alpha, Vector x0) {
  SimConfig cfg;
  cfg.protocol = protocol;
  cfg.alpha = alpha;
  cfg.dt = kDefaultTimeStep;
  cfg.t_final = 20.0 / algebraic_connectivity(g);
  const std::size_t n = g.node_count();
  cfg.x_hat0 = protocol == Protocol::Adaptive ? x0 : Vector(n, 0.0);
  cfg.w_hat0 = Vector(n, 0.0);
  cfg.x0 = std::move(x0);
  return cfg;
}

void SimConfig::validate(std::size_t n) const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error("invalid config: dt must be positive");
  if (!(t_final >= dt) || !std::isfinite(t_final)) throw Error("invalid config: t_final must be >= dt");
  if (protocol == Protocol::Adaptive && !(alpha > 0.0 && std::isfinite(alpha))) {
    throw Error("invalid config: alpha must be positive for the adaptive protocol");
  }
  require_length(x0, n, "x0");
  require_length(x_hat0, n, "x_hat0");
  require_length(w_hat0, n, "w_hat0");
  if (!all_finite(x0) || !all_finite(x_hat0) || !all_finite(w_hat0)) {
    throw Error("invalid config: initial conditions must be finite");
  }
}

std::size_t SimConfig::step_count() const {
  const double ratio = t_final / dt;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(ratio - 1e-9)));
}

Trajectory::Trajectory(Graph graph, SimConfig config)
    : graph_(std::move(graph)), config_(std::move(config)), n_(graph_.node_count()) {}

void Trajectory::reserve(std::size_t samples) {
  times_.reserve(samples);
  data_.reserve(samples * 3 * n_);
}

void Trajectory::append(double t, std::span<const double> x, std::span<const double> x_hat,
                        std::span<const double> w_hat) {
  require_length(x, n_, "Trajectory::append(x)");
  require_length(x_hat, n_, "Trajectory::append(x_hat)");
  require_length(w_hat, n_, "Trajectory::append(w_hat)");
  times_.push_back(t);
  data_.insert(data_.end(), x.begin(), x.end());
  data_.insert(data_.end(), x_hat.begin(), x_hat.end());
  data_.insert(data_.end(), w_hat.begin(), w_hat.end());
}

SimState Trajectory::state(std::size_t k) const {
  const auto xs = x(k), xh = x_hat(k), wh = w_hat(k);
  return SimState{Vector(xs.begin(), xs.end()), Vector(xh.begin(), xh.end()), Vector(wh.begin(), wh.end()),
                  times_[k]};
}

Vector nominal_control(const Graph& g, std::span<const double> x) {
  require_length(x, g.node_count(), "nominal_control");
  Vector u(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double s = 0.0;
    for (std::size_t j : g.neighbors(i)) s += x[i] - x[j];
    u[i] = -s;
  }
  return u;
}

Vector adaptive_control(const Graph& g, std::span<const double> x, std::span<const double> w_hat) {
  require_length(w_hat, g.node_count(), "adaptive_control(w_hat)");
  Vector u = nominal_control(g, x);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] -= w_hat[i];
  return u;
}

Vector emulator_derivative(const Graph& g, std::span<const double> x, std::span<const double> x_hat) {
  const std::size_t n = g.node_count();
  require_length(x, n, "emulator_derivative(x)");
  require_length(x_hat, n, "emulator_derivative(x_hat)");
  Vector d(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = -static_cast<double>(g.degree(i)) * x_hat[i];
    for (std::size_t j : g.neighbors(i)) s += x[j];
    d[i] = s;
  }
  return d;
}

SimState system_derivative(const Graph& g, const SimConfig& cfg, const DisturbanceProfile& w,
                           const SimState& s) {
  const std::size_t n = g.node_count();
  require_length(w.w, n, "system_derivative(w)");
  require_length(s.x, n, "system_derivative(x)");
  require_length(s.x_hat, n, "system_derivative(x_hat)");
  require_length(s.w_hat, n, "system_derivative(w_hat)");
  if (!all_finite(s.x) || !all_finite(s.x_hat) || !all_finite(s.w_hat)) {
    throw NumericalError(s.t, "system_derivative: non-finite state");
  }

  SimState d;
  d.t = s.t;
  if (cfg.protocol == Protocol::Nominal) {
    d.x = nominal_control(g, s.x);
    for (std::size_t i = 0; i < n; ++i) d.x[i] += w.w[i];
    d.x_hat.assign(n, 0.0);
    d.w_hat.assign(n, 0.0);
    return d;
  }
  d.x = adaptive_control(g, s.x, s.w_hat);
  for (std::size_t i = 0; i < n; ++i) d.x[i] += w.w[i];
  d.x_hat = emulator_derivative(g, s.x, s.x_hat);
  d.w_hat.resize(n);
  for (std::size_t i = 0; i < n; ++i) d.w_hat[i] = cfg.alpha * (s.x[i] - s.x_hat[i]);
  return d;
}

namespace {

// Packed right-hand side on y = [x | x_hat | w_hat], no allocation.
class PackedSystem {
public:
  PackedSystem(const Graph& g, const SimConfig& cfg, const DisturbanceProfile& w)
      : g_(g), cfg_(cfg), w_(w.w), n_(g.node_count()) {}

  void operator()(std::span<const double> y, std::span<double> dy) const {
    const double* x = y.data();
    const double* xh = x + n_;
    const double* wh = xh + n_;
    double* dx = dy.data();
    double* dxh = dx + n_;
    double* dwh = dxh + n_;
    const bool adaptive = cfg_.protocol == Protocol::Adaptive;
    for (std::size_t i = 0; i < n_; ++i) {
      double lap = 0.0, nb = 0.0;
      for (std::size_t j : g_.neighbors(i)) {
        lap += x[i] - x[j];
        nb += x[j];
      }
      if (adaptive) {
        dx[i] = -lap - wh[i] + w_[i];
        dxh[i] = -static_cast<double>(g_.degree(i)) * xh[i] + nb;
        dwh[i] = cfg_.alpha * (x[i] - xh[i]);
      } else {
        dx[i] = -lap + w_[i];
        dxh[i] = 0.0;
        dwh[i] = 0.0;
      }
    }
  }

private:
  const Graph& g_;
  const SimConfig& cfg_;
  const Vector& w_;
  std::size_t n_;
};

}  // namespace

Trajectory simulate(const Graph& g, const SimConfig& cfg, const DisturbanceProfile& w) {
  const std::size_t n = g.node_count();
  cfg.validate(n);
  require_length(w.w, n, "simulate(w)");
  if (!all_finite(w.w)) throw Error("invalid disturbance: entries must be finite");
  if (!is_connected(g)) throw PreconditionError("graph not connected");

  const std::size_t steps = cfg.step_count();
  const std::size_t dim = 3 * n;
  const double dt = cfg.dt;

  Vector y(dim), k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
  std::copy(cfg.x0.begin(), cfg.x0.end(), y.begin());
  if (cfg.protocol == Protocol::Adaptive) {
    std::copy(cfg.x_hat0.begin(), cfg.x_hat0.end(), y.begin() + n);
    std::copy(cfg.w_hat0.begin(), cfg.w_hat0.end(), y.begin() + 2 * n);
  }

  Trajectory traj(g, cfg);
  traj.reserve(steps + 1);
  const std::span<const double> ys(y);
  traj.append(0.0, ys.subspan(0, n), ys.subspan(n, n), ys.subspan(2 * n, n));

  const PackedSystem f(g, cfg, w);
  for (std::size_t k = 1; k <= steps; ++k) {
    f(y, k1);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
    f(tmp, k2);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
    f(tmp, k3);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + dt * k3[i];
    f(tmp, k4);
    for (std::size_t i = 0; i < dim; ++i) y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

    const double t = static_cast<double>(k) * dt;
    if (!all_finite(y)) {
      std::ostringstream msg;
      msg << "numerical blow-up: non-finite state at t=" << t;
      throw NumericalError(t, msg.str());
    }
    traj.append(t, ys.subspan(0, n), ys.subspan(n, n), ys.subspan(2 * n, n));
  }
  return traj;
}

ErrorSeries error_series(const Trajectory& traj, const DisturbanceProfile& w) {
  const std::size_t n = traj.node_count();
  require_length(w.w, n, "error_series(w)");
  ErrorSeries out;
  out.n = n;
  out.x_tilde.reserve(traj.size() * n);
  out.w_tilde.reserve(traj.size() * n);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto x = traj.x(k), xh = traj.x_hat(k), wh = traj.w_hat(k);
    for (std::size_t i = 0; i < n; ++i) {
      out.x_tilde.push_back(x[i] - xh[i]);
      out.w_tilde.push_back(wh[i] - w.w[i]);
    }
  }
  return out;
}

double consensus_error(std::span<const double> x) {
  if (x.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  return *hi - *lo;
}

double mean(std::span<const double> x) {
  if (x.empty()) return 0.0;
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

}  // namespace rescon
