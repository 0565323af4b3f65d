#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rescon/dense_matrix.hpp"
#include "rescon/graph.hpp"

namespace rescon {

enum class Protocol { Nominal, Adaptive };

std::string to_string(Protocol p);
/// Accepts "nominal" or "adaptive"; throws Error otherwise.
Protocol protocol_from_string(const std::string& s);

/// Constant exogenous disturbance per agent. An agent misbehaves when its
/// entry is nonzero.
struct DisturbanceProfile {
  Vector w;

  static DisturbanceProfile none(std::size_t n) { return {Vector(n, 0.0)}; }
  std::size_t size() const noexcept { return w.size(); }
  bool any_misbehaving() const;
};

struct SimState {
  Vector x;
  Vector x_hat;
  Vector w_hat;
  double t = 0.0;
};

inline constexpr double kDefaultTimeStep = 1e-3;

struct SimConfig {
  Protocol protocol = Protocol::Adaptive;
  double alpha = 1.0;
  double dt = kDefaultTimeStep;
  double t_final = 1.0;
  Vector x0;
  Vector x_hat0;
  Vector w_hat0;

  /// Defaults: emulator starts at x0, estimates at zero, dt = 1e-3,
  /// horizon 20 / lambda_2 of the graph.
  static SimConfig with_defaults(const Graph& g, Protocol protocol, double alpha, Vector x0);

  /// Throws Error (invalid config) or DimensionError.
  void validate(std::size_t n) const;
  /// Number of integration steps covering [0, t_final].
  std::size_t step_count() const;
};

/// Uniformly sampled run. Per-sample storage is packed [x | x_hat | w_hat].
class Trajectory {
public:
  Trajectory(Graph graph, SimConfig config);

  void append(double t, std::span<const double> x, std::span<const double> x_hat,
              std::span<const double> w_hat);
  void reserve(std::size_t samples);

  const Graph& graph() const noexcept { return graph_; }
  const SimConfig& config() const noexcept { return config_; }
  std::size_t node_count() const noexcept { return n_; }
  std::size_t size() const noexcept { return times_.size(); }
  const std::vector<double>& times() const noexcept { return times_; }

  double time(std::size_t k) const { return times_[k]; }
  std::span<const double> x(std::size_t k) const { return {packed(k), n_}; }
  std::span<const double> x_hat(std::size_t k) const { return {packed(k) + n_, n_}; }
  std::span<const double> w_hat(std::size_t k) const { return {packed(k) + 2 * n_, n_}; }
  SimState state(std::size_t k) const;

private:
  const double* packed(std::size_t k) const { return data_.data() + k * 3 * n_; }

  Graph graph_;
  SimConfig config_;
  std::size_t n_;
  std::vector<double> times_;
  std::vector<double> data_;
};

/// u = -L x
Vector nominal_control(const Graph& g, std::span<const double> x);
/// u = -L x - w_hat; the estimate enters with a minus sign so that it
/// cancels the disturbance once w_hat = w.
Vector adaptive_control(const Graph& g, std::span<const double> x, std::span<const double> w_hat);
/// d/dt x_hat_i = -d_i x_hat_i + sum_{j ~ i} x_j
Vector emulator_derivative(const Graph& g, std::span<const double> x, std::span<const double> x_hat);

/// Right-hand side of the closed loop:
///   x'     = u + w
///   x_hat' = emulator (Adaptive) or 0 (Nominal)
///   w_hat' = alpha (x - x_hat) (Adaptive) or 0 (Nominal)
/// The returned state holds derivatives; its `t` is copied from `s`.
SimState system_derivative(const Graph& g, const SimConfig& cfg, const DisturbanceProfile& w,
                           const SimState& s);

/// Classical fourth-order Runge-Kutta from t = 0 to step_count() * dt.
/// Throws NumericalError at the first non-finite sample.
Trajectory simulate(const Graph& g, const SimConfig& cfg, const DisturbanceProfile& w);

/// x_tilde = x - x_hat, w_tilde = w_hat - w, packed per sample.
struct ErrorSeries {
  std::size_t n = 0;
  std::vector<double> x_tilde;
  std::vector<double> w_tilde;

  std::size_t size() const noexcept { return n == 0 ? 0 : x_tilde.size() / n; }
  std::span<const double> x_tilde_at(std::size_t k) const { return {x_tilde.data() + k * n, n}; }
  std::span<const double> w_tilde_at(std::size_t k) const { return {w_tilde.data() + k * n, n}; }
};

ErrorSeries error_series(const Trajectory& traj, const DisturbanceProfile& w);

/// max_{i,j} |x_i - x_j|
double consensus_error(std::span<const double> x);

double mean(std::span<const double> x);

}  // namespace rescon
