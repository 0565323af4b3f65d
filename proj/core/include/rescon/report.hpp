#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "rescon/dynamics.hpp"
#include "rescon/stability.hpp"

namespace rescon {

inline constexpr double kDefaultConsensusTolerance = 1e-6;

/// Summary of one simulated run. Fields that only make sense for the
/// adaptive protocol are empty for nominal runs and serialize as null.
struct RunReport {
  Protocol protocol = Protocol::Adaptive;
  std::size_t node_count = 0;
  double alpha = 0.0;
  double dt = 0.0;
  double t_final = 0.0;

  double consensus_error = 0.0;  ///< at the last sample
  double agreement_value = 0.0;  ///< mean of x at the last sample
  double initial_mean = 0.0;     ///< mean of x0, the undisturbed agreement
  double consensus_tol = kDefaultConsensusTolerance;
  bool consensus_reached = false;
  bool emulator_offset = false;  ///< x_hat(0) != x(0)

  std::optional<double> w_hat_error_2;    ///< ||w_hat(T) - w||_2
  std::optional<double> w_hat_error_inf;  ///< ||w_hat(T) - w||_inf
  std::optional<double> sup_x_tilde;
  std::optional<double> perturbation_bound;
  std::optional<bool> bound_holds;
  std::optional<bool> bound_assumptions_met;
  std::optional<double> energy_max_increase;
  std::optional<bool> energy_nonincreasing;
  std::optional<double> energy_derivative_residual;
  std::optional<double> centroid_initial;
  std::optional<double> centroid_final;
  std::optional<double> centroid_drift;       ///< |c(T) - c(0)|
  std::optional<double> centroid_tail_drift;  ///< |c(T) - c(T/2)|
  std::optional<double> decay_rate;
  std::optional<std::string> decay_rate_note;
  std::optional<bool> stability_verdict;
  std::optional<double> spectral_abscissa;
};

RunReport make_run_report(const Trajectory& traj, const DisturbanceProfile& w,
                          double consensus_tol = kDefaultConsensusTolerance, bool emulator_offset = false);

/// Pretty-printed JSON; field order is fixed so equal reports print equal.
std::string to_json_text(const RunReport& r);
std::string to_json_text(const StabilityReport& r);
std::string summary_text(const RunReport& r);
std::string summary_text(const StabilityReport& r);

}  // namespace rescon
