#include "rescon/report.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "rescon/errors.hpp"

namespace rescon {

namespace {

using ordered_json = nlohmann::ordered_json;

template <typename T>
ordered_json opt(const std::optional<T>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json inertia_json(const Inertia& in) {
  return ordered_json{{"positive", in.positive}, {"zero", in.zero}, {"negative", in.negative}};
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

RunReport make_run_report(const Trajectory& traj, const DisturbanceProfile& w, double consensus_tol,
                          bool emulator_offset) {
  if (traj.size() == 0) throw Error("make_run_report: empty trajectory");
  const SimConfig& cfg = traj.config();
  const std::size_t last = traj.size() - 1;

  RunReport r;
  r.protocol = cfg.protocol;
  r.node_count = traj.node_count();
  r.alpha = cfg.protocol == Protocol::Adaptive ? cfg.alpha : 0.0;
  r.dt = cfg.dt;
  r.t_final = traj.time(last);
  r.consensus_error = consensus_error(traj.x(last));
  r.agreement_value = mean(traj.x(last));
  r.initial_mean = mean(traj.x(0));
  r.consensus_tol = consensus_tol;
  r.consensus_reached = r.consensus_error <= consensus_tol;
  r.emulator_offset = emulator_offset;

  if (cfg.protocol != Protocol::Adaptive) return r;

  const auto wh = traj.w_hat(last);
  Vector diff(wh.size());
  for (std::size_t i = 0; i < wh.size(); ++i) diff[i] = wh[i] - w.w[i];
  r.w_hat_error_2 = norm2(diff);
  r.w_hat_error_inf = norm_inf(diff);

  const auto pb = check_perturbation_bound(traj, w, cfg.alpha);
  r.sup_x_tilde = pb.sup_x_tilde;
  r.perturbation_bound = pb.bound;
  r.bound_holds = pb.holds;
  r.bound_assumptions_met = pb.assumptions_met;

  const auto ed = check_energy_decay(traj, w, cfg.alpha);
  r.energy_max_increase = ed.max_increase;
  r.energy_nonincreasing = ed.nonincreasing();
  r.energy_derivative_residual = ed.max_residual;

  const auto ca = centroid_analysis(traj);
  r.centroid_initial = ca.initial;
  r.centroid_final = ca.final_value;
  r.centroid_drift = std::abs(ca.final_value - ca.initial);
  r.centroid_tail_drift = ca.tail_drift;

  try {
    r.decay_rate = fit_decay_rate(traj, w).rate;
  } catch (const Error& e) {
    r.decay_rate_note = e.what();
  }

  const auto st = verify_stability(traj.graph(), cfg.alpha);
  r.stability_verdict = st.verdict;
  r.spectral_abscissa = st.abscissa;
  return r;
}

std::string to_json_text(const RunReport& r) {
  ordered_json j;
  j["report"] = "run";
  j["protocol"] = to_string(r.protocol);
  j["n"] = r.node_count;
  j["alpha"] = r.protocol == Protocol::Adaptive ? ordered_json(r.alpha) : ordered_json(nullptr);
  j["dt"] = r.dt;
  j["t_final"] = r.t_final;
  j["consensus_error"] = r.consensus_error;
  j["consensus_tol"] = r.consensus_tol;
  j["consensus_reached"] = r.consensus_reached;
  j["agreement_value"] = r.agreement_value;
  j["initial_mean"] = r.initial_mean;
  j["emulator_offset"] = r.emulator_offset;
  j["w_hat_error_2"] = opt(r.w_hat_error_2);
  j["w_hat_error_inf"] = opt(r.w_hat_error_inf);
  j["sup_x_tilde"] = opt(r.sup_x_tilde);
  j["perturbation_bound"] = opt(r.perturbation_bound);
  j["bound_holds"] = opt(r.bound_holds);
  j["bound_assumptions_met"] = opt(r.bound_assumptions_met);
  j["energy_max_increase"] = opt(r.energy_max_increase);
  j["energy_nonincreasing"] = opt(r.energy_nonincreasing);
  j["energy_derivative_residual"] = opt(r.energy_derivative_residual);
  j["centroid_initial"] = opt(r.centroid_initial);
  j["centroid_final"] = opt(r.centroid_final);
  j["centroid_drift"] = opt(r.centroid_drift);
  j["centroid_tail_drift"] = opt(r.centroid_tail_drift);
  j["decay_rate"] = opt(r.decay_rate);
  j["decay_rate_note"] = opt(r.decay_rate_note);
  j["stability_verdict"] = opt(r.stability_verdict);
  j["spectral_abscissa"] = opt(r.spectral_abscissa);
  return j.dump(2);
}

std::string to_json_text(const StabilityReport& r) {
  ordered_json spectrum = ordered_json::array();
  for (const auto& z : r.spectrum.values) spectrum.push_back({z.real(), z.imag()});
  ordered_json j;
  j["report"] = "stability";
  j["n"] = r.node_count;
  j["alpha"] = r.alpha;
  j["tol"] = r.tol;
  j["verdict"] = r.verdict;
  j["spectral_abscissa"] = r.abscissa;
  j["decomposition_residual"] = r.decomposition_residual;
  j["laplacian_residual"] = r.laplacian_residual;
  j["pencil_inertia"] = {{"predicted", inertia_json(r.pencil_inertia.predicted)},
                 {"observed", inertia_json(r.pencil_inertia.observed)},
                 {"match", r.pencil_inertia.matches()}};
  j["spectrum"] = std::move(spectrum);
  return j.dump(2);
}

std::string summary_text(const RunReport& r) {
  std::ostringstream s;
  s << "protocol            " << to_string(r.protocol) << " (n=" << r.node_count;
  if (r.protocol == Protocol::Adaptive) s << ", alpha=" << r.alpha;
  s << ")\n";
  s << "horizon             t=" << r.t_final << " dt=" << r.dt << '\n';
  s << "consensus error     " << r.consensus_error << (r.consensus_reached ? "  (reached)" : "  (NOT reached)") << '\n';
  s << "agreement value     " << r.agreement_value << "  (undisturbed: " << r.initial_mean << ")\n";
  if (r.emulator_offset) s << "note                emulator not initialized at x0; energy bound assumptions do not hold\n";
  if (r.protocol != Protocol::Adaptive) return s.str();
  s << "|w_hat - w|_inf     " << *r.w_hat_error_inf << '\n';
  s << "sup |x_tilde|       " << *r.sup_x_tilde << " <= " << *r.perturbation_bound << " : " << yes_no(*r.bound_holds)
    << '\n';
  s << "energy monotone     " << yes_no(*r.energy_nonincreasing) << " (max step increase " << *r.energy_max_increase
    << ")\n";
  s << "centroid drift      " << *r.centroid_drift << " (tail " << *r.centroid_tail_drift << ")\n";
  if (r.decay_rate) {
    s << "decay rate          " << *r.decay_rate << '\n';
  } else {
    s << "decay rate          n/a (" << r.decay_rate_note.value_or("") << ")\n";
  }
  s << "stability           " << (*r.stability_verdict ? "exponentially stable" : "NOT stable")
    << " (abscissa " << *r.spectral_abscissa << ")\n";
  return s.str();
}

std::string summary_text(const StabilityReport& r) {
  std::ostringstream s;
  s << "n=" << r.node_count << " alpha=" << r.alpha << '\n';
  s << "spectral abscissa   " << r.abscissa << '\n';
  s << "verdict             " << (r.verdict ? "exponentially stable" : "NOT stable") << " (tol " << r.tol << ")\n";
  s << "decomposition       " << r.decomposition_residual << '\n';
  s << "laplacian blocks    " << r.laplacian_residual << '\n';
  s << "quadratic inertia   predicted (" << r.pencil_inertia.predicted.positive << "," << r.pencil_inertia.predicted.zero << ","
    << r.pencil_inertia.predicted.negative << ") observed (" << r.pencil_inertia.observed.positive << "," << r.pencil_inertia.observed.zero
    << "," << r.pencil_inertia.observed.negative << ")\n";
  return s.str();
}

}  // namespace rescon
