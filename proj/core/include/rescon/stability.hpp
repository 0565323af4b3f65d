#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rescon/dense_matrix.hpp"
#include "rescon/dynamics.hpp"
#include "rescon/graph.hpp"
#include "rescon/spectral.hpp"

namespace rescon {

/// Change of emulator coordinates y = T x_hat: rows 0..n-2 give the
/// disagreements x_hat_0 - x_hat_i (i = 1..n-1), the last row the centroid
/// sum of x_hat.
struct AgreementTransform {
  DenseMatrix t_matrix;
  DenseMatrix t_inverse;
};

/// Throws PreconditionError for n < 2, Error if T T^-1 misses I by > 1e-10.
AgreementTransform build_transform(std::size_t n);

/// Disagreement dynamics z' = a1 z + a2 x_tilde.
struct ReducedBlocks {
  DenseMatrix a1;  ///< leading (n-1)x(n-1) block of -T L T^-1
  DenseMatrix a2;  ///< first n-1 rows of T A, (n-1) x n
};

ReducedBlocks reduced_blocks(const Graph& g);

/// [[-D, -I], [alpha I, 0]], the (x_tilde, w_tilde) error dynamics.
DenseMatrix error_block(const Graph& g, double alpha);

/// xi' = M xi with xi = (z, x_tilde, w_tilde) of dimension 3n-1 and
///
///   M = [ a1  a2        0  ]
///       [ 0   -D       -I  ]
///       [ 0   alpha I   0  ]
struct AugmentedSystem {
  DenseMatrix m_matrix;
  DenseMatrix a1;
  DenseMatrix a2;
  double alpha = 0.0;
};

AugmentedSystem build_m(const Graph& g, double alpha);

inline constexpr double kSpectralTolerance = 1e-8;

struct StabilityReport {
  std::size_t node_count = 0;
  double alpha = 0.0;
  double tol = kSpectralTolerance;
  Spectrum spectrum;  ///< spec(M)
  double abscissa = 0.0;
  bool verdict = false;  ///< abscissa < -tol
  /// Bottleneck matching distance between spec(M) and spec(a1) + spec(error block).
  double decomposition_residual = 0.0;
  /// Bottleneck distance between spec(a1) + {0} and spec(-L).
  double laplacian_residual = 0.0;
  /// Z(s) = s^2 I + s D + alpha I.
  QuadraticInertiaCheck pencil_inertia;
};

/// Spectral check of exponential stability for the closed loop on `g`.
/// Spectra of M and its blocks are computed at `precision`; defective
/// eigenvalues (e.g. degree 2 with alpha = 1) need Extended to resolve the
/// decomposition below 1e-7. Throws PreconditionError when g is
/// disconnected or alpha <= 0.
StabilityReport verify_stability(const Graph& g, double alpha, double tol = kSpectralTolerance,
                               Precision precision = Precision::Extended);

/// E = x~'x~ / 2 + w~'w~ / (2 alpha)
double energy(std::span<const double> x_tilde, std::span<const double> w_tilde, double alpha);

struct EnergyDecayCheck {
  std::vector<double> energy;
  /// max_k E(t_{k+1}) - E(t_k); <= 0 for monotone decay.
  double max_increase = 0.0;
  /// |(E_{k+1} - E_k)/dt + (q_k + q_{k+1})/2| with q = x~' D x~, one per step.
  std::vector<double> derivative_residual;
  double max_residual = 0.0;

  bool nonincreasing(double slack = 1e-9) const noexcept { return max_increase <= slack; }
};

EnergyDecayCheck check_energy_decay(const Trajectory& traj, const DisturbanceProfile& w, double alpha);

struct PerturbationBoundCheck {
  double sup_x_tilde = 0.0;  ///< max over samples of ||x~(t)||_2
  double bound = 0.0;        ///< ||w~(0)||_2 / sqrt(alpha)
  bool holds = false;        ///< sup <= bound + slack
  /// x~(0) = 0 and w_hat(0) = 0; the bound is derived under these. When
  /// false the result is reported but should not be read as a violation.
  bool assumptions_met = false;
};

PerturbationBoundCheck check_perturbation_bound(const Trajectory& traj, const DisturbanceProfile& w,
                                                double alpha, double slack = 1e-9);

struct CentroidAnalysis {
  std::vector<double> c_hat;  ///< sum of emulator states per sample
  double initial = 0.0;
  double final_value = 0.0;
  double sup_abs = 0.0;
  /// max_k |(c_{k+1} - c_k)/dt - (s_k + s_{k+1})/2| with s = sum_i d_i x~_i
  double max_derivative_residual = 0.0;
  /// |c(T) - c(T/2)|
  double tail_drift = 0.0;
  /// c(T) / n
  double agreement = 0.0;
};

CentroidAnalysis centroid_analysis(const Trajectory& traj);

/// ||xi(t)|| per sample with xi = (z, x~, w~).
std::vector<double> xi_norm_series(const Trajectory& traj, const DisturbanceProfile& w);

struct DecayFit {
  double rate = 0.0;  ///< least-squares slope of log ||xi||
  std::size_t samples = 0;
  double window_start = 0.0;
  double window_end = 0.0;
};

/// Fits over samples with ||xi|| in [1e-8, 1e-2] * ||xi(0)||. Throws Error
/// when fewer than two samples fall in the window.
DecayFit fit_decay_rate(const Trajectory& traj, const DisturbanceProfile& w);

}  // namespace rescon
