// Gaussian wave packets evolved under a (non-Hermitian) lattice Hamiltonian.
#pragma once

#include <vector>

#include <Eigen/Core>

#include "nhll/hofstadter.hpp"

namespace nhll {

/// Unit-norm amplitudes; the physical norm is exp(norm_log).
struct WavePacketState {
  Eigen::VectorXcd amplitudes;
  double time = 0.0;
  double norm_log = 0.0;
};

struct TrajectorySample {
  double t = 0.0;
  double x_c = 0.0;
  double y_c = 0.0;
  double sigma_x = 0.0;
  double sigma_y = 0.0;
  double norm_log = 0.0;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;

  std::size_t size() const { return samples.size(); }
  Eigen::VectorXd times() const;
  /// Center of mass as x_c + i y_c.
  Eigen::VectorXcd positions() const;
  Eigen::VectorXd widths_x() const;
};

/// exp(-|r - center|^2 / (4 sigma^2) + i k0.r), normalized. Throws
/// std::invalid_argument unless the 3 sigma disk around `center` fits inside
/// the lattice.
WavePacketState make_gaussian(const LatticeSpec& lattice, const Eigen::Vector2d& center, double sigma,
                              const Eigen::Vector2d& k0);

struct Moments {
  double x_c = 0.0;
  double y_c = 0.0;
  double sigma_x = 0.0;
  double sigma_y = 0.0;
};

/// First and central second moments of |psi|^2.
Moments observables(const WavePacketState& psi, const LatticeSpec& lattice);

struct PropagateOptions {
  /// RK4 is stable on the imaginary axis up to |lambda dt| = 2 sqrt(2); the
  /// guard stops well below that.
  double stability_limit = 2.5;
  int power_iterations = 50;
  unsigned seed = 12345;  // start vector of the power iteration
};

/// Power-iteration estimate of the spectral radius of (H - shift).
double spectral_radius_estimate(const SparseMatrixC& H, Complex shift, int iterations, unsigned seed = 12345);

/// Fourth-order Runge-Kutta for d psi / dt = -i H psi. The real part of the
/// initial energy is subtracted (a global phase), the state is renormalized
/// after every step and the removed log-norm accumulated. One sample per step,
/// including t = 0.
///
/// Throws std::invalid_argument if dt times the spectral-radius estimate
/// exceeds the stability limit and std::runtime_error on non-finite amplitudes.
Trajectory propagate(const SparseHamiltonian& H, const WavePacketState& psi0, double dt, int steps,
                     const PropagateOptions& options = {});

/// Same as propagate() but also returns the final state.
Trajectory propagate(const SparseHamiltonian& H, const WavePacketState& psi0, double dt, int steps,
                     WavePacketState& final_state, const PropagateOptions& options = {});

/// Largest center-of-mass distance between the runs with dt and dt/2, compared
/// at the common sample times.
double dt_halving_deviation(const SparseHamiltonian& H, const WavePacketState& psi0, double dt, int steps,
                            const PropagateOptions& options = {});

struct EffectiveMassOptions {
  double dt = 0.01;
  double window_fraction = 0.2;  // fit window as a fraction of the edge-arrival time
  double edge_density_limit = 1e-2;
};

struct EffectiveMassResult {
  double m_eff = 0.0;
  double acceleration = 0.0;
  double window = 0.0;
  double edge_density = 0.0;  // largest |psi|^2 weight on boundary sites in the window
};

/// Field-free packet at rest in the lattice center, accelerated by the
/// potential -E x. Fits x_c(t) - x_c(0) = a t^2 / 2 on t <= window_fraction *
/// T_exit and returns m_eff = E / a. T_exit is estimated from band mass 1/2.
///
/// Throws std::runtime_error if the packet reaches the boundary in the window.
EffectiveMassResult measure_effective_mass(const LatticeSpec& lattice, double sigma, double E,
                                           const EffectiveMassOptions& options = {});

/// z(t) = z0 + drift t + c (exp(-i omega t) - 1) with c = i (v0 - drift) / omega.
/// drift = 0 gives the spiral orbit, drift = -i E_c / B the skipping orbit.
struct OrbitFit {
  Complex omega;
  Complex v0;
  Complex z0;
  Complex drift;
  double relative_residual = 0.0;  // rms residual / mean orbit radius
};

/// Nonlinear least squares over complex omega and v0 with z0 fixed to the first
/// sample. Throws std::invalid_argument for fewer than two oscillation periods
/// and std::runtime_error if relative_residual exceeds max_residual.
OrbitFit fit_spiral_parameters(const Trajectory& traj, double max_residual = 0.3);

/// Same fit with a fixed linear drift term.
OrbitFit fit_skipping_parameters(const Trajectory& traj, Complex drift, double max_residual = 0.3);

/// Evaluates the fitted orbit.
Eigen::VectorXcd evaluate_orbit(const OrbitFit& fit, const Eigen::VectorXd& times);

/// Least-squares drift c1 in z = c0 + c1 t + c2 exp(-i omega t).
Complex mean_drift_velocity(const Trajectory& traj, Complex omega);

}  // namespace nhll
