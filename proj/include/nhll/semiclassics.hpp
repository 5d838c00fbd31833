// Semiclassical center-of-mass motion m z'' = E_c - i B z' with complex B,
// written in the complex coordinate z = x + i y.
#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "nhll/core.hpp"
#include "nhll/wavepacket.hpp"

namespace nhll {

struct SemiclassicalParams {
  Complex B;
  Complex E_c;  // E_x + i E_y
  double m_eff = 1.0;
  Complex z0;
  Complex v0;

  Complex omega() const { return B / m_eff; }
};

/// Throws std::invalid_argument unless m_eff > 0.
SemiclassicalParams make_semiclassical_params(Complex B, Complex E_c, double m_eff, Complex z0, Complex v0);

/// z(t) = i (v0 / w) exp(-i w t) + (z0 - i v0 / w), w = B / m_eff.
template <typename Real>
std::complex<Real> spiral_position(std::complex<Real> omega, std::complex<Real> z0, std::complex<Real> v0, Real t) {
  const std::complex<Real> i(0, 1);
  return i * (v0 / omega) * std::exp(-i * omega * t) + (z0 - i * v0 / omega);
}

/// z(t) = -i (E/B) t + (i/w)(v0 + i E/B) exp(-i w t) + z0 - (i/w)(v0 + i E/B).
template <typename Real>
std::complex<Real> skipping_position(std::complex<Real> B, std::complex<Real> omega, std::complex<Real> E_c,
                                     std::complex<Real> z0, std::complex<Real> v0, Real t) {
  const std::complex<Real> i(0, 1);
  const std::complex<Real> drift = -i * E_c / B;
  const std::complex<Real> amp = (i / omega) * (v0 + i * E_c / B);
  return drift * t + amp * std::exp(-i * omega * t) + z0 - amp;
}

/// Requires E_c = 0 (std::invalid_argument otherwise).
Eigen::VectorXcd spiral_orbit(const SemiclassicalParams& p, const Eigen::VectorXd& times);

/// Requires B != 0.
Eigen::VectorXcd skipping_orbit(const SemiclassicalParams& p, const Eigen::VectorXd& times);

/// Drift velocity -i E_c / B of the skipping orbit.
Complex drift_velocity(const SemiclassicalParams& p);

struct EomSolution {
  Eigen::VectorXd times;
  Eigen::VectorXcd positions;
};

/// RK4 on the real form m r'' = E + r' x Re(B) z_hat + Im(B) r', sampled every step.
EomSolution integrate_eom(const SemiclassicalParams& p, double t_end, double dt);

/// RK4 on the complex form m z'' = E_c - i B z'.
EomSolution integrate_complex_eom(const SemiclassicalParams& p, double t_end, double dt);

/// RMS distance between the analytic orbit and the numeric trajectory, the
/// latter linearly interpolated to the analytic times (those outside the numeric
/// range are skipped), divided by the mean distance of the analytic orbit from
/// its least-squares straight line. Throws std::invalid_argument if the time
/// ranges do not overlap.
double trajectory_distance(const Eigen::VectorXd& times, const Eigen::VectorXcd& analytic,
                           const Trajectory& numeric);

/// Same metric for two sampled curves on a common time grid.
double trajectory_distance(const Eigen::VectorXd& times, const Eigen::VectorXcd& analytic,
                           const Eigen::VectorXcd& other);

}  // namespace nhll
