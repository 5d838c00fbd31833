#include "nhll/wavepacket.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/QR>

namespace nhll {

namespace {

constexpr Complex kI(0.0, 1.0);

class Rk4Stepper {
 public:
  Rk4Stepper(const SparseMatrixC& H, Complex shift, double dt) : H_(H), shift_(shift), dt_(dt) {}

  // advances psi by one step and renormalizes; returns log of the norm removed
  double step(Eigen::VectorXcd& psi) {
    k1_ = rhs(psi);
    tmp_ = psi + (0.5 * dt_) * k1_;
    k2_ = rhs(tmp_);
    tmp_ = psi + (0.5 * dt_) * k2_;
    k3_ = rhs(tmp_);
    tmp_ = psi + dt_ * k3_;
    k4_ = rhs(tmp_);
    psi += (dt_ / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
    const double norm = psi.norm();
    if (!std::isfinite(norm) || norm == 0.0) {
      throw std::runtime_error("propagate: state became non-finite (time step too large?)");
    }
    psi /= norm;
    return std::log(norm);
  }

 private:
  Eigen::VectorXcd rhs(const Eigen::VectorXcd& v) const { return -kI * (H_ * v - shift_ * v); }

  const SparseMatrixC& H_;
  Complex shift_;
  double dt_;
  Eigen::VectorXcd k1_, k2_, k3_, k4_, tmp_;
};

TrajectorySample sample_of(const WavePacketState& psi, const LatticeSpec& lattice) {
  const Moments m = observables(psi, lattice);
  return {psi.time, m.x_c, m.y_c, m.sigma_x, m.sigma_y, psi.norm_log};
}

Complex initial_shift(const SparseMatrixC& H, const Eigen::VectorXcd& psi) {
  return Complex(psi.dot(H * psi).real(), 0.0);
}

double boundary_weight(const Eigen::VectorXcd& psi, const LatticeSpec& lattice) {
  double w = 0.0;
  for (Index i = 0; i < psi.size(); ++i)
    if (!is_interior_site(lattice, i)) w += std::norm(psi(i));
  return w;
}

// Least-squares c in y = c f for complex vectors.
Complex project(const Eigen::VectorXcd& f, const Eigen::VectorXcd& y) {
  const double ff = f.squaredNorm();
  return ff > 0.0 ? f.dot(y) / ff : Complex(0.0, 0.0);
}

struct OrbitModel {
  Eigen::VectorXd t;
  Eigen::VectorXcd y;  // z - z0 - drift t

  Eigen::VectorXcd basis(Complex omega) const {
    return ((-kI * omega) * t.cast<Complex>()).array().exp() - 1.0;
  }
  Eigen::VectorXcd residual(Complex omega) const {
    const Eigen::VectorXcd f = basis(omega);
    return y - project(f, y) * f;
  }
};

Complex initial_frequency(const OrbitModel& model) {
  // velocity u(t) = -i omega c exp(-i omega t) rotates by exp(-i omega dt) per sample
  const Index n = model.y.size();
  const double dt = model.t(1) - model.t(0);
  const Eigen::VectorXcd u = (model.y.tail(n - 1) - model.y.head(n - 1)) / dt;
  const Complex ratio = u.head(n - 2).dot(u.tail(n - 2)) / u.head(n - 2).squaredNorm();
  return kI * std::log(ratio) / dt;
}

OrbitFit fit_orbit(const Trajectory& traj, Complex drift, double max_residual) {
  if (traj.size() < 8) throw std::invalid_argument("orbit fit: trajectory too short");
  const Eigen::VectorXd t = traj.times();
  const Eigen::VectorXcd z = traj.positions();
  OrbitModel model;
  model.t = (t.array() - t(0)).matrix();
  model.y = (z.array() - z(0)).matrix() - drift * model.t.cast<Complex>();

  Eigen::Vector2d p;
  {
    const Complex w0 = initial_frequency(model);
    p << w0.real(), w0.imag();
  }
  const auto res = [&](const Eigen::Vector2d& q) {
    const Eigen::VectorXcd r = model.residual(Complex(q(0), q(1)));
    Eigen::VectorXd out(2 * r.size());
    out << r.real(), r.imag();
    return out;
  };
  // Levenberg-Marquardt over (Re omega, Im omega); the amplitude is eliminated linearly.
  double lambda = 1e-3;
  Eigen::VectorXd r = res(p);
  double cost = r.squaredNorm();
  for (int iter = 0; iter < 200; ++iter) {
    Eigen::MatrixXd J(r.size(), 2);
    for (int k = 0; k < 2; ++k) {
      const double h = 1e-7 * std::max(1e-3, p.norm());
      Eigen::Vector2d hi = p, lo = p;
      hi(k) += h;
      lo(k) -= h;
      J.col(k) = (res(hi) - res(lo)) / (2.0 * h);
    }
    const Eigen::Matrix2d JtJ = J.transpose() * J;
    const Eigen::Vector2d g = J.transpose() * r;
    bool improved = false;
    for (int tries = 0; tries < 20 && !improved; ++tries) {
      Eigen::Matrix2d A = JtJ;
      A.diagonal() *= (1.0 + lambda);
      const Eigen::Vector2d step = A.ldlt().solve(-g);
      const Eigen::Vector2d trial = p + step;
      const Eigen::VectorXd r_trial = res(trial);
      const double c_trial = r_trial.squaredNorm();
      if (c_trial < cost) {
        const double gain = (cost - c_trial) / std::max(cost, 1e-300);
        p = trial;
        r = r_trial;
        cost = c_trial;
        lambda = std::max(lambda / 3.0, 1e-12);
        improved = true;
        if (gain < 1e-14) iter = 200;
      } else {
        lambda *= 4.0;
      }
    }
    if (!improved) break;
  }

  OrbitFit fit;
  fit.omega = Complex(p(0), p(1));
  fit.z0 = z(0);
  fit.drift = drift;
  const Eigen::VectorXcd f = model.basis(fit.omega);
  const Complex c = project(f, model.y);
  fit.v0 = drift - kI * fit.omega * c;
  const double span = model.t(model.t.size() - 1);
  if (std::abs(fit.omega.real()) * span < 4.0 * std::numbers::pi) {
    std::ostringstream msg;
    msg << "orbit fit: trajectory covers " << std::abs(fit.omega.real()) * span / (2.0 * std::numbers::pi)
        << " periods, need at least 2";
    throw std::invalid_argument(msg.str());
  }
  const Eigen::VectorXcd rc = model.y - c * f;
  const double radius = (c * ((-kI * fit.omega) * model.t.cast<Complex>()).array().exp()).abs().mean();
  fit.relative_residual = std::sqrt(rc.squaredNorm() / double(rc.size())) / radius;
  if (!(fit.relative_residual <= max_residual)) {
    std::ostringstream msg;
    msg << "orbit fit: relative residual " << fit.relative_residual << " above " << max_residual
        << "; trajectory is not spiral-like";
    throw std::runtime_error(msg.str());
  }
  return fit;
}

}  // namespace

Eigen::VectorXd Trajectory::times() const {
  Eigen::VectorXd t(Index(samples.size()));
  for (std::size_t k = 0; k < samples.size(); ++k) t(Index(k)) = samples[k].t;
  return t;
}

Eigen::VectorXcd Trajectory::positions() const {
  Eigen::VectorXcd z(Index(samples.size()));
  for (std::size_t k = 0; k < samples.size(); ++k) z(Index(k)) = Complex(samples[k].x_c, samples[k].y_c);
  return z;
}

Eigen::VectorXd Trajectory::widths_x() const {
  Eigen::VectorXd w(Index(samples.size()));
  for (std::size_t k = 0; k < samples.size(); ++k) w(Index(k)) = samples[k].sigma_x;
  return w;
}

WavePacketState make_gaussian(const LatticeSpec& lattice, const Eigen::Vector2d& center, double sigma,
                              const Eigen::Vector2d& k0) {
  if (!(sigma > 0.0)) throw std::invalid_argument("make_gaussian: sigma must be positive");
  const double hx = 0.5 * (lattice.nx - 1);
  const double hy = 0.5 * (lattice.ny - 1);
  if (std::abs(center.x()) + 3.0 * sigma > hx + 1e-12 || std::abs(center.y()) + 3.0 * sigma > hy + 1e-12) {
    std::ostringstream msg;
    msg << "make_gaussian: packet of width " << sigma << " at (" << center.x() << ", " << center.y()
        << ") overflows the " << lattice.nx << "x" << lattice.ny << " lattice (3 sigma must fit)";
    throw std::invalid_argument(msg.str());
  }
  WavePacketState psi;
  psi.amplitudes.resize(lattice.size());
  for (Index i = 0; i < lattice.size(); ++i) {
    const Eigen::Vector2d r = site_coordinates(lattice, i);
    psi.amplitudes(i) = std::exp(Complex(-(r - center).squaredNorm() / (4.0 * sigma * sigma), k0.dot(r)));
  }
  psi.amplitudes.normalize();
  return psi;
}

Moments observables(const WavePacketState& psi, const LatticeSpec& lattice) {
  const Eigen::ArrayXd rho = psi.amplitudes.cwiseAbs2().array() / psi.amplitudes.squaredNorm();
  const Eigen::Matrix2Xd r = all_site_coordinates(lattice);
  const Eigen::ArrayXd x = r.row(0).transpose().array();
  const Eigen::ArrayXd y = r.row(1).transpose().array();
  Moments m;
  m.x_c = (rho * x).sum();
  m.y_c = (rho * y).sum();
  m.sigma_x = std::sqrt(std::max(0.0, (rho * (x - m.x_c).square()).sum()));
  m.sigma_y = std::sqrt(std::max(0.0, (rho * (y - m.y_c).square()).sum()));
  return m;
}

double spectral_radius_estimate(const SparseMatrixC& H, Complex shift, int iterations, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd v(H.rows());
  for (Index i = 0; i < v.size(); ++i) v(i) = Complex(gauss(rng), gauss(rng));
  v.normalize();
  double estimate = 0.0;
  for (int k = 0; k < iterations; ++k) {
    Eigen::VectorXcd w = H * v - shift * v;
    estimate = w.norm();
    if (estimate == 0.0) return 0.0;
    v = w / estimate;
  }
  return estimate;
}

Trajectory propagate(const SparseHamiltonian& H, const WavePacketState& psi0, double dt, int steps,
                     WavePacketState& final_state, const PropagateOptions& options) {
  if (!(dt > 0.0) || steps < 0) throw std::invalid_argument("propagate: need dt > 0 and steps >= 0");
  if (psi0.amplitudes.size() != H.dimension()) throw std::invalid_argument("propagate: state dimension mismatch");
  WavePacketState psi = psi0;
  psi.amplitudes.normalize();
  const Complex shift = initial_shift(H.matrix, psi.amplitudes);
  // the power iteration can undershoot by a small factor; 1.1 covers that
  const double rho = 1.1 * spectral_radius_estimate(H.matrix, shift, options.power_iterations, options.seed);
  if (rho * dt > options.stability_limit) {
    std::ostringstream msg;
    msg << "propagate: dt = " << dt << " exceeds the RK4 stability bound " << options.stability_limit / rho
        << " (spectral radius ~ " << rho << ")";
    throw std::invalid_argument(msg.str());
  }
  Trajectory traj;
  traj.samples.reserve(std::size_t(steps) + 1);
  traj.samples.push_back(sample_of(psi, H.lattice));
  Rk4Stepper stepper(H.matrix, shift, dt);
  const double t0 = psi.time;
  for (int s = 1; s <= steps; ++s) {
    psi.norm_log += stepper.step(psi.amplitudes);
    psi.time = t0 + s * dt;
    traj.samples.push_back(sample_of(psi, H.lattice));
  }
  final_state = std::move(psi);
  return traj;
}

Trajectory propagate(const SparseHamiltonian& H, const WavePacketState& psi0, double dt, int steps,
                     const PropagateOptions& options) {
  WavePacketState final_state;
  return propagate(H, psi0, dt, steps, final_state, options);
}

double dt_halving_deviation(const SparseHamiltonian& H, const WavePacketState& psi0, double dt, int steps,
                            const PropagateOptions& options) {
  const Trajectory coarse = propagate(H, psi0, dt, steps, options);
  const Trajectory fine = propagate(H, psi0, dt / 2.0, 2 * steps, options);
  double worst = 0.0;
  for (std::size_t k = 0; k < coarse.size(); ++k) {
    const auto& a = coarse.samples[k];
    const auto& b = fine.samples[2 * k];
    worst = std::max(worst, std::hypot(a.x_c - b.x_c, a.y_c - b.y_c));
  }
  return worst;
}

EffectiveMassResult measure_effective_mass(const LatticeSpec& lattice, double sigma, double E,
                                           const EffectiveMassOptions& options) {
  if (!(E > 0.0)) throw std::invalid_argument("measure_effective_mass: E must be positive");
  const FieldConfig field = make_field_free_config(Eigen::Vector2d(E, 0.0));
  const SparseHamiltonian H = build_hamiltonian(field, lattice);
  WavePacketState psi = make_gaussian(lattice, Eigen::Vector2d::Zero(), sigma, Eigen::Vector2d::Zero());

  // distance to the edge available to the 3 sigma tail, traversed at a = 2E
  const double room = std::max(0.5 * (lattice.nx - 1) - 3.0 * sigma, 0.5);
  const double t_exit = std::sqrt(2.0 * room * 0.5 / E);
  EffectiveMassResult result;
  result.window = options.window_fraction * t_exit;
  const int steps = int(std::ceil(result.window / options.dt));
  if (steps < 10) throw std::invalid_argument("measure_effective_mass: fit window shorter than 10 time steps");

  const Complex shift = initial_shift(H.matrix, psi.amplitudes);
  Rk4Stepper stepper(H.matrix, shift, options.dt);
  const double x0 = observables(psi, lattice).x_c;
  double num = 0.0, den = 0.0;
  result.edge_density = boundary_weight(psi.amplitudes, lattice);
  for (int s = 1; s <= steps; ++s) {
    stepper.step(psi.amplitudes);
    const double t = s * options.dt;
    const double q = 0.5 * t * t;
    num += q * (observables(psi, lattice).x_c - x0);
    den += q * q;
    result.edge_density = std::max(result.edge_density, boundary_weight(psi.amplitudes, lattice));
  }
  if (result.edge_density > options.edge_density_limit) {
    std::ostringstream msg;
    msg << "measure_effective_mass: packet reaches the boundary (edge weight " << result.edge_density << ")";
    throw std::runtime_error(msg.str());
  }
  result.acceleration = num / den;
  result.m_eff = E / result.acceleration;
  return result;
}

OrbitFit fit_spiral_parameters(const Trajectory& traj, double max_residual) {
  return fit_orbit(traj, Complex(0.0, 0.0), max_residual);
}

OrbitFit fit_skipping_parameters(const Trajectory& traj, Complex drift, double max_residual) {
  return fit_orbit(traj, drift, max_residual);
}

Eigen::VectorXcd evaluate_orbit(const OrbitFit& fit, const Eigen::VectorXd& times) {
  const Complex c = kI * (fit.v0 - fit.drift) / fit.omega;
  Eigen::VectorXcd z(times.size());
  for (Index k = 0; k < times.size(); ++k) {
    const double t = times(k) - times(0);
    z(k) = fit.z0 + fit.drift * t + c * (std::exp(-kI * fit.omega * t) - 1.0);
  }
  return z;
}

Complex mean_drift_velocity(const Trajectory& traj, Complex omega) {
  const Eigen::VectorXd t = traj.times();
  const Eigen::VectorXcd z = traj.positions();
  Eigen::MatrixXcd A(t.size(), 3);
  A.col(0).setOnes();
  A.col(1) = t.cast<Complex>();
  A.col(2) = ((-kI * omega) * t.cast<Complex>()).array().exp();
  const Eigen::VectorXcd c = A.colPivHouseholderQr().solve(z);
  return c(1);
}

}  // namespace nhll
