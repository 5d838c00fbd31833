#include "nhll/semiclassics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/QR>

namespace nhll {

namespace {

constexpr Complex kI(0.0, 1.0);

template <typename State, typename Rhs>
State rk4_step(const State& s, double dt, Rhs rhs) {
  const State k1 = rhs(s);
  const State k2 = rhs(State(s + 0.5 * dt * k1));
  const State k3 = rhs(State(s + 0.5 * dt * k2));
  const State k4 = rhs(State(s + dt * k3));
  return s + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

int step_count(double t_end, double dt) {
  if (!(dt > 0.0) || !(t_end >= 0.0)) throw std::invalid_argument("integrate_eom: need dt > 0 and t_end >= 0");
  return int(std::llround(t_end / dt));
}

}  // namespace

SemiclassicalParams make_semiclassical_params(Complex B, Complex E_c, double m_eff, Complex z0, Complex v0) {
  if (!(m_eff > 0.0)) throw std::invalid_argument("semiclassical params: m_eff must be positive");
  return SemiclassicalParams{B, E_c, m_eff, z0, v0};
}

Eigen::VectorXcd spiral_orbit(const SemiclassicalParams& p, const Eigen::VectorXd& times) {
  if (p.E_c != Complex(0.0, 0.0)) throw std::invalid_argument("spiral_orbit: requires E_c = 0");
  if (p.B == Complex(0.0, 0.0)) throw std::invalid_argument("spiral_orbit: requires B != 0");
  Eigen::VectorXcd z(times.size());
  for (Index k = 0; k < times.size(); ++k) z(k) = spiral_position(p.omega(), p.z0, p.v0, times(k));
  return z;
}

Eigen::VectorXcd skipping_orbit(const SemiclassicalParams& p, const Eigen::VectorXd& times) {
  if (p.B == Complex(0.0, 0.0)) throw std::invalid_argument("skipping_orbit: requires B != 0");
  Eigen::VectorXcd z(times.size());
  for (Index k = 0; k < times.size(); ++k) z(k) = skipping_position(p.B, p.omega(), p.E_c, p.z0, p.v0, times(k));
  return z;
}

Complex drift_velocity(const SemiclassicalParams& p) {
  if (p.B == Complex(0.0, 0.0)) throw std::invalid_argument("drift_velocity: requires B != 0");
  return -kI * p.E_c / p.B;
}

EomSolution integrate_eom(const SemiclassicalParams& p, double t_end, double dt) {
  const int steps = step_count(t_end, dt);
  const double br = p.B.real(), bi = p.B.imag();
  const double ex = p.E_c.real(), ey = p.E_c.imag();
  const double m = p.m_eff;
  // (x, y, vx, vy); v x (Re B z_hat) = Re B (vy, -vx)
  const auto rhs = [&](const Eigen::Vector4d& s) {
    Eigen::Vector4d d;
    d << s(2), s(3), (ex + br * s(3) + bi * s(2)) / m, (ey - br * s(2) + bi * s(3)) / m;
    return d;
  };
  Eigen::Vector4d s(p.z0.real(), p.z0.imag(), p.v0.real(), p.v0.imag());
  EomSolution out;
  out.times.resize(steps + 1);
  out.positions.resize(steps + 1);
  out.times(0) = 0.0;
  out.positions(0) = p.z0;
  for (int k = 1; k <= steps; ++k) {
    s = rk4_step(s, dt, rhs);
    out.times(k) = k * dt;
    out.positions(k) = Complex(s(0), s(1));
  }
  return out;
}

EomSolution integrate_complex_eom(const SemiclassicalParams& p, double t_end, double dt) {
  const int steps = step_count(t_end, dt);
  const auto rhs = [&](const Eigen::Vector2cd& s) {
    Eigen::Vector2cd d;
    d << s(1), (p.E_c - kI * p.B * s(1)) / p.m_eff;
    return d;
  };
  Eigen::Vector2cd s(p.z0, p.v0);
  EomSolution out;
  out.times.resize(steps + 1);
  out.positions.resize(steps + 1);
  out.times(0) = 0.0;
  out.positions(0) = p.z0;
  for (int k = 1; k <= steps; ++k) {
    s = rk4_step(s, dt, rhs);
    out.times(k) = k * dt;
    out.positions(k) = s(0);
  }
  return out;
}

double trajectory_distance(const Eigen::VectorXd& times, const Eigen::VectorXcd& analytic,
                           const Eigen::VectorXcd& other) {
  if (times.size() != analytic.size() || times.size() != other.size() || times.size() < 3) {
    throw std::invalid_argument("trajectory_distance: need matching samples (at least 3)");
  }
  Eigen::MatrixXcd A(times.size(), 2);
  A.col(0).setOnes();
  A.col(1) = times.cast<Complex>();
  const Eigen::VectorXcd line = A * A.colPivHouseholderQr().solve(analytic);
  const double radius = (analytic - line).cwiseAbs().mean();
  if (!(radius > 0.0)) throw std::invalid_argument("trajectory_distance: analytic orbit is a straight line");
  const double rms = std::sqrt((analytic - other).squaredNorm() / double(times.size()));
  return rms / radius;
}

double trajectory_distance(const Eigen::VectorXd& times, const Eigen::VectorXcd& analytic,
                           const Trajectory& numeric) {
  if (times.size() != analytic.size()) throw std::invalid_argument("trajectory_distance: size mismatch");
  if (numeric.size() < 2) throw std::invalid_argument("trajectory_distance: numeric trajectory too short");
  const Eigen::VectorXd tn = numeric.times();
  const Eigen::VectorXcd zn = numeric.positions();
  std::vector<Index> keep;
  std::vector<Complex> resampled;
  for (Index k = 0; k < times.size(); ++k) {
    const double t = times(k);
    if (t < tn(0) || t > tn(tn.size() - 1)) continue;
    const auto it = std::upper_bound(tn.data(), tn.data() + tn.size(), t);
    const Index hi = std::min<Index>(Index(it - tn.data()), tn.size() - 1);
    const Index lo = std::max<Index>(hi - 1, 0);
    const double w = tn(hi) > tn(lo) ? (t - tn(lo)) / (tn(hi) - tn(lo)) : 0.0;
    keep.push_back(k);
    resampled.push_back((1.0 - w) * zn(lo) + w * zn(hi));
  }
  if (keep.size() < 3) throw std::invalid_argument("trajectory_distance: time ranges do not overlap");
  Eigen::VectorXd t(Index(keep.size()));
  Eigen::VectorXcd a(Index(keep.size())), b(Index(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    t(Index(k)) = times(keep[k]);
    a(Index(k)) = analytic(keep[k]);
    b(Index(k)) = resampled[k];
  }
  return trajectory_distance(t, a, b);
}

}  // namespace nhll
