#include "nhll/landau.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nhll {

namespace {

constexpr Complex kI(0.0, 1.0);

double factorial(int k) { return std::tgamma(k + 1.0); }

// Applies (d_x + sign * i d_y) to P * exp(-r^2 / (2 alpha)), returning the new
// polynomial factor: P' = (d_x + s i d_y) P - P (x + s i y) / alpha.
Polynomial2<Complex> apply_complex_derivative(const Polynomial2<Complex>& p, double sign, Complex alpha) {
  const Complex s_i = sign * kI;
  Polynomial2<Complex> out = p.derivative_x() + s_i * p.derivative_y();
  out = out - (p.times_x() + s_i * p.times_y()) * (1.0 / alpha);
  return out;
}

GaussianWavefunction build_wavefunction(Complex a, int n, int m, Side side) {
  if (n < 0 || m < 0) throw std::invalid_argument("quantum numbers must be non-negative");
  const Complex alpha = a * a;
  Polynomial2<Complex> p(Complex(1.0, 0.0));
  for (int k = 0; k < n; ++k) p = apply_complex_derivative(p, -1.0, alpha);
  for (int k = 0; k < m; ++k) p = apply_complex_derivative(p, +1.0, alpha);
  const Complex prefactor =
      std::pow(a, n + m - 1) / std::sqrt(std::pow(2.0, n + m + 1) * std::numbers::pi * factorial(n) * factorial(m));
  return GaussianWavefunction(std::move(p), alpha, prefactor, QuantumNumbers{n, m}, side);
}

void require_resolved(const FieldConfig& field, const GridSpec& grid, const char* where) {
  if (grid.points < 5) throw std::invalid_argument(std::string(where) + ": grid needs at least 5 points per axis");
  const double limit = std::abs(field.a_c()) / 10.0;
  if (grid.spacing() > limit * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << where << ": grid spacing " << grid.spacing() << " exceeds |a_c|/10 = " << limit;
    throw std::invalid_argument(msg.str());
  }
}

double log_log_slope(const std::vector<double>& h, const std::vector<double>& r) {
  const Index n = Index(h.size());
  Eigen::VectorXd lx(n), ly(n);
  for (Index k = 0; k < n; ++k) {
    lx(k) = std::log(h[k]);
    ly(k) = std::log(r[k]);
  }
  const double mx = lx.mean();
  const double my = ly.mean();
  return ((lx.array() - mx) * (ly.array() - my)).sum() / (lx.array() - mx).square().sum();
}

template <typename ResidualFn>
ConvergenceReport refine(double extent, double h, int levels, ResidualFn residual) {
  if (levels < 2) throw std::invalid_argument("convergence study needs at least two levels");
  ConvergenceReport report;
  double spacing = h;
  for (int k = 0; k < levels; ++k, spacing /= 2.0) {
    const GridSpec grid = make_grid_with_spacing(extent, spacing);
    report.spacings.push_back(grid.spacing());
    report.residuals.push_back(residual(grid));
  }
  report.order = log_log_slope(report.spacings, report.residuals);
  return report;
}

}  // namespace

GaussianWavefunction::GaussianWavefunction(Polynomial2<Complex> poly, Complex width_sq, Complex prefactor,
                                           QuantumNumbers qn, Side side)
    : poly_(std::move(poly)),
      alpha_(width_sq),
      inv_four_alpha_(1.0 / (4.0 * width_sq)),
      prefactor_(prefactor),
      qn_(qn),
      side_(side) {}

Complex GaussianWavefunction::value(double x, double y, Complex extra_exponent) const {
  return prefactor_ * poly_(x, y) * std::exp(-(x * x + y * y) * inv_four_alpha_ + extra_exponent);
}

GaussianWavefunction build_right_wavefunction(const FieldConfig& field, int n, int m) {
  require_magnetic(field, "build_right_wavefunction");
  return build_wavefunction(field.a_c(), n, m, Side::Right);
}

GaussianWavefunction build_left_wavefunction(const FieldConfig& field, int n, int m) {
  require_magnetic(field, "build_left_wavefunction");
  return build_wavefunction(std::conj(field.a_c()), n, m, Side::Left);
}

Eigen::VectorXcd evaluate(const GaussianWavefunction& psi, const Eigen::Matrix2Xd& points) {
  Eigen::VectorXcd out(points.cols());
  for (Index k = 0; k < points.cols(); ++k) out(k) = psi(points(0, k), points(1, k));
  return out;
}

Eigen::MatrixXcd sample(const GaussianWavefunction& psi, const GridSpec& grid) {
  Eigen::MatrixXcd out(grid.points, grid.points);
  for (int iy = 0; iy < grid.points; ++iy) {
    const double y = grid.coordinate(iy);
    for (int ix = 0; ix < grid.points; ++ix) out(ix, iy) = psi(grid.coordinate(ix), y);
  }
  return out;
}

Eigen::VectorXcd sample_on_lattice(const GaussianWavefunction& psi, const LatticeSpec& lattice) {
  return evaluate(psi, all_site_coordinates(lattice));
}

namespace fd {

std::pair<Eigen::ArrayXXd, Eigen::ArrayXXd> coordinate_arrays(const GridSpec& grid) {
  Eigen::ArrayXXd x(grid.points, grid.points);
  Eigen::ArrayXXd y(grid.points, grid.points);
  for (int iy = 0; iy < grid.points; ++iy)
    for (int ix = 0; ix < grid.points; ++ix) {
      x(ix, iy) = grid.coordinate(ix);
      y(ix, iy) = grid.coordinate(iy);
    }
  return {x, y};
}

}  // namespace fd

Eigen::MatrixXcd apply_ladder(const FieldConfig& field, LadderKind kind, const Eigen::MatrixXcd& samples,
                              const GridSpec& grid) {
  require_magnetic(field, "apply_ladder");
  require_resolved(field, grid, "apply_ladder");
  if (samples.rows() != grid.points || samples.cols() != grid.points) {
    throw std::invalid_argument("apply_ladder: samples do not match grid");
  }
  const double h = grid.spacing();
  const Complex B = field.omega_c();
  const Complex norm = 1.0 / std::sqrt(2.0 * B);
  const auto [x, y] = fd::coordinate_arrays(grid);
  const Eigen::MatrixXcd dx = fd::d_dx(samples, h);
  const Eigen::MatrixXcd dy = fd::d_dy(samples, h);

  // a  = [ (B/2)(x + i y) + (d_x + i d_y) ] / sqrt(2B)
  // b  = [ (B/2)(x - i y) + (d_x - i d_y) ] / sqrt(2B)
  // a# = [ (B/2)(x - i y) - (d_x - i d_y) ] / sqrt(2B)
  // b# = [ (B/2)(x + i y) - (d_x + i d_y) ] / sqrt(2B)
  const bool plus = (kind == LadderKind::A || kind == LadderKind::BSharp);
  const bool creation = (kind == LadderKind::ASharp || kind == LadderKind::BSharp);
  const Complex s_i = plus ? kI : -kI;
  const Eigen::ArrayXXcd position = (x.cast<Complex>() + s_i * y.cast<Complex>()) * (B / 2.0);
  const Eigen::MatrixXcd derivative = dx + s_i * dy;
  Eigen::MatrixXcd out = (position * samples.array()).matrix();
  if (creation) {
    out -= derivative;
  } else {
    out += derivative;
  }
  out *= norm;
  // boundary nodes carry no valid derivative
  out.row(0).setZero();
  out.row(out.rows() - 1).setZero();
  out.col(0).setZero();
  out.col(out.cols() - 1).setZero();
  return out;
}

std::pair<QuantumNumbers, double> ladder_target(LadderKind kind, QuantumNumbers from) {
  switch (kind) {
    case LadderKind::ASharp:
      return {{from.n + 1, from.m}, -std::sqrt(from.n + 1.0)};
    case LadderKind::BSharp:
      return {{from.n, from.m + 1}, -std::sqrt(from.m + 1.0)};
    case LadderKind::A:
      if (from.n == 0) return {from, 0.0};
      return {{from.n - 1, from.m}, -std::sqrt(double(from.n))};
    case LadderKind::B:
      if (from.m == 0) return {from, 0.0};
      return {{from.n, from.m - 1}, -std::sqrt(double(from.m))};
  }
  throw std::logic_error("unknown ladder kind");
}

double ladder_residual(const FieldConfig& field, LadderKind kind, QuantumNumbers qn, const GridSpec& grid) {
  const Eigen::MatrixXcd psi = sample(build_right_wavefunction(field, qn.n, qn.m), grid);
  const auto [target, coeff] = ladder_target(kind, qn);
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(grid.points, grid.points);
  if (coeff != 0.0) expected = coeff * sample(build_right_wavefunction(field, target.n, target.m), grid);
  const Eigen::MatrixXcd applied = apply_ladder(field, kind, psi, grid);
  return fd::interior_max_abs(applied - expected) / psi.cwiseAbs().maxCoeff();
}

ConvergenceReport ladder_convergence(const FieldConfig& field, LadderKind kind, QuantumNumbers qn, double extent,
                                     double h, int levels) {
  ConvergenceReport report =
      refine(extent, h, levels, [&](const GridSpec& g) { return ladder_residual(field, kind, qn, g); });
  if (report.order < 1.5) {
    std::ostringstream msg;
    msg << "ladder_convergence: observed order " << report.order << " < 1.5; grid too coarse";
    throw std::runtime_error(msg.str());
  }
  return report;
}

Eigen::MatrixXcd apply_angular_momentum(const Eigen::MatrixXcd& samples, const GridSpec& grid) {
  const double h = grid.spacing();
  const auto [x, y] = fd::coordinate_arrays(grid);
  const Eigen::ArrayXXcd dx = fd::d_dx(samples, h).array();
  const Eigen::ArrayXXcd dy = fd::d_dy(samples, h).array();
  return (-kI * (x.cast<Complex>() * dy - y.cast<Complex>() * dx)).matrix();
}

Eigen::MatrixXcd apply_hamiltonian(const FieldConfig& field, const Eigen::MatrixXcd& samples, const GridSpec& grid) {
  require_magnetic(field, "apply_hamiltonian");
  const double h = grid.spacing();
  const Complex B = field.omega_c();
  const auto [x, y] = fd::coordinate_arrays(grid);
  const Eigen::ArrayXXd r2 = x.square() + y.square();
  Eigen::ArrayXXcd out = -0.5 * fd::laplacian(samples, h).array();
  out -= (B / 2.0) * apply_angular_momentum(samples, grid).array();
  Eigen::ArrayXXcd potential = (B * B / 8.0) * r2.cast<Complex>() * samples.array();
  potential.row(0).setZero();
  potential.row(potential.rows() - 1).setZero();
  potential.col(0).setZero();
  potential.col(potential.cols() - 1).setZero();
  out += potential;
  return out.matrix();
}

Eigen::MatrixXcd apply_landau_gauge_hamiltonian(const FieldConfig& field, const Eigen::MatrixXcd& samples,
                                                const GridSpec& grid) {
  require_magnetic(field, "apply_landau_gauge_hamiltonian");
  // (p_x^2 + (p_y - B x)^2) / 2 = -lap/2 + i B x d_y + B^2 x^2 / 2
  const double h = grid.spacing();
  const Complex B = field.omega_c();
  const auto [x, y] = fd::coordinate_arrays(grid);
  Eigen::ArrayXXcd out = -0.5 * fd::laplacian(samples, h).array();
  out += kI * B * x.cast<Complex>() * fd::d_dy(samples, h).array();
  Eigen::ArrayXXcd potential = (B * B / 2.0) * x.square().cast<Complex>() * samples.array();
  potential.row(0).setZero();
  potential.row(potential.rows() - 1).setZero();
  potential.col(0).setZero();
  potential.col(potential.cols() - 1).setZero();
  out += potential;
  return out.matrix();
}

double hamiltonian_residual(const FieldConfig& field, int n, int m, const GridSpec& grid) {
  require_resolved(field, grid, "hamiltonian_residual");
  const Eigen::MatrixXcd psi = sample(build_right_wavefunction(field, n, m), grid);
  Eigen::MatrixXcd residual = apply_hamiltonian(field, psi, grid) - field.landau_energy(n) * psi;
  return fd::interior_max_abs(residual) / psi.cwiseAbs().maxCoeff();
}

ConvergenceReport hamiltonian_convergence(const FieldConfig& field, int n, int m, double extent, double h,
                                          int levels) {
  return refine(extent, h, levels, [&](const GridSpec& g) { return hamiltonian_residual(field, n, m, g); });
}

int angular_momentum_eigenvalue(QuantumNumbers qn) { return qn.m - qn.n; }

double angular_momentum_residual(const FieldConfig& field, int n, int m, const GridSpec& grid) {
  require_resolved(field, grid, "angular_momentum_residual");
  const Eigen::MatrixXcd psi = sample(build_right_wavefunction(field, n, m), grid);
  const double l = angular_momentum_eigenvalue({n, m});
  return fd::interior_max_abs(apply_angular_momentum(psi, grid) - l * psi) / psi.cwiseAbs().maxCoeff();
}

GridSpec overlap_grid(const FieldConfig& field, int max_index) {
  require_magnetic(field, "overlap_grid");
  const double ac = std::abs(field.a_c());
  return make_grid_with_spacing(10.0 * ac * std::sqrt(max_index + 1.0), ac / 8.0);
}

namespace {

double required_extent(const FieldConfig& field, QuantumNumbers a, QuantumNumbers b) {
  const int k = std::max({a.n, a.m, b.n, b.m});
  return 10.0 * std::abs(field.a_c()) * std::sqrt(k + 1.0);
}

Complex overlap_unchecked(const FieldConfig& field, QuantumNumbers left, QuantumNumbers right, const GridSpec& grid) {
  const Eigen::MatrixXcd l = sample(build_left_wavefunction(field, left.n, left.m), grid);
  const Eigen::MatrixXcd r = sample(build_right_wavefunction(field, right.n, right.m), grid);
  const double h = grid.spacing();
  return (l.conjugate().array() * r.array()).sum() * h * h;
}

}  // namespace

Complex biorthogonal_overlap(const FieldConfig& field, QuantumNumbers left, QuantumNumbers right,
                             const GridSpec& grid) {
  require_magnetic(field, "biorthogonal_overlap");
  const double need = required_extent(field, left, right);
  if (grid.extent < need * (1.0 - 1e-12)) {
    std::ostringstream msg;
    msg << "biorthogonal_overlap: grid extent " << grid.extent << " below required " << need;
    throw std::invalid_argument(msg.str());
  }
  return overlap_unchecked(field, left, right, grid);
}

double overlap_extent_error(const FieldConfig& field, QuantumNumbers left, QuantumNumbers right,
                            const GridSpec& grid) {
  const Complex base = biorthogonal_overlap(field, left, right, grid);
  const GridSpec wide = make_grid_with_spacing(1.5 * grid.extent, grid.spacing());
  return std::abs(overlap_unchecked(field, left, right, wide) - base);
}

Eigen::MatrixXcd overlap_matrix(const FieldConfig& field, int max_index, const GridSpec& grid) {
  require_magnetic(field, "overlap_matrix");
  const QuantumNumbers corner{max_index, max_index};
  const double need = required_extent(field, corner, corner);
  if (grid.extent < need * (1.0 - 1e-12)) {
    throw std::invalid_argument("overlap_matrix: grid extent too small for requested quantum numbers");
  }
  const int side = max_index + 1;
  const int count = side * side;
  const Index npts = Index(grid.points) * grid.points;
  Eigen::MatrixXcd left(npts, count), right(npts, count);
  for (int n = 0; n < side; ++n)
    for (int m = 0; m < side; ++m) {
      const int k = n * side + m;
      left.col(k) = sample(build_left_wavefunction(field, n, m), grid).reshaped();
      right.col(k) = sample(build_right_wavefunction(field, n, m), grid).reshaped();
    }
  const double h = grid.spacing();
  return left.adjoint() * right * (h * h);
}

Complex landau_gauge_log_factor(const FieldConfig& field, Side side, double x, double y) {
  const Complex B = field.omega_c();
  if (side == Side::Right) return kI * B * (x * y / 2.0);
  // (U^-1)^dagger = conj(exp(-i B x y / 2)) = exp(+i conj(B) x y / 2)
  return kI * std::conj(B) * (x * y / 2.0);
}

Eigen::VectorXcd landau_gauge_transform_samples(const FieldConfig& field, const GaussianWavefunction& psi,
                                                const Eigen::Matrix2Xd& points) {
  require_magnetic(field, "landau_gauge_transform_samples");
  Eigen::VectorXcd out(points.cols());
  for (Index k = 0; k < points.cols(); ++k) {
    const double x = points(0, k);
    const double y = points(1, k);
    out(k) = psi.value(x, y, landau_gauge_log_factor(field, psi.side(), x, y));
  }
  return out;
}

std::string to_string(Normalizability value) {
  return value == Normalizability::Normalizable ? "normalizable" : "non_normalizable";
}

Normalizability classify_normalizability(Complex B) {
  if (!(B.real() > 0.0)) throw std::invalid_argument("classify_normalizability: requires Re(B) > 0");
  return B.real() > std::abs(B.imag()) ? Normalizability::Normalizable : Normalizability::NonNormalizable;
}

DomainGrowthReport domain_growth_test(Complex B) {
  const FieldConfig field = make_field_config(B);
  const GaussianWavefunction psi = build_right_wavefunction(field, 0, 0);
  const double ac = std::abs(field.a_c());
  const double h = ac / 4.0;
  DomainGrowthReport report;
  for (double multiple : {8.0, 16.0, 32.0}) {
    const GridSpec grid = make_grid_with_spacing(multiple * ac, h);
    double sum = 0.0;
    for (int iy = 0; iy < grid.points; ++iy) {
      const double y = grid.coordinate(iy);
      for (int ix = 0; ix < grid.points; ++ix) {
        const double x = grid.coordinate(ix);
        sum += std::norm(psi.value(x, y, landau_gauge_log_factor(field, Side::Right, x, y)));
      }
    }
    report.extents.push_back(grid.extent);
    report.integrals.push_back(sum * h * h);
  }
  const double first = report.integrals[1] - report.integrals[0];
  const double second = report.integrals[2] - report.integrals[1];
  const bool finite = std::isfinite(report.integrals[2]);
  report.verdict = (finite && second < first) ? Normalizability::Normalizable : Normalizability::NonNormalizable;
  return report;
}

}  // namespace nhll
