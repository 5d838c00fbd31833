// Biorthogonal Landau level wavefunctions of H = (p - A)^2 / 2 for complex B in
// the symmetric gauge, their ladder algebra, and the non-unitary gauge map to
// the Landau gauge A = B x e_y.
#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "nhll/core.hpp"
#include "nhll/polynomial.hpp"

namespace nhll {

enum class Side { Right, Left };

struct QuantumNumbers {
  int n = 0;  // Landau level
  int m = 0;  // degeneracy index
  friend bool operator==(const QuantumNumbers&, const QuantumNumbers&) = default;
};

/// prefactor * P(x, y) * exp(-(x^2 + y^2) / (4 alpha)).
///
/// P is produced exactly from derivatives of exp(-r^2 / (2 alpha)) and the
/// envelope exp(+r^2 / (4 alpha)) is applied at evaluation. alpha = a_c^2 for
/// right states and conj(a_c)^2 for left states.
class GaussianWavefunction {
 public:
  GaussianWavefunction(Polynomial2<Complex> poly, Complex width_sq, Complex prefactor, QuantumNumbers qn,
                       Side side);

  const Polynomial2<Complex>& polynomial() const { return poly_; }
  Complex gaussian_width_sq() const { return alpha_; }
  Complex prefactor() const { return prefactor_; }
  QuantumNumbers quantum_numbers() const { return qn_; }
  int n() const { return qn_.n; }
  int m() const { return qn_.m; }
  Side side() const { return side_; }

  Complex operator()(double x, double y) const { return value(x, y, Complex(0.0, 0.0)); }

  /// Value multiplied by exp(extra_exponent); the exponents are added before
  /// exponentiating so large gauge factors do not overflow separately.
  Complex value(double x, double y, Complex extra_exponent) const;

 private:
  Polynomial2<Complex> poly_;
  Complex alpha_;
  Complex inv_four_alpha_;
  Complex prefactor_;
  QuantumNumbers qn_;
  Side side_;
};

GaussianWavefunction build_right_wavefunction(const FieldConfig& field, int n, int m);
GaussianWavefunction build_left_wavefunction(const FieldConfig& field, int n, int m);

Eigen::VectorXcd evaluate(const GaussianWavefunction& psi, const Eigen::Matrix2Xd& points);

/// Samples on a grid, S(ix, iy) = psi(x_ix, y_iy).
Eigen::MatrixXcd sample(const GaussianWavefunction& psi, const GridSpec& grid);

/// Samples at lattice sites in site-index order.
Eigen::VectorXcd sample_on_lattice(const GaussianWavefunction& psi, const LatticeSpec& lattice);

// ---------------------------------------------------------------------------
// Finite-difference operators on grid samples. Boundary nodes of the result are
// set to zero; residual norms are taken over interior nodes only.

namespace fd {

template <typename Derived>
typename Derived::PlainObject d_dx(const Eigen::MatrixBase<Derived>& f, double h) {
  typename Derived::PlainObject out = Derived::PlainObject::Zero(f.rows(), f.cols());
  const Index nx = f.rows();
  const Index ny = f.cols();
  out.block(1, 1, nx - 2, ny - 2) =
      (f.block(2, 1, nx - 2, ny - 2) - f.block(0, 1, nx - 2, ny - 2)) / (2.0 * h);
  return out;
}

template <typename Derived>
typename Derived::PlainObject d_dy(const Eigen::MatrixBase<Derived>& f, double h) {
  typename Derived::PlainObject out = Derived::PlainObject::Zero(f.rows(), f.cols());
  const Index nx = f.rows();
  const Index ny = f.cols();
  out.block(1, 1, nx - 2, ny - 2) =
      (f.block(1, 2, nx - 2, ny - 2) - f.block(1, 0, nx - 2, ny - 2)) / (2.0 * h);
  return out;
}

template <typename Derived>
typename Derived::PlainObject laplacian(const Eigen::MatrixBase<Derived>& f, double h) {
  typename Derived::PlainObject out = Derived::PlainObject::Zero(f.rows(), f.cols());
  const Index nx = f.rows();
  const Index ny = f.cols();
  out.block(1, 1, nx - 2, ny - 2) =
      (f.block(2, 1, nx - 2, ny - 2) + f.block(0, 1, nx - 2, ny - 2) + f.block(1, 2, nx - 2, ny - 2) +
       f.block(1, 0, nx - 2, ny - 2) - 4.0 * f.block(1, 1, nx - 2, ny - 2)) /
      (h * h);
  return out;
}

/// Max |f| over interior nodes.
template <typename Derived>
double interior_max_abs(const Eigen::MatrixBase<Derived>& f) {
  return f.block(1, 1, f.rows() - 2, f.cols() - 2).cwiseAbs().maxCoeff();
}

/// Coordinate arrays X(ix, iy) = x_ix and Y(ix, iy) = y_iy.
std::pair<Eigen::ArrayXXd, Eigen::ArrayXXd> coordinate_arrays(const GridSpec& grid);

}  // namespace fd

enum class LadderKind { A, ASharp, B, BSharp };

/// Applies a, a#, b or b# (with p = -i grad by central differences).
///
/// Requires h <= |a_c| / 10; throws std::invalid_argument otherwise.
Eigen::MatrixXcd apply_ladder(const FieldConfig& field, LadderKind kind, const Eigen::MatrixXcd& samples,
                              const GridSpec& grid);

/// Quantum numbers reached by the ladder operator, and the coefficient c with
/// op psi_{n,m} = c psi_{n',m'} for the wavefunctions built here. The explicit
/// derivative formula carries a factor (-1)^(n+m) relative to the ket
/// (a#)^n (b#)^m |0,0> / sqrt(n! m!), so every ladder coefficient is negative.
/// Returns coefficient 0 when the state is annihilated.
std::pair<QuantumNumbers, double> ladder_target(LadderKind kind, QuantumNumbers from);

/// max_interior |op psi - c psi'| / max |psi| for one grid.
double ladder_residual(const FieldConfig& field, LadderKind kind, QuantumNumbers qn, const GridSpec& grid);

struct ConvergenceReport {
  std::vector<double> spacings;
  std::vector<double> residuals;
  double order = 0.0;  // least-squares slope of log residual vs log h
};

/// Residuals at h, h/2, h/4, ... (levels entries) on a fixed extent.
/// Throws std::runtime_error if the observed order is below 1.5 (grid too coarse).
ConvergenceReport ladder_convergence(const FieldConfig& field, LadderKind kind, QuantumNumbers qn, double extent,
                                     double h, int levels = 3);

/// Applies H = -lap/2 - (B/2) L + (B^2/8) r^2 by central differences.
Eigen::MatrixXcd apply_hamiltonian(const FieldConfig& field, const Eigen::MatrixXcd& samples, const GridSpec& grid);

/// Applies L = x p_y - y p_x by central differences.
Eigen::MatrixXcd apply_angular_momentum(const Eigen::MatrixXcd& samples, const GridSpec& grid);

/// Applies the Landau-gauge Hamiltonian (p_x^2 + (p_y - B x)^2) / 2.
Eigen::MatrixXcd apply_landau_gauge_hamiltonian(const FieldConfig& field, const Eigen::MatrixXcd& samples,
                                                const GridSpec& grid);

/// max_interior |H psi - eps_n psi| / max |psi|.
double hamiltonian_residual(const FieldConfig& field, int n, int m, const GridSpec& grid);

ConvergenceReport hamiltonian_convergence(const FieldConfig& field, int n, int m, double extent, double h,
                                          int levels = 3);

/// Angular momentum eigenvalue of psi_{n,m} for L = x p_y - y p_x. The states
/// built from (d_x - i d_y)^n (d_x + i d_y)^m carry L = m - n.
int angular_momentum_eigenvalue(QuantumNumbers qn);

/// max_interior |L psi - l psi| / max |psi|.
double angular_momentum_residual(const FieldConfig& field, int n, int m, const GridSpec& grid);

// ---------------------------------------------------------------------------
// Biorthogonality

/// Quadrature grid with extent 10 |a_c| sqrt(max_index + 1) and spacing |a_c| / 8.
GridSpec overlap_grid(const FieldConfig& field, int max_index);

/// Integral of conj(psi^L_{left}) psi^R_{right} on the grid (uniform-node rule).
///
/// Throws std::invalid_argument if grid.extent < 10 |a_c| sqrt(max(n, m) + 1).
Complex biorthogonal_overlap(const FieldConfig& field, QuantumNumbers left, QuantumNumbers right,
                             const GridSpec& grid);

/// |overlap(L) - overlap(1.5 L)| at fixed spacing.
double overlap_extent_error(const FieldConfig& field, QuantumNumbers left, QuantumNumbers right,
                            const GridSpec& grid);

/// Overlap matrix over all (n, m) with n, m <= max_index, ordered index = n * (max_index + 1) + m.
Eigen::MatrixXcd overlap_matrix(const FieldConfig& field, int max_index, const GridSpec& grid);

// ---------------------------------------------------------------------------
// Gauge transformation to A = B x e_y and normalizability

/// Right states: exp(+i B x y / 2) psi. Left states: conj(exp(-i B x y / 2)) psi,
/// i.e. multiplication by (U^-1)^dagger.
Eigen::VectorXcd landau_gauge_transform_samples(const FieldConfig& field, const GaussianWavefunction& psi,
                                                const Eigen::Matrix2Xd& points);

/// Log of the gauge factor applied to a state of the given side at (x, y).
Complex landau_gauge_log_factor(const FieldConfig& field, Side side, double x, double y);

enum class Normalizability { Normalizable, NonNormalizable };

std::string to_string(Normalizability value);

/// Normalizable iff Re(B) > |Im(B)|. Requires Re(B) > 0.
Normalizability classify_normalizability(Complex B);

struct DomainGrowthReport {
  std::vector<double> extents;
  std::vector<double> integrals;  // of |U psi^R_00|^2 over [-L, L]^2
  Normalizability verdict = Normalizability::Normalizable;
};

/// Integrates |U psi^R_00|^2 over squares of half-width 8, 16, 32 |a_c| and
/// calls the integral divergent when the increment does not shrink on doubling.
DomainGrowthReport domain_growth_test(Complex B);

}  // namespace nhll
