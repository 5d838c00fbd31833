// Shared physical configuration for non-Hermitian Landau level calculations.
//
// Units: hbar = q = c = m = 1 and lattice spacing a = 1 throughout. Every
// module reads the cyclotron frequency and magnetic length from FieldConfig.
#pragma once

#include <complex>
#include <string>

#include <Eigen/Core>

namespace nhll {

using Complex = std::complex<double>;
using Index = Eigen::Index;

enum class Gauge { Symmetric, Landau };

std::string to_string(Gauge gauge);
Gauge gauge_from_string(const std::string& name);

/// Complex perpendicular magnetic field plus in-plane electric field.
///
/// Instances are created with make_field_config() (Re(B) > 0) or
/// make_field_free_config() (B = 0, lattice-only). Immutable.
class FieldConfig {
 public:
  Complex B() const { return b_; }
  const Eigen::Vector2d& E() const { return e_; }
  Gauge gauge() const { return gauge_; }

  /// omega_c = q B / (m c) = B.
  Complex omega_c() const { return omega_c_; }
  /// a_c = sqrt(c hbar / (q B)) = 1/sqrt(B), principal branch. Infinite when field free.
  Complex a_c() const { return a_c_; }

  bool field_free() const { return b_ == Complex(0.0, 0.0); }

  /// Landau level energy omega_c (n + 1/2).
  Complex landau_energy(int n) const { return omega_c_ * (n + 0.5); }

  /// Same field with a different gauge.
  FieldConfig with_gauge(Gauge gauge) const;
  /// Same field with a different electric field.
  FieldConfig with_electric(const Eigen::Vector2d& e) const;

 private:
  FieldConfig(Complex b, const Eigen::Vector2d& e, Gauge gauge);

  friend FieldConfig make_field_config(Complex, const Eigen::Vector2d&, Gauge);
  friend FieldConfig make_field_free_config(const Eigen::Vector2d&, Gauge);

  Complex b_;
  Eigen::Vector2d e_;
  Gauge gauge_;
  Complex omega_c_;
  Complex a_c_;
};

/// Throws std::invalid_argument unless Re(B) > 0; purely imaginary fields
/// are excluded from the construction.
FieldConfig make_field_config(Complex B, const Eigen::Vector2d& E = Eigen::Vector2d::Zero(),
                              Gauge gauge = Gauge::Symmetric);

/// Bare lattice configuration (B = 0). Only the lattice and dynamics modules accept it.
FieldConfig make_field_free_config(const Eigen::Vector2d& E = Eigen::Vector2d::Zero(),
                                   Gauge gauge = Gauge::Symmetric);

/// Throws std::invalid_argument if the field is field free (continuum formulas need Re(B) > 0).
void require_magnetic(const FieldConfig& field, const char* where);

enum class Origin { Centered };
enum class Boundary { Open };

/// Square lattice with unit spacing, centered origin and open boundaries.
/// Site index = ix + nx * iy.
struct LatticeSpec {
  int nx = 0;
  int ny = 0;
  Origin origin = Origin::Centered;
  Boundary bc = Boundary::Open;

  Index size() const { return Index(nx) * Index(ny); }
};

LatticeSpec make_lattice(int nx, int ny);

Eigen::Vector2d site_coordinates(const LatticeSpec& lattice, Index index);
Eigen::Vector2i site_cell(const LatticeSpec& lattice, Index index);
Index site_index(const LatticeSpec& lattice, int ix, int iy);
/// Inverse of site_coordinates; throws if r is not a lattice site.
Index site_index(const LatticeSpec& lattice, const Eigen::Vector2d& r);
/// 2 x N matrix of all site coordinates in index order.
Eigen::Matrix2Xd all_site_coordinates(const LatticeSpec& lattice);
/// True if all four nearest neighbors exist.
bool is_interior_site(const LatticeSpec& lattice, Index index);

/// Uniform square evaluation grid on [-L, L]^2 with `points` nodes per axis.
struct GridSpec {
  double extent = 0.0;
  int points = 0;

  double spacing() const { return 2.0 * extent / (points - 1); }
  double coordinate(int k) const { return -extent + k * spacing(); }
};

GridSpec make_grid(double extent, int points);
/// Grid with spacing exactly h whose extent is the smallest multiple of h covering `min_extent`.
GridSpec make_grid_with_spacing(double min_extent, double h);

}  // namespace nhll
