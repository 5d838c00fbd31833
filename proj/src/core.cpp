#include "nhll/core.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace nhll {

std::string to_string(Gauge gauge) {
  return gauge == Gauge::Symmetric ? "symmetric" : "landau";
}

Gauge gauge_from_string(const std::string& name) {
  if (name == "symmetric" || name == "Symmetric") return Gauge::Symmetric;
  if (name == "landau" || name == "Landau") return Gauge::Landau;
  throw std::invalid_argument("unknown gauge '" + name + "' (expected symmetric or landau)");
}

FieldConfig::FieldConfig(Complex b, const Eigen::Vector2d& e, Gauge gauge)
    : b_(b), e_(e), gauge_(gauge), omega_c_(b) {
  if (b == Complex(0.0, 0.0)) {
    a_c_ = Complex(std::numeric_limits<double>::infinity(), 0.0);
  } else {
    // std::sqrt has its branch cut on the negative real axis.
    a_c_ = 1.0 / std::sqrt(b);
  }
}

FieldConfig FieldConfig::with_gauge(Gauge gauge) const { return FieldConfig(b_, e_, gauge); }

FieldConfig FieldConfig::with_electric(const Eigen::Vector2d& e) const {
  return FieldConfig(b_, e, gauge_);
}

FieldConfig make_field_config(Complex B, const Eigen::Vector2d& E, Gauge gauge) {
  if (!std::isfinite(B.real()) || !std::isfinite(B.imag())) {
    throw std::invalid_argument("magnetic field must be finite");
  }
  if (!(B.real() > 0.0)) {
    std::ostringstream msg;
    msg << "Re(B) must be positive (got B = " << B.real() << (B.imag() < 0 ? "" : "+") << B.imag()
        << "i); the critical case of purely imaginary magnetic fields and Re(B) < 0 are not supported";
    throw std::invalid_argument(msg.str());
  }
  if (!E.allFinite()) throw std::invalid_argument("electric field must be finite");
  return FieldConfig(B, E, gauge);
}

FieldConfig make_field_free_config(const Eigen::Vector2d& E, Gauge gauge) {
  if (!E.allFinite()) throw std::invalid_argument("electric field must be finite");
  return FieldConfig(Complex(0.0, 0.0), E, gauge);
}

void require_magnetic(const FieldConfig& field, const char* where) {
  if (field.field_free() || !(field.B().real() > 0.0)) {
    throw std::invalid_argument(std::string(where) + ": requires a magnetic field with Re(B) > 0");
  }
}

LatticeSpec make_lattice(int nx, int ny) {
  if (nx <= 0 || ny <= 0) throw std::invalid_argument("lattice dimensions must be positive");
  return LatticeSpec{nx, ny, Origin::Centered, Boundary::Open};
}

Eigen::Vector2i site_cell(const LatticeSpec& lattice, Index index) {
  if (index < 0 || index >= lattice.size()) {
    std::ostringstream msg;
    msg << "site index " << index << " out of range [0, " << lattice.size() << ")";
    throw std::out_of_range(msg.str());
  }
  return {int(index % lattice.nx), int(index / lattice.nx)};
}

Eigen::Vector2d site_coordinates(const LatticeSpec& lattice, Index index) {
  const Eigen::Vector2i cell = site_cell(lattice, index);
  return {cell.x() - 0.5 * (lattice.nx - 1), cell.y() - 0.5 * (lattice.ny - 1)};
}

Index site_index(const LatticeSpec& lattice, int ix, int iy) {
  if (ix < 0 || ix >= lattice.nx || iy < 0 || iy >= lattice.ny) {
    throw std::out_of_range("site cell outside lattice");
  }
  return Index(ix) + Index(lattice.nx) * Index(iy);
}

Index site_index(const LatticeSpec& lattice, const Eigen::Vector2d& r) {
  const double fx = r.x() + 0.5 * (lattice.nx - 1);
  const double fy = r.y() + 0.5 * (lattice.ny - 1);
  const double ix = std::round(fx);
  const double iy = std::round(fy);
  if (std::abs(fx - ix) > 1e-9 || std::abs(fy - iy) > 1e-9) {
    throw std::invalid_argument("point is not a lattice site");
  }
  return site_index(lattice, int(ix), int(iy));
}

Eigen::Matrix2Xd all_site_coordinates(const LatticeSpec& lattice) {
  Eigen::Matrix2Xd r(2, lattice.size());
  for (Index i = 0; i < lattice.size(); ++i) r.col(i) = site_coordinates(lattice, i);
  return r;
}

bool is_interior_site(const LatticeSpec& lattice, Index index) {
  const Eigen::Vector2i c = site_cell(lattice, index);
  return c.x() > 0 && c.x() < lattice.nx - 1 && c.y() > 0 && c.y() < lattice.ny - 1;
}

GridSpec make_grid(double extent, int points) {
  if (!(extent > 0.0) || points < 3) {
    throw std::invalid_argument("grid needs positive extent and at least 3 points per axis");
  }
  return GridSpec{extent, points};
}

GridSpec make_grid_with_spacing(double min_extent, double h) {
  if (!(min_extent > 0.0) || !(h > 0.0)) throw std::invalid_argument("grid extent and spacing must be positive");
  const int half = std::max(1, int(std::ceil(min_extent / h - 1e-12)));
  return GridSpec{half * h, 2 * half + 1};
}

}  // namespace nhll
