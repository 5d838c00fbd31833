// Non-Hermitian Harper-Hofstadter model on an open square lattice.
//
// Forward and backward hoppings carry exp(+i phi) and exp(-i phi) with the same
// complex Peierls exponent phi, so for complex B they are not conjugates.
#pragma once

#include <vector>

#include <Eigen/SparseCore>

#include "nhll/core.hpp"

namespace nhll {

using SparseMatrixC = Eigen::SparseMatrix<Complex>;

struct SparseHamiltonian {
  SparseMatrixC matrix;
  FieldConfig field;
  LatticeSpec lattice;

  Index dimension() const { return matrix.rows(); }
  std::vector<Eigen::Triplet<Complex>> entries() const;
};

struct LinkPhase {
  Index from_site = 0;
  Index to_site = 0;
  Complex line_integral;
};

/// Straight-line integral of A along the link from -> to. Throws
/// std::invalid_argument if the sites are not nearest neighbors.
Complex link_integral(const FieldConfig& field, const LatticeSpec& lattice, Index from, Index to);
Complex link_integral(const FieldConfig& field, const Eigen::Vector2d& from, const Eigen::Vector2d& to);

/// All nearest-neighbor links (i -> i + x and i -> i + y) with their integrals.
std::vector<LinkPhase> lattice_links(const FieldConfig& field, const LatticeSpec& lattice);

/// H(i, j) = -exp(i * int_j^i A.dr), diagonal -E.r_i.
SparseHamiltonian build_hamiltonian(const FieldConfig& field, const LatticeSpec& lattice);

/// Enclosed flux of the plaquette whose lower-left corner is `site`:
/// -i log of the counterclockwise product of hopping phases, on the branch
/// nearest to the configured B. Throws std::out_of_range for plaquettes that
/// would leave the lattice.
Complex plaquette_flux(const SparseHamiltonian& H, Index site);

/// Number of plaquettes, (nx - 1)(ny - 1); plaquette k has lower-left corner
/// (k % (nx - 1), k / (nx - 1)).
Index plaquette_count(const LatticeSpec& lattice);
Index plaquette_corner(const LatticeSpec& lattice, Index plaquette);

enum class Observable { PositionX, PositionY, MomentumX, MomentumY, AngularMomentum };

/// Discretized observable. Momenta are -i times the central difference; rows at
/// the open boundary keep only the existing neighbor and are excluded from
/// expectation values through observable_mask().
SparseMatrixC discrete_operator(Observable kind, const LatticeSpec& lattice);

/// Rows where the stencil of `kind` is complete.
Eigen::ArrayX<bool> observable_mask(Observable kind, const LatticeSpec& lattice);

/// Re(<v|O|v>) / <v|v> with the numerator summed over masked rows.
double expectation(const SparseMatrixC& op, const Eigen::ArrayX<bool>& mask, const Eigen::VectorXcd& v);

/// Largest |H(i, j) - conj(H(j, i))|.
double hermiticity_defect(const SparseMatrixC& H);

/// Number of stored off-diagonal entries.
Index offdiagonal_count(const SparseMatrixC& H);

}  // namespace nhll
