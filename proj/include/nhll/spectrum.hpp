// Dense biorthogonal eigendecomposition of lattice Hamiltonians and Landau
// level bookkeeping on the resulting complex spectrum.
#pragma once

#include <vector>

#include <Eigen/Dense>

#include "nhll/hofstadter.hpp"
#include "nhll/landau.hpp"

namespace nhll {

struct SpectrumResult {
  Eigen::VectorXcd eigenvalues;  // sorted by real part, then imaginary part
  Eigen::MatrixXcd right;        // unit-norm columns
  Eigen::MatrixXcd left;         // left.col(k)^H right.col(j) = delta_kj
  Eigen::VectorXd ang_mom;       // filled by angular_momentum_of_states()
  bool used_fallback = false;    // left vectors from an eigensolve of H^H
  double condition = 0.0;        // 1-norm condition estimate of the right-vector matrix

  Index size() const { return eigenvalues.size(); }
};

struct DiagonalizeOptions {
  Index max_dimension = 4096;
  double condition_limit = 1e12;
  double match_tolerance = 1e-8;
};

/// Full eigendecomposition. Left vectors are the conjugated rows of the
/// inverse right-vector matrix; if that matrix is ill-conditioned they come
/// from diagonalizing H^H with eigenvalue matching instead.
///
/// Throws std::length_error above the dimension cap and std::runtime_error
/// when an eigenvalue of H^H cannot be paired.
SpectrumResult diagonalize(const SparseHamiltonian& H, const DiagonalizeOptions& options = {});

/// Eigenvalues only, sorted like diagonalize().
Eigen::VectorXcd eigenvalues(const SparseHamiltonian& H, const DiagonalizeOptions& options = {});

/// max_k ||H r_k - lambda_k r_k|| / ||H||_inf.
double max_eigen_residual(const SparseHamiltonian& H, const SpectrumResult& spec);

/// max |left^H right - 1|.
double biorthogonality_defect(const SpectrumResult& spec);

/// Hausdorff distance between two eigenvalue sets.
double spectral_distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

enum class AngularMomentumMode { Right, Biorthogonal };

/// Per state Re(<r|L|r>) / <r|r> (interior rows), or Re(<l|L|r>) / <l|r> in
/// biorthogonal mode. Also stores the result in spec.ang_mom.
Eigen::VectorXd angular_momentum_of_states(SpectrumResult& spec, const LatticeSpec& lattice,
                                           AngularMomentumMode mode = AngularMomentumMode::Right);

/// Reference energy of the n-th lattice Landau level.
///
/// Continuum: -4 + B (n + 1/2), band bottom plus the free-particle level.
/// LatticeBand: -4 + 2B (n + 1/2) - (B^2 / 8)(2n^2 + 2n + 1), the levels of the
/// band -2(cos kx + cos ky) expanded to quartic order (band mass 1/2).
enum class ClusterReference { Continuum, LatticeBand };

Complex cluster_reference_energy(const FieldConfig& field, int n, ClusterReference reference);

struct LandauCluster {
  int level = 0;
  std::vector<Index> members;
  Complex reference;
};

/// Greedy assignment of each eigenvalue to the nearest reference energy,
/// discarding those farther than `radius`. radius <= 0 selects |B| / 4.
/// Throws std::invalid_argument if the radius reaches half the smallest gap
/// between reference energies.
std::vector<LandauCluster> extract_clusters(const SpectrumResult& spec, const FieldConfig& field, int n_max,
                                            double radius = 0.0,
                                            ClusterReference reference = ClusterReference::LatticeBand);

/// cluster_n per state, -1 if unassigned.
Eigen::VectorXi cluster_labels(const std::vector<LandauCluster>& clusters, Index states);

struct OverlapMatch {
  QuantumNumbers qn;
  double score = 0.0;  // |<psi^L sampled | r>| / (||psi^L|| ||r||)
};

/// Best continuum candidate for each listed state (all states when `states` is empty).
std::vector<OverlapMatch> continuum_overlap_id(const SpectrumResult& spec, const FieldConfig& field,
                                               const LatticeSpec& lattice,
                                               const std::vector<QuantumNumbers>& candidates,
                                               const std::vector<Index>& states = {});

/// All (n, m) with n <= n_max and m <= m_max.
std::vector<QuantumNumbers> candidate_grid(int n_max, int m_max);

}  // namespace nhll
