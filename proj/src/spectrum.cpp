#include "nhll/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace nhll {

namespace {

std::vector<Index> sorted_order(const Eigen::VectorXcd& values) {
  std::vector<Index> order(std::size_t(values.size()));
  std::iota(order.begin(), order.end(), Index(0));
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    if (values(a).real() != values(b).real()) return values(a).real() < values(b).real();
    return values(a).imag() < values(b).imag();
  });
  return order;
}

void check_dimension(const SparseHamiltonian& H, const DiagonalizeOptions& options) {
  if (H.dimension() > options.max_dimension) {
    std::ostringstream msg;
    msg << "dense diagonalization of dimension " << H.dimension() << " exceeds the cap " << options.max_dimension;
    throw std::length_error(msg.str());
  }
}

double inf_norm(const SparseMatrixC& H) {
  Eigen::VectorXd rows = Eigen::VectorXd::Zero(H.rows());
  for (Index k = 0; k < H.outerSize(); ++k)
    for (SparseMatrixC::InnerIterator it(H, k); it; ++it) rows(it.row()) += std::abs(it.value());
  return rows.size() ? rows.maxCoeff() : 0.0;
}

// Left vectors from the eigenvectors of H^H, paired to the sorted right
// eigenvalues and biorthonormalized within groups of (near-)equal eigenvalues.
Eigen::MatrixXcd left_from_adjoint(const Eigen::MatrixXcd& dense, const Eigen::VectorXcd& lambda,
                                   const Eigen::MatrixXcd& right, double tol) {
  const Index n = lambda.size();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(dense.adjoint(), true);
  const Eigen::VectorXcd mu = es.eigenvalues().conjugate();
  std::vector<bool> used(std::size_t(n), false);
  Eigen::MatrixXcd left(n, n);
  for (Index k = 0; k < n; ++k) {
    Index best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (Index j = 0; j < n; ++j) {
      if (used[std::size_t(j)]) continue;
      const double d = std::abs(mu(j) - lambda(k));
      if (d < best_dist) {
        best_dist = d;
        best = j;
      }
    }
    if (best < 0 || best_dist > tol) {
      std::ostringstream msg;
      msg << "eigenvalue pairing failed for lambda = " << lambda(k) << " (closest adjoint match at distance "
          << best_dist << ")";
      throw std::runtime_error(msg.str());
    }
    used[std::size_t(best)] = true;
    left.col(k) = es.eigenvectors().col(best);
  }
  Index start = 0;
  while (start < n) {
    Index stop = start + 1;
    while (stop < n && std::abs(lambda(stop) - lambda(stop - 1)) <= tol) ++stop;
    const Index len = stop - start;
    const Eigen::MatrixXcd G = left.middleCols(start, len).adjoint() * right.middleCols(start, len);
    left.middleCols(start, len) = left.middleCols(start, len) * G.inverse().adjoint();
    start = stop;
  }
  return left;
}

}  // namespace

SpectrumResult diagonalize(const SparseHamiltonian& H, const DiagonalizeOptions& options) {
  check_dimension(H, options);
  const Eigen::MatrixXcd dense(H.matrix);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(dense, true);
  if (es.info() != Eigen::Success) throw std::runtime_error("complex eigensolver did not converge");

  const std::vector<Index> order = sorted_order(es.eigenvalues());
  const Index n = dense.rows();
  SpectrumResult out;
  out.eigenvalues.resize(n);
  out.right.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = es.eigenvalues()(order[std::size_t(k)]);
    out.right.col(k) = es.eigenvectors().col(order[std::size_t(k)]).normalized();
  }

  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(out.right);
  const double rcond = lu.rcond();
  out.condition = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (out.condition <= options.condition_limit) {
    out.left = lu.inverse().adjoint();
  } else {
    const double tol = options.match_tolerance * std::max(1.0, inf_norm(H.matrix));
    out.left = left_from_adjoint(dense, out.eigenvalues, out.right, tol);
    out.used_fallback = true;
  }
  out.ang_mom = Eigen::VectorXd::Zero(n);
  return out;
}

Eigen::VectorXcd eigenvalues(const SparseHamiltonian& H, const DiagonalizeOptions& options) {
  check_dimension(H, options);
  const Eigen::MatrixXcd dense(H.matrix);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(dense, false);
  if (es.info() != Eigen::Success) throw std::runtime_error("complex eigensolver did not converge");
  const std::vector<Index> order = sorted_order(es.eigenvalues());
  Eigen::VectorXcd out(dense.rows());
  for (Index k = 0; k < out.size(); ++k) out(k) = es.eigenvalues()(order[std::size_t(k)]);
  return out;
}

double max_eigen_residual(const SparseHamiltonian& H, const SpectrumResult& spec) {
  const Eigen::MatrixXcd HR = H.matrix * spec.right;
  const Eigen::MatrixXcd diff = HR - spec.right * spec.eigenvalues.asDiagonal();
  return diff.colwise().norm().maxCoeff() / std::max(inf_norm(H.matrix), std::numeric_limits<double>::min());
}

double biorthogonality_defect(const SpectrumResult& spec) {
  const Eigen::MatrixXcd G = spec.left.adjoint() * spec.right;
  return (G - Eigen::MatrixXcd::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff();
}

double spectral_distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  const auto directed = [](const Eigen::VectorXcd& from, const Eigen::VectorXcd& to) {
    double worst = 0.0;
    for (Index i = 0; i < from.size(); ++i) worst = std::max(worst, (to.array() - from(i)).abs().minCoeff());
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

Eigen::VectorXd angular_momentum_of_states(SpectrumResult& spec, const LatticeSpec& lattice,
                                           AngularMomentumMode mode) {
  const SparseMatrixC L = discrete_operator(Observable::AngularMomentum, lattice);
  const Eigen::ArrayX<bool> mask = observable_mask(Observable::AngularMomentum, lattice);
  const Eigen::MatrixXcd LR = L * spec.right;
  Eigen::VectorXd out(spec.size());
  for (Index k = 0; k < spec.size(); ++k) {
    const Eigen::VectorXcd bra = mode == AngularMomentumMode::Right ? spec.right.col(k) : spec.left.col(k);
    Complex num(0.0, 0.0);
    for (Index i = 0; i < bra.size(); ++i)
      if (mask(i)) num += std::conj(bra(i)) * LR(i, k);
    const Complex den = bra.dot(spec.right.col(k));
    out(k) = (num / den).real();
  }
  spec.ang_mom = out;
  return out;
}

Complex cluster_reference_energy(const FieldConfig& field, int n, ClusterReference reference) {
  const Complex B = field.B();
  const double nh = n + 0.5;
  if (reference == ClusterReference::Continuum) return -4.0 + B * nh;
  return -4.0 + 2.0 * B * nh - (B * B / 8.0) * (2.0 * n * n + 2.0 * n + 1.0);
}

std::vector<LandauCluster> extract_clusters(const SpectrumResult& spec, const FieldConfig& field, int n_max,
                                            double radius, ClusterReference reference) {
  require_magnetic(field, "extract_clusters");
  if (n_max < 0) throw std::invalid_argument("extract_clusters: n_max must be non-negative");
  if (radius <= 0.0) radius = std::abs(field.B()) / 4.0;
  std::vector<Complex> refs;
  for (int n = 0; n <= n_max; ++n) refs.push_back(cluster_reference_energy(field, n, reference));
  for (int n = 0; n < n_max; ++n) {
    const double gap = std::abs(refs[std::size_t(n + 1)] - refs[std::size_t(n)]);
    if (radius >= gap / 2.0) {
      std::ostringstream msg;
      msg << "extract_clusters: radius " << radius << " overlaps neighboring levels " << n << " and " << n + 1
          << " (gap " << gap << ")";
      throw std::invalid_argument(msg.str());
    }
  }
  std::vector<LandauCluster> all(refs.size());
  for (std::size_t n = 0; n < refs.size(); ++n) {
    all[n].level = int(n);
    all[n].reference = refs[n];
  }
  for (Index k = 0; k < spec.size(); ++k) {
    std::size_t best = 0;
    for (std::size_t n = 1; n < refs.size(); ++n)
      if (std::abs(spec.eigenvalues(k) - refs[n]) < std::abs(spec.eigenvalues(k) - refs[best])) best = n;
    if (std::abs(spec.eigenvalues(k) - refs[best]) <= radius) all[best].members.push_back(k);
  }
  std::vector<LandauCluster> out;
  for (auto& c : all)
    if (!c.members.empty()) out.push_back(std::move(c));
  return out;
}

Eigen::VectorXi cluster_labels(const std::vector<LandauCluster>& clusters, Index states) {
  Eigen::VectorXi labels = Eigen::VectorXi::Constant(states, -1);
  for (const auto& c : clusters)
    for (Index k : c.members) labels(k) = c.level;
  return labels;
}

std::vector<OverlapMatch> continuum_overlap_id(const SpectrumResult& spec, const FieldConfig& field,
                                               const LatticeSpec& lattice,
                                               const std::vector<QuantumNumbers>& candidates,
                                               const std::vector<Index>& states) {
  if (candidates.empty()) throw std::invalid_argument("continuum_overlap_id: empty candidate list");
  std::vector<Index> picked = states;
  if (picked.empty()) {
    picked.resize(std::size_t(spec.size()));
    std::iota(picked.begin(), picked.end(), Index(0));
  }
  Eigen::MatrixXcd C(lattice.size(), Index(candidates.size()));
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const Eigen::VectorXcd s = sample_on_lattice(build_left_wavefunction(field, candidates[c].n, candidates[c].m), lattice);
    C.col(Index(c)) = s / s.norm();
  }
  Eigen::MatrixXcd R(lattice.size(), Index(picked.size()));
  for (std::size_t k = 0; k < picked.size(); ++k) R.col(Index(k)) = spec.right.col(picked[k]).normalized();
  const Eigen::MatrixXd scores = (C.adjoint() * R).cwiseAbs();
  std::vector<OverlapMatch> out(picked.size());
  for (std::size_t k = 0; k < picked.size(); ++k) {
    Index best = 0;
    out[k].score = scores.col(Index(k)).maxCoeff(&best);
    out[k].qn = candidates[std::size_t(best)];
  }
  return out;
}

std::vector<QuantumNumbers> candidate_grid(int n_max, int m_max) {
  std::vector<QuantumNumbers> out;
  for (int n = 0; n <= n_max; ++n)
    for (int m = 0; m <= m_max; ++m) out.push_back({n, m});
  return out;
}

}  // namespace nhll
