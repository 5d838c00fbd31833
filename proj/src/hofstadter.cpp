#include "nhll/hofstadter.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nhll {

namespace {

constexpr Complex kI(0.0, 1.0);

bool are_neighbors(const LatticeSpec& lattice, Index a, Index b) {
  const Eigen::Vector2i ca = site_cell(lattice, a);
  const Eigen::Vector2i cb = site_cell(lattice, b);
  return (ca - cb).cwiseAbs().sum() == 1;
}

}  // namespace

std::vector<Eigen::Triplet<Complex>> SparseHamiltonian::entries() const {
  std::vector<Eigen::Triplet<Complex>> out;
  out.reserve(matrix.nonZeros());
  for (Index k = 0; k < matrix.outerSize(); ++k)
    for (SparseMatrixC::InnerIterator it(matrix, k); it; ++it) out.emplace_back(it.row(), it.col(), it.value());
  return out;
}

Complex link_integral(const FieldConfig& field, const Eigen::Vector2d& from, const Eigen::Vector2d& to) {
  // A is linear in position, so midpoint value times displacement is exact.
  const Eigen::Vector2d mid = 0.5 * (from + to);
  const Eigen::Vector2d d = to - from;
  const Complex B = field.B();
  if (field.gauge() == Gauge::Symmetric) return (B / 2.0) * (-mid.y() * d.x() + mid.x() * d.y());
  return B * mid.x() * d.y();
}

Complex link_integral(const FieldConfig& field, const LatticeSpec& lattice, Index from, Index to) {
  if (!are_neighbors(lattice, from, to)) {
    std::ostringstream msg;
    msg << "link_integral: sites " << from << " and " << to << " are not nearest neighbors";
    throw std::invalid_argument(msg.str());
  }
  return link_integral(field, site_coordinates(lattice, from), site_coordinates(lattice, to));
}

std::vector<LinkPhase> lattice_links(const FieldConfig& field, const LatticeSpec& lattice) {
  std::vector<LinkPhase> links;
  links.reserve(std::size_t(2 * lattice.size()));
  for (int iy = 0; iy < lattice.ny; ++iy)
    for (int ix = 0; ix < lattice.nx; ++ix) {
      const Index i = site_index(lattice, ix, iy);
      if (ix + 1 < lattice.nx) {
        const Index j = site_index(lattice, ix + 1, iy);
        links.push_back({i, j, link_integral(field, lattice, i, j)});
      }
      if (iy + 1 < lattice.ny) {
        const Index j = site_index(lattice, ix, iy + 1);
        links.push_back({i, j, link_integral(field, lattice, i, j)});
      }
    }
  return links;
}

SparseHamiltonian build_hamiltonian(const FieldConfig& field, const LatticeSpec& lattice) {
  const Index n = lattice.size();
  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(std::size_t(5 * n));
  for (const LinkPhase& link : lattice_links(field, lattice)) {
    // hop from -> to picks up exp(+i int_from^to A.dr), the reverse hop exp(-i ...)
    triplets.emplace_back(link.to_site, link.from_site, -std::exp(kI * link.line_integral));
    triplets.emplace_back(link.from_site, link.to_site, -std::exp(-kI * link.line_integral));
  }
  const Eigen::Vector2d& E = field.E();
  if (E.squaredNorm() > 0.0) {
    for (Index i = 0; i < n; ++i) triplets.emplace_back(i, i, Complex(-E.dot(site_coordinates(lattice, i)), 0.0));
  }
  SparseMatrixC H(n, n);
  H.setFromTriplets(triplets.begin(), triplets.end());
  H.makeCompressed();
  return SparseHamiltonian{std::move(H), field, lattice};
}

Index plaquette_count(const LatticeSpec& lattice) {
  return Index(std::max(0, lattice.nx - 1)) * Index(std::max(0, lattice.ny - 1));
}

Index plaquette_corner(const LatticeSpec& lattice, Index plaquette) {
  if (plaquette < 0 || plaquette >= plaquette_count(lattice)) throw std::out_of_range("plaquette index out of range");
  const int w = lattice.nx - 1;
  return site_index(lattice, int(plaquette % w), int(plaquette / w));
}

Complex plaquette_flux(const SparseHamiltonian& H, Index site) {
  const LatticeSpec& lat = H.lattice;
  const Eigen::Vector2i c = site_cell(lat, site);
  if (c.x() + 1 >= lat.nx || c.y() + 1 >= lat.ny) {
    std::ostringstream msg;
    msg << "plaquette_flux: plaquette at site " << site << " crosses the lattice boundary";
    throw std::out_of_range(msg.str());
  }
  const Index a = site;
  const Index b = site_index(lat, c.x() + 1, c.y());
  const Index d = site_index(lat, c.x() + 1, c.y() + 1);
  const Index e = site_index(lat, c.x(), c.y() + 1);
  // forward hop u -> v is the matrix element H(v, u) = -exp(i phi)
  const auto phase = [&](Index from, Index to) { return -H.matrix.coeff(to, from); };
  const Complex product = phase(a, b) * phase(b, d) * phase(d, e) * phase(e, a);
  Complex flux = -kI * std::log(product);
  const double two_pi = 2.0 * std::numbers::pi;
  flux += two_pi * std::round((H.field.B().real() - flux.real()) / two_pi);
  return flux;
}

SparseMatrixC discrete_operator(Observable kind, const LatticeSpec& lattice) {
  const Index n = lattice.size();
  std::vector<Eigen::Triplet<Complex>> triplets;
  const auto coords = all_site_coordinates(lattice);
  const auto momentum = [&](int axis) {
    std::vector<Eigen::Triplet<Complex>> t;
    for (Index i = 0; i < n; ++i) {
      const Eigen::Vector2i c = site_cell(lattice, i);
      Eigen::Vector2i up = c, down = c;
      up(axis) += 1;
      down(axis) -= 1;
      const int limit = axis == 0 ? lattice.nx : lattice.ny;
      if (up(axis) < limit) t.emplace_back(i, site_index(lattice, up.x(), up.y()), Complex(0.0, -0.5));
      if (down(axis) >= 0) t.emplace_back(i, site_index(lattice, down.x(), down.y()), Complex(0.0, 0.5));
    }
    SparseMatrixC P(n, n);
    P.setFromTriplets(t.begin(), t.end());
    return P;
  };
  const auto position = [&](int axis) {
    SparseMatrixC X(n, n);
    std::vector<Eigen::Triplet<Complex>> t;
    for (Index i = 0; i < n; ++i) t.emplace_back(i, i, Complex(coords(axis, i), 0.0));
    X.setFromTriplets(t.begin(), t.end());
    return X;
  };
  switch (kind) {
    case Observable::PositionX:
      return position(0);
    case Observable::PositionY:
      return position(1);
    case Observable::MomentumX:
      return momentum(0);
    case Observable::MomentumY:
      return momentum(1);
    case Observable::AngularMomentum: {
      const SparseMatrixC X = position(0), Y = position(1);
      const SparseMatrixC Px = momentum(0), Py = momentum(1);
      SparseMatrixC L = 0.5 * (SparseMatrixC(X * Py) + SparseMatrixC(Py * X)) -
                        0.5 * (SparseMatrixC(Y * Px) + SparseMatrixC(Px * Y));
      L.prune(Complex(0.0, 0.0));
      return L;
    }
  }
  throw std::logic_error("unknown observable");
}

Eigen::ArrayX<bool> observable_mask(Observable kind, const LatticeSpec& lattice) {
  Eigen::ArrayX<bool> mask(lattice.size());
  for (Index i = 0; i < lattice.size(); ++i) {
    const Eigen::Vector2i c = site_cell(lattice, i);
    const bool x_ok = c.x() > 0 && c.x() + 1 < lattice.nx;
    const bool y_ok = c.y() > 0 && c.y() + 1 < lattice.ny;
    switch (kind) {
      case Observable::PositionX:
      case Observable::PositionY:
        mask(i) = true;
        break;
      case Observable::MomentumX:
        mask(i) = x_ok;
        break;
      case Observable::MomentumY:
        mask(i) = y_ok;
        break;
      case Observable::AngularMomentum:
        mask(i) = x_ok && y_ok;
        break;
    }
  }
  return mask;
}

double expectation(const SparseMatrixC& op, const Eigen::ArrayX<bool>& mask, const Eigen::VectorXcd& v) {
  const Eigen::VectorXcd ov = op * v;
  Complex num(0.0, 0.0);
  for (Index i = 0; i < v.size(); ++i)
    if (mask(i)) num += std::conj(v(i)) * ov(i);
  return num.real() / v.squaredNorm();
}

double hermiticity_defect(const SparseMatrixC& H) {
  const SparseMatrixC diff = H - SparseMatrixC(H.adjoint());
  double worst = 0.0;
  for (Index k = 0; k < diff.outerSize(); ++k)
    for (SparseMatrixC::InnerIterator it(diff, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  return worst;
}

Index offdiagonal_count(const SparseMatrixC& H) {
  Index count = 0;
  for (Index k = 0; k < H.outerSize(); ++k)
    for (SparseMatrixC::InnerIterator it(H, k); it; ++it)
      if (it.row() != it.col()) ++count;
  return count;
}

}  // namespace nhll
