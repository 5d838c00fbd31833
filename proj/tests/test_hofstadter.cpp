#include <doctest.h>

#include <cmath>

#include "nhll/hofstadter.hpp"
#include "nhll/landau.hpp"

using namespace nhll;

namespace {

const Complex kI(0.0, 1.0);
const Complex kB(0.1, -0.001);

}  // namespace

TEST_CASE("link integrals of the two gauges") {
  const FieldConfig sym = make_field_config(kB);
  CHECK(std::abs(link_integral(sym, Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0))) == 0.0);
  CHECK(std::abs(link_integral(sym, Eigen::Vector2d(0, 1), Eigen::Vector2d(1, 1)) + Complex(0.05, -0.0005)) < 1e-15);
  CHECK(std::abs(link_integral(sym, Eigen::Vector2d(2, 0), Eigen::Vector2d(2, 1)) - kB) < 1e-15);
  // reversing a link flips the sign
  CHECK(std::abs(link_integral(sym, Eigen::Vector2d(1, 1), Eigen::Vector2d(0, 1)) - Complex(0.05, -0.0005)) < 1e-15);

  const FieldConfig lan = make_field_config(kB, Eigen::Vector2d::Zero(), Gauge::Landau);
  CHECK(std::abs(link_integral(lan, Eigen::Vector2d(2, 0), Eigen::Vector2d(2, 1)) - 2.0 * kB) < 1e-15);
  CHECK(std::abs(link_integral(lan, Eigen::Vector2d(2, 3), Eigen::Vector2d(3, 3))) == 0.0);

  const LatticeSpec lat = make_lattice(5, 5);
  CHECK_THROWS_AS(link_integral(sym, lat, site_index(lat, 0, 0), site_index(lat, 1, 1)), std::invalid_argument);
  CHECK_THROWS_AS(link_integral(sym, lat, site_index(lat, 0, 0), site_index(lat, 2, 0)), std::invalid_argument);
}

TEST_CASE("bare lattice is real symmetric with unit hoppings") {
  const LatticeSpec lat = make_lattice(6, 4);
  const SparseHamiltonian H = build_hamiltonian(make_field_free_config(), lat);
  CHECK(hermiticity_defect(H.matrix) == 0.0);
  for (const auto& t : H.entries()) {
    CHECK(t.row() != t.col());
    CHECK(t.value() == Complex(-1.0, 0.0));
  }
}

TEST_CASE("sparsity and forward-backward pairing") {
  for (auto [nx, ny] : {std::pair{50, 50}, std::pair{7, 3}}) {
    const LatticeSpec lat = make_lattice(nx, ny);
    const SparseHamiltonian H = build_hamiltonian(make_field_config(kB), lat);
    CHECK(offdiagonal_count(H.matrix) == 4 * nx * ny - 2 * (nx + ny));
  }
  const LatticeSpec lat = make_lattice(9, 8);
  const SparseHamiltonian H = build_hamiltonian(make_field_config(kB), lat);
  const Eigen::MatrixXcd D(H.matrix);
  double worst = 0.0;
  bool conjugate_pairs = true;
  for (const LinkPhase& l : lattice_links(H.field, lat)) {
    const Complex fwd = D(l.to_site, l.from_site);
    const Complex bwd = D(l.from_site, l.to_site);
    worst = std::max(worst, std::abs(fwd * bwd - 1.0));
    CHECK(std::abs(fwd + std::exp(kI * l.line_integral)) < 1e-15);
    if (std::abs(l.line_integral) > 0.0 && std::abs(fwd - std::conj(bwd)) < 1e-12) conjugate_pairs = false;
  }
  CHECK(worst < 1e-15);
  CHECK(conjugate_pairs);
}

TEST_CASE("Hermiticity follows Im(B) = 0") {
  const LatticeSpec lat = make_lattice(10, 10);
  CHECK(hermiticity_defect(build_hamiltonian(make_field_config(Complex(0.1, 0.0)), lat).matrix) < 1e-14);
  CHECK(hermiticity_defect(
            build_hamiltonian(make_field_config(Complex(0.1, 0.0), Eigen::Vector2d::Zero(), Gauge::Landau), lat)
                .matrix) < 1e-14);
  CHECK(hermiticity_defect(build_hamiltonian(make_field_config(kB), lat).matrix) > 1e-4);
}

TEST_CASE("electric potential on the diagonal") {
  const LatticeSpec lat = make_lattice(5, 5);
  const SparseHamiltonian H = build_hamiltonian(make_field_free_config(Eigen::Vector2d(0.1, -0.2)), lat);
  const Index k = site_index(lat, 4, 0);
  const Eigen::Vector2d r = site_coordinates(lat, k);
  CHECK(H.matrix.coeff(k, k).real() == doctest::Approx(-(0.1 * r.x() - 0.2 * r.y())));
}

TEST_CASE("plaquette flux equals B in either gauge") {
  const LatticeSpec lat = make_lattice(12, 9);
  for (Gauge g : {Gauge::Symmetric, Gauge::Landau}) {
    const SparseHamiltonian H = build_hamiltonian(make_field_config(kB, Eigen::Vector2d::Zero(), g), lat);
    double worst = 0.0;
    for (Index p = 0; p < plaquette_count(lat); ++p)
      worst = std::max(worst, std::abs(plaquette_flux(H, plaquette_corner(lat, p)) - kB));
    CHECK(worst < 1e-12);
    // direct product of the four counterclockwise hoppings
    const Eigen::MatrixXcd D(H.matrix);
    const Index a = site_index(lat, 3, 4), b = site_index(lat, 4, 4), c = site_index(lat, 4, 5),
                d = site_index(lat, 3, 5);
    const Complex loop = D(b, a) * D(c, b) * D(d, c) * D(a, d);
    CHECK(std::abs(loop - std::exp(kI * kB)) < 1e-14);
  }
  CHECK(plaquette_count(lat) == 11 * 8);
  const SparseHamiltonian bare = build_hamiltonian(make_field_free_config(), lat);
  CHECK(std::abs(plaquette_flux(bare, 0)) < 1e-15);
  CHECK_THROWS_AS(plaquette_flux(bare, site_index(lat, 11, 0)), std::out_of_range);
  CHECK_THROWS_AS(plaquette_flux(bare, site_index(lat, 0, 8)), std::out_of_range);
}

TEST_CASE("momentum operator on a plane wave") {
  const LatticeSpec lat = make_lattice(20, 6);
  const double k = 0.37;
  Eigen::VectorXcd v(lat.size());
  for (Index i = 0; i < lat.size(); ++i) v(i) = std::exp(kI * k * site_coordinates(lat, i).x());
  const SparseMatrixC Px = discrete_operator(Observable::MomentumX, lat);
  const Eigen::VectorXcd w = Px * v;
  const auto mask = observable_mask(Observable::MomentumX, lat);
  double worst = 0.0;
  Index rows = 0;
  for (Index i = 0; i < lat.size(); ++i) {
    if (!mask(i)) continue;
    ++rows;
    worst = std::max(worst, std::abs(w(i) - std::sin(k) * v(i)));
  }
  CHECK(rows == 18 * 6);
  CHECK(worst < 1e-14);
  // boundary rows drop out of the numerator only
  CHECK(expectation(Px, mask, v) == doctest::Approx(std::sin(k) * 18.0 / 20.0).epsilon(1e-12));
  const SparseMatrixC X = discrete_operator(Observable::PositionX, lat);
  CHECK(offdiagonal_count(X) == 0);
}

TEST_CASE("angular momentum of sampled continuum states") {
  const LatticeSpec lat = make_lattice(44, 44);
  const FieldConfig f = make_field_config(Complex(0.1, 0.0));
  const SparseMatrixC L = discrete_operator(Observable::AngularMomentum, lat);
  const auto mask = observable_mask(Observable::AngularMomentum, lat);
  CHECK(hermiticity_defect(L) < 1e-15);
  CHECK(std::abs(expectation(L, mask, sample_on_lattice(build_right_wavefunction(f, 0, 0), lat))) < 1e-10);
  CHECK(expectation(L, mask, sample_on_lattice(build_right_wavefunction(f, 3, 0), lat)) ==
        doctest::Approx(-3.0).epsilon(0.05));
  CHECK(expectation(L, mask, sample_on_lattice(build_right_wavefunction(f, 0, 2), lat)) ==
        doctest::Approx(2.0).epsilon(0.05));
}
