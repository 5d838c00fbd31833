#include <doctest.h>

#include <cmath>

#include "nhll/core.hpp"

using namespace nhll;

TEST_CASE("field config derives cyclotron frequency and magnetic length") {
  const FieldConfig f = make_field_config(Complex(0.1, -0.001));
  CHECK(f.omega_c() == Complex(0.1, -0.001));
  // a_c^2 B = 1 on the principal branch
  CHECK(std::abs(f.a_c() * f.a_c() * f.B() - 1.0) < 1e-14);
  CHECK(f.a_c().real() > 0.0);
  CHECK(std::abs(f.landau_energy(2) - Complex(0.25, -0.0025)) < 1e-15);
  CHECK(f.gauge() == Gauge::Symmetric);
  CHECK(f.with_gauge(Gauge::Landau).gauge() == Gauge::Landau);
  CHECK(f.with_electric(Eigen::Vector2d(0.005, 0.0)).E().x() == 0.005);
}

TEST_CASE("field config rejects non-positive real parts") {
  CHECK_THROWS_AS(make_field_config(Complex(0.0, 0.3)), std::invalid_argument);
  CHECK_THROWS_AS(make_field_config(Complex(-0.1, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(make_field_config(Complex(NAN, 0.0)), std::invalid_argument);
  const FieldConfig free = make_field_free_config();
  CHECK(free.field_free());
  CHECK_THROWS_AS(require_magnetic(free, "test"), std::invalid_argument);
}

TEST_CASE("gauge names round trip") {
  CHECK(gauge_from_string(to_string(Gauge::Landau)) == Gauge::Landau);
  CHECK(gauge_from_string("symmetric") == Gauge::Symmetric);
  CHECK_THROWS_AS(gauge_from_string("coulomb"), std::invalid_argument);
}

TEST_CASE("lattice sites are centered and indexed x-fastest") {
  const LatticeSpec lat = make_lattice(4, 3);
  CHECK(lat.size() == 12);
  CHECK(site_coordinates(lat, 0) == Eigen::Vector2d(-1.5, -1.0));
  CHECK(site_coordinates(lat, 11) == Eigen::Vector2d(1.5, 1.0));
  CHECK(site_index(lat, 1, 2) == 9);
  CHECK(site_index(lat, Eigen::Vector2d(0.5, 0.0)) == 6);
  CHECK_THROWS_AS(site_index(lat, Eigen::Vector2d(0.25, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(site_coordinates(lat, 12), std::out_of_range);
  CHECK(all_site_coordinates(lat).rowwise().sum().norm() < 1e-14);
  CHECK(is_interior_site(lat, site_index(lat, 1, 1)));
  CHECK_FALSE(is_interior_site(lat, site_index(lat, 3, 1)));
  CHECK_THROWS_AS(make_lattice(0, 3), std::invalid_argument);
}

TEST_CASE("grid with spacing covers the requested extent") {
  const GridSpec g = make_grid_with_spacing(1.05, 0.1);
  CHECK(g.points == 23);
  CHECK(g.spacing() == doctest::Approx(0.1));
  CHECK(g.extent >= 1.05);
  CHECK(g.coordinate(0) == doctest::Approx(-g.extent));
  CHECK(g.coordinate(g.points - 1) == doctest::Approx(g.extent));
  CHECK_THROWS_AS(make_grid(1.0, 2), std::invalid_argument);
}
