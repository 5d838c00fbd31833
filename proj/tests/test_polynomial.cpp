#include <doctest.h>

#include <complex>

#include "nhll/polynomial.hpp"

using nhll::Polynomial2;
using C = std::complex<double>;

TEST_CASE("derivatives and products of a bivariate polynomial") {
  // p = 1 + 2x + 3xy + y^2
  Polynomial2<double>::CoeffMatrix c = Polynomial2<double>::CoeffMatrix::Zero(3, 3);
  c(0, 0) = 1;
  c(1, 0) = 2;
  c(1, 1) = 3;
  c(0, 2) = 1;
  const Polynomial2<double> p(c);
  CHECK(p.degree() == 2);
  CHECK(p(2.0, -1.0) == doctest::Approx(1 + 4 - 6 + 1));
  CHECK(p.derivative_x()(2.0, -1.0) == doctest::Approx(2 + 3 * -1.0));
  CHECK(p.derivative_y()(2.0, -1.0) == doctest::Approx(3 * 2.0 + 2 * -1.0));
  CHECK(p.times_x()(2.0, -1.0) == doctest::Approx(2.0 * 0));
  CHECK(p.times_y().degree() == 3);
  const Polynomial2<double> q = p - p;
  CHECK(q.degree() == -1);
  CHECK((2.0 * p)(0.5, 0.5) == doctest::Approx(2 * p(0.5, 0.5)));
}

TEST_CASE("complex coefficients and mixed-capacity sums") {
  Polynomial2<C> a(C(0, 1));
  Polynomial2<C> b = a.times_x().times_y();
  const Polynomial2<C> s = a + b;
  CHECK(s.capacity() == 3);
  CHECK(std::abs(s(2.0, 3.0) - C(0, 1) * (1.0 + 6.0)) < 1e-14);
  CHECK(s.coeff(5, 5) == C(0, 0));
  CHECK_THROWS_AS(Polynomial2<C>(Polynomial2<C>::CoeffMatrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("long double evaluation accepts double coordinates") {
  Polynomial2<std::complex<long double>> p(std::complex<long double>(2, 0));
  const auto v = p.times_x()(0.5, 0.25);
  CHECK(double(v.real()) == doctest::Approx(1.0));
}
