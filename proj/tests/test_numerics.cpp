#include "cuspmass/clifford.hpp"
#include "cuspmass/numerics.hpp"

#include "doctest.h"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <random>

using namespace cuspmass;
using namespace cuspmass::numerics;

namespace {

double oracle_K(double r, double x) {
  boost::math::quadrature::exp_sinh<double> q;
  return q.integrate([=](double t) { return std::exp(-x * std::cosh(t)) * std::cos(r * t); });
}

SpectralForm sample_form() {
  SpectralForm f;
  f.r = 1.5;
  f.coeffs = {{{1, 0, 0}, {1, 0}}, {{-1, 0, 0}, {1, 0}}, {{0, 1, 1}, {0.5, -0.25}}, {{1, 1, -1}, {-0.3, 0.7}},
              {{2, 0, 1}, {0.1, 0.1}}};
  return f;
}

}  // namespace

TEST_CASE("K-Bessel at order zero against Boost") {
  for (double x : {0.1, 0.5, 1.0, 3.0, 10.0}) {
    CAPTURE(x);
    const double ref = boost::math::cyl_bessel_k(0.0, x);
    CHECK(std::abs(bessel_K_imag_order(0, x) - ref) <= 1e-12 * std::max(1.0, ref));
    CHECK(std::abs(bessel_K_imag_order(0, x, 1e-12, QuadratureScheme::tanh_sinh) - ref) <= 1e-12 * std::max(1.0, ref));
  }
}

TEST_CASE("K-Bessel of imaginary order against high-precision values") {
  CHECK(bessel_K_imag_order(1, 2 * M_PI) == doctest::Approx(0.000851004200143943).epsilon(1e-9));
  CHECK(bessel_K_imag_order(5, 1) == doctest::Approx(0.000380461827997564).epsilon(1e-8));
  CHECK(std::abs(bessel_K_imag_order(10, 0.1) - -2.62809174726363e-8) <= 1e-13);
}

TEST_CASE("K-Bessel against an independent double-exponential quadrature") {
  for (double r : {0.0, 0.5, 1.0, 2.5}) {
    for (double x : {0.5, 1.0, 2.0, 6.0}) {
      CAPTURE(r);
      CAPTURE(x);
      CHECK(std::abs(bessel_K_imag_order(r, x) - oracle_K(r, x)) <= 1e-11);
    }
  }
}

TEST_CASE("the two quadrature schemes agree") {
  for (double r = 0; r <= 10; r += 2.5) {
    for (double x : {0.1, 1.0, 5.0, 20.0}) {
      const double a = bessel_K_imag_order(r, x, 1e-12, QuadratureScheme::adaptive_simpson);
      const double b = bessel_K_imag_order(r, x, 1e-12, QuadratureScheme::tanh_sinh);
      CHECK(std::abs(a - b) <= 1e-12);
    }
  }
}

TEST_CASE("K-Bessel decays in x beyond the turning point") {
  double prev = bessel_K_imag_order(2, 3);
  for (double x = 3.5; x <= 30; x += 0.5) {
    const double k = bessel_K_imag_order(2, x);
    CHECK(k > 0);
    CHECK(k < prev);
    prev = k;
  }
}

TEST_CASE("real part of beta z agrees with Clifford multiplication") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<long> coord(-5, 5);
  for (int t = 0; t < 50; ++t) {
    const LatticeVector b{coord(rng), coord(rng), coord(rng)};
    const long x0 = coord(rng), x1 = coord(rng), x2 = coord(rng), y = std::abs(coord(rng)) + 1;
    const auto beta = clifford::CliffordElement::vector(2, {Rational(b.b0), Rational(b.b1), Rational(b.b2)});
    const auto z = clifford::CliffordElement::vector(3, {Rational(x0), Rational(x1), Rational(x2), Rational(y)});
    const double expected = (beta.embed(3) * z).real_part().get_d();
    CHECK(real_part_beta_z(b, PointH4(x0, x1, x2, y)) == expected);
  }
}

TEST_CASE("evaluating a form") {
  SpectralForm f;
  f.r = 1;
  f.coeffs = {{{1, 0, 0}, {1, 0}}};
  const double rad = radial_part(1, 1, 1);
  CHECK(rad == doctest::Approx(bessel_K_imag_order(1, 2 * M_PI)));
  CHECK(radial_part(1, 4, 2) == doctest::Approx(std::pow(2.0, 1.5) * bessel_K_imag_order(1, 8 * M_PI)));
  const auto v = evaluate_form(f, PointH4(0.25, 0, 0, 1));
  CHECK(std::abs(v - std::complex<double>(0, rad)) < 1e-15);

  const auto g = sample_form();
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 20; ++t) {
    const PointH4 z(u(rng), u(rng), u(rng), 0.5 + std::abs(u(rng)));
    const auto base = evaluate_form(g, z);
    CHECK(std::abs(evaluate_form(g, PointH4(z.x0 + 1, z.x1, z.x2, z.y)) - base) < 1e-12);
    CHECK(std::abs(evaluate_form(g, PointH4(z.x0, z.x1 - 1, z.x2, z.y)) - base) < 1e-12);
    CHECK(std::abs(evaluate_form(g, PointH4(z.x0, z.x1, z.x2 + 2, z.y)) - base) < 1e-12);
  }
  SpectralForm bad;
  bad.coeffs = {{{0, 0, 0}, {1, 0}}};
  CHECK_THROWS(bad.validate());
  bad.coeffs = {{{1, 0, 0}, {1, 0}}, {{1, 0, 0}, {2, 0}}};
  CHECK_THROWS(bad.validate());
}

TEST_CASE("Parseval at fixed height") {
  const auto f = sample_form();
  for (double y : {0.3, 0.7, 1.0, 2.0}) {
    const auto rep = parseval_check(f, y);
    CAPTURE(y);
    CHECK(rep.relative_error < 1e-10);
    CHECK(rep.coefficient_sum > 0);
  }
  // A real form: conjugate coefficients at -beta.
  SpectralForm real;
  real.r = 0.5;
  real.coeffs = {{{1, 1, 0}, {0.5, 0.5}}, {{-1, -1, 0}, {0.5, -0.5}}};
  const PointH4 z(0.1, 0.2, 0.3, 0.8);
  CHECK(std::abs(evaluate_form(real, z).imag()) < 1e-15);
  CHECK(parseval_check(real, 0.8).relative_error < 1e-10);
  CHECK_THROWS(parseval_check(real, 0));
}

TEST_CASE("cusp integral") {
  SpectralForm empty;
  CHECK(cusp_sum_I(empty, 1) == 0);
  const auto f = sample_form();
  double prev = cusp_sum_I(f, 1);
  CHECK(prev > 0);
  for (double T = 1.2; T <= 3; T += 0.2) {
    const double v = cusp_sum_I(f, T);
    CHECK(v < prev);
    prev = v;
  }
  for (double T : {1.0, 1.5}) {
    const double a = cusp_sum_I(f, T);
    const double b = cusp_integral_direct(f, T);
    CAPTURE(T);
    CHECK(std::abs(a - b) <= 1e-8 * a);
  }
}

TEST_CASE("finite-difference Laplacian residuals") {
  const PointH4 z(0.1, 0.2, 0.3, 1.0);
  // Independent high-precision evaluation of the same stencil.
  const std::vector<std::pair<double, double>> a = {{1e-3, 2.102278e-4}, {1e-2, 2.10213e-2}, {5e-3, 5.2556e-3},
                                                    {2.5e-3, 1.31392e-3}};
  for (const auto& [h, ref] : a) CHECK(laplace_eigen_residual({1, 0, 0}, 1, z, h) == doctest::Approx(ref).epsilon(1e-4));
  const std::vector<std::pair<double, double>> b = {{1e-3, 6.964173e-4}, {1e-2, 6.96466e-2}, {5e-3, 1.74107e-2},
                                                    {2.5e-3, 4.35262e-3}};
  for (const auto& [h, ref] : b) CHECK(laplace_eigen_residual({1, 1, 0}, 0, z, h) == doctest::Approx(ref).epsilon(1e-4));

  for (double order : convergence_orders({1, 0, 0}, 1, z, {1e-2, 5e-3, 2.5e-3, 1.25e-3})) {
    CHECK(order == doctest::Approx(2).epsilon(0.01));
  }
  // Halving h divides the residual by about four.
  for (double h : {1e-2, 5e-3}) {
    const double ratio = laplace_eigen_residual({1, 0, 0}, 1, z, h) / laplace_eigen_residual({1, 0, 0}, 1, z, h / 2);
    CHECK(ratio >= 3);
    CHECK(ratio <= 5);
  }
  CHECK_THROWS_AS(laplace_eigen_residual({1, 0, 0}, 1, PointH4(0, 0, 0, 200)), std::domain_error);
}
