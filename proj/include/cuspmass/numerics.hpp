#pragma once

// Floating-point layer: K-Bessel functions of imaginary order, the Fourier
// expansion with K-Bessel radial parts, the fixed-height Parseval identity,
// the cusp integral and a finite-difference Laplacian check.

#include "cuspmass/geometry.hpp"
#include "cuspmass/quaternions.hpp"

#include <complex>
#include <utility>
#include <vector>

namespace cuspmass::numerics {

using geometry::PointH4;
using quaternions::LatticeVector;

enum class QuadratureScheme { adaptive_simpson, tanh_sinh };

/// K_{ir}(x) = int_0^inf exp(-x cosh t) cos(r t) dt, the classical modified
/// Bessel function of the second kind at imaginary order. The tail where
/// x (cosh t - 1) exceeds log(1/tol) + 3 log 10 is dropped.
double bessel_K_imag_order(double r, double x, double tol = 1e-12,
                           QuadratureScheme scheme = QuadratureScheme::adaptive_simpson);

struct SpectralForm {
  double r = 0;  // eigenvalue 9/4 + r^2
  std::vector<std::pair<LatticeVector, std::complex<double>>> coeffs;

  /// Throws on beta = 0, repeated beta or non-finite values.
  void validate() const;
};

/// Re(beta z) for beta = b0 + b1 i + b2 j and z = x0 + x1 i + x2 j + y k.
inline double real_part_beta_z(const LatticeVector& b, const PointH4& z) {
  return static_cast<double>(b.b0) * z.x0 - static_cast<double>(b.b1) * z.x1 - static_cast<double>(b.b2) * z.x2;
}

/// y^{3/2} K_{ir}(2 pi sqrt(N) y).
double radial_part(double r, std::int64_t norm, double y, double tol = 1e-12);

/// sum_beta A(beta) y^{3/2} K_{ir}(2 pi sqrt(N(beta)) y) e(Re(beta z)).
std::complex<double> evaluate_form(const SpectralForm& form, const PointH4& z, double tol = 1e-12);

struct ParsevalReport {
  double box_integral = 0;  // quadrature of |phi|^2 over the unit box at height y
  double coefficient_sum = 0;  // sum |A|^2 y^3 K^2
  double relative_error = 0;
};

/// Tensor Gauss-Legendre quadrature over |x_c| <= 1/2 at fixed y.
ParsevalReport parseval_check(const SpectralForm& form, double y, double tol = 1e-12);

/// sum_beta |A(beta)|^2 int_{T sqrt N(beta)}^inf K_{ir}(2 pi u)^2 du / u.
double cusp_sum_I(const SpectralForm& form, double T, double tol = 1e-12);

/// The same cusp integral as a direct quadrature of |phi|^2 dx dy / y^4
/// over |x_c| <= 1/2, y >= T.
double cusp_integral_direct(const SpectralForm& form, double T, double tol = 1e-12);

/// |Delta u + (9/4 + r^2) u| / |u| for the single mode
/// u = y^{3/2} K_{ir}(2 pi sqrt(N) y) e(Re(beta z)), with
/// Delta = y^2 (sum of second partials) - 2 y d/dy by central differences.
double laplace_eigen_residual(const LatticeVector& beta, double r, const PointH4& z, double h = 1e-3,
                              double tol = 1e-14);

/// log(res(h_k) / res(h_{k+1})) / log(h_k / h_{k+1}) for consecutive steps.
std::vector<double> convergence_orders(const LatticeVector& beta, double r, const PointH4& z,
                                       const std::vector<double>& steps);

}  // namespace cuspmass::numerics
