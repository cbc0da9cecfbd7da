#include "cuspmass/numerics.hpp"

#include "cuspmass/parallel.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace cuspmass::numerics {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxSimpsonDepth = 48;

// Gauss-Legendre rule on [a, b]; Boost stores the non-negative abscissae.
template <int N, class F>
double gauss_legendre(F&& f, double a, double b) {
  using Rule = boost::math::quadrature::gauss<double, N>;
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  const double c = (a + b) / 2, d = (b - a) / 2;
  double s = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] == 0) {
      s += w[k] * f(c);
    } else {
      s += w[k] * (f(c - d * x[k]) + f(c + d * x[k]));
    }
  }
  return d * s;
}

// Nodes and weights of the same rule on [a, b], in increasing order.
template <int N>
std::vector<std::pair<double, double>> gauss_nodes(double a, double b) {
  using Rule = boost::math::quadrature::gauss<double, N>;
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  const double c = (a + b) / 2, d = (b - a) / 2;
  std::vector<std::pair<double, double>> out;
  for (std::size_t k = 0; k < x.size(); ++k) {
    out.emplace_back(c + d * x[k], d * w[k]);
    if (x[k] != 0) out.emplace_back(c - d * x[k], d * w[k]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <class F>
double simpson_step(F& f, double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
  const double m = (a + b) / 2;
  const double lm = (a + m) / 2, rm = (m + b) / 2;
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  const double diff = left + right - whole;
  if (depth >= kMaxSimpsonDepth || std::abs(diff) <= 15 * tol) return left + right + diff / 15;
  return simpson_step(f, a, m, fa, flm, fm, left, tol / 2, depth + 1) +
         simpson_step(f, m, b, fm, frm, fb, right, tol / 2, depth + 1);
}

template <class F>
double adaptive_simpson(F& f, double a, double b, double tol) {
  const double fa = f(a), fb = f(b), fm = f((a + b) / 2);
  const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, 0);
}

template <class F>
double tanh_sinh(F& f, double a, double b, double tol) {
  const double c = (a + b) / 2, d = (b - a) / 2;
  auto term = [&](double u) {
    const double s = kPi / 2 * std::sinh(u);
    const double ch = std::cosh(s);
    const double w = kPi / 2 * std::cosh(u) / (ch * ch);
    const double x = std::tanh(s);
    return w * (f(c - d * x) + f(c + d * x));
  };
  constexpr double kUMax = 3.5;
  double h = 0.5;
  double sum = kPi / 2 * f(c);
  for (double u = h; u <= kUMax; u += h) sum += term(u);
  double estimate = d * h * sum;
  for (int level = 1; level <= 12; ++level) {
    h /= 2;
    for (double u = h; u <= kUMax; u += 2 * h) sum += term(u);
    const double next = d * h * sum;
    const double diff = std::abs(next - estimate);
    estimate = next;
    if (level >= 3 && diff <= tol) break;
  }
  return estimate;
}

std::complex<double> e_of(double x) { return std::polar(1.0, 2 * kPi * x); }

}  // namespace

double bessel_K_imag_order(double r, double x, double tol, QuadratureScheme scheme) {
  if (!(x > 0)) throw std::domain_error("K-Bessel argument must be positive");
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  // K = e^{-x} int exp(-x (cosh t - 1)) cos(r t) dt keeps the integrand O(1).
  const double cutoff = std::log(1 / tol) + 3 * std::log(10.0);
  const double t_max = std::acosh(1 + cutoff / x);
  const double width = std::min(0.5, kPi / (2 * std::max(1.0, std::abs(r))));
  const int panels = std::max(1, static_cast<int>(std::ceil(t_max / width)));
  const double step = t_max / panels;
  auto integrand = [x, r](double t) { return std::exp(-x * (std::cosh(t) - 1)) * std::cos(r * t); };
  const double panel_tol = tol / panels;
  double total = 0;
  for (int k = 0; k < panels; ++k) {
    const double a = k * step, b = (k + 1) * step;
    total += scheme == QuadratureScheme::adaptive_simpson ? adaptive_simpson(integrand, a, b, panel_tol)
                                                          : tanh_sinh(integrand, a, b, panel_tol);
  }
  const double value = std::exp(-x) * total;
  if (!std::isfinite(value)) throw std::runtime_error("K-Bessel quadrature failed");
  return value;
}

void SpectralForm::validate() const {
  if (!std::isfinite(r)) throw std::invalid_argument("spectral parameter must be finite");
  std::set<LatticeVector> seen;
  for (const auto& [beta, value] : coeffs) {
    if (beta.is_zero()) throw std::invalid_argument("form has an entry at beta = 0");
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
      throw std::invalid_argument("form coefficient is not finite");
    }
    if (!seen.insert(beta).second) throw std::invalid_argument("form repeats a coefficient");
  }
}

double radial_part(double r, std::int64_t norm, double y, double tol) {
  return std::pow(y, 1.5) * bessel_K_imag_order(r, 2 * kPi * std::sqrt(static_cast<double>(norm)) * y, tol);
}

std::complex<double> evaluate_form(const SpectralForm& form, const PointH4& z, double tol) {
  std::complex<double> sum = 0;
  for (const auto& [beta, value] : form.coeffs) {
    sum += value * radial_part(form.r, beta.norm(), z.y, tol) * e_of(real_part_beta_z(beta, z));
  }
  return sum;
}

namespace {

// int over |x_c| <= 1/2 of |sum_beta w_beta e(Re(beta z))|^2.
double box_integral(const SpectralForm& form, const std::vector<std::complex<double>>& weights) {
  const auto nodes = gauss_nodes<24>(-0.5, 0.5);
  const std::size_t n = form.coeffs.size();
  // Phases factor over the three coordinates.
  std::vector<std::vector<std::complex<double>>> e0(n), e1(n), e2(n);
  for (std::size_t m = 0; m < n; ++m) {
    const auto& b = form.coeffs[m].first;
    for (const auto& [x, w] : nodes) {
      e0[m].push_back(e_of(static_cast<double>(b.b0) * x));
      e1[m].push_back(e_of(-static_cast<double>(b.b1) * x));
      e2[m].push_back(e_of(-static_cast<double>(b.b2) * x));
    }
  }
  double total = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    double plane = 0;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      double line = 0;
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        std::complex<double> phi = 0;
        for (std::size_t m = 0; m < n; ++m) phi += weights[m] * e0[m][i] * e1[m][j] * e2[m][k];
        line += nodes[k].second * std::norm(phi);
      }
      plane += nodes[j].second * line;
    }
    total += nodes[i].second * plane;
  }
  return total;
}

double tail_length(double tol) { return (std::log(1 / tol) + 3 * std::log(10.0)) / (4 * kPi); }

}  // namespace

ParsevalReport parseval_check(const SpectralForm& form, double y, double tol) {
  form.validate();
  if (!(y > 0)) throw std::domain_error("height must be positive");
  ParsevalReport rep;
  std::vector<std::complex<double>> weights;
  for (const auto& [beta, value] : form.coeffs) {
    const double rad = radial_part(form.r, beta.norm(), y, tol);
    weights.push_back(value * rad);
    rep.coefficient_sum += std::norm(value) * rad * rad;
  }
  rep.box_integral = box_integral(form, weights);
  const double scale = std::max(std::abs(rep.coefficient_sum), std::abs(rep.box_integral));
  rep.relative_error = scale == 0 ? 0 : std::abs(rep.box_integral - rep.coefficient_sum) / scale;
  return rep;
}

double cusp_sum_I(const SpectralForm& form, double T, double tol) {
  form.validate();
  if (!(T >= 1)) throw std::domain_error("cusp height must be at least 1");
  const std::size_t n = form.coeffs.size();
  std::vector<double> per_beta(n, 0.0);
  constexpr double kPanel = 0.2;
  const int panels = static_cast<int>(std::ceil(tail_length(tol) / kPanel));
  parallel_chunks(n, worker_count(), [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t m = begin; m < end; ++m) {
      const auto& [beta, value] = form.coeffs[m];
      const double a = T * std::sqrt(static_cast<double>(beta.norm()));
      auto f = [&](double u) {
        const double k = bessel_K_imag_order(form.r, 2 * kPi * u, tol);
        return k * k / u;
      };
      double s = 0;
      for (int k = 0; k < panels; ++k) s += gauss_legendre<20>(f, a + k * kPanel, a + (k + 1) * kPanel);
      per_beta[m] = std::norm(value) * s;
    }
  });
  double total = 0;
  for (double v : per_beta) total += v;
  return total;
}

double cusp_integral_direct(const SpectralForm& form, double T, double tol) {
  form.validate();
  if (!(T >= 1)) throw std::domain_error("cusp height must be at least 1");
  if (form.coeffs.empty()) return 0;
  std::int64_t min_norm = form.coeffs.front().first.norm();
  for (const auto& c : form.coeffs) min_norm = std::min(min_norm, c.first.norm());
  constexpr double kPanel = 0.1;
  const double length = tail_length(tol) / std::sqrt(static_cast<double>(min_norm));
  const int panels = static_cast<int>(std::ceil(length / kPanel));
  std::vector<std::pair<double, double>> ys;
  for (int k = 0; k < panels; ++k) {
    for (const auto& node : gauss_nodes<20>(T + k * kPanel, T + (k + 1) * kPanel)) ys.push_back(node);
  }
  std::vector<double> slices(ys.size(), 0.0);
  parallel_chunks(ys.size(), worker_count(), [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t q = begin; q < end; ++q) {
      const double y = ys[q].first;
      std::vector<std::complex<double>> weights;
      for (const auto& [beta, value] : form.coeffs) weights.push_back(value * radial_part(form.r, beta.norm(), y, tol));
      slices[q] = ys[q].second * box_integral(form, weights) / std::pow(y, 4);
    }
  });
  double total = 0;
  for (double v : slices) total += v;
  return total;
}

double laplace_eigen_residual(const LatticeVector& beta, double r, const PointH4& z, double h, double tol) {
  if (beta.is_zero()) throw std::invalid_argument("mode needs beta != 0");
  if (!(h > 0) || !(z.y - h > 0)) throw std::domain_error("step must be positive and below the height");
  const std::int64_t norm = beta.norm();
  auto u = [&](double x0, double x1, double x2, double y) {
    return radial_part(r, norm, y, tol) * e_of(real_part_beta_z(beta, PointH4(x0, x1, x2, y)));
  };
  const std::complex<double> c = u(z.x0, z.x1, z.x2, z.y);
  if (std::abs(c) < 1e-300) throw std::domain_error("mode vanishes at this point");
  const double h2 = h * h;
  const auto d0 = (u(z.x0 + h, z.x1, z.x2, z.y) - 2.0 * c + u(z.x0 - h, z.x1, z.x2, z.y)) / h2;
  const auto d1 = (u(z.x0, z.x1 + h, z.x2, z.y) - 2.0 * c + u(z.x0, z.x1 - h, z.x2, z.y)) / h2;
  const auto d2 = (u(z.x0, z.x1, z.x2 + h, z.y) - 2.0 * c + u(z.x0, z.x1, z.x2 - h, z.y)) / h2;
  const auto up = u(z.x0, z.x1, z.x2, z.y + h);
  const auto down = u(z.x0, z.x1, z.x2, z.y - h);
  const auto dyy = (up - 2.0 * c + down) / h2;
  const auto dy = (up - down) / (2 * h);
  const auto laplacian = z.y * z.y * (d0 + d1 + d2 + dyy) - 2 * z.y * dy;
  return std::abs(laplacian + (9.0 / 4 + r * r) * c) / std::abs(c);
}

std::vector<double> convergence_orders(const LatticeVector& beta, double r, const PointH4& z,
                                       const std::vector<double>& steps) {
  std::vector<double> residuals, orders;
  for (double h : steps) residuals.push_back(laplace_eigen_residual(beta, r, z, h));
  for (std::size_t k = 0; k + 1 < steps.size(); ++k) {
    orders.push_back(std::log(residuals[k] / residuals[k + 1]) / std::log(steps[k] / steps[k + 1]));
  }
  return orders;
}

}  // namespace cuspmass::numerics
