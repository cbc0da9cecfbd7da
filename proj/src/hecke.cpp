#include "cuspmass/hecke.hpp"

#include "cuspmass/parallel.hpp"

#include <cmath>
#include <set>

namespace cuspmass::hecke {

using quaternions::conjugate_action;
using quaternions::orbit_table;
using quaternions::star_action;

QuadExtScalar::QuadExtScalar(Rational a, Rational b, std::int64_t p) : a_(std::move(a)), b_(std::move(b)), p_(p) {
  if (b_ != 0 && !quaternions::is_odd_prime(p_)) {
    throw std::invalid_argument("a + b sqrt(p) needs an odd prime p when b != 0");
  }
  normalize();
}

std::int64_t QuadExtScalar::merge(std::int64_t p, std::int64_t q) {
  if (p == 0) return q;
  if (q == 0 || p == q) return p;
  throw ContextMismatch("mixing Q(sqrt " + std::to_string(p) + ") with Q(sqrt " + std::to_string(q) + ")");
}

double QuadExtScalar::to_double() const {
  if (b_ == 0) return a_.get_d();
  return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(p_));
}

QuadExtScalar QuadExtScalar::div_sqrt(std::int64_t q) const {
  merge(p_, q);
  return {b_, Rational(a_ / q), q};
}

QuadExtScalar& QuadExtScalar::operator+=(const QuadExtScalar& o) {
  p_ = merge(p_, o.p_);
  a_ += o.a_;
  b_ += o.b_;
  normalize();
  return *this;
}

QuadExtScalar& QuadExtScalar::operator-=(const QuadExtScalar& o) {
  p_ = merge(p_, o.p_);
  a_ -= o.a_;
  b_ -= o.b_;
  normalize();
  return *this;
}

QuadExtScalar& QuadExtScalar::operator*=(const Rational& r) {
  a_ *= r;
  b_ *= r;
  normalize();
  return *this;
}

QuadExtScalar operator*(const QuadExtScalar& x, const QuadExtScalar& y) {
  const std::int64_t p = QuadExtScalar::merge(x.p_, y.p_);
  if (p == 0) return QuadExtScalar(Rational(x.a_ * y.a_));
  return {x.a_ * y.a_ + p * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, p};
}

QuadExtScalar operator/(const QuadExtScalar& x, const QuadExtScalar& y) {
  if (y.is_zero()) throw std::domain_error("division by zero in Q(sqrt p)");
  if (y.b_ == 0) return {x.a_ / y.a_, x.b_ / y.a_, x.p_};
  const Rational n = y.a_ * y.a_ - y.p_ * y.b_ * y.b_;
  return x * QuadExtScalar(y.a_ / n, -y.b_ / n, y.p_);
}

std::string format_scalar(const QuadExtScalar& x) {
  if (x.b() == 0) return to_short_string(x.a());
  std::string out = x.a() == 0 ? "" : to_short_string(x.a()) + (x.b() < 0 ? " - " : " + ");
  const Rational mag = x.a() == 0 ? x.b() : Rational(abs(x.b()));
  return out + to_short_string(mag) + "*sqrt(" + std::to_string(x.p()) + ")";
}

CoefficientField linear_combination(const Rational& x, const CoefficientField& a, const Rational& y,
                                    const CoefficientField& b) {
  CoefficientField out(a.p() != 0 ? a.p() : b.p());
  if (a.p() != 0 && b.p() != 0 && a.p() != b.p()) throw ContextMismatch("fields over different primes");
  for (const auto& [beta, v] : a.entries()) out.add(beta, scale(v, x));
  for (const auto& [beta, v] : b.entries()) out.add(beta, scale(v, y));
  out.set_radius(std::max(a.radius(), b.radius()));
  return out;
}

NumericField to_numeric(const CoefficientField& a) {
  NumericField out;
  for (const auto& [beta, v] : a.entries()) out.set(beta, v.to_complex());
  out.set_radius(a.radius());
  return out;
}

int legendre_symbol(std::int64_t a, std::int64_t p) {
  if (!quaternions::is_odd_prime(p)) throw std::invalid_argument("Legendre symbol needs an odd prime");
  std::int64_t r = a % p;
  if (r < 0) r += p;
  if (r == 0) return 0;
  __int128 base = r, acc = 1;
  for (std::int64_t e = (p - 1) / 2; e > 0; e >>= 1) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
  }
  return acc == 1 ? 1 : -1;
}

Rational epsilon_factor(const LatticeVector& beta, std::int64_t p) {
  if (beta.is_zero()) throw std::invalid_argument("E(beta, p) needs beta != 0");
  const std::int64_t n = beta.norm();
  std::int64_t numerator;
  if (beta.divisible_by(p)) {
    numerator = p * p - 1;
  } else if (n % p == 0) {
    numerator = -1;
  } else if (legendre_symbol(-n, p) == 1) {
    numerator = p - 1;
  } else {
    numerator = -p - 1;
  }
  return Rational(numerator) / Rational(p * p);
}

std::vector<LatticeVector> hecke_candidates(int ell, const NormPOrbitTable& table,
                                            const std::vector<LatticeVector>& support) {
  const std::int64_t p = table.p;
  const std::int64_t p2 = p * p;
  std::set<LatticeVector> out;
  auto put = [&](const std::optional<LatticeVector>& b) {
    if (b && !b->is_zero()) out.insert(*b);
  };
  for (const auto& g : support) {
    switch (ell) {
      case 1:
        put(g.divided_by(p));
        put(p * g);
        for (const auto& a : table.representatives) put(star_action(a, g).divided_by(p));
        break;
      case 2:
        put(g);
        for (const auto& a : table.representatives) {
          const LatticeVector c = star_action(a, g);
          put(c);
          put(c.divided_by(p2));
        }
        break;
      case 3:
        put(g);
        put(g.divided_by(p2));
        put(p2 * g);
        for (const auto& a : table.representatives) {
          const LatticeVector c = star_action(a, g);
          put(c);
          put(c.divided_by(p2));
          for (const auto& b : table.representatives) put(star_action(b * a, g).divided_by(p2));
        }
        break;
      default:
        throw std::invalid_argument("Hecke operator index must be 1, 2 or 3");
    }
  }
  return {out.begin(), out.end()};
}

namespace {

template <class Scalar>
Scalar value_impl(int ell, const NormPOrbitTable& table, const BasicField<Scalar>& a, const LatticeVector& beta) {
  if (beta.is_zero()) return Scalar{};
  const std::int64_t p = table.p;
  const std::int64_t p2 = p * p;
  const auto& reps = table.representatives;
  Scalar r{};
  switch (ell) {
    case 1: {
      r = a(p * beta) + a(beta.divided_by(p));
      Scalar t{};
      for (const auto& al : reps) t += a(conjugate_action(al, beta).divided_by(p));
      r += div_sqrt(t, p);
      break;
    }
    case 2: {
      Scalar t{};
      for (const auto& al : reps) {
        const LatticeVector c = conjugate_action(al, beta);
        t += a(c);
        t += a(c.divided_by(p2));
      }
      r = div_sqrt(t, p) + scale(a(beta), epsilon_factor(beta, p));
      break;
    }
    case 3: {
      const Rational inv_p = Rational(1) / Rational(p);
      const Rational ind_beta = beta.divisible_by(p) ? 1 : 0;
      r = a(p2 * beta) + a(beta.divided_by(p2));
      const Rational diagonal = ind_beta - Rational(p + 1) / Rational(p) * epsilon_factor(beta, p) -
                                Rational(p2 + p + 1) / Rational(p2 * p);
      r += scale(a(beta), diagonal);
      Scalar t{};
      Scalar u{};
      for (const auto& al : reps) {
        const LatticeVector c = conjugate_action(al, beta);
        const bool ind_c = c.divisible_by(p);
        t += scale(a(c), Rational(ind_c ? 1 : 0) - inv_p);
        t += scale(a(c.divided_by(p2)), ind_beta - inv_p);
        if (ind_c) {
          for (const auto& aj : reps) u += a(conjugate_action(aj, c).divided_by(p2));
        }
      }
      r += div_sqrt(t, p);
      r += scale(u, inv_p);
      break;
    }
    default:
      throw std::invalid_argument("Hecke operator index must be 1, 2 or 3");
  }
  return r;
}

template <class Scalar>
BasicField<Scalar> apply_impl(int ell, const NormPOrbitTable& table, const BasicField<Scalar>& a,
                              std::int64_t context) {
  std::vector<LatticeVector> support;
  support.reserve(a.size());
  for (const auto& [beta, v] : a.entries()) support.push_back(beta);
  const std::vector<LatticeVector> cands = hecke_candidates(ell, table, support);
  std::vector<Scalar> values(cands.size());
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(worker_count(), cands.size() / 64 + 1));
  parallel_chunks(cands.size(), chunks, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) values[k] = value_impl(ell, table, a, cands[k]);
  });
  BasicField<Scalar> out(context);
  for (std::size_t k = 0; k < cands.size(); ++k) out.set(cands[k], values[k]);
  const std::int64_t p2 = table.p * table.p;
  out.set_radius(a.radius() * (ell == 3 ? p2 * p2 : p2));
  return out;
}

const NormPOrbitTable& checked_table(std::int64_t p) {
  if (!quaternions::is_odd_prime(p)) throw std::invalid_argument("Hecke operators need an odd prime");
  return orbit_table(p);
}

void check_context(const CoefficientField& a, std::int64_t p) {
  if (a.p() != 0 && a.p() != p) {
    throw ContextMismatch("field over Q(sqrt " + std::to_string(a.p()) + ") given to an operator at p = " +
                          std::to_string(p));
  }
}

template <class Scalar>
BasicField<Scalar> symmetrize_impl(const BasicField<Scalar>& a) {
  BasicField<Scalar> out(a.p());
  const Rational eighth(1, 8);
  for (const auto& [g, v] : a.entries()) {
    for (const auto& u : quaternions::unit_quaternions()) out.add(conjugate_action(u, g), scale(v, eighth));
  }
  out.set_radius(a.radius());
  return out;
}

EigenResidual residual_impl(const NumericField& a, const EigenvalueTriple& lambda) {
  const std::int64_t p = lambda.p;
  const NormPOrbitTable& table = checked_table(p);
  const std::int64_t bound = a.radius() / (p * p * p * p);
  EigenResidual res;
  const std::array<double, 3> ls = {lambda.lambda1, lambda.lambda2, lambda.lambda3};
  std::int64_t r = 0;
  while ((r + 1) * (r + 1) <= bound) ++r;
  for (std::int64_t b0 = -r; b0 <= r; ++b0) {
    for (std::int64_t b1 = -r; b1 <= r; ++b1) {
      for (std::int64_t b2 = -r; b2 <= r; ++b2) {
        const LatticeVector beta{b0, b1, b2};
        if (beta.is_zero() || beta.norm() > bound) continue;
        ++res.safe_points;
        for (int ell = 1; ell <= 3; ++ell) {
          const double d = std::abs(value_impl(ell, table, a, beta) - ls[ell - 1] * a(beta));
          res.sup[ell - 1] = std::max(res.sup[ell - 1], d);
        }
      }
    }
  }
  if (res.safe_points == 0) throw std::domain_error("empty safe support: need radius >= p^4");
  return res;
}

}  // namespace

ComplexQ hecke_value(int ell, const NormPOrbitTable& table, const CoefficientField& a, const LatticeVector& beta) {
  check_context(a, table.p);
  return value_impl(ell, table, a, beta);
}

std::complex<double> hecke_value(int ell, const NormPOrbitTable& table, const NumericField& a,
                                 const LatticeVector& beta) {
  return value_impl(ell, table, a, beta);
}

CoefficientField apply_hecke(int ell, std::int64_t p, const CoefficientField& a) {
  return apply_hecke(ell, checked_table(p), a);
}

CoefficientField apply_hecke(int ell, const NormPOrbitTable& table, const CoefficientField& a) {
  check_context(a, table.p);
  return apply_impl(ell, table, a, table.p);
}

NumericField apply_hecke(int ell, std::int64_t p, const NumericField& a) {
  return apply_hecke(ell, checked_table(p), a);
}

NumericField apply_hecke(int ell, const NormPOrbitTable& table, const NumericField& a) {
  return apply_impl(ell, table, a, 0);
}

Rational hecke_relation_constant(std::int64_t p) {
  const Rational q = Rational(1) / Rational(p);
  return 1 + q + q * q + q * q * q;
}

CoefficientField verify_hecke_relation(std::int64_t p, const CoefficientField& a) {
  const CoefficientField h1 = apply_hecke(1, p, a);
  const CoefficientField h11 = apply_hecke(1, p, h1);
  const CoefficientField h2 = apply_hecke(2, p, a);
  const CoefficientField h3 = apply_hecke(3, p, a);
  CoefficientField out(p);
  const Rational c2 = -(1 + Rational(1) / Rational(p));
  const Rational c0 = -hecke_relation_constant(p);
  for (const auto& [beta, v] : h11.entries()) out.add(beta, v);
  for (const auto& [beta, v] : h2.entries()) out.add(beta, scale(v, c2));
  for (const auto& [beta, v] : h3.entries()) out.add(beta, scale(v, Rational(-1)));
  for (const auto& [beta, v] : a.entries()) out.add(beta, scale(v, c0));
  return out;
}

double verify_commutativity(std::int64_t p, std::int64_t q, int ell, int m, const NumericField& a) {
  if (p == q) throw std::invalid_argument("commutativity check needs distinct primes");
  const NumericField xy = apply_hecke(ell, p, apply_hecke(m, q, a));
  const NumericField yx = apply_hecke(m, q, apply_hecke(ell, p, a));
  double worst = 0;
  for (const auto& [beta, v] : xy.entries()) worst = std::max(worst, std::abs(v - yx(beta)));
  for (const auto& [beta, v] : yx.entries()) worst = std::max(worst, std::abs(v - xy(beta)));
  return worst;
}

CoefficientField unit_symmetrize(const CoefficientField& a) { return symmetrize_impl(a); }
NumericField unit_symmetrize(const NumericField& a) { return symmetrize_impl(a); }

double EigenvalueTriple::relation_residual() const {
  const double q = 1.0 / static_cast<double>(p);
  return lambda1 * lambda1 - (1 + q) * lambda2 - lambda3 - (1 + q + q * q + q * q * q);
}

EigenResidual eigen_residual(const CoefficientField& a, const EigenvalueTriple& lambda) {
  check_context(a, lambda.p);
  return residual_impl(to_numeric(a), lambda);
}

EigenResidual eigen_residual(const NumericField& a, const EigenvalueTriple& lambda) {
  return residual_impl(a, lambda);
}

namespace {

template <class Make>
void fill_random(int support, int coord_bound, std::mt19937_64& rng, Make make) {
  if (coord_bound < 1) throw std::invalid_argument("coordinate bound must be positive");
  const std::int64_t side = 2 * static_cast<std::int64_t>(coord_bound) + 1;
  if (support < 0 || support > side * side * side - 1) throw std::invalid_argument("support size out of range");
  std::uniform_int_distribution<int> coord(-coord_bound, coord_bound);
  std::set<LatticeVector> chosen;
  while (static_cast<int>(chosen.size()) < support) {
    const LatticeVector beta{coord(rng), coord(rng), coord(rng)};
    if (beta.is_zero() || !chosen.insert(beta).second) continue;
    make(beta);
  }
}

}  // namespace

CoefficientField random_field(std::int64_t p, int support, int coord_bound, int value_bound, std::mt19937_64& rng) {
  CoefficientField out(p);
  std::uniform_int_distribution<int> value(-value_bound, value_bound);
  fill_random(support, coord_bound, rng, [&](const LatticeVector& beta) {
    ComplexQ v;
    while (v.is_zero()) {
      const long ra = value(rng), rb = value(rng), ia = value(rng), ib = value(rng);
      v = {QuadExtScalar(ra, rb, p), QuadExtScalar(ia, ib, p)};
    }
    out.set(beta, v);
  });
  return out;
}

NumericField random_numeric_field(int support, int coord_bound, int value_bound, std::mt19937_64& rng) {
  NumericField out;
  std::uniform_int_distribution<int> value(-value_bound, value_bound);
  fill_random(support, coord_bound, rng, [&](const LatticeVector& beta) {
    double v = 0;
    while (v == 0) v = value(rng);
    out.set(beta, v);
  });
  return out;
}

}  // namespace cuspmass::hecke
