#pragma once

// The three Hecke coefficient operators H_1, H_2, H_3 for an odd prime p,
// acting on finitely supported fields beta -> A(beta) over V^3(Z). Lookups
// off the lattice or at beta = 0 return zero.

#include "cuspmass/quaternions.hpp"
#include "cuspmass/rational.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace cuspmass::hecke {

using quaternions::LatticeVector;
using quaternions::NormPOrbitTable;

class ContextMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// a + b sqrt(p). The context p is kept only while b != 0; rationals carry
/// p == 0 and mix freely with any context.
class QuadExtScalar {
 public:
  QuadExtScalar() = default;
  QuadExtScalar(Rational a) : a_(std::move(a)) {}  // NOLINT: implicit promotion
  QuadExtScalar(long a) : a_(a) {}                 // NOLINT
  QuadExtScalar(Rational a, Rational b, std::int64_t p);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  std::int64_t p() const { return p_; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }
  double to_double() const;

  /// x / sqrt(q) = b + (a/q) sqrt(q).
  QuadExtScalar div_sqrt(std::int64_t q) const;

  QuadExtScalar& operator+=(const QuadExtScalar& o);
  QuadExtScalar& operator-=(const QuadExtScalar& o);
  QuadExtScalar& operator*=(const Rational& r);

  friend QuadExtScalar operator+(QuadExtScalar x, const QuadExtScalar& y) { return x += y; }
  friend QuadExtScalar operator-(QuadExtScalar x, const QuadExtScalar& y) { return x -= y; }
  friend QuadExtScalar operator-(const QuadExtScalar& x) { return {-x.a_, -x.b_, x.p_}; }
  friend QuadExtScalar operator*(const QuadExtScalar& x, const QuadExtScalar& y);
  friend QuadExtScalar operator/(const QuadExtScalar& x, const QuadExtScalar& y);
  friend bool operator==(const QuadExtScalar& x, const QuadExtScalar& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.p_ == y.p_);
  }

 private:
  static std::int64_t merge(std::int64_t p, std::int64_t q);
  void normalize() {
    if (b_ == 0) p_ = 0;
  }

  Rational a_ = 0, b_ = 0;
  std::int64_t p_ = 0;
};

std::string format_scalar(const QuadExtScalar& x);

struct ComplexQ {
  QuadExtScalar re, im;

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
  /// |x|^2 = re^2 + im^2.
  QuadExtScalar abs2() const { return re * re + im * im; }

  ComplexQ& operator+=(const ComplexQ& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ComplexQ& operator-=(const ComplexQ& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend ComplexQ operator+(ComplexQ x, const ComplexQ& y) { return x += y; }
  friend ComplexQ operator-(ComplexQ x, const ComplexQ& y) { return x -= y; }
  friend ComplexQ operator*(const ComplexQ& x, const ComplexQ& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  friend bool operator==(const ComplexQ&, const ComplexQ&) = default;
};

/// Scalar hooks used by the generic operators.
inline bool scalar_is_zero(const ComplexQ& x) { return x.is_zero(); }
inline bool scalar_is_zero(const std::complex<double>& x) { return x == std::complex<double>(0, 0); }
inline ComplexQ scale(const ComplexQ& x, const Rational& r) {
  ComplexQ out = x;
  out.re *= r;
  out.im *= r;
  return out;
}
inline std::complex<double> scale(const std::complex<double>& x, const Rational& r) { return x * r.get_d(); }
inline ComplexQ div_sqrt(const ComplexQ& x, std::int64_t p) { return {x.re.div_sqrt(p), x.im.div_sqrt(p)}; }
inline std::complex<double> div_sqrt(const std::complex<double>& x, std::int64_t p) {
  return x / std::sqrt(static_cast<double>(p));
}

template <class Scalar>
class BasicField {
 public:
  using Entries = std::map<LatticeVector, Scalar>;

  BasicField() = default;
  explicit BasicField(std::int64_t p) : p_(p) {}

  /// Prime context of the scalars; 0 for plain rationals or floating fields.
  std::int64_t p() const { return p_; }
  void set_p(std::int64_t p) { p_ = p; }
  /// Declared support radius z_0: every entry has N(beta) <= z_0.
  std::int64_t radius() const { return radius_; }
  void set_radius(std::int64_t r) {
    for (const auto& [beta, v] : entries_) {
      if (beta.norm() > r) throw std::invalid_argument("declared radius smaller than support");
    }
    radius_ = r;
  }
  const Entries& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  Scalar operator()(const LatticeVector& beta) const {
    auto it = entries_.find(beta);
    return it == entries_.end() ? Scalar{} : it->second;
  }
  Scalar operator()(const std::optional<LatticeVector>& beta) const { return beta ? (*this)(*beta) : Scalar{}; }

  /// Replaces the entry at beta; zero values erase it.
  void set(const LatticeVector& beta, const Scalar& value) {
    if (beta.is_zero()) throw std::invalid_argument("coefficient fields carry no entry at beta = 0");
    if (scalar_is_zero(value)) {
      entries_.erase(beta);
      return;
    }
    entries_[beta] = value;
    radius_ = std::max(radius_, beta.norm());
  }

  void add(const LatticeVector& beta, const Scalar& value) { set(beta, (*this)(beta) + value); }

  friend bool operator==(const BasicField& x, const BasicField& y) { return x.entries_ == y.entries_; }

 private:
  std::int64_t p_ = 0;
  std::int64_t radius_ = 0;
  Entries entries_;
};

using CoefficientField = BasicField<ComplexQ>;
using NumericField = BasicField<std::complex<double>>;

/// x*A + y*B over the union of supports.
CoefficientField linear_combination(const Rational& x, const CoefficientField& a, const Rational& y,
                                    const CoefficientField& b);
NumericField to_numeric(const CoefficientField& a);

/// Euler criterion (a|p).
int legendre_symbol(std::int64_t a, std::int64_t p);

/// The four-case factor E(beta, p); beta must be nonzero.
Rational epsilon_factor(const LatticeVector& beta, std::int64_t p);

/// Points at which H_ell A can be nonzero: preimages of supp(A) under every
/// argument map appearing in the formula for H_ell.
std::vector<LatticeVector> hecke_candidates(int ell, const NormPOrbitTable& table, const std::vector<LatticeVector>& support);

/// The right-hand side of the coefficient relation for lambda_ell(p) A(beta),
/// evaluated at a single beta.
ComplexQ hecke_value(int ell, const NormPOrbitTable& table, const CoefficientField& a, const LatticeVector& beta);
std::complex<double> hecke_value(int ell, const NormPOrbitTable& table, const NumericField& a,
                                 const LatticeVector& beta);

/// H_ell A. The declared radius grows to p^2 z_0 (ell = 1, 2) or p^4 z_0.
CoefficientField apply_hecke(int ell, std::int64_t p, const CoefficientField& a);
CoefficientField apply_hecke(int ell, const NormPOrbitTable& table, const CoefficientField& a);
NumericField apply_hecke(int ell, std::int64_t p, const NumericField& a);
NumericField apply_hecke(int ell, const NormPOrbitTable& table, const NumericField& a);

/// 1 + 1/p + 1/p^2 + 1/p^3.
Rational hecke_relation_constant(std::int64_t p);

/// H_1(H_1 A) - (1 + 1/p) H_2 A - H_3 A - (1 + 1/p + 1/p^2 + 1/p^3) A.
CoefficientField verify_hecke_relation(std::int64_t p, const CoefficientField& a);

/// max |H_ell(p) H_m(q) A - H_m(q) H_ell(p) A| in floating point.
double verify_commutativity(std::int64_t p, std::int64_t q, int ell, int m, const NumericField& a);

/// (1/8) sum over units u of A(u' beta bar(u)). True eigenform coefficients
/// are invariant under this averaging.
CoefficientField unit_symmetrize(const CoefficientField& a);
NumericField unit_symmetrize(const NumericField& a);

struct EigenvalueTriple {
  std::int64_t p = 0;
  double lambda1 = 0, lambda2 = 0, lambda3 = 0;

  /// lambda1^2 - (1 + 1/p) lambda2 - lambda3 - (1 + 1/p + 1/p^2 + 1/p^3).
  double relation_residual() const;
};

struct EigenResidual {
  std::array<double, 3> sup{};
  std::size_t safe_points = 0;  // beta with N(beta) <= z_0 / p^4
};

/// Sup over the safe region of |H_ell A - lambda_ell A|; throws when the
/// safe region is empty.
EigenResidual eigen_residual(const CoefficientField& a, const EigenvalueTriple& lambda);
EigenResidual eigen_residual(const NumericField& a, const EigenvalueTriple& lambda);

/// Random field with `support` distinct points of |coords| <= coord_bound and
/// re, im of the form u + v sqrt(p) with u, v in [-value_bound, value_bound].
CoefficientField random_field(std::int64_t p, int support, int coord_bound, int value_bound, std::mt19937_64& rng);

/// Same shape with real integer values only (for the floating operators).
NumericField random_numeric_field(int support, int coord_bound, int value_bound, std::mt19937_64& rng);

}  // namespace cuspmass::hecke
