#pragma once

// Lipschitz integral quaternions Z + Zi + Zj + Zk and the lattice
// V^3(Z) = Z + Zi + Zj on which they act by beta -> alpha' beta bar(alpha).

#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cuspmass::quaternions {

struct LipschitzQuaternion {
  std::int64_t a = 0, b = 0, c = 0, d = 0;  // a + b i + c j + d k

  std::int64_t norm() const { return a * a + b * b + c * c + d * d; }
  /// Main involution: i, j flip sign (i = i_1, j = i_2, k = i_1 i_2).
  LipschitzQuaternion prime() const { return {a, -b, -c, d}; }
  /// Reverse involution: k = i_1 i_2 -> i_2 i_1 = -k.
  LipschitzQuaternion star() const { return {a, b, c, -d}; }
  /// Quaternion conjugate, the composition of both.
  LipschitzQuaternion bar() const { return {a, -b, -c, -d}; }

  bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }
  bool divisible_by(std::int64_t m) const { return a % m == 0 && b % m == 0 && c % m == 0 && d % m == 0; }

  friend LipschitzQuaternion operator+(const LipschitzQuaternion& x, const LipschitzQuaternion& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
  }
  friend LipschitzQuaternion operator-(const LipschitzQuaternion& x, const LipschitzQuaternion& y) {
    return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
  }
  friend LipschitzQuaternion operator-(const LipschitzQuaternion& x) { return {-x.a, -x.b, -x.c, -x.d}; }
  friend LipschitzQuaternion operator*(std::int64_t s, const LipschitzQuaternion& x) {
    return {s * x.a, s * x.b, s * x.c, s * x.d};
  }
  friend LipschitzQuaternion operator*(const LipschitzQuaternion& x, const LipschitzQuaternion& y) {
    return {x.a * y.a - x.b * y.b - x.c * y.c - x.d * y.d,
            x.a * y.b + x.b * y.a + x.c * y.d - x.d * y.c,
            x.a * y.c - x.b * y.d + x.c * y.a + x.d * y.b,
            x.a * y.d + x.b * y.c - x.c * y.b + x.d * y.a};
  }
  friend auto operator<=>(const LipschitzQuaternion&, const LipschitzQuaternion&) = default;
};

/// b0 + b1 i + b2 j; the k-coordinate is identically zero.
struct LatticeVector {
  std::int64_t b0 = 0, b1 = 0, b2 = 0;

  std::int64_t norm() const { return b0 * b0 + b1 * b1 + b2 * b2; }
  bool is_zero() const { return b0 == 0 && b1 == 0 && b2 == 0; }
  bool divisible_by(std::int64_t m) const { return b0 % m == 0 && b1 % m == 0 && b2 % m == 0; }
  /// beta / m when m | beta; nullopt otherwise (the lattice lookup convention).
  std::optional<LatticeVector> divided_by(std::int64_t m) const {
    if (!divisible_by(m)) return std::nullopt;
    return LatticeVector{b0 / m, b1 / m, b2 / m};
  }
  LipschitzQuaternion as_quaternion() const { return {b0, b1, b2, 0}; }

  friend LatticeVector operator*(std::int64_t s, const LatticeVector& v) { return {s * v.b0, s * v.b1, s * v.b2}; }
  friend LatticeVector operator+(const LatticeVector& x, const LatticeVector& y) {
    return {x.b0 + y.b0, x.b1 + y.b1, x.b2 + y.b2};
  }
  friend LatticeVector operator-(const LatticeVector& x) { return {-x.b0, -x.b1, -x.b2}; }
  friend auto operator<=>(const LatticeVector&, const LatticeVector&) = default;
};

std::ostream& operator<<(std::ostream& os, const LipschitzQuaternion& q);
std::ostream& operator<<(std::ostream& os, const LatticeVector& v);

/// Projects a quaternion with zero k-part; throws std::logic_error otherwise.
LatticeVector to_lattice_vector(const LipschitzQuaternion& q);

/// p-adic valuation with v(0) = infinity.
class Valuation {
 public:
  constexpr Valuation() = default;
  constexpr explicit Valuation(int value) : value_(value) {}
  static constexpr Valuation infinity() { return Valuation(kInfinite); }

  constexpr bool is_infinite() const { return value_ == kInfinite; }
  constexpr int value() const { return value_; }
  /// Saturating: infinity + k = infinity.
  constexpr Valuation plus(int k) const { return is_infinite() ? *this : Valuation(value_ + k); }

  friend constexpr auto operator<=>(const Valuation&, const Valuation&) = default;

 private:
  static constexpr int kInfinite = std::numeric_limits<int>::max();
  int value_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Valuation& v);

Valuation valuation(const LatticeVector& v, std::int64_t q);
Valuation valuation(const LipschitzQuaternion& x, std::int64_t q);

bool is_prime(std::int64_t n);
bool is_odd_prime(std::int64_t n);

/// The eight units {±1, ±i, ±j, ±k}.
const std::array<LipschitzQuaternion, 8>& unit_quaternions();

/// All quaternions of norm n in lexicographic (a, b, c, d) order.
std::vector<LipschitzQuaternion> enumerate_norm(std::int64_t n);

/// Lexicographically smallest element of the left unit-orbit {u x}.
LipschitzQuaternion canonical_representative(const LipschitzQuaternion& x);

struct NormPOrbitTable {
  std::int64_t p = 0;
  std::vector<LipschitzQuaternion> all_elements;     // 8(p+1) of them
  std::vector<LipschitzQuaternion> representatives;  // p+1 of them
};

/// Representatives are lexicographic minima of their orbits, sorted.
/// Throws std::invalid_argument unless p is an odd prime.
NormPOrbitTable orbit_representatives(std::int64_t p);

/// Shared, lazily built table per prime (thread safe).
const NormPOrbitTable& orbit_table(std::int64_t p);

/// A valid table with each representative replaced by u_i * alpha_i for the
/// given unit indices (one per representative, unit_quaternions() order).
NormPOrbitTable rerepresent(const NormPOrbitTable& table, const std::vector<int>& unit_indices);

/// alpha' beta bar(alpha).
LatticeVector conjugate_action(const LipschitzQuaternion& alpha, const LatticeVector& beta);

/// alpha^* gamma alpha; inverts conjugate_action up to the factor N(alpha)^2.
LatticeVector star_action(const LipschitzQuaternion& alpha, const LatticeVector& gamma);

struct LemmaWitness {
  std::string statement;
  LatticeVector beta;
  LipschitzQuaternion alpha;
  std::int64_t prime = 0;
  std::string detail;
};

class LemmaViolation : public std::runtime_error {
 public:
  explicit LemmaViolation(LemmaWitness w);
  const LemmaWitness& witness() const { return witness_; }

 private:
  LemmaWitness witness_;
};

struct ConjugationSweepReport {
  std::int64_t p = 0;
  std::int64_t bound = 0;
  std::vector<std::int64_t> other_primes;
  std::uint64_t betas_tested = 0;
  std::uint64_t pairs_tested = 0;          // (beta, alpha) with alpha over all norm-p
  std::uint64_t valuation_bound_checks = 0;
  std::uint64_t other_prime_checks = 0;
  std::uint64_t multiplicity_checks = 0;   // deltas examined for the p^2 | delta criterion
  std::uint64_t multiplicity_triggered = 0;  // deltas with more than 16 alphas
  int max_changed_representatives = 0;    // max #{i : v_p changes}
  int max_raised_set_size = 0;            // max |I(beta)|
  int max_m2 = 0;                         // max #{i : v_p(alpha_i^* d alpha_i) > v_p(d) + 1}
  std::uint64_t violations = 0;
};

struct ConjugationSweepOptions {
  bool check_valuation_lemma = true;
  bool check_multiplicity_lemma = true;
  std::vector<std::int64_t> other_primes;  // defaults to {3, 5, 7, 11} \ {p}
};

/// Exhaustive sweep over nonzero beta with |coords| <= bound. Throws
/// LemmaViolation with the witness on the first failure. Cost is
/// O(bound^3 * p).
ConjugationSweepReport verify_conjugation_lemmas(std::int64_t p, std::int64_t bound,
                                                 const ConjugationSweepOptions& options = {});

}  // namespace cuspmass::quaternions
