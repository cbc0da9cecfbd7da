#pragma once

// SV_2 matrices with quaternion entries acting on H^4 = {(x0, x1, x2, y) : y > 0},
// Krieg's fundamental domain F and its cusp regions.

#include "cuspmass/quaternions.hpp"
#include "cuspmass/rational.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace cuspmass::geometry {

struct RationalQuaternion {
  Rational a, b, c, d;

  static RationalQuaternion from(const quaternions::LipschitzQuaternion& q) { return {q.a, q.b, q.c, q.d}; }

  RationalQuaternion prime() const { return {a, -b, -c, d}; }
  RationalQuaternion star() const { return {a, b, c, -d}; }
  RationalQuaternion bar() const { return {a, -b, -c, -d}; }
  Rational norm() const { return a * a + b * b + c * c + d * d; }
  bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }
  bool is_real() const { return b == 0 && c == 0 && d == 0; }
  bool is_vector() const { return d == 0; }
  bool is_integral() const;

  friend RationalQuaternion operator+(const RationalQuaternion& x, const RationalQuaternion& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
  }
  friend RationalQuaternion operator-(const RationalQuaternion& x, const RationalQuaternion& y) {
    return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
  }
  friend RationalQuaternion operator-(const RationalQuaternion& x) { return {-x.a, -x.b, -x.c, -x.d}; }
  friend RationalQuaternion operator*(const RationalQuaternion& x, const RationalQuaternion& y);
  friend bool operator==(const RationalQuaternion&, const RationalQuaternion&) = default;
};

/// [[a, b], [c, d]].
struct IsometryMatrix {
  RationalQuaternion a, b, c, d;

  static IsometryMatrix identity();
  /// [[0, 1], [-1, 0]].
  static IsometryMatrix inversion();
  /// [[1, beta], [0, 1]].
  static IsometryMatrix translate(const quaternions::LatticeVector& beta);
  /// diag(u, u') for a unit u.
  static IsometryMatrix diagonal_unit(const quaternions::LipschitzQuaternion& u);
  static IsometryMatrix rot_i() { return diagonal_unit({0, 1, 0, 0}); }
  static IsometryMatrix rot_j() { return diagonal_unit({0, 0, 1, 0}); }
  static IsometryMatrix rot_k() { return diagonal_unit({0, 0, 0, 1}); }

  /// Parses 16 integers "a0 a1 a2 a3 b0 ... d3" (commas or spaces).
  static IsometryMatrix parse(const std::string& text);

  friend IsometryMatrix operator*(const IsometryMatrix& g, const IsometryMatrix& h);
  friend bool operator==(const IsometryMatrix&, const IsometryMatrix&) = default;
};

class NotSimilitude : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// ad* - bc*; throws NotSimilitude when it is not a real scalar.
Rational pseudo_det(const IsometryMatrix& g);

/// Integral entries and g J g^dagger = J.
bool is_integral_sv2(const IsometryMatrix& g);

struct PointH4 {
  double x0 = 0, x1 = 0, x2 = 0, y = 1;

  PointH4() = default;
  PointH4(double x0_, double x1_, double x2_, double y_);
  double abs2() const { return x0 * x0 + x1 * x1 + x2 * x2 + y * y; }
  static PointH4 parse(const std::string& text);
};

std::string format_point(const PointH4& z);

/// (az + b)(cz + d)^{-1} computed in C_3 with z = x0 + x1 i1 + x2 i2 + y i3.
PointH4 act(const IsometryMatrix& g, const PointH4& z);

/// cosh of the hyperbolic distance.
double cosh_distance(const PointH4& z, const PointH4& w);

struct Translate {
  quaternions::LatticeVector beta;
  friend bool operator==(const Translate&, const Translate&) = default;
};
struct Inversion {
  friend bool operator==(const Inversion&, const Inversion&) = default;
};
struct RotI {
  friend bool operator==(const RotI&, const RotI&) = default;
};
struct RotJ {
  friend bool operator==(const RotJ&, const RotJ&) = default;
};
struct RotK {
  friend bool operator==(const RotK&, const RotK&) = default;
};

using GeneratorToken = std::variant<Translate, Inversion, RotI, RotJ, RotK>;

/// Tokens are applied left to right: word[0] acts first.
using GeneratorWord = std::vector<GeneratorToken>;

IsometryMatrix token_matrix(const GeneratorToken& t);
IsometryMatrix evaluate_word(const GeneratorWord& word);
std::string format_word(const GeneratorWord& word);

inline constexpr double kBoundaryTol = 1e-9;

enum class RegionKind { fundamental, cusp, symmetric_cusp };

struct Region {
  RegionKind kind = RegionKind::fundamental;
  double T = 1;

  static Region F() { return {RegionKind::fundamental, 1}; }
  static Region S(double T) { return {RegionKind::cusp, T}; }
  static Region S_tilde(double T) { return {RegionKind::symmetric_cusp, T}; }
};

bool is_in_region(const PointH4& z, const Region& region, double tol = kBoundaryTol);

struct Reduction {
  GeneratorWord word;
  PointH4 point;
  int iterations = 0;
};

class ReductionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxReductionIterations = 10000;

/// Alternates translation into the unit box, sign-flip rotations and the
/// inversion s until the point lies in F.
Reduction reduce_to_fundamental_domain(const PointH4& z, double tol = kBoundaryTol);

struct CuspDecompositionReport {
  double T = 0;
  int samples = 0;
  int single_matches = 0;
  int boundary_ties = 0;
  std::array<int, 4> matches_per_matrix{};  // I, diag(i,i'), diag(j,j'), diag(k,k')
};

class DecompositionViolation : public std::runtime_error {
 public:
  DecompositionViolation(const std::string& msg, PointH4 z) : std::runtime_error(msg), witness(z) {}
  PointH4 witness;
};

/// The four matrices I, diag(i,i'), diag(j,j'), diag(k,k').
const std::array<IsometryMatrix, 4>& cusp_tiling_matrices();

struct CuspMatch {
  int interior = 0;         // preimages strictly inside S_T
  int boundary = 0;         // preimages within tol of the boundary of S_T
  int first_interior = -1;  // index into cusp_tiling_matrices()
};

CuspMatch classify_cusp_point(const PointH4& z, double T, double tol = kBoundaryTol);

/// Uniform samples in S~_T with y in [T, 4T]; throws DecompositionViolation
/// on a sample with zero or several interior matches and no boundary tie.
CuspDecompositionReport verify_cusp_decomposition(double T, int sample_count, std::uint64_t seed = 0);

}  // namespace cuspmass::geometry
