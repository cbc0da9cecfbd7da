#pragma once

// Weighted lattice sums of |A(beta)|^2 along multiples, the conjugate sums
// R^{p,l}_d, multiplicity classes M_l(K) and the amplified sum, together
// with two-sided reports of the bounds relating them.

#include "cuspmass/hecke.hpp"
#include "cuspmass/rational.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cuspmass::sums {

using hecke::CoefficientField;
using hecke::EigenvalueTriple;
using hecke::QuadExtScalar;
using quaternions::LatticeVector;

using LambdaTable = std::map<std::int64_t, EigenvalueTriple>;

struct PrimeWindow {
  double P = 1;
  std::vector<std::int64_t> primes;  // sorted odd primes in [P/2, P]

  /// All odd primes in [P/2, P].
  static PrimeWindow full(double P);
  /// An arbitrary subset; every element must be an odd prime in [P/2, P].
  static PrimeWindow subset(double P, std::vector<std::int64_t> primes);
  /// Subset with P taken as the largest element.
  static PrimeWindow of(std::vector<std::int64_t> primes);
};

struct MultiplicitySpec {
  int ell = 1;
  double K = 1;
  PrimeWindow window;
};

/// Sum over nonzero beta with N(beta) <= z and d | beta of |A(beta)|^2.
QuadExtScalar sum_S_d(const CoefficientField& a, std::int64_t d, const Rational& z);

/// (1/p) sum over nonzero beta with N(beta) <= z, d | beta of
/// |sum_i A(alpha_i' beta bar(alpha_i) / p^ell)|^2.
QuadExtScalar sum_R(const CoefficientField& a, std::int64_t p, int ell, std::int64_t d, const Rational& z);

/// Number of primes p in the window with p^ell | beta.
int multiplicity_count(const LatticeVector& beta, int ell, const PrimeWindow& window);

/// beta != 0 and at most K window primes have p^ell | beta.
bool multiplicity_membership(const LatticeVector& beta, const MultiplicitySpec& spec);

struct SharpFlatSplit {
  QuadExtScalar total;                // S(z)
  QuadExtScalar sharp;                // over the intersection of all M_l(K_l)
  std::vector<QuadExtScalar> flat;    // S_l^flat per spec
  bool consistent = true;             // single spec: sharp + flat == total
};

SharpFlatSplit split_sharp_flat(const CoefficientField& a, const std::vector<MultiplicitySpec>& specs,
                                const Rational& z);

/// Sum over beta in the intersection of the M_l(K_l), N(beta) <= z, of
/// |A(beta)|^2 * sum_{p in window, p does not divide beta} |lambda_ell(p)|^2.
double amplified_sum(const CoefficientField& a, const PrimeWindow& window, const LambdaTable& lambdas, int ell,
                     const std::vector<MultiplicitySpec>& specs, const Rational& z);

double lambda_value(const EigenvalueTriple& t, int ell);
const EigenvalueTriple& lookup_lambda(const LambdaTable& lambdas, std::int64_t p);

/// sum over a, b >= 0 with a + 2b <= ell of |lambda_1|^{2a} |lambda_2|^{2b}.
double script_L(const EigenvalueTriple& t, int ell);

struct ParameterChoice {
  std::map<std::int64_t, double> L_ell;  // script L_ell(p)
  double sup_L_ell = 0;
  std::int64_t K = 0;
};

/// K_ell = ceil(e * B * |P| * L / (P/2)^{2 ell nu}) - 1; the factor L is
/// dropped when include_L is false.
ParameterChoice choose_parameters(double B, const PrimeWindow& window, double L, int ell, double nu,
                                  const LambdaTable& lambdas, bool include_L = true);

struct PrimePartition {
  double y = 1;
  double P = 1;
  int J = 0;
  std::vector<std::int64_t> Q;
  /// Bin index per prime for ell = 1, 2, 3; -1 when |lambda|^2 > 2^J / 100.
  std::map<std::int64_t, std::array<int, 3>> bins;
  std::map<std::array<int, 3>, std::vector<std::int64_t>> cells;
  std::vector<std::int64_t> unbinned;
  std::array<int, 3> best{};
  std::size_t best_size = 0;
  bool best_is_origin = false;
  bool pigeonhole_holds = false;  // |best| >= |Q| / (J+1)^3
};

/// Dyadic bin of |lambda|^2: 0 when <= 1/100, else the i with
/// 2^{i-1}/100 < |lambda|^2 <= 2^i/100.
int dyadic_bin(double lambda_sq);

PrimePartition partition_primes(const LambdaTable& lambdas, double y);

struct ShiftIdentityReport {
  QuadExtScalar lhs;  // R^{p,l}_{d p^l}(z)
  QuadExtScalar rhs;  // R^{p,0}_d(z / p^{2l})
  bool equal = false;
};

ShiftIdentityReport verify_R_shift_identity(const CoefficientField& a, std::int64_t p, int ell, std::int64_t d,
                                            const Rational& z);

/// Exact bounds on |lambda_3(p)| over real triples satisfying the Hecke
/// relation with |lambda_1|^2, |lambda_2|^2 <= 1/100.
struct Lambda3Bounds {
  std::int64_t p = 0;
  Rational min_abs;  // attained at lambda_1^2 = 1/100, lambda_2 = -1/10
  Rational max_abs;
  bool square_at_least_half = false;
  bool square_at_least_one = false;
  bool square_at_most_four = false;
};

Lambda3Bounds lambda3_bounds(std::int64_t p);

enum class Inequality { prop6_1, cor6_2, l6_3i, l6_3ii, l6_3iii, l6_4a, l6_4b, l6_5 };

std::optional<Inequality> parse_inequality(const std::string& name);
std::string inequality_name(Inequality which);

struct InequalityInputs {
  CoefficientField a;
  std::int64_t p = 3;
  std::int64_t d = 1;
  std::int64_t c = 1;
  int k = 1;
  int ell = 1;
  Rational z = 1;
  double K = 1;
  PrimeWindow window;
  LambdaTable lambdas;
  std::optional<double> constant_A;  // implied constant of the divisor-power bounds
  std::optional<double> constant_B;  // implied constant of the flat-part bound
  bool assert_with_constant = false;
};

struct SumReport {
  std::string name;
  double left = 0;
  double right = 0;
  std::optional<double> ratio;
  bool vacuous = false;
  std::map<std::string, std::string> params;
  std::optional<bool> asserted;  // set only under assert_with_constant
};

SumReport inequality_report(Inequality which, const InequalityInputs& in);

}  // namespace cuspmass::sums
