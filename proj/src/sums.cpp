#include "cuspmass/sums.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace cuspmass::sums {

using quaternions::is_odd_prime;
using quaternions::orbit_table;
using quaternions::star_action;
using quaternions::conjugate_action;

namespace {

bool norm_at_most(const LatticeVector& beta, const Rational& z) { return Rational(beta.norm()) <= z; }

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  for (int k = 0; k < e; ++k) r *= b;
  return r;
}

bool window_contains(double P, std::int64_t p) {
  const double slack = 1e-9 * std::max(1.0, P);
  return static_cast<double>(p) >= P / 2 - slack && static_cast<double>(p) <= P + slack;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

PrimeWindow PrimeWindow::full(double P) {
  if (!(P >= 1)) throw std::invalid_argument("prime window needs P >= 1");
  PrimeWindow w;
  w.P = P;
  const auto top = static_cast<std::int64_t>(std::floor(P * (1 + 1e-12)));
  for (std::int64_t p = 3; p <= top; p += 2) {
    if (is_odd_prime(p) && window_contains(P, p)) w.primes.push_back(p);
  }
  return w;
}

PrimeWindow PrimeWindow::subset(double P, std::vector<std::int64_t> primes) {
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  for (std::int64_t p : primes) {
    if (!is_odd_prime(p) || !window_contains(P, p)) {
      throw std::invalid_argument("window prime " + std::to_string(p) + " is not an odd prime in [P/2, P]");
    }
  }
  return {P, std::move(primes)};
}

PrimeWindow PrimeWindow::of(std::vector<std::int64_t> primes) {
  if (primes.empty()) return {1, {}};
  const std::int64_t top = *std::max_element(primes.begin(), primes.end());
  return subset(static_cast<double>(top), std::move(primes));
}

QuadExtScalar sum_S_d(const CoefficientField& a, std::int64_t d, const Rational& z) {
  if (d < 1) throw std::invalid_argument("S_d needs d >= 1");
  QuadExtScalar total;
  for (const auto& [beta, v] : a.entries()) {
    if (norm_at_most(beta, z) && beta.divisible_by(d)) total += v.abs2();
  }
  return total;
}

QuadExtScalar sum_R(const CoefficientField& a, std::int64_t p, int ell, std::int64_t d, const Rational& z) {
  if (d < 1 || ell < 0) throw std::invalid_argument("R^{p,l}_d needs d >= 1 and l >= 0");
  const auto& table = orbit_table(p);
  const std::int64_t pl = ipow(p, ell);
  // A(alpha' beta bar(alpha) / p^l) = A(gamma) forces beta = p^l alpha^* gamma alpha / p^2.
  std::set<LatticeVector> betas;
  for (const auto& [g, v] : a.entries()) {
    for (const auto& al : table.representatives) {
      const LatticeVector lifted = pl * star_action(al, g);
      if (auto beta = lifted.divided_by(p * p); beta && !beta->is_zero()) betas.insert(*beta);
    }
  }
  QuadExtScalar total;
  for (const auto& beta : betas) {
    if (!norm_at_most(beta, z) || !beta.divisible_by(d)) continue;
    hecke::ComplexQ inner;
    for (const auto& al : table.representatives) inner += a(conjugate_action(al, beta).divided_by(pl));
    total += inner.abs2();
  }
  total *= Rational(1) / Rational(p);
  return total;
}

int multiplicity_count(const LatticeVector& beta, int ell, const PrimeWindow& window) {
  int count = 0;
  for (std::int64_t p : window.primes) {
    if (beta.divisible_by(ipow(p, ell))) ++count;
  }
  return count;
}

bool multiplicity_membership(const LatticeVector& beta, const MultiplicitySpec& spec) {
  return !beta.is_zero() && multiplicity_count(beta, spec.ell, spec.window) <= spec.K;
}

SharpFlatSplit split_sharp_flat(const CoefficientField& a, const std::vector<MultiplicitySpec>& specs,
                                const Rational& z) {
  SharpFlatSplit out;
  out.flat.resize(specs.size());
  for (const auto& [beta, v] : a.entries()) {
    if (!norm_at_most(beta, z)) continue;
    const QuadExtScalar w = v.abs2();
    out.total += w;
    bool sharp = true;
    for (std::size_t s = 0; s < specs.size(); ++s) {
      if (!multiplicity_membership(beta, specs[s])) {
        out.flat[s] += w;
        sharp = false;
      }
    }
    if (sharp) out.sharp += w;
  }
  if (specs.size() == 1) out.consistent = out.sharp + out.flat[0] == out.total;
  return out;
}

double lambda_value(const EigenvalueTriple& t, int ell) {
  switch (ell) {
    case 1: return t.lambda1;
    case 2: return t.lambda2;
    case 3: return t.lambda3;
  }
  throw std::invalid_argument("eigenvalue index must be 1, 2 or 3");
}

const EigenvalueTriple& lookup_lambda(const LambdaTable& lambdas, std::int64_t p) {
  auto it = lambdas.find(p);
  if (it == lambdas.end()) throw std::invalid_argument("lambda table has no entry for p = " + std::to_string(p));
  return it->second;
}

double amplified_sum(const CoefficientField& a, const PrimeWindow& window, const LambdaTable& lambdas, int ell,
                     const std::vector<MultiplicitySpec>& specs, const Rational& z) {
  for (std::int64_t p : window.primes) lookup_lambda(lambdas, p);
  double total = 0;
  for (const auto& [beta, v] : a.entries()) {
    if (!norm_at_most(beta, z)) continue;
    if (!std::all_of(specs.begin(), specs.end(), [&](const auto& s) { return multiplicity_membership(beta, s); })) {
      continue;
    }
    double weight = 0;
    for (std::int64_t p : window.primes) {
      if (beta.divisible_by(p)) continue;
      const double l = lambda_value(lookup_lambda(lambdas, p), ell);
      weight += l * l;
    }
    total += v.abs2().to_double() * weight;
  }
  return total;
}

double script_L(const EigenvalueTriple& t, int ell) {
  double total = 0;
  const double l1 = t.lambda1 * t.lambda1;
  const double l2 = t.lambda2 * t.lambda2;
  for (int b = 0; 2 * b <= ell; ++b) {
    for (int a = 0; a + 2 * b <= ell; ++a) total += std::pow(l1, a) * std::pow(l2, b);
  }
  return total;
}

ParameterChoice choose_parameters(double B, const PrimeWindow& window, double L, int ell, double nu,
                                  const LambdaTable& lambdas, bool include_L) {
  if (B < 1) throw std::invalid_argument("B must be >= 1");
  if (!(nu > 0 && nu < 1)) throw std::invalid_argument("nu must lie in (0, 1)");
  ParameterChoice out;
  for (std::int64_t p : window.primes) {
    const double v = script_L(lookup_lambda(lambdas, p), ell);
    out.L_ell[p] = v;
    out.sup_L_ell = std::max(out.sup_L_ell, v);
  }
  const double size = static_cast<double>(window.primes.size());
  const double denom = std::pow(window.P / 2, 2 * ell * nu);
  const double x = std::numbers::e * B * size * (include_L ? L : 1.0) / denom;
  out.K = static_cast<std::int64_t>(std::ceil(x)) - 1;
  return out;
}

int dyadic_bin(double lambda_sq) {
  if (lambda_sq <= 0.01) return 0;
  int i = 1;
  while (lambda_sq > std::ldexp(1.0, i) / 100) ++i;
  return i;
}

PrimePartition partition_primes(const LambdaTable& lambdas, double y) {
  if (!(y >= 1)) throw std::invalid_argument("partition needs y >= 1");
  PrimePartition out;
  out.y = y;
  out.P = std::pow(y, 1.0 / 8);
  const double rounded = std::round(out.P);
  if (std::abs(out.P - rounded) < 1e-9 * std::max(1.0, rounded)) out.P = rounded;
  out.J = static_cast<int>(std::ceil(2 * std::log(y)));
  out.Q = PrimeWindow::full(std::max(1.0, out.P)).primes;
  for (std::int64_t p : out.Q) {
    const auto& t = lookup_lambda(lambdas, p);
    std::array<int, 3> key{};
    bool ok = true;
    for (int ell = 1; ell <= 3; ++ell) {
      const double l = lambda_value(t, ell);
      key[ell - 1] = dyadic_bin(l * l);
      if (key[ell - 1] > out.J) ok = false;
    }
    if (!ok) {
      out.bins[p] = {-1, -1, -1};
      out.unbinned.push_back(p);
      continue;
    }
    out.bins[p] = key;
    out.cells[key].push_back(p);
  }
  for (const auto& [key, members] : out.cells) {
    if (members.size() > out.best_size) {
      out.best_size = members.size();
      out.best = key;
    }
  }
  out.best_is_origin = out.best_size > 0 && out.best == std::array<int, 3>{0, 0, 0};
  const double cube = std::pow(out.J + 1.0, 3);
  out.pigeonhole_holds = out.Q.empty() || static_cast<double>(out.best_size) >= out.Q.size() / cube;
  return out;
}

ShiftIdentityReport verify_R_shift_identity(const CoefficientField& a, std::int64_t p, int ell, std::int64_t d,
                                            const Rational& z) {
  ShiftIdentityReport r;
  const std::int64_t pl = ipow(p, ell);
  r.lhs = sum_R(a, p, ell, d * pl, z);
  r.rhs = sum_R(a, p, 0, d, z / Rational(pl * pl));
  r.equal = r.lhs == r.rhs;
  return r;
}

Lambda3Bounds lambda3_bounds(std::int64_t p) {
  if (!is_odd_prime(p)) throw std::invalid_argument("lambda3 bounds need an odd prime");
  // lambda_3 = lambda_1^2 - (1 + 1/p) lambda_2 - c stays negative on the box,
  // so |lambda_3| = c - lambda_1^2 + (1 + 1/p) lambda_2.
  const Rational c = hecke::hecke_relation_constant(p);
  const Rational w = 1 + Rational(1) / Rational(p);
  const Rational tenth(1, 10), hundredth(1, 100);
  Lambda3Bounds b;
  b.p = p;
  b.min_abs = c - hundredth - w * tenth;
  b.max_abs = c + w * tenth;
  b.square_at_least_half = b.min_abs > 0 && b.min_abs * b.min_abs >= Rational(1, 2);
  b.square_at_least_one = b.min_abs * b.min_abs >= 1;
  b.square_at_most_four = b.max_abs * b.max_abs <= 4;
  return b;
}

std::optional<Inequality> parse_inequality(const std::string& name) {
  static const std::map<std::string, Inequality> names = {
      {"Prop6.1", Inequality::prop6_1}, {"Cor6.2", Inequality::cor6_2},   {"L6.3i", Inequality::l6_3i},
      {"L6.3ii", Inequality::l6_3ii},   {"L6.3iii", Inequality::l6_3iii}, {"L6.4a", Inequality::l6_4a},
      {"L6.4b", Inequality::l6_4b},     {"L6.5", Inequality::l6_5}};
  auto it = names.find(name);
  if (it == names.end()) return std::nullopt;
  return it->second;
}

std::string inequality_name(Inequality which) {
  switch (which) {
    case Inequality::prop6_1: return "Prop6.1";
    case Inequality::cor6_2: return "Cor6.2";
    case Inequality::l6_3i: return "L6.3i";
    case Inequality::l6_3ii: return "L6.3ii";
    case Inequality::l6_3iii: return "L6.3iii";
    case Inequality::l6_4a: return "L6.4a";
    case Inequality::l6_4b: return "L6.4b";
    case Inequality::l6_5: return "L6.5";
  }
  return "?";
}

namespace {

double S(const CoefficientField& a, std::int64_t d, const Rational& z) { return sum_S_d(a, d, z).to_double(); }

double R(const CoefficientField& a, std::int64_t p, int ell, std::int64_t d, const Rational& z) {
  return sum_R(a, p, ell, d, z).to_double();
}

/// Left side of the two conjugate-sum bounds over M_1(K).
double conjugate_sum(const CoefficientField& a, const PrimeWindow& window, double K, int ell, const Rational& z) {
  const MultiplicitySpec spec{1, K, window};
  double total = 0;
  for (std::int64_t p : window.primes) {
    const auto& table = orbit_table(p);
    const std::int64_t pl = ipow(p, ell);
    std::set<LatticeVector> betas;
    for (const auto& [g, v] : a.entries()) {
      for (const auto& al : table.representatives) {
        const LatticeVector lifted = pl * star_action(al, g);
        if (auto beta = lifted.divided_by(p * p); beta && !beta->is_zero()) betas.insert(*beta);
      }
    }
    for (const auto& beta : betas) {
      if (!norm_at_most(beta, z) || beta.divisible_by(p) || !multiplicity_membership(beta, spec)) continue;
      hecke::ComplexQ inner;
      for (const auto& al : table.representatives) inner += a(conjugate_action(al, beta).divided_by(pl));
      total += inner.abs2().to_double() / static_cast<double>(p);
    }
  }
  return total;
}

std::int64_t gcd_p(std::int64_t d, std::int64_t p) { return d % p == 0 ? p : 1; }

}  // namespace

SumReport inequality_report(Inequality which, const InequalityInputs& in) {
  SumReport r;
  r.name = inequality_name(which);
  const auto& a = in.a;
  const std::int64_t p = in.p;
  const Rational& z = in.z;
  const Rational p2(p * p);
  r.params["z"] = to_short_string(z);
  auto need_lambda = [&](std::int64_t q) -> const EigenvalueTriple& { return lookup_lambda(in.lambdas, q); };

  switch (which) {
    case Inequality::prop6_1: {
      if (in.c % p == 0) throw std::invalid_argument("this bound needs p not dividing c");
      const double Aconst = in.constant_A.value_or(1.0);
      const std::int64_t pk = ipow(p, in.k);
      r.left = S(a, in.c * pk, z);
      r.right = std::pow(Aconst, in.k) * script_L(need_lambda(p), in.k) * S(a, in.c, z / Rational(pk * pk));
      r.params["p"] = std::to_string(p);
      r.params["c"] = std::to_string(in.c);
      r.params["k"] = std::to_string(in.k);
      r.params["A"] = fmt(Aconst);
      if (in.assert_with_constant && in.constant_A) r.asserted = r.left <= r.right * (1 + 1e-12);
      break;
    }
    case Inequality::cor6_2: {
      if (in.d < 1 || in.d % 2 == 0) throw std::invalid_argument("this bound needs an odd d >= 1");
      const double Aconst = in.constant_A.value_or(1.0);
      double factor = 1;
      std::int64_t rest = in.d;
      auto take = [&](std::int64_t q) {
        int v = 0;
        while (rest % q == 0) {
          rest /= q;
          ++v;
        }
        if (v > 0) factor *= std::pow(Aconst, v) * script_L(need_lambda(q), v);
      };
      for (std::int64_t q = 3; q * q <= rest; q += 2) take(q);
      if (rest > 1) take(rest);
      r.left = S(a, in.d, z);
      r.right = factor * S(a, 1, z / Rational(in.d * in.d));
      r.params["d"] = std::to_string(in.d);
      r.params["A"] = fmt(Aconst);
      if (in.assert_with_constant && in.constant_A) r.asserted = r.left <= r.right * (1 + 1e-12);
      break;
    }
    case Inequality::l6_3i: {
      const double l1 = need_lambda(p).lambda1;
      r.left = S(a, in.d * p, z);
      r.right = l1 * l1 * S(a, in.d, z / p2) + S(a, in.d / gcd_p(in.d, p), z / (p2 * p2)) + R(a, p, 1, in.d, z / p2);
      r.params["p"] = std::to_string(p);
      r.params["d"] = std::to_string(in.d);
      break;
    }
    case Inequality::l6_3ii: {
      const double l2 = need_lambda(p).lambda2;
      const std::int64_t pl = ipow(p, in.ell);
      const Rational zs = z / Rational(pl * pl);
      r.left = R(a, p, in.ell, in.d * pl, z);
      r.right = (l2 * l2 + 1) * S(a, in.d, zs) + R(a, p, 2, in.d, zs);
      r.params["p"] = std::to_string(p);
      r.params["d"] = std::to_string(in.d);
      r.params["ell"] = std::to_string(in.ell);
      break;
    }
    case Inequality::l6_3iii: {
      if (in.c % p == 0) throw std::invalid_argument("this bound needs p not dividing c");
      const int e = 2 * (in.ell - 1);
      const Rational zs = e >= 0 ? Rational(z / Rational(ipow(p, e))) : Rational(z * Rational(ipow(p, -e)));
      r.left = R(a, p, in.ell, in.c * ipow(p, in.k), z);
      r.right = S(a, in.c * ipow(p, std::max(0, in.k - in.ell)), zs);
      r.params["p"] = std::to_string(p);
      r.params["c"] = std::to_string(in.c);
      r.params["k"] = std::to_string(in.k);
      r.params["ell"] = std::to_string(in.ell);
      break;
    }
    case Inequality::l6_4a: {
      r.left = conjugate_sum(a, in.window, in.K, 1, z);
      r.right = in.K * S(a, 1, z);
      r.params["K"] = fmt(in.K);
      r.params["|P|"] = std::to_string(in.window.primes.size());
      break;
    }
    case Inequality::l6_4b: {
      const double half = in.window.P / 2;
      // z / (P/2)^2 compared exactly needs a rational; P/2 is a half-integer or real.
      const Rational zs = z / Rational(half * half);
      r.left = conjugate_sum(a, in.window, in.K, 2, z);
      r.right = static_cast<double>(in.window.primes.size()) * S(a, 1, zs);
      r.params["K"] = fmt(in.K);
      r.params["P"] = fmt(in.window.P);
      break;
    }
    case Inequality::l6_5: {
      const double Bconst = in.constant_B.value_or(1.0);
      const MultiplicitySpec spec{in.ell, in.K, in.window};
      const SharpFlatSplit split = split_sharp_flat(a, {spec}, z);
      double sup = 0;
      for (std::int64_t q : in.window.primes) sup = std::max(sup, script_L(need_lambda(q), in.ell));
      const double base = std::pow(Bconst, in.ell) * static_cast<double>(in.window.primes.size()) * sup / (in.K + 1);
      const double shrink = std::pow(in.window.P / 2, 2.0 * in.ell * (in.K + 1));
      r.left = split.flat[0].to_double();
      r.right = std::pow(base, in.K + 1) * S(a, 1, z / Rational(shrink));
      r.params["ell"] = std::to_string(in.ell);
      r.params["K"] = fmt(in.K);
      r.params["B"] = fmt(Bconst);
      if (in.assert_with_constant && in.constant_B) r.asserted = r.left <= r.right * (1 + 1e-12);
      break;
    }
  }
  if (r.left == 0 && r.right == 0) {
    r.vacuous = true;
  } else if (r.right > 0) {
    r.ratio = r.left / r.right;
  }
  return r;
}

}  // namespace cuspmass::sums
