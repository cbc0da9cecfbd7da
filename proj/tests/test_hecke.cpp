#include "cuspmass/hecke.hpp"

#include "doctest.h"

#include <random>

using namespace cuspmass;
using namespace cuspmass::hecke;
using quaternions::orbit_table;

namespace {

CoefficientField delta(std::int64_t p, const LatticeVector& beta) {
  CoefficientField a(p);
  a.set(beta, ComplexQ{QuadExtScalar(1), QuadExtScalar(0)});
  return a;
}

ComplexQ real(const QuadExtScalar& x) { return {x, QuadExtScalar(0)}; }

// Every beta in the ball N(beta) <= bound.
std::vector<LatticeVector> ball(std::int64_t bound) {
  std::vector<LatticeVector> out;
  std::int64_t r = 0;
  while ((r + 1) * (r + 1) <= bound) ++r;
  for (std::int64_t a = -r; a <= r; ++a)
    for (std::int64_t b = -r; b <= r; ++b)
      for (std::int64_t c = -r; c <= r; ++c) {
        const LatticeVector v{a, b, c};
        if (!v.is_zero() && v.norm() <= bound) out.push_back(v);
      }
  return out;
}

}  // namespace

TEST_CASE("Legendre symbols") {
  for (std::int64_t p : {3, 5, 7, 11}) CHECK(legendre_symbol(1, p) == 1);
  CHECK(legendre_symbol(-1, 3) == -1);
  CHECK(legendre_symbol(-2, 3) == 1);
  CHECK(legendre_symbol(6, 3) == 0);
  CHECK(legendre_symbol(-1, 5) == 1);
}

TEST_CASE("epsilon factor cases") {
  CHECK(epsilon_factor({3, 0, 0}, 3) == Rational(8, 9));
  CHECK(epsilon_factor({1, 1, 1}, 3) == Rational(-1, 9));
  CHECK(epsilon_factor({1, 0, 0}, 3) == Rational(-4, 9));
  CHECK(epsilon_factor({1, 1, 0}, 3) == Rational(2, 9));
  for (std::int64_t p : {3, 5, 7}) {
    for (const auto& beta : ball(30)) {
      if (beta.divisible_by(p)) continue;
      CHECK(abs(epsilon_factor(beta, p)) <= Rational(p + 1, p * p));
    }
  }
}

TEST_CASE("quadratic extension scalars") {
  const QuadExtScalar s3(0, 1, 3);
  CHECK(s3 * s3 == QuadExtScalar(3));
  CHECK(QuadExtScalar(1).div_sqrt(3) == QuadExtScalar(0, Rational(1, 3), 3));
  CHECK((s3 / s3) == QuadExtScalar(1));
  CHECK_THROWS_AS(s3 + QuadExtScalar(0, 1, 5), ContextMismatch);
  CHECK(format_scalar(QuadExtScalar(Rational(-1, 2), 2, 3)) == "-1/2 + 2*sqrt(3)");
}

TEST_CASE("operators on a delta field at p = 3") {
  const auto a = delta(3, {1, 0, 0});
  const auto h1 = apply_hecke(1, 3, a);
  CHECK(h1.size() == 1);
  CHECK(h1({3, 0, 0}) == real(1));

  const auto h2 = apply_hecke(2, 3, a);
  CHECK(h2.size() == 5);
  CHECK(h2({1, 0, 0}) == real(Rational(-4, 9)));
  CHECK(h2({-1, 2, -2}) == real(QuadExtScalar(0, Rational(1, 3), 3)));

  const auto h3 = apply_hecke(3, 3, a);
  CHECK(h3.size() == 6);
  CHECK(h3({1, 0, 0}) == real(Rational(1, 9)));
  CHECK(h3({-1, 2, -2}) == real(QuadExtScalar(0, Rational(-1, 9), 3)));

  CHECK(h1.radius() == 9);
  CHECK(h3.radius() == 81);
}

TEST_CASE("the quadratic relation is an exact operator identity") {
  CHECK(hecke_relation_constant(3) == Rational(40, 27));
  CHECK(verify_hecke_relation(3, delta(3, {1, 0, 0})).is_zero());
  CHECK(verify_hecke_relation(3, CoefficientField(3)).is_zero());
  std::mt19937_64 rng(21);
  for (std::int64_t p : {3, 5, 7}) {
    for (int t = 0; t < 4; ++t) {
      const auto a = random_field(p, 5, 3, 10, rng);
      CHECK(verify_hecke_relation(p, a).is_zero());
    }
  }
}

TEST_CASE("zero field and linearity") {
  std::mt19937_64 rng(22);
  for (int ell = 1; ell <= 3; ++ell) {
    CHECK(apply_hecke(ell, 5, CoefficientField(5)).is_zero());
    const auto a = random_field(5, 4, 2, 5, rng);
    const auto b = random_field(5, 4, 2, 5, rng);
    const Rational x(3, 2), y(-2);
    const auto lhs = apply_hecke(ell, 5, linear_combination(x, a, y, b));
    const auto rhs = linear_combination(x, apply_hecke(ell, 5, a), y, apply_hecke(ell, 5, b));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("candidate sets cover the support of H_ell A") {
  // Brute force: evaluate at every point of the ball allowed by the norm bound.
  std::mt19937_64 rng(23);
  for (int ell = 1; ell <= 3; ++ell) {
    const std::int64_t p = 3;
    auto a = random_field(p, 4, 1, 5, rng);
    a.set_radius(3);
    const auto& table = orbit_table(p);
    const auto fast = apply_hecke(ell, table, a);
    CoefficientField slow(p);
    const std::int64_t grow = ell == 3 ? p * p * p * p : p * p;
    for (const auto& beta : ball(grow * a.radius())) slow.set(beta, hecke_value(ell, table, a, beta));
    CHECK(fast == slow);
    for (const auto& [beta, v] : fast.entries()) CHECK(beta.norm() <= grow * a.radius());
  }
}

TEST_CASE("representative independence on unit-symmetric fields") {
  std::mt19937_64 rng(24);
  std::uniform_int_distribution<int> unit(0, 7);
  for (std::int64_t p : {3, 5}) {
    const auto& table = orbit_table(p);
    const auto a = unit_symmetrize(random_field(p, 4, 2, 6, rng));
    for (int ell = 1; ell <= 3; ++ell) {
      const auto ref = apply_hecke(ell, table, a);
      for (int t = 0; t < 8; ++t) {
        std::vector<int> units(table.representatives.size());
        for (int& u : units) u = unit(rng);
        CHECK(apply_hecke(ell, quaternions::rerepresent(table, units), a) == ref);
      }
    }
  }
}

TEST_CASE("representative choice matters for fields without unit symmetry") {
  const auto& table = orbit_table(3);
  const auto a = delta(3, {1, 0, 0});
  std::vector<int> units(table.representatives.size(), 0);
  bool any_differs = false;
  for (int u = 1; u < 8 && !any_differs; ++u) {
    units[0] = u;
    any_differs = apply_hecke(2, quaternions::rerepresent(table, units), a) != apply_hecke(2, table, a);
  }
  CHECK(any_differs);
}

TEST_CASE("unit symmetrization is a projection") {
  std::mt19937_64 rng(25);
  const auto a = random_field(5, 6, 2, 6, rng);
  const auto s = unit_symmetrize(a);
  CHECK(unit_symmetrize(s) == s);
  for (const auto& u : quaternions::unit_quaternions()) {
    for (const auto& [beta, v] : s.entries()) CHECK(s(quaternions::conjugate_action(u, beta)) == v);
  }
}

TEST_CASE("cross-prime commutativity on symmetric fields") {
  CHECK(verify_commutativity(3, 5, 1, 1, NumericField()) == 0);
  std::mt19937_64 rng(26);
  for (int t = 0; t < 3; ++t) {
    const auto a = unit_symmetrize(random_numeric_field(3, 2, 5, rng));
    CHECK(verify_commutativity(3, 5, 1, 1, a) < 1e-9);
    CHECK(verify_commutativity(3, 7, 1, 2, a) < 1e-9);
    CHECK(verify_commutativity(5, 7, 2, 2, a) < 1e-9);
  }
  NumericField d;
  d.set({1, 0, 0}, 1.0);
  CHECK(verify_commutativity(3, 5, 1, 1, unit_symmetrize(d)) < 1e-9);
}

TEST_CASE("eigen residuals") {
  CoefficientField zero(3);
  zero.set_radius(81);
  const auto r0 = eigen_residual(zero, EigenvalueTriple{3, 0.5, 0.1, 0.2});
  CHECK(r0.sup == std::array<double, 3>{0, 0, 0});
  CHECK(r0.safe_points == 6);

  auto d = delta(3, {1, 0, 0});
  d.set_radius(81);
  const auto r1 = eigen_residual(d, EigenvalueTriple{3, 0, 0, 0});
  CHECK(r1.sup[0] == 0);  // H_1 delta lives at (3, 0, 0), outside the safe ball
  CHECK(r1.sup[1] == doctest::Approx(4.0 / 9));
  CHECK(r1.sup[2] == doctest::Approx(1.0 / 9));
  CHECK_THROWS_AS(eigen_residual(delta(3, {1, 0, 0}), EigenvalueTriple{3, 0, 0, 0}), std::domain_error);
}

TEST_CASE("eigenvalue relation residual") {
  const EigenvalueTriple t{3, 2, 1, 4 - Rational(4, 3).get_d() - Rational(40, 27).get_d()};
  CHECK(std::abs(t.relation_residual()) < 1e-14);
}
