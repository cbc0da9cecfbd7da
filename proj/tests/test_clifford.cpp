#include "cuspmass/clifford.hpp"

#include "doctest.h"

#include <random>

using namespace cuspmass;
using namespace cuspmass::clifford;

namespace {

Rational frac(int n, int d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

CliffordElement random_element(int rank, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-4, 4);
  CliffordElement e(rank);
  for (Blade b = 0; b < (Blade{1} << rank); ++b) e.add_term(b, frac(coeff(rng), 1 + (coeff(rng) + 4) % 3));
  return e;
}

CliffordElement random_vector(int rank, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::vector<Rational> c;
  for (int h = 0; h <= rank; ++h) c.push_back(frac(coeff(rng), 1 + (coeff(rng) + 5) % 4));
  return CliffordElement::vector(rank, c);
}

}  // namespace

TEST_CASE("generator products") {
  const auto i1 = CliffordElement::generator(2, 1);
  const auto i2 = CliffordElement::generator(2, 2);
  const auto one = CliffordElement::scalar(2, 1);
  CHECK(multiply(i1, i2) == CliffordElement::blade(2, 0b11, 1));
  CHECK(multiply(i2, i1) == CliffordElement::blade(2, 0b11, -1));
  const auto i12 = multiply(i1, i2);
  CHECK(multiply(i12, i12) == CliffordElement::scalar(2, -1));
  CHECK(multiply(one + i1, one - i1) == CliffordElement::scalar(2, 2));
}

TEST_CASE("involutions on basis blades") {
  const auto i12 = CliffordElement::blade(2, 0b11, 1);
  const auto i1 = CliffordElement::generator(2, 1);
  CHECK(involution(i12, Involution::main) == i12);
  CHECK(involution(i12, Involution::reverse) == -i12);
  CHECK(involution(i1, Involution::bar) == -i1);
}

TEST_CASE("vector norm, real part and inverse") {
  const auto x = CliffordVector::from_coords(2, {1, 1, 1});
  const auto info = vector_utils(x);
  CHECK(info.norm == 3);
  CHECK(info.real_part == 1);

  const auto i1 = CliffordVector::from_coords(1, {0, 1});
  REQUIRE(vector_utils(i1).inverse);
  CHECK(vector_utils(i1).inverse->element() == -CliffordElement::generator(1, 1));

  const auto v = CliffordVector::from_coords(1, {1, 1});
  const auto inv = vector_utils(v).inverse;
  REQUIRE(inv);
  CHECK(inv->element() == CliffordElement::vector(1, {Rational(1, 2), Rational(-1, 2)}));
  CHECK(multiply(v.element(), inv->element()) == CliffordElement::scalar(1, 1));

  CHECK_FALSE(vector_utils(CliffordVector::from_coords(2, {0, 0, 0})).inverse);
}

TEST_CASE("Clifford group membership") {
  CHECK_FALSE(is_clifford_group_member(CliffordElement(2)));
  CHECK(is_clifford_group_member(parse_clifford("1 + 1*e12", 2)));
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_element(2, rng);
    if (a.is_zero()) continue;
    CHECK(is_clifford_group_member(a));
  }
  // (1 + i1 i2 i3)(1 - i1 i2 i3) = 0.
  CHECK_FALSE(is_clifford_group_member(parse_clifford("1 + 1*e123", 3)));
}

TEST_CASE("reverse and bar are anti-automorphisms") {
  std::mt19937_64 rng(1);
  for (int rank = 1; rank <= 4; ++rank) {
    for (int t = 0; t < 10; ++t) {
      const auto a = random_element(rank, rng);
      const auto b = random_element(rank, rng);
      for (auto kind : {Involution::reverse, Involution::bar}) {
        CHECK(involution(a * b, kind) == involution(b, kind) * involution(a, kind));
      }
      CHECK(involution(a * b, Involution::main) == involution(a, Involution::main) * involution(b, Involution::main));
    }
  }
}

TEST_CASE("vector polarization identities") {
  std::mt19937_64 rng(2);
  for (int rank = 1; rank <= 4; ++rank) {
    for (int t = 0; t < 10; ++t) {
      const auto x = random_vector(rank, rng);
      const auto y = random_vector(rank, rng);
      Rational dot = 0;
      const auto cx = CliffordVector(x).coords();
      const auto cy = CliffordVector(y).coords();
      for (std::size_t k = 0; k < cx.size(); ++k) dot += cx[k] * cy[k];
      CHECK(x * involution(y, Involution::bar) + y * involution(x, Involution::bar) ==
            CliffordElement::scalar(rank, 2 * dot));
      CHECK(x * involution(x, Involution::bar) == CliffordElement::scalar(rank, x.norm()));
      for (auto kind : {Involution::main, Involution::reverse, Involution::bar}) {
        CHECK(involution(x, kind).is_vector());
      }
    }
  }
}

TEST_CASE("twisted conjugation by group elements preserves vector norms") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_vector(3, rng) * random_vector(3, rng);
    if (a.is_zero()) continue;
    REQUIRE(is_clifford_group_member(a));
    const auto v = random_vector(3, rng);
    const auto w = twisted_conjugate(a, v);
    CHECK(w.is_vector());
    CHECK(w.norm() == v.norm());
  }
}

TEST_CASE("text format round trip and strict parsing") {
  const auto e = parse_clifford("3/2 + 1*e1 - 2*e12", 2);
  CHECK(e.coefficient(0) == Rational(3, 2));
  CHECK(e.coefficient(0b11) == -2);
  CHECK(parse_clifford(format_clifford(e), 2) == e);
  CHECK(format_clifford(CliffordElement(3)) == "0");
  CHECK_THROWS(parse_clifford("1*e21", 2));
  CHECK_THROWS(parse_clifford("1*e11", 2));
  CHECK_THROWS(parse_clifford("1*e3", 2));
  CHECK_THROWS(CliffordElement(9));
}
