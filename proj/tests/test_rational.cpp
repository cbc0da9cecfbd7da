#include "cuspmass/rational.hpp"

#include "doctest.h"

#include <stdexcept>

using cuspmass::Rational;
using cuspmass::parse_rational;

TEST_CASE("rationals parse and canonicalize") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK(parse_rational("+1/3") == Rational(1, 3));
  CHECK(cuspmass::to_fraction_string(parse_rational("4/2")) == "2/1");
  CHECK(cuspmass::to_fraction_string(parse_rational("0/5")) == "0/1");
  CHECK(cuspmass::to_short_string(parse_rational("-9/6")) == "-3/2");
  CHECK(cuspmass::to_short_string(parse_rational("10/5")) == "2");
}

TEST_CASE("malformed rationals are rejected") {
  for (const char* bad : {"", "/", "1/", "1/0", " 1", "1/-2", "a/b", "1.5", "--1"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_rational(bad), std::invalid_argument);
  }
}

TEST_CASE("make_rational reduces and is_integer detects denominators") {
  CHECK(cuspmass::make_rational(6, -4) == Rational(-3, 2));
  CHECK(cuspmass::is_integer(cuspmass::make_rational(8, 4)));
  CHECK_FALSE(cuspmass::is_integer(cuspmass::make_rational(1, 3)));
}
