#include "cuspmass/io.hpp"

#include "doctest.h"

#include <random>

using namespace cuspmass;
using namespace cuspmass::io;
using hecke::ComplexQ;
using hecke::QuadExtScalar;

TEST_CASE("coefficient files round-trip byte for byte") {
  std::mt19937_64 rng(51);
  for (std::int64_t p : {3, 5, 7}) {
    const auto a = hecke::random_field(p, 8, 3, 10, rng);
    const auto text = write_coefficient_json(a);
    const auto back = parse_coefficient_json(text);
    CHECK(back == a);
    CHECK(back.p() == p);
    CHECK(write_coefficient_json(back) == text);
  }
  const auto empty = parse_coefficient_json(R"({"schema": 1, "p": 3, "entries": []})");
  CHECK(empty.is_zero());
  CHECK(write_coefficient_json(empty) == "{\n  \"schema\": 1,\n  \"p\": 3,\n  \"entries\": []\n}\n");
}

TEST_CASE("reading a point mass") {
  const auto a = parse_coefficient_json(R"({"p": 3, "entries": [{"beta": [1, 0, 0], "re": ["1/1", "0/1"], "im": ["0"]}]})");
  CHECK(a.size() == 1);
  CHECK(a({1, 0, 0}) == ComplexQ{QuadExtScalar(1), QuadExtScalar(0)});
  CHECK(a.radius() == 1);
  const auto r = parse_coefficient_json(R"({"p": 0, "entries": [{"beta": [0, 2, 0], "re": ["-3/4"], "im": ["1/2"]}]})");
  CHECK(r({0, 2, 0}).re == QuadExtScalar(Rational(-3, 4)));
  CHECK(r.radius() == 4);
  CHECK(write_coefficient_json(r).find("\"re\": [\n        \"-3/4\"\n      ]") != std::string::npos);
}

TEST_CASE("malformed coefficient files are rejected") {
  const char* bad[] = {
      "not json",
      "[]",
      R"({"entries": []})",
      R"({"p": 4, "entries": []})",
      R"({"p": 3, "schema": 2, "entries": []})",
      R"({"p": 3})",
      R"({"p": 3, "entries": [{"beta": [0, 0, 0], "re": ["1"], "im": ["0"]}]})",
      R"({"p": 3, "entries": [{"beta": [1, 0], "re": ["1"], "im": ["0"]}]})",
      R"({"p": 3, "entries": [{"beta": [1, 0, 0.5], "re": ["1"], "im": ["0"]}]})",
      R"({"p": 3, "entries": [{"beta": [1, 0, 0], "re": ["1"]}]})",
      R"({"p": 3, "entries": [{"beta": [1, 0, 0], "re": [1], "im": ["0"]}]})",
      R"({"p": 3, "entries": [{"beta": [1, 0, 0], "re": ["1/0"], "im": ["0"]}]})",
      R"({"p": 3, "entries": [{"beta": [1, 0, 0], "re": ["x"], "im": ["0"]}]})",
      R"({"p": 3, "entries": [{"beta": [1, 0, 0], "re": [], "im": ["0"]}]})",
      R"({"p": 0, "entries": [{"beta": [1, 0, 0], "re": ["1", "1"], "im": ["0"]}]})",
      R"({"p": 3, "entries": [{"beta": [1, 0, 0], "re": ["1"], "im": ["0"]}, {"beta": [1, 0, 0], "re": ["2"], "im": ["0"]}]})",
  };
  for (const char* text : bad) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse_coefficient_json(text), FormatError);
  }
  CHECK_THROWS_AS(parse_coefficient_file("/nonexistent/file.json"), FormatError);
}

TEST_CASE("lambda tables") {
  const auto t = parse_lambda_csv("p,lambda1,lambda2,lambda3\n3,0.5,-0.25,1e-3\r\n5,0,0,0\n");
  REQUIRE(t.size() == 2);
  CHECK(t.at(3).lambda1 == 0.5);
  CHECK(t.at(3).lambda2 == -0.25);
  CHECK(t.at(3).lambda3 == 0.001);
  CHECK(parse_lambda_csv(write_lambda_csv(t)).at(3).lambda3 == 0.001);
  CHECK(write_lambda_csv(parse_lambda_csv(write_lambda_csv(t))) == write_lambda_csv(t));
  CHECK_THROWS_AS(parse_lambda_csv("p,l1,l2,l3\n"), FormatError);
  CHECK_THROWS_AS(parse_lambda_csv("p,lambda1,lambda2,lambda3\n9,0,0,0\n"), FormatError);
  CHECK_THROWS_AS(parse_lambda_csv("p,lambda1,lambda2,lambda3\n3,0,0\n"), FormatError);
  CHECK_THROWS_AS(parse_lambda_csv("p,lambda1,lambda2,lambda3\n3,0,0,abc\n"), FormatError);
  CHECK_THROWS_AS(parse_lambda_csv("p,lambda1,lambda2,lambda3\n3,0,0,0\n3,1,1,1\n"), FormatError);
}

TEST_CASE("function files") {
  const auto f = parse_function_csv("y,value\n1,1\n2,0.5\n4,0\n");
  CHECK(f.t().size() == 3);
  CHECK(f.t()[1] == doctest::Approx(std::log(2.0)));
  CHECK(f.at(std::log(2.0)) == doctest::Approx(0.5));
  const auto g = parse_function_csv(write_function_csv(f));
  CHECK(g.values() == f.values());
  CHECK_THROWS_AS(parse_function_csv("y,value\n"), FormatError);
  CHECK_THROWS_AS(parse_function_csv("y,value\n0.5,1\n"), FormatError);
  CHECK_THROWS_AS(parse_function_csv("y,value\n1,0.5\n"), FormatError);
  CHECK_THROWS_AS(parse_function_csv("y,value\n1,1\n1,0.5\n"), FormatError);
}

TEST_CASE("decay parameter files") {
  const auto d = parse_decay_params(R"({"Delta": 2, "eps": 0.25, "A": 12, "a": [0.5, {"c": 0.3, "e": 0.1}], "b": [{"c": 1}], "C": 3, "R": 40})");
  CHECK(d.params.Delta == 2);
  CHECK(d.params.eps == 0.25);
  CHECK(d.params.A == 12);
  CHECK(d.params.M() == 2);
  CHECK(d.params.a[1].e == 0.1);
  CHECK(d.params.N() == 1);
  CHECK(d.params.b[0].e == 0);
  CHECK(*d.C == 3);
  CHECK(*d.R == 40);
  const auto defaults = parse_decay_params("{}");
  CHECK(defaults.params.A == 10);
  CHECK_FALSE(defaults.C);
  CHECK_THROWS_AS(parse_decay_params(R"({"Delta": "x"})"), FormatError);
  CHECK_THROWS_AS(parse_decay_params(R"({"a": [{"e": 1}]})"), FormatError);
  CHECK_THROWS_AS(parse_decay_params(R"({"R": 1.5})"), FormatError);
}

TEST_CASE("form files") {
  numerics::SpectralForm f;
  f.r = 2.5;
  f.coeffs = {{{1, 0, 0}, {0.5, -0.125}}, {{0, 1, 2}, {1, 0}}};
  const auto back = parse_form_json(write_form_json(f));
  CHECK(back.r == 2.5);
  REQUIRE(back.coeffs.size() == 2);
  CHECK(back.coeffs[0].second == std::complex<double>(0.5, -0.125));
  CHECK(write_form_json(back) == write_form_json(f));
  CHECK_THROWS_AS(parse_form_json(R"({"entries": []})"), FormatError);
  CHECK_THROWS_AS(parse_form_json(R"({"r": 1, "entries": [{"beta": [0, 0, 0], "re": 1, "im": 0}]})"), FormatError);
  CHECK_THROWS_AS(parse_form_json(R"({"r": 1, "entries": [{"beta": [1, 0, 0], "re": "1", "im": 0}]})"), FormatError);
}
