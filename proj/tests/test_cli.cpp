#include "cuspmass/cli.hpp"
#include "cuspmass/io.hpp"

#include "doctest.h"
#include "json.hpp"

#include <filesystem>
#include <sstream>

using namespace cuspmass;
using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("cuspmass_test_" + name)).string();
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = temp_path(name);
  io::write_file(path, text);
  return path;
}

const char* kDelta = R"({"schema": 1, "p": 3, "entries": [{"beta": [1, 0, 0], "re": ["1/1", "0/1"], "im": ["0/1", "0/1"]}]})";

std::string ball_file() {
  json j;
  j["p"] = 3;
  j["entries"] = json::array();
  for (int x = -3; x <= 3; ++x)
    for (int y = -3; y <= 3; ++y)
      for (int z = -3; z <= 3; ++z) {
        const int n = x * x + y * y + z * z;
        if (n == 0 || n > 9) continue;
        j["entries"].push_back({{"beta", {x, y, z}}, {"re", {"1"}}, {"im", {"0"}}});
      }
  return write_temp("ball.json", j.dump());
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"quat"}).code == 2);
  CHECK(run({"quat", "enum", "--bogus", "3"}).code == 2);
  CHECK(run({"quat", "enum"}).code == 2);
  CHECK(run({"quat", "enum", "--norm", "0"}).code == 2);
  CHECK(run({"quat", "reps", "--p", "9"}).code == 2);
  CHECK(run({"hecke", "apply", "--op", "4", "--p", "3", "--in", "x"}).code == 2);
  CHECK(run({"hecke", "apply", "--op", "1", "--p", "3", "--in", "/nonexistent.json"}).code == 2);
  CHECK(run({"geom", "reduce", "--point", "0,0,0,-1"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("quaternion commands") {
  const auto e = run({"quat", "enum", "--norm", "5"});
  CHECK(e.code == 0);
  CHECK(std::count(e.out.begin(), e.out.end(), '\n') == 48);
  const auto j = json::parse(run({"--json", "quat", "enum", "--norm", "1"}).out);
  CHECK(j["count"] == 8);
  const auto r = run({"quat", "reps", "--p", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("-1") != std::string::npos);
  const auto jr = json::parse(run({"quat", "reps", "--p", "3", "--json"}).out);
  CHECK(jr.dump().find("[-1,-1,-1,0]") != std::string::npos);
  CHECK(run({"quat", "verify-lemmas", "--p", "3", "--bound", "4"}).code == 0);
}

TEST_CASE("geometry commands") {
  const auto r = run({"--json", "geom", "reduce", "--point", "0.7,-1.3,2.2,0.05"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["in_F"] == true);
  CHECK(j["integral_sv2"] == true);
  CHECK(run({"geom", "act", "--matrix", "1,0,0,0,0,0,0,0,0,0,0,0,1,0,0,0", "--point", "0,0,0,1"}).code == 0);
  CHECK(run({"geom", "act", "--matrix", "-1,0,0,0,0,0,0,0,0,0,0,0,1,0,0,0", "--point", "0,0,0,1"}).code == 2);
  CHECK(run({"geom", "verify-cusp", "--T", "2", "--samples", "200"}).code == 0);
}

TEST_CASE("hecke commands") {
  const auto in = write_temp("delta.json", kDelta);
  const auto a = run({"hecke", "apply", "--op", "1", "--p", "3", "--in", in});
  REQUIRE(a.code == 0);
  const auto h1 = io::parse_coefficient_json(a.out);
  CHECK(h1.size() == 1);
  CHECK(h1({3, 0, 0}).re == hecke::QuadExtScalar(1));
  const auto out = temp_path("h2.json");
  const auto b = run({"hecke", "apply", "--op", "2", "--p", "3", "--in", in, "--out", out});
  CHECK(b.code == 0);
  CHECK(io::parse_coefficient_file(out).size() == 5);

  const auto rel = run({"hecke", "verify-relation", "--p", "3", "--trials", "3", "--seed", "7"});
  CHECK(rel.code == 0);
  CHECK(rel.out.find("result: residual zero") != std::string::npos);
  CHECK(run({"hecke", "commute", "--p", "3", "--q", "5", "--trials", "2"}).code == 0);
}

TEST_CASE("randomized commands are reproducible under a seed") {
  const std::vector<std::string> args = {"--seed", "11", "hecke", "verify-relation", "--p", "5", "--trials", "2"};
  CHECK(run(args).out == run(args).out);
  const std::vector<std::string> cusp = {"geom", "verify-cusp", "--samples", "50", "--seed", "3"};
  CHECK(run(cusp).out == run(cusp).out);
}

TEST_CASE("sums commands") {
  const auto ball = ball_file();
  const auto s = run({"sums", "compute", "--kind", "S", "--in", ball, "--z", "9"});
  CHECK(s.code == 0);
  CHECK(s.out.find("value: 122") != std::string::npos);
  const auto r = run({"sums", "compute", "--kind", "R", "--in", ball, "--p", "3", "--ell", "1", "--z", "81"});
  CHECK(r.out.find("344/3") != std::string::npos);
  CHECK(run({"sums", "compute", "--kind", "S", "--in", ball, "--z", "9", "--d", "0"}).code == 2);
  CHECK(run({"sums", "compute", "--kind", "T", "--in", ball, "--z", "9"}).code == 2);

  const auto table = write_temp("lambda.csv", "p,lambda1,lambda2,lambda3\n3,0.5,0.5,0.5\n5,0.1,0.1,0.1\n");
  const auto rep = run({"--json", "sums", "report", "--which", "L6.3i", "--in", ball, "--z", "81", "--p", "3",
                        "--lambda-table", table});
  REQUIRE(rep.code == 0);
  CHECK(json::parse(rep.out).contains("ratio"));
  CHECK(run({"sums", "report", "--which", "L9.9", "--in", ball}).code == 2);

  const auto big = write_temp("lambda_big.csv",
                              "p,lambda1,lambda2,lambda3\n17,0.07,0,0\n19,0.07,0,0\n23,0.07,0,0\n29,0.07,0,0\n31,0.07,0,0\n");
  const auto part = run({"--json", "sums", "partition", "--y", "1099511627776", "--lambda-table", big});
  REQUIRE(part.code == 0);
  const auto pj = json::parse(part.out);
  CHECK(pj["P"] == 32);
}

TEST_CASE("asymptotics commands") {
  const auto r = run({"asym", "compute-R", "--A", "10", "--M", "3", "--eps", "0.01"});
  CHECK(r.code == 0);
  CHECK(r.out.find("R: 1094") != std::string::npos);
  CHECK(run({"asym", "compute-R", "--A", "10", "--eps", "0.5"}).out.find("R: 16") != std::string::npos);

  std::string csv = "y,value\n";
  for (int k = 0; k <= 2000; ++k) {
    const double t = 0.02 * k;
    csv += std::to_string(std::exp(t)) + "," + std::to_string(k == 0 ? 1.0 : std::min(1.0, std::exp(-t))) + "\n";
  }
  const auto f = write_temp("f.csv", csv);
  const auto good = write_temp("params.json", R"({"Delta": 1, "eps": 0.5, "A": 10, "C": 1})");
  const auto v = run({"asym", "verify", "--f", f, "--params", good});
  CHECK(v.code == 0);
  CHECK(v.out.find("hypothesis_holds: true") != std::string::npos);
  const auto strict = write_temp("params_strict.json", R"({"Delta": 1, "eps": 0.5, "A": 10, "C": 0.5})");
  CHECK(run({"asym", "verify", "--f", f, "--params", strict}).code == 1);
  const auto invalid = write_temp("params_bad.json", R"({"Delta": 1, "eps": 0.5, "A": 5})");
  CHECK(run({"asym", "verify", "--f", f, "--params", invalid}).code == 2);
}

TEST_CASE("maass commands") {
  const auto form = write_temp(
      "form.json", R"({"r": 1.0, "entries": [{"beta": [1, 0, 0], "re": 1.0, "im": 0.0}, {"beta": [-1, 0, 0], "re": 1.0, "im": 0.0}]})");
  const auto e = run({"--json", "maass", "eval", "--form", form, "--point", "0,0,0,1"});
  REQUIRE(e.code == 0);
  CHECK(json::parse(e.out)["re"].get<double>() == doctest::Approx(2 * 0.000851004200143943).epsilon(1e-8));
  CHECK(run({"maass", "parseval", "--form", form, "--y", "1"}).code == 0);
  CHECK(run({"maass", "cusp", "--form", form, "--T", "1", "--direct"}).code == 0);
  CHECK(run({"maass", "laplace-check", "--beta", "1,0,0", "--r", "1"}).code == 0);
  CHECK(run({"maass", "laplace-check", "--beta", "0,0,0"}).code == 2);
}
