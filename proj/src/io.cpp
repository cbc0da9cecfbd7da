#include "cuspmass/io.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

namespace cuspmass::io {

using json = nlohmann::ordered_json;
using hecke::CoefficientField;
using hecke::ComplexQ;
using hecke::QuadExtScalar;
using quaternions::LatticeVector;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

LatticeVector parse_beta(const json& j) {
  if (!j.is_array() || j.size() != 3) throw FormatError("beta must be an array of three integers");
  for (const auto& c : j) {
    if (!c.is_number_integer()) throw FormatError("beta must be an array of three integers");
  }
  return {j[0].get<std::int64_t>(), j[1].get<std::int64_t>(), j[2].get<std::int64_t>()};
}

json beta_json(const LatticeVector& b) { return json::array({b.b0, b.b1, b.b2}); }

Rational rational_field(const json& j) {
  if (!j.is_string()) throw FormatError("rational components are written as strings \"a/b\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("malformed rational: ") + e.what());
  }
}

QuadExtScalar parse_component(const json& j, std::int64_t p) {
  if (!j.is_array() || j.empty() || j.size() > 2) throw FormatError("re and im must have one or two components");
  Rational a = rational_field(j[0]);
  if (j.size() == 1) return a;
  Rational b = rational_field(j[1]);
  if (p == 0 && b != 0) throw FormatError("sqrt(p) component given without a prime p");
  return {a, b, p};
}

json component_json(const QuadExtScalar& x, std::int64_t p) {
  json out = json::array({to_fraction_string(x.a())});
  if (p != 0) out.push_back(to_fraction_string(x.b()));
  return out;
}

void check_schema(const json& j) {
  if (!j.is_object()) throw FormatError("expected a JSON object");
  if (j.contains("schema") && j["schema"] != 1) throw FormatError("unsupported schema version");
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw FormatError("malformed number '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw FormatError("malformed number '" + s + "'");
  return v;
}

std::vector<std::vector<std::string>> read_csv(const std::string& text, const std::string& header) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw FormatError("expected CSV header '" + header + "'");
  const auto width = split(header, ',').size();
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split(line, ',');
    if (cells.size() != width) throw FormatError("CSV row has the wrong number of fields: " + line);
    rows.push_back(std::move(cells));
  }
  return rows;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

CoefficientField parse_coefficient_json(const std::string& text) {
  const json j = parse_json(text);
  check_schema(j);
  if (!j.contains("p") || !j["p"].is_number_integer()) throw FormatError("coefficient file needs an integer p");
  const auto p = j["p"].get<std::int64_t>();
  if (p != 0 && !quaternions::is_odd_prime(p)) throw FormatError("p must be 0 or an odd prime");
  if (!j.contains("entries") || !j["entries"].is_array()) throw FormatError("coefficient file needs an entries array");
  CoefficientField field(p);
  std::set<LatticeVector> seen;
  for (const auto& e : j["entries"]) {
    if (!e.is_object() || !e.contains("beta") || !e.contains("re") || !e.contains("im")) {
      throw FormatError("each entry needs beta, re and im");
    }
    const LatticeVector beta = parse_beta(e["beta"]);
    if (beta.is_zero()) throw FormatError("entry at beta = 0");
    if (!seen.insert(beta).second) throw FormatError("duplicate beta in coefficient file");
    field.set(beta, ComplexQ{parse_component(e["re"], p), parse_component(e["im"], p)});
  }
  std::int64_t radius = 0;
  for (const auto& beta : seen) radius = std::max(radius, beta.norm());
  field.set_radius(radius);
  return field;
}

std::string write_coefficient_json(const CoefficientField& field) {
  json j;
  j["schema"] = 1;
  j["p"] = field.p();
  j["entries"] = json::array();
  for (const auto& [beta, value] : field.entries()) {
    json e;
    e["beta"] = beta_json(beta);
    e["re"] = component_json(value.re, field.p());
    e["im"] = component_json(value.im, field.p());
    j["entries"].push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

CoefficientField parse_coefficient_file(const std::string& path) { return parse_coefficient_json(read_file(path)); }

void write_coefficient_file(const std::string& path, const CoefficientField& field) {
  write_file(path, write_coefficient_json(field));
}

sums::LambdaTable parse_lambda_csv(const std::string& text) {
  sums::LambdaTable table;
  for (const auto& row : read_csv(text, "p,lambda1,lambda2,lambda3")) {
    hecke::EigenvalueTriple t;
    try {
      t.p = std::stoll(row[0]);
    } catch (const std::exception&) {
      throw FormatError("malformed prime '" + row[0] + "'");
    }
    if (!quaternions::is_odd_prime(t.p)) throw FormatError("lambda table row for a non-prime " + row[0]);
    t.lambda1 = parse_double(row[1]);
    t.lambda2 = parse_double(row[2]);
    t.lambda3 = parse_double(row[3]);
    if (!table.emplace(t.p, t).second) throw FormatError("duplicate prime in lambda table");
  }
  return table;
}

std::string write_lambda_csv(const sums::LambdaTable& table) {
  std::string out = "p,lambda1,lambda2,lambda3\n";
  for (const auto& [p, t] : table) {
    out += std::to_string(p) + "," + format_double(t.lambda1) + "," + format_double(t.lambda2) + "," +
           format_double(t.lambda3) + "\n";
  }
  return out;
}

asymptotics::SampledFunction parse_function_csv(const std::string& text) {
  std::vector<double> t, v;
  for (const auto& row : read_csv(text, "y,value")) {
    const double y = parse_double(row[0]);
    if (!(y >= 1)) throw FormatError("function rows need y >= 1");
    t.push_back(std::log(y));
    v.push_back(parse_double(row[1]));
  }
  if (t.empty()) throw FormatError("function CSV has no rows");
  try {
    return {t, v, t.back()};
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

std::string write_function_csv(const asymptotics::SampledFunction& f) {
  std::string out = "y,value\n";
  for (std::size_t k = 0; k < f.t().size(); ++k) out += format_double(std::exp(f.t()[k])) + "," + format_double(f.values()[k]) + "\n";
  return out;
}

DecayFile parse_decay_params(const std::string& text) {
  const json j = parse_json(text);
  check_schema(j);
  DecayFile out;
  auto number = [&](const char* key, double& slot) {
    if (!j.contains(key)) return;
    if (!j[key].is_number()) throw FormatError(std::string(key) + " must be a number");
    slot = j[key].get<double>();
  };
  number("Delta", out.params.Delta);
  number("eps", out.params.eps);
  number("A", out.params.A);
  auto exponents = [&](const char* key, std::vector<asymptotics::ExponentFunction>& slot) {
    if (!j.contains(key)) return;
    if (!j[key].is_array()) throw FormatError(std::string(key) + " must be an array");
    for (const auto& e : j[key]) {
      if (e.is_number()) {
        slot.push_back(asymptotics::ExponentFunction::constant(e.get<double>()));
        continue;
      }
      if (!e.is_object() || !e.contains("c") || !e["c"].is_number()) {
        throw FormatError(std::string(key) + " entries are numbers or {\"c\": ..., \"e\": ...}");
      }
      asymptotics::ExponentFunction fn{e["c"].get<double>(), 0};
      if (e.contains("e")) {
        if (!e["e"].is_number()) throw FormatError("exponent e must be a number");
        fn.e = e["e"].get<double>();
      }
      slot.push_back(fn);
    }
  };
  exponents("a", out.params.a);
  exponents("b", out.params.b);
  if (j.contains("C")) {
    if (!j["C"].is_number()) throw FormatError("C must be a number");
    out.C = j["C"].get<double>();
  }
  if (j.contains("R")) {
    if (!j["R"].is_number_integer()) throw FormatError("R must be an integer");
    out.R = j["R"].get<std::int64_t>();
  }
  return out;
}

numerics::SpectralForm parse_form_json(const std::string& text) {
  const json j = parse_json(text);
  check_schema(j);
  numerics::SpectralForm form;
  if (!j.contains("r") || !j["r"].is_number()) throw FormatError("form needs a numeric r");
  form.r = j["r"].get<double>();
  if (!j.contains("entries") || !j["entries"].is_array()) throw FormatError("form needs an entries array");
  for (const auto& e : j["entries"]) {
    if (!e.is_object() || !e.contains("beta") || !e.contains("re") || !e.contains("im") || !e["re"].is_number() ||
        !e["im"].is_number()) {
      throw FormatError("each form entry needs beta and numeric re, im");
    }
    form.coeffs.emplace_back(parse_beta(e["beta"]), std::complex<double>(e["re"].get<double>(), e["im"].get<double>()));
  }
  try {
    form.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return form;
}

std::string write_form_json(const numerics::SpectralForm& form) {
  json j;
  j["schema"] = 1;
  j["r"] = form.r;
  j["entries"] = json::array();
  for (const auto& [beta, value] : form.coeffs) {
    json e;
    e["beta"] = beta_json(beta);
    e["re"] = value.real();
    e["im"] = value.imag();
    j["entries"].push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << contents;
  if (!out) throw FormatError("failed writing " + path);
}

}  // namespace cuspmass::io
