#pragma once

// File formats shared by the command-line tool and the tests.
//
//   coefficient JSON  {"schema": 1, "p": 3, "entries": [{"beta": [b0, b1, b2],
//                      "re": ["a/b", "c/d"], "im": ["a/b", "c/d"]}]}
//                     where ["a/b", "c/d"] is a/b + (c/d) sqrt(p); files with
//                     p = 0 carry one-element arrays.
//   lambda table CSV  p,lambda1,lambda2,lambda3
//   function CSV      y,value   (ascending y, first row y = 1)
//   form JSON         {"r": 1.0, "entries": [{"beta": [...], "re": x, "im": y}]}
//   decay params JSON {"Delta": 1, "eps": 0.5, "A": 10,
//                      "a": [{"c": 0.5, "e": 0}], "b": [...], "C": 2, "R": 16}

#include "cuspmass/asymptotics.hpp"
#include "cuspmass/hecke.hpp"
#include "cuspmass/numerics.hpp"
#include "cuspmass/sums.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace cuspmass::io {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

hecke::CoefficientField parse_coefficient_json(const std::string& text);
std::string write_coefficient_json(const hecke::CoefficientField& field);
hecke::CoefficientField parse_coefficient_file(const std::string& path);
void write_coefficient_file(const std::string& path, const hecke::CoefficientField& field);

sums::LambdaTable parse_lambda_csv(const std::string& text);
std::string write_lambda_csv(const sums::LambdaTable& table);

asymptotics::SampledFunction parse_function_csv(const std::string& text);
std::string write_function_csv(const asymptotics::SampledFunction& f);

struct DecayFile {
  asymptotics::DecayParams params;
  std::optional<double> C;
  std::optional<std::int64_t> R;
};
DecayFile parse_decay_params(const std::string& text);

numerics::SpectralForm parse_form_json(const std::string& text);
std::string write_form_json(const numerics::SpectralForm& form);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace cuspmass::io
