#pragma once

// Recursive decay inequalities for compactly supported f : [1, inf) -> [0, 1].
// Functions are sampled in t = log y so that the maps y -> y^{1+c} become
// dilations t -> (1+c) t. All logarithms are natural.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cuspmass::asymptotics {

/// The three defining conditions of R: R >= A, 2A (log A)^{A-R} <= 1/4,
/// 2AM (1 - eps/2)^R <= 1/4. Evaluated in log form.
std::array<bool, 3> R_conditions(double A, std::int64_t M, double eps, std::int64_t R);

/// Smallest integer satisfying all three conditions.
std::int64_t compute_R(double A, std::int64_t M, double eps);

class SampledFunction {
 public:
  /// Nodes t_k = log y_k, strictly increasing from t_0 = 0, values in
  /// [0, 1] with value 1 at t = 0; zero beyond support_t.
  SampledFunction(std::vector<double> t, std::vector<double> values, double support_t);

  /// Uniform grid t = k h up to t_max of the function of t given.
  static SampledFunction sample(const std::function<double(double)>& f_of_t, double h, double t_max,
                                double support_t);

  const std::vector<double>& t() const { return t_; }
  const std::vector<double>& values() const { return values_; }
  double support_t() const { return support_t_; }
  /// Largest gap between consecutive nodes.
  double max_step() const;

  /// Linear interpolation at t; zero past the support or the last node.
  double at(double t) const;

 private:
  std::vector<double> t_, values_;
  double support_t_;
};

/// a_m or b_n as functions of t = log y: c (1 + t)^e.
struct ExponentFunction {
  double c = 0;
  double e = 0;
  double operator()(double t) const;
  static ExponentFunction constant(double c) { return {c, 0}; }
};

struct DecayParams {
  double Delta = 1;
  double eps = 0.5;
  double A = 10;
  std::vector<ExponentFunction> a;  // M of them
  std::vector<ExponentFunction> b;  // N of them
  std::int64_t M() const { return static_cast<std::int64_t>(a.size()); }
  std::int64_t N() const { return static_cast<std::int64_t>(b.size()); }
};

/// Checks Delta > 0, eps in (0,1), A >= 10 and the bounds on a_m, b_n at
/// the grid nodes; returns a description of the first failure.
std::optional<std::string> validate(const DecayParams& params, const SampledFunction& f);

struct HypothesisReport {
  bool pass = true;
  bool sparse = false;          // grid step exceeds eps log(A) / 2
  std::size_t points_checked = 0;
  double worst_margin = 0;      // min over y >= A of (rhs - f)
  double worst_t = 0;
};

/// The recursive hypothesis at every grid node with y >= A.
HypothesisReport check_recursive_hypothesis(const SampledFunction& f, const DecayParams& params);

struct DecayReport {
  bool holds = true;
  double log_minimal_C = 0;  // log of max f(y) y^Delta / (1 + log y)^R
  double minimal_C = 0;
  double worst_t = 0;
};

/// f(y) <= C (1 + log y)^R / y^Delta at every node, and the least such C.
DecayReport check_decay_conclusion(const SampledFunction& f, double C, std::int64_t R, double Delta);

struct MaximizerReport {
  double r = 0;
  double t_z = 0;     // log z_r
  bool holds = true;  // g(y) <= 2 ((1 + log y)/(1 + log z_r))^r g(z_r) at all nodes
};

/// With g = y^Delta f, picks the grid maximizer z_r of g / (1 + log y)^r.
MaximizerReport check_maximizer(const SampledFunction& f, double Delta, double r);

}  // namespace cuspmass::asymptotics
