#include "cuspmass/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cuspmass::asymptotics {

namespace {

void check_R_inputs(double A, std::int64_t M, double eps) {
  if (!(A >= 10)) throw std::invalid_argument("compute_R needs A >= 10");
  if (!(eps > 0 && eps < 1)) throw std::invalid_argument("compute_R needs eps in (0, 1)");
  if (M < 0) throw std::invalid_argument("compute_R needs M >= 0");
}

}  // namespace

std::array<bool, 3> R_conditions(double A, std::int64_t M, double eps, std::int64_t R) {
  check_R_inputs(A, M, eps);
  const double r = static_cast<double>(R);
  const double quarter = std::log(0.25);
  std::array<bool, 3> ok{};
  ok[0] = r >= A;
  ok[1] = std::log(2 * A) + (A - r) * std::log(std::log(A)) <= quarter;
  ok[2] = M == 0 || std::log(2 * A * static_cast<double>(M)) + r * std::log1p(-eps / 2) <= quarter;
  return ok;
}

std::int64_t compute_R(double A, std::int64_t M, double eps) {
  check_R_inputs(A, M, eps);
  double bound = std::ceil(A);
  bound = std::max(bound, std::ceil(A + std::log(8 * A) / std::log(std::log(A))));
  if (M > 0) bound = std::max(bound, std::ceil(std::log(8 * A * static_cast<double>(M)) / -std::log1p(-eps / 2)));
  auto all = [&](std::int64_t R) {
    const auto ok = R_conditions(A, M, eps, R);
    return ok[0] && ok[1] && ok[2];
  };
  auto R = static_cast<std::int64_t>(bound);
  while (!all(R)) ++R;
  while (R > 1 && all(R - 1)) --R;
  return R;
}

SampledFunction::SampledFunction(std::vector<double> t, std::vector<double> values, double support_t)
    : t_(std::move(t)), values_(std::move(values)), support_t_(support_t) {
  if (t_.empty() || t_.size() != values_.size()) throw std::invalid_argument("sampled function needs matching nodes");
  if (t_.front() != 0) throw std::invalid_argument("sampled function must start at y = 1");
  if (values_.front() != 1) throw std::invalid_argument("sampled function needs f(1) = 1");
  for (std::size_t k = 0; k < t_.size(); ++k) {
    if (k > 0 && !(t_[k] > t_[k - 1])) throw std::invalid_argument("sample nodes must increase strictly");
    if (!(values_[k] >= 0 && values_[k] <= 1)) throw std::invalid_argument("sampled values must lie in [0, 1]");
    if (t_[k] > support_t_ && values_[k] != 0) throw std::invalid_argument("nonzero value beyond the support bound");
  }
}

SampledFunction SampledFunction::sample(const std::function<double(double)>& f_of_t, double h, double t_max,
                                        double support_t) {
  if (!(h > 0) || !(t_max > 0)) throw std::invalid_argument("grid needs h > 0 and t_max > 0");
  std::vector<double> t, v;
  const auto n = static_cast<std::size_t>(std::llround(t_max / h));
  for (std::size_t k = 0; k <= n; ++k) {
    const double tk = static_cast<double>(k) * h;
    t.push_back(tk);
    v.push_back(tk > support_t ? 0.0 : std::clamp(f_of_t(tk), 0.0, 1.0));
  }
  v.front() = 1;
  return {std::move(t), std::move(v), support_t};
}

double SampledFunction::max_step() const {
  double step = 0;
  for (std::size_t k = 1; k < t_.size(); ++k) step = std::max(step, t_[k] - t_[k - 1]);
  return step;
}

double SampledFunction::at(double t) const {
  if (t < 0) throw std::domain_error("sampled function evaluated below y = 1");
  if (t > support_t_ || t > t_.back()) return 0;
  auto hi = std::lower_bound(t_.begin(), t_.end(), t);
  if (*hi == t) return values_[hi - t_.begin()];
  const std::size_t k = hi - t_.begin();
  const double w = (t - t_[k - 1]) / (t_[k] - t_[k - 1]);
  return (1 - w) * values_[k - 1] + w * values_[k];
}

double ExponentFunction::operator()(double t) const { return e == 0 ? c : c * std::pow(1 + t, e); }

std::optional<std::string> validate(const DecayParams& p, const SampledFunction& f) {
  if (!(p.Delta > 0)) return "Delta must be positive";
  if (!(p.eps > 0 && p.eps < 1)) return "eps must lie in (0, 1)";
  if (!(p.A >= 10)) return "A must be at least 10";
  for (double t : f.t()) {
    for (std::size_t m = 0; m < p.a.size(); ++m) {
      const double v = p.a[m](t);
      if (v > 1 || v < p.eps) return "a_" + std::to_string(m + 1) + " leaves [eps, 1] at log y = " + std::to_string(t);
    }
    for (std::size_t n = 0; n < p.b.size(); ++n) {
      if (p.b[n](t) < p.eps * std::pow(1 + t, p.eps)) {
        return "b_" + std::to_string(n + 1) + " falls below eps (1 + log y)^eps at log y = " + std::to_string(t);
      }
    }
  }
  return std::nullopt;
}

HypothesisReport check_recursive_hypothesis(const SampledFunction& f, const DecayParams& p) {
  if (auto bad = validate(p, f)) throw std::invalid_argument(*bad);
  HypothesisReport rep;
  const double tA = std::log(p.A);
  rep.sparse = f.max_step() > p.eps * tA / 2;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  const auto& ts = f.t();
  const auto& vs = f.values();
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const double t = ts[k];
    if (t < tA) continue;
    ++rep.points_checked;
    double bracket = std::exp(p.A * std::log(t) - p.Delta * t) + f.at(t * (1 + p.eps));
    for (const auto& am : p.a) {
      const double a = am(t);
      const double fv = f.at(t * (1 - a));
      if (fv > 0) bracket += std::exp(-p.Delta * a * t) * fv;
    }
    for (const auto& bn : p.b) {
      const double b = bn(t);
      const double fv = f.at(t * (1 + b));
      if (fv > 0) bracket += std::exp(-p.eps * b + p.Delta * b * t + std::log(fv));
    }
    const double margin = p.A * bracket - vs[k];
    if (margin < rep.worst_margin) {
      rep.worst_margin = margin;
      rep.worst_t = t;
    }
    if (margin < 0) rep.pass = false;
  }
  if (rep.points_checked == 0) rep.worst_margin = 0;
  return rep;
}

DecayReport check_decay_conclusion(const SampledFunction& f, double C, std::int64_t R, double Delta) {
  DecayReport rep;
  rep.log_minimal_C = -std::numeric_limits<double>::infinity();
  const double logC = C > 0 ? std::log(C) : -std::numeric_limits<double>::infinity();
  const auto& ts = f.t();
  const auto& vs = f.values();
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (vs[k] <= 0) continue;
    const double need = std::log(vs[k]) + Delta * ts[k] - static_cast<double>(R) * std::log1p(ts[k]);
    if (need > rep.log_minimal_C) {
      rep.log_minimal_C = need;
      rep.worst_t = ts[k];
    }
  }
  rep.minimal_C = std::exp(rep.log_minimal_C);
  rep.holds = rep.log_minimal_C <= logC + 1e-12;
  return rep;
}

MaximizerReport check_maximizer(const SampledFunction& f, double Delta, double r) {
  MaximizerReport rep;
  rep.r = r;
  const auto& ts = f.t();
  const auto& vs = f.values();
  double best = -std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  std::vector<double> log_g(ts.size(), -std::numeric_limits<double>::infinity());
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (vs[k] <= 0) continue;
    log_g[k] = std::log(vs[k]) + Delta * ts[k];
    const double score = log_g[k] - r * std::log1p(ts[k]);
    if (score > best) {
      best = score;
      arg = k;
    }
  }
  rep.t_z = ts[arg];
  const double log_two = std::log(2.0);
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (log_g[k] == -std::numeric_limits<double>::infinity()) continue;
    const double rhs = log_two + r * (std::log1p(ts[k]) - std::log1p(ts[arg])) + log_g[arg];
    if (log_g[k] > rhs + 1e-12) rep.holds = false;
  }
  return rep;
}

}  // namespace cuspmass::asymptotics
