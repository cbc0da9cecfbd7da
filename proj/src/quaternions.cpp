#include "cuspmass/quaternions.hpp"

#include "cuspmass/parallel.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>

namespace cuspmass::quaternions {

std::ostream& operator<<(std::ostream& os, const LipschitzQuaternion& q) {
  return os << q.a << ' ' << q.b << ' ' << q.c << ' ' << q.d;
}

std::ostream& operator<<(std::ostream& os, const LatticeVector& v) {
  return os << v.b0 << ' ' << v.b1 << ' ' << v.b2;
}

std::ostream& operator<<(std::ostream& os, const Valuation& v) {
  if (v.is_infinite()) return os << "inf";
  return os << v.value();
}

LatticeVector to_lattice_vector(const LipschitzQuaternion& q) {
  if (q.d != 0) {
    std::ostringstream msg;
    msg << "quaternion (" << q << ") has nonzero k-component; expected an element of V^3";
    throw std::logic_error(msg.str());
  }
  return {q.a, q.b, q.c};
}

namespace {

int valuation_of_int(std::int64_t x, std::int64_t q) {
  int e = 0;
  while (x % q == 0) {
    x /= q;
    ++e;
  }
  return e;
}

template <std::size_t N>
Valuation valuation_of(const std::array<std::int64_t, N>& coords, std::int64_t q) {
  int best = -1;
  for (std::int64_t c : coords) {
    if (c == 0) continue;
    const int e = valuation_of_int(c, q);
    if (best < 0 || e < best) best = e;
  }
  return best < 0 ? Valuation::infinity() : Valuation(best);
}

}  // namespace

Valuation valuation(const LatticeVector& v, std::int64_t q) {
  return valuation_of(std::array<std::int64_t, 3>{v.b0, v.b1, v.b2}, q);
}

Valuation valuation(const LipschitzQuaternion& x, std::int64_t q) {
  return valuation_of(std::array<std::int64_t, 4>{x.a, x.b, x.c, x.d}, q);
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t f = 3; f * f <= n; f += 2) {
    if (n % f == 0) return false;
  }
  return true;
}

bool is_odd_prime(std::int64_t n) { return n != 2 && is_prime(n); }

const std::array<LipschitzQuaternion, 8>& unit_quaternions() {
  static const std::array<LipschitzQuaternion, 8> units = {{
      {1, 0, 0, 0}, {-1, 0, 0, 0}, {0, 1, 0, 0}, {0, -1, 0, 0},
      {0, 0, 1, 0}, {0, 0, -1, 0}, {0, 0, 0, 1}, {0, 0, 0, -1},
  }};
  return units;
}

std::vector<LipschitzQuaternion> enumerate_norm(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("enumerate_norm needs n >= 1");
  std::int64_t r = 0;
  while ((r + 1) * (r + 1) <= n) ++r;
  std::vector<LipschitzQuaternion> out;
  for (std::int64_t a = -r; a <= r; ++a) {
    const std::int64_t ra = n - a * a;
    for (std::int64_t b = -r; b <= r; ++b) {
      const std::int64_t rb = ra - b * b;
      if (rb < 0) continue;
      for (std::int64_t c = -r; c <= r; ++c) {
        const std::int64_t rc = rb - c * c;
        if (rc < 0) continue;
        for (std::int64_t d = -r; d <= r; ++d) {
          if (d * d == rc) out.push_back({a, b, c, d});
        }
      }
    }
  }
  return out;
}

LipschitzQuaternion canonical_representative(const LipschitzQuaternion& x) {
  LipschitzQuaternion best = x;
  for (const auto& u : unit_quaternions()) best = std::min(best, u * x);
  return best;
}

NormPOrbitTable orbit_representatives(std::int64_t p) {
  if (!is_odd_prime(p)) throw std::invalid_argument("orbit table needs an odd prime, got " + std::to_string(p));
  NormPOrbitTable table;
  table.p = p;
  table.all_elements = enumerate_norm(p);
  std::set<LipschitzQuaternion> reps;
  for (const auto& x : table.all_elements) reps.insert(canonical_representative(x));
  table.representatives.assign(reps.begin(), reps.end());
  return table;
}

const NormPOrbitTable& orbit_table(std::int64_t p) {
  static std::mutex mutex;
  static std::map<std::int64_t, std::unique_ptr<NormPOrbitTable>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[p];
  if (!slot) {
    try {
      slot = std::make_unique<NormPOrbitTable>(orbit_representatives(p));
    } catch (...) {
      cache.erase(p);
      throw;
    }
  }
  return *slot;
}

NormPOrbitTable rerepresent(const NormPOrbitTable& table, const std::vector<int>& unit_indices) {
  if (unit_indices.size() != table.representatives.size()) {
    throw std::invalid_argument("rerepresent needs one unit index per representative");
  }
  NormPOrbitTable out = table;
  for (std::size_t i = 0; i < unit_indices.size(); ++i) {
    out.representatives[i] = unit_quaternions().at(unit_indices[i]) * table.representatives[i];
  }
  return out;
}

LatticeVector conjugate_action(const LipschitzQuaternion& alpha, const LatticeVector& beta) {
  return to_lattice_vector(alpha.prime() * beta.as_quaternion() * alpha.bar());
}

LatticeVector star_action(const LipschitzQuaternion& alpha, const LatticeVector& gamma) {
  return to_lattice_vector(alpha.star() * gamma.as_quaternion() * alpha);
}

namespace {

std::string describe(const LemmaWitness& w) {
  std::ostringstream os;
  os << w.statement << " violated: beta=(" << w.beta << ") alpha=(" << w.alpha << ") prime=" << w.prime;
  if (!w.detail.empty()) os << " [" << w.detail << "]";
  return os.str();
}

}  // namespace

LemmaViolation::LemmaViolation(LemmaWitness w) : std::runtime_error(describe(w)), witness_(std::move(w)) {}

ConjugationSweepReport verify_conjugation_lemmas(std::int64_t p, std::int64_t bound,
                                                 const ConjugationSweepOptions& options) {
  if (bound < 1) throw std::invalid_argument("sweep bound must be positive");
  const NormPOrbitTable& table = orbit_table(p);
  std::vector<std::int64_t> others = options.other_primes;
  if (others.empty()) {
    for (std::int64_t q : {3, 5, 7, 11}) {
      if (q != p) others.push_back(q);
    }
  }
  for (std::int64_t q : others) {
    if (!is_odd_prime(q) || q == p) throw std::invalid_argument("other primes must be odd primes != p");
  }

  const std::int64_t side = 2 * bound + 1;
  const std::size_t total = static_cast<std::size_t>(side * side * side);
  const std::size_t chunks = worker_count();
  std::vector<ConjugationSweepReport> partial(std::max<std::size_t>(1, std::min(chunks, total)));
  const std::int64_t p2 = p * p;

  parallel_chunks(total, partial.size(), [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    ConjugationSweepReport& r = partial[chunk];
    for (std::size_t idx = begin; idx < end; ++idx) {
      const auto flat = static_cast<std::int64_t>(idx);
      const LatticeVector beta{flat / (side * side) - bound, (flat / side) % side - bound, flat % side - bound};
      if (beta.is_zero()) continue;
      ++r.betas_tested;
      const Valuation vb = valuation(beta, p);

      if (options.check_valuation_lemma) {
        for (const auto& alpha : table.all_elements) {
          const LatticeVector image = conjugate_action(alpha, beta);
          const Valuation v = valuation(image, p);
          ++r.pairs_tested;
          ++r.valuation_bound_checks;
          if (v < vb || v > vb.plus(2)) {
            throw LemmaViolation({"v_p(beta) <= v_p(alpha' beta bar(alpha)) <= v_p(beta) + 2", beta, alpha, p,
                                  "v_p(image) out of range"});
          }
          for (std::int64_t q : others) {
            ++r.other_prime_checks;
            if (valuation(image, q) != valuation(beta, q)) {
              throw LemmaViolation({"v_q(alpha' beta bar(alpha)) = v_q(beta)", beta, alpha, q, ""});
            }
          }
        }
        int changed = 0;
        int raised = 0;
        for (const auto& alpha : table.representatives) {
          const Valuation v = valuation(conjugate_action(alpha, beta), p);
          if (v != vb) ++changed;
          if (v >= vb.plus(1)) ++raised;
        }
        r.max_changed_representatives = std::max(r.max_changed_representatives, changed);
        r.max_raised_set_size = std::max(r.max_raised_set_size, raised);
        if (changed > 2) {
          throw LemmaViolation({"at most two representatives change v_p", beta, {}, p,
                                std::to_string(changed) + " representatives change"});
        }
        if (raised > 2) {
          throw LemmaViolation({"|I(beta)| <= 2", beta, {}, p, "|I(beta)| = " + std::to_string(raised)});
        }
      }

      if (options.check_multiplicity_lemma) {
        const LatticeVector& delta = beta;
        ++r.multiplicity_checks;
        int hits = 0;
        for (const auto& alpha : table.all_elements) {
          if (star_action(alpha, delta).divisible_by(p2)) ++hits;
        }
        if (hits > 16) {
          ++r.multiplicity_triggered;
          if (!delta.divisible_by(p2)) {
            throw LemmaViolation({"more than 16 alphas with p^2 | alpha^* delta alpha imply p^2 | delta", delta, {},
                                  p, std::to_string(hits) + " alphas"});
          }
        }
        const Valuation vd = valuation(delta, p);
        int m2 = 0;
        for (const auto& alpha : table.representatives) {
          if (valuation(star_action(alpha, delta), p) > vd.plus(1)) ++m2;
        }
        r.max_m2 = std::max(r.max_m2, m2);
        if (m2 > 16) {
          throw LemmaViolation({"m_2(delta) <= 16", delta, {}, p, "m_2 = " + std::to_string(m2)});
        }
      }
    }
  });

  ConjugationSweepReport report;
  report.p = p;
  report.bound = bound;
  report.other_primes = others;
  for (const auto& r : partial) {
    report.betas_tested += r.betas_tested;
    report.pairs_tested += r.pairs_tested;
    report.valuation_bound_checks += r.valuation_bound_checks;
    report.other_prime_checks += r.other_prime_checks;
    report.multiplicity_checks += r.multiplicity_checks;
    report.multiplicity_triggered += r.multiplicity_triggered;
    report.max_changed_representatives = std::max(report.max_changed_representatives, r.max_changed_representatives);
    report.max_raised_set_size = std::max(report.max_raised_set_size, r.max_raised_set_size);
    report.max_m2 = std::max(report.max_m2, r.max_m2);
  }
  return report;
}

}  // namespace cuspmass::quaternions
