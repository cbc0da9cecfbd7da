#include "cuspmass/geometry.hpp"

#include "cuspmass/clifford.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace cuspmass::geometry {

using clifford::Blade;
using clifford::Involution;
using clifford::NumericCliffordElement;
using quaternions::LatticeVector;
using quaternions::LipschitzQuaternion;

bool RationalQuaternion::is_integral() const {
  return a.get_den() == 1 && b.get_den() == 1 && c.get_den() == 1 && d.get_den() == 1;
}

RationalQuaternion operator*(const RationalQuaternion& x, const RationalQuaternion& y) {
  return {x.a * y.a - x.b * y.b - x.c * y.c - x.d * y.d, x.a * y.b + x.b * y.a + x.c * y.d - x.d * y.c,
          x.a * y.c - x.b * y.d + x.c * y.a + x.d * y.b, x.a * y.d + x.b * y.c - x.c * y.b + x.d * y.a};
}

namespace {

const RationalQuaternion kZero{0, 0, 0, 0};
const RationalQuaternion kOne{1, 0, 0, 0};

}  // namespace

IsometryMatrix IsometryMatrix::identity() { return {kOne, kZero, kZero, kOne}; }

IsometryMatrix IsometryMatrix::inversion() { return {kZero, kOne, -kOne, kZero}; }

IsometryMatrix IsometryMatrix::translate(const LatticeVector& beta) {
  return {kOne, RationalQuaternion::from(beta.as_quaternion()), kZero, kOne};
}

IsometryMatrix IsometryMatrix::diagonal_unit(const LipschitzQuaternion& u) {
  const auto q = RationalQuaternion::from(u);
  return {q, kZero, kZero, q.prime()};
}

IsometryMatrix IsometryMatrix::parse(const std::string& text) {
  std::string cleaned = text;
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream in(cleaned);
  std::vector<long> v;
  long x;
  while (in >> x) v.push_back(x);
  if (!in.eof() || v.size() != 16) throw std::invalid_argument("matrix needs exactly 16 integers");
  auto q = [&](int k) { return RationalQuaternion{v[4 * k], v[4 * k + 1], v[4 * k + 2], v[4 * k + 3]}; };
  return {q(0), q(1), q(2), q(3)};
}

IsometryMatrix operator*(const IsometryMatrix& g, const IsometryMatrix& h) {
  return {g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d, g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d};
}

Rational pseudo_det(const IsometryMatrix& g) {
  const RationalQuaternion mu = g.a * g.d.star() - g.b * g.c.star();
  if (!mu.is_real()) throw NotSimilitude("not a similitude: ad* - bc* is not a real scalar");
  return mu.a;
}

bool is_integral_sv2(const IsometryMatrix& g) {
  if (!g.a.is_integral() || !g.b.is_integral() || !g.c.is_integral() || !g.d.is_integral()) return false;
  const IsometryMatrix j = IsometryMatrix::inversion();
  const IsometryMatrix dagger{g.a.star(), g.c.star(), g.b.star(), g.d.star()};
  return g * j * dagger == j;
}

PointH4::PointH4(double x0_, double x1_, double x2_, double y_) : x0(x0_), x1(x1_), x2(x2_), y(y_) {
  if (!(y > 0) || !std::isfinite(y)) throw std::invalid_argument("point of H^4 needs y > 0");
}

PointH4 PointH4::parse(const std::string& text) {
  std::string cleaned = text;
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream in(cleaned);
  std::vector<double> v;
  double x;
  while (in >> x) v.push_back(x);
  if (!in.eof() || v.size() != 4) throw std::invalid_argument("point needs four numbers x0,x1,x2,y");
  return {v[0], v[1], v[2], v[3]};
}

std::string format_point(const PointH4& z) {
  std::ostringstream os;
  os.precision(17);
  os << z.x0 << ',' << z.x1 << ',' << z.x2 << ',' << z.y;
  return os.str();
}

namespace {

NumericCliffordElement embed_c3(const RationalQuaternion& q) {
  NumericCliffordElement e(3);
  e.add_term(0, q.a.get_d());
  e.add_term(0b001, q.b.get_d());
  e.add_term(0b010, q.c.get_d());
  e.add_term(0b011, q.d.get_d());
  return e;
}

}  // namespace

PointH4 act(const IsometryMatrix& g, const PointH4& z) {
  const NumericCliffordElement x = NumericCliffordElement::vector(3, {z.x0, z.x1, z.x2, z.y});
  const NumericCliffordElement num = embed_c3(g.a) * x + embed_c3(g.b);
  const NumericCliffordElement den = embed_c3(g.c) * x + embed_c3(g.d);
  const NumericCliffordElement den_bar = den.involution(Involution::bar);
  const double n = (den * den_bar).real_part();
  if (!(n > 0)) throw std::domain_error("cz + d is not invertible");
  const NumericCliffordElement w = num * den_bar * (1.0 / n);
  const double scale = std::sqrt(w.norm());
  for (const auto& [blade, coeff] : w.terms()) {
    if (std::popcount(blade) > 1 && std::abs(coeff) > 1e-9 * std::max(1.0, scale)) {
      throw std::logic_error("action left the vector subspace; g is not in SV_2");
    }
  }
  return {w.real_part(), w.coefficient(0b001), w.coefficient(0b010), w.coefficient(0b100)};
}

double cosh_distance(const PointH4& z, const PointH4& w) {
  const double d0 = z.x0 - w.x0, d1 = z.x1 - w.x1, d2 = z.x2 - w.x2, dy = z.y - w.y;
  return 1 + (d0 * d0 + d1 * d1 + d2 * d2 + dy * dy) / (2 * z.y * w.y);
}

IsometryMatrix token_matrix(const GeneratorToken& t) {
  struct Visitor {
    IsometryMatrix operator()(const Translate& x) const { return IsometryMatrix::translate(x.beta); }
    IsometryMatrix operator()(const Inversion&) const { return IsometryMatrix::inversion(); }
    IsometryMatrix operator()(const RotI&) const { return IsometryMatrix::rot_i(); }
    IsometryMatrix operator()(const RotJ&) const { return IsometryMatrix::rot_j(); }
    IsometryMatrix operator()(const RotK&) const { return IsometryMatrix::rot_k(); }
  };
  return std::visit(Visitor{}, t);
}

IsometryMatrix evaluate_word(const GeneratorWord& word) {
  IsometryMatrix g = IsometryMatrix::identity();
  for (const auto& t : word) g = token_matrix(t) * g;
  return g;
}

std::string format_word(const GeneratorWord& word) {
  struct Visitor {
    std::string operator()(const Translate& x) const {
      std::ostringstream os;
      os << "translate(" << x.beta.b0 << ',' << x.beta.b1 << ',' << x.beta.b2 << ')';
      return os.str();
    }
    std::string operator()(const Inversion&) const { return "inversion"; }
    std::string operator()(const RotI&) const { return "rot_i"; }
    std::string operator()(const RotJ&) const { return "rot_j"; }
    std::string operator()(const RotK&) const { return "rot_k"; }
  };
  std::string out;
  for (const auto& t : word) {
    if (!out.empty()) out += ' ';
    out += std::visit(Visitor{}, t);
  }
  return out;
}

bool is_in_region(const PointH4& z, const Region& region, double tol) {
  const double half = 0.5 + tol;
  switch (region.kind) {
    case RegionKind::fundamental:
      return std::abs(z.x0) <= half && z.x1 >= -tol && z.x1 <= half && z.x2 >= -tol && z.x2 <= half &&
             std::sqrt(z.abs2()) >= 1 - tol;
    case RegionKind::cusp:
      return is_in_region(z, Region::F(), tol) && z.y >= region.T - tol;
    case RegionKind::symmetric_cusp:
      return std::abs(z.x0) <= half && std::abs(z.x1) <= half && std::abs(z.x2) <= half && z.y >= region.T - tol;
  }
  return false;
}

Reduction reduce_to_fundamental_domain(const PointH4& start, double tol) {
  Reduction r;
  PointH4 z = start;
  auto shift = [&](double x) -> std::int64_t { return std::abs(x) > 0.5 + tol ? std::llround(x) : 0; };
  for (; r.iterations < kMaxReductionIterations; ++r.iterations) {
    const LatticeVector n{shift(z.x0), shift(z.x1), shift(z.x2)};
    if (!n.is_zero()) {
      z.x0 -= static_cast<double>(n.b0);
      z.x1 -= static_cast<double>(n.b1);
      z.x2 -= static_cast<double>(n.b2);
      r.word.push_back(Translate{-n});
    }
    const bool neg1 = z.x1 < -tol;
    const bool neg2 = z.x2 < -tol;
    if (neg1 && neg2) {
      z = {z.x0, -z.x1, -z.x2, z.y};
      r.word.push_back(RotK{});
    } else if (neg1) {
      z = {-z.x0, -z.x1, z.x2, z.y};
      r.word.push_back(RotI{});
    } else if (neg2) {
      z = {-z.x0, z.x1, -z.x2, z.y};
      r.word.push_back(RotJ{});
    }
    const double n2 = z.abs2();
    if (std::sqrt(n2) < 1 - tol) {
      z = {-z.x0 / n2, z.x1 / n2, z.x2 / n2, z.y / n2};
      r.word.push_back(Inversion{});
      continue;
    }
    if (is_in_region(z, Region::F(), tol)) {
      r.point = z;
      return r;
    }
  }
  throw ReductionFailure("reduction of " + format_point(start) + " did not terminate; last point " +
                         format_point(z) + ", word " + format_word(r.word));
}

const std::array<IsometryMatrix, 4>& cusp_tiling_matrices() {
  static const std::array<IsometryMatrix, 4> m = {IsometryMatrix::identity(), IsometryMatrix::rot_i(),
                                                  IsometryMatrix::rot_j(), IsometryMatrix::rot_k()};
  return m;
}

CuspMatch classify_cusp_point(const PointH4& z, double T, double tol) {
  // diag(u, u')^{-1} = diag(bar(u), bar(u)') for a unit u.
  static const std::array<IsometryMatrix, 4> inverses = {
      IsometryMatrix::identity(), IsometryMatrix::diagonal_unit({0, -1, 0, 0}),
      IsometryMatrix::diagonal_unit({0, 0, -1, 0}), IsometryMatrix::diagonal_unit({0, 0, 0, -1})};
  CuspMatch m;
  for (int k = 0; k < 4; ++k) {
    const PointH4 w = act(inverses[k], z);
    if (is_in_region(w, Region::S(T), -tol)) {
      ++m.interior;
      if (m.first_interior < 0) m.first_interior = k;
    } else if (is_in_region(w, Region::S(T), tol)) {
      ++m.boundary;
    }
  }
  return m;
}

CuspDecompositionReport verify_cusp_decomposition(double T, int sample_count, std::uint64_t seed) {
  if (T < 1) throw std::invalid_argument("cusp decomposition needs T >= 1");
  CuspDecompositionReport report;
  report.T = T;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(-0.5, 0.5);
  std::uniform_real_distribution<double> height(T, 4 * T);
  for (int s = 0; s < sample_count; ++s) {
    const double x0 = box(rng), x1 = box(rng), x2 = box(rng), y = height(rng);
    const PointH4 z{x0, x1, x2, y};
    const CuspMatch m = classify_cusp_point(z, T);
    ++report.samples;
    if (m.boundary > 0) {
      ++report.boundary_ties;
      continue;
    }
    if (m.interior != 1) {
      throw DecompositionViolation(std::to_string(m.interior) + " interior matches for " + format_point(z), z);
    }
    ++report.single_matches;
    ++report.matches_per_matrix[m.first_interior];
  }
  return report;
}

}  // namespace cuspmass::geometry
