#pragma once

// Clifford algebras C_n over an ordered field: generators i_1..i_n with
// i_h^2 = -1 and i_g i_h = -i_h i_g (g != h). Elements are stored sparsely
// over basis blades I = i_{h_1}...i_{h_r}, h_1 < ... < h_r.

#include "cuspmass/rational.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cuspmass::clifford {

inline constexpr int kMaxRank = 8;

/// Bit h-1 set <=> generator i_h is a factor of the blade.
using Blade = std::uint32_t;

/// Canonical blade order: by size, then lexicographically by sorted indices.
struct BladeOrder {
  bool operator()(Blade lhs, Blade rhs) const {
    const int nl = std::popcount(lhs);
    const int nr = std::popcount(rhs);
    if (nl != nr) return nl < nr;
    // Same size: the first differing index decides; lower bits are smaller
    // indices, so compare the lowest bit where the sets differ.
    const Blade diff = lhs ^ rhs;
    if (diff == 0) return false;
    const Blade lowest = diff & (~diff + 1);
    return (lhs & lowest) != 0;
  }
};

/// Sign of the product of basis blades a*b (reduced to blade a^b).
inline int blade_product_sign(Blade a, Blade b) {
  int swaps = 0;
  for (Blade rest = b; rest != 0; rest &= rest - 1) {
    const int h = std::countr_zero(rest);
    swaps += std::popcount(a >> (h + 1));
  }
  swaps += std::popcount(a & b);  // each i_h i_h = -1
  return (swaps & 1) ? -1 : 1;
}

inline Blade generator_blade(int h) { return Blade{1} << (h - 1); }

enum class Involution { main, reverse, bar };

inline int involution_sign(Blade blade, Involution kind) {
  const int r = std::popcount(blade);
  const int main_sign = (r & 1) ? -1 : 1;
  const int reverse_sign = ((r * (r - 1) / 2) & 1) ? -1 : 1;
  switch (kind) {
    case Involution::main: return main_sign;
    case Involution::reverse: return reverse_sign;
    case Involution::bar: return main_sign * reverse_sign;
  }
  return 1;
}

template <class Scalar>
class BasicCliffordElement {
 public:
  using Terms = std::map<Blade, Scalar, BladeOrder>;

  explicit BasicCliffordElement(int rank = 0) : rank_(rank) {
    if (rank < 0 || rank > kMaxRank) {
      throw std::invalid_argument("Clifford rank must lie in [0, " + std::to_string(kMaxRank) + "]");
    }
  }

  static BasicCliffordElement scalar(int rank, const Scalar& s) {
    BasicCliffordElement e(rank);
    e.add_term(0, s);
    return e;
  }

  /// The element coeff * i_{h_1}...i_{h_r} for sorted indices.
  static BasicCliffordElement blade(int rank, Blade blade, const Scalar& coeff) {
    BasicCliffordElement e(rank);
    e.add_term(blade, coeff);
    return e;
  }

  static BasicCliffordElement generator(int rank, int h) {
    return blade(rank, generator_blade(h), Scalar(1));
  }

  /// x_0 + x_1 i_1 + ... + x_n i_n.
  static BasicCliffordElement vector(int rank, const std::vector<Scalar>& coords) {
    if (static_cast<int>(coords.size()) != rank + 1) {
      throw std::invalid_argument("vector needs rank+1 coordinates");
    }
    BasicCliffordElement e(rank);
    e.add_term(0, coords[0]);
    for (int h = 1; h <= rank; ++h) e.add_term(generator_blade(h), coords[h]);
    return e;
  }

  int rank() const { return rank_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Scalar coefficient(Blade b) const {
    auto it = terms_.find(b);
    return it == terms_.end() ? Scalar(0) : it->second;
  }
  Scalar real_part() const { return coefficient(0); }

  /// N(a) = sum of squared coefficients.
  Scalar norm() const {
    Scalar total(0);
    for (const auto& [b, c] : terms_) total += c * c;
    return total;
  }

  bool is_scalar() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }
  bool is_vector() const {
    for (const auto& [b, c] : terms_) {
      if (std::popcount(b) > 1) return false;
    }
    return true;
  }

  void add_term(Blade b, const Scalar& c) {
    if (b >> rank_ != 0) throw std::invalid_argument("blade index exceeds algebra rank");
    if (c == Scalar(0)) return;
    auto [it, inserted] = terms_.try_emplace(b, c);
    if (!inserted) {
      it->second += c;
      if (it->second == Scalar(0)) terms_.erase(it);
    }
  }

  BasicCliffordElement involution(Involution kind) const {
    BasicCliffordElement out(rank_);
    for (const auto& [b, c] : terms_) {
      out.terms_.emplace(b, involution_sign(b, kind) < 0 ? Scalar(-c) : c);
    }
    return out;
  }

  /// Same element viewed in C_m, m >= rank.
  BasicCliffordElement embed(int new_rank) const {
    if (new_rank < rank_) throw std::invalid_argument("embedding must not lower the rank");
    BasicCliffordElement out(new_rank);
    out.terms_.insert(terms_.begin(), terms_.end());
    return out;
  }

  BasicCliffordElement& operator+=(const BasicCliffordElement& o) {
    check_rank(o);
    for (const auto& [b, c] : o.terms_) add_term(b, c);
    return *this;
  }
  BasicCliffordElement& operator-=(const BasicCliffordElement& o) {
    check_rank(o);
    for (const auto& [b, c] : o.terms_) add_term(b, Scalar(-c));
    return *this;
  }
  BasicCliffordElement& operator*=(const Scalar& s) {
    if (s == Scalar(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [b, c] : terms_) c *= s;
    return *this;
  }

  friend BasicCliffordElement operator+(BasicCliffordElement a, const BasicCliffordElement& b) { return a += b; }
  friend BasicCliffordElement operator-(BasicCliffordElement a, const BasicCliffordElement& b) { return a -= b; }
  friend BasicCliffordElement operator-(BasicCliffordElement a) { return a *= Scalar(-1); }
  friend BasicCliffordElement operator*(BasicCliffordElement a, const Scalar& s) { return a *= s; }
  friend BasicCliffordElement operator*(const Scalar& s, BasicCliffordElement a) { return a *= s; }

  friend BasicCliffordElement operator*(const BasicCliffordElement& a, const BasicCliffordElement& b) {
    a.check_rank(b);
    BasicCliffordElement out(a.rank_);
    for (const auto& [ba, ca] : a.terms_) {
      for (const auto& [bb, cb] : b.terms_) {
        Scalar c = ca * cb;
        if (blade_product_sign(ba, bb) < 0) c = -c;
        out.add_term(ba ^ bb, c);
      }
    }
    return out;
  }

  friend bool operator==(const BasicCliffordElement& a, const BasicCliffordElement& b) {
    return a.rank_ == b.rank_ && a.terms_ == b.terms_;
  }

 private:
  void check_rank(const BasicCliffordElement& o) const {
    if (o.rank_ != rank_) {
      throw std::invalid_argument("Clifford rank mismatch: " + std::to_string(rank_) + " vs " +
                                  std::to_string(o.rank_));
    }
  }

  int rank_;
  Terms terms_;
};

using CliffordElement = BasicCliffordElement<Rational>;
using NumericCliffordElement = BasicCliffordElement<double>;

/// An element supported on {1, i_1, ..., i_n}.
class CliffordVector {
 public:
  explicit CliffordVector(CliffordElement element) : element_(std::move(element)) {
    if (!element_.is_vector()) throw std::invalid_argument("element is not a Clifford vector");
  }
  static CliffordVector from_coords(int rank, const std::vector<Rational>& coords) {
    return CliffordVector(CliffordElement::vector(rank, coords));
  }
  const CliffordElement& element() const { return element_; }
  int rank() const { return element_.rank(); }
  /// Coordinates (x_0, ..., x_n) in R^{n+1}.
  std::vector<Rational> coords() const;

  friend bool operator==(const CliffordVector&, const CliffordVector&) = default;

 private:
  CliffordElement element_;
};

CliffordElement multiply(const CliffordElement& a, const CliffordElement& b);
CliffordElement involution(const CliffordElement& a, Involution kind);

struct VectorInfo {
  Rational norm;
  Rational real_part;
  std::optional<CliffordVector> inverse;
};

/// Norm, real part and (when nonzero) inverse bar(x)/N(x) of a vector.
VectorInfo vector_utils(const CliffordVector& x);

/// Two-sided inverse by exact elimination on the left-regular representation;
/// nullopt when a is singular.
std::optional<CliffordElement> inverse(const CliffordElement& a);

/// a v (a')^{-1}.
CliffordElement twisted_conjugate(const CliffordElement& a, const CliffordElement& v);

/// Invertible and the twisted conjugation maps every basis vector to a vector.
bool is_clifford_group_member(const CliffordElement& a);

/// Parses text like "3/2 + 1*e1 - 2*e12" into C_rank. Indices within a
/// blade must be strictly increasing; "e21" and "e11" are rejected.
CliffordElement parse_clifford(std::string_view text, int rank);

/// Canonical text form accepted by parse_clifford; "0" for zero.
std::string format_clifford(const CliffordElement& a);

}  // namespace cuspmass::clifford
