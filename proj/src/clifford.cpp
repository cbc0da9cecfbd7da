#include "cuspmass/clifford.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace cuspmass::clifford {

std::vector<Rational> CliffordVector::coords() const {
  std::vector<Rational> out(element_.rank() + 1);
  out[0] = element_.real_part();
  for (int h = 1; h <= element_.rank(); ++h) out[h] = element_.coefficient(generator_blade(h));
  return out;
}

CliffordElement multiply(const CliffordElement& a, const CliffordElement& b) { return a * b; }

CliffordElement involution(const CliffordElement& a, Involution kind) { return a.involution(kind); }

VectorInfo vector_utils(const CliffordVector& x) {
  const CliffordElement& e = x.element();
  // x * bar(x) is the scalar N(x) for vectors.
  const CliffordElement product = e * e.involution(Involution::bar);
  VectorInfo info{product.real_part(), e.real_part(), std::nullopt};
  if (info.norm != 0) {
    info.inverse = CliffordVector(e.involution(Involution::bar) * Rational(1 / info.norm));
  }
  return info;
}

std::optional<CliffordElement> inverse(const CliffordElement& a) {
  const int n = a.rank();
  const std::size_t dim = std::size_t{1} << n;
  if (a.is_zero()) return std::nullopt;
  if (a.is_scalar()) return CliffordElement::scalar(n, Rational(1 / a.real_part()));

  // Column J of the augmented system holds the coefficients of a * e_J;
  // solve (L_a) x = e_empty by Gauss-Jordan elimination.
  std::vector<std::vector<Rational>> m(dim, std::vector<Rational>(dim + 1));
  for (Blade col = 0; col < dim; ++col) {
    for (const auto& [b, c] : a.terms()) {
      const Blade row = b ^ col;
      m[row][col] += blade_product_sign(b, col) < 0 ? Rational(-c) : c;
    }
  }
  m[0][dim] = 1;

  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t pivot = col;
    while (pivot < dim && m[pivot][col] == 0) ++pivot;
    if (pivot == dim) return std::nullopt;
    std::swap(m[pivot], m[col]);
    const Rational inv = 1 / m[col][col];
    for (std::size_t k = col; k <= dim; ++k) m[col][k] *= inv;
    for (std::size_t row = 0; row < dim; ++row) {
      if (row == col || m[row][col] == 0) continue;
      const Rational factor = m[row][col];
      for (std::size_t k = col; k <= dim; ++k) m[row][k] -= factor * m[col][k];
    }
  }
  CliffordElement out(n);
  for (Blade b = 0; b < dim; ++b) out.add_term(b, m[b][dim]);
  return out;
}

CliffordElement twisted_conjugate(const CliffordElement& a, const CliffordElement& v) {
  auto inv = inverse(a.involution(Involution::main));
  if (!inv) throw std::invalid_argument("twisted conjugation by a non-invertible element");
  return a * v * *inv;
}

bool is_clifford_group_member(const CliffordElement& a) {
  auto a_inv = inverse(a);
  if (!a_inv) return false;
  const CliffordElement twisted_inv = a_inv->involution(Involution::main);
  const int n = a.rank();
  for (int h = 0; h <= n; ++h) {
    const CliffordElement basis = h == 0 ? CliffordElement::scalar(n, 1) : CliffordElement::generator(n, h);
    if (!(a * basis * twisted_inv).is_vector()) return false;
  }
  return true;
}

namespace {

[[noreturn]] void parse_error(std::string_view text, const std::string& why) {
  throw std::invalid_argument("cannot parse Clifford element '" + std::string(text) + "': " + why);
}

Blade parse_blade(std::string_view digits, int rank, std::string_view text) {
  if (digits.empty()) parse_error(text, "empty blade index list");
  Blade blade = 0;
  int previous = 0;
  for (char ch : digits) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) parse_error(text, "bad blade index");
    const int h = ch - '0';
    if (h < 1 || h > rank) parse_error(text, "blade index out of range");
    if (h <= previous) parse_error(text, "blade indices must be strictly increasing");
    previous = h;
    blade |= generator_blade(h);
  }
  return blade;
}

}  // namespace

CliffordElement parse_clifford(std::string_view text, int rank) {
  std::string compact;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) compact.push_back(ch);
  }
  if (compact.empty()) parse_error(text, "empty input");

  CliffordElement out(rank);
  std::size_t pos = 0;
  bool first = true;
  while (pos < compact.size()) {
    int sign = 1;
    if (compact[pos] == '+' || compact[pos] == '-') {
      sign = compact[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      parse_error(text, "expected '+' or '-' between terms");
    }
    first = false;
    std::size_t end = pos;
    while (end < compact.size() && compact[end] != '+' && compact[end] != '-') ++end;
    std::string_view term(compact.data() + pos, end - pos);
    if (term.empty()) parse_error(text, "empty term");

    Rational coeff = 1;
    Blade blade = 0;
    const auto star = term.find('*');
    if (star != std::string_view::npos) {
      coeff = parse_rational(term.substr(0, star));
      std::string_view rest = term.substr(star + 1);
      if (rest.empty() || rest[0] != 'e') parse_error(text, "expected e<indices> after '*'");
      blade = parse_blade(rest.substr(1), rank, text);
    } else if (term[0] == 'e') {
      blade = parse_blade(term.substr(1), rank, text);
    } else {
      coeff = parse_rational(term);
    }
    if (sign < 0) coeff = -coeff;
    out.add_term(blade, coeff);
    pos = end;
  }
  return out;
}

std::string format_clifford(const CliffordElement& a) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [b, c] : a.terms()) {
    const bool negative = c < 0;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    out += to_short_string(negative ? Rational(-c) : c);
    if (b != 0) {
      out += "*e";
      for (Blade rest = b; rest != 0; rest &= rest - 1) out += static_cast<char>('1' + std::countr_zero(rest));
    }
  }
  return out;
}

}  // namespace cuspmass::clifford
