#include "cuspmass/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace cuspmass {
namespace {

bool is_signed_digits(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_signed_digits(num, true) || !is_signed_digits(den, false)) {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
  std::string num_s(num);
  if (num_s[0] == '+') num_s.erase(0, 1);
  mpz_class n(num_s, 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_short_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return to_fraction_string(q);
}

}  // namespace cuspmass
