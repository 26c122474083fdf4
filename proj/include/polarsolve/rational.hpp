#ifndef POLARSOLVE_RATIONAL_HPP
#define POLARSOLVE_RATIONAL_HPP

// Exact rationals. GMP keeps mpq_class values canonical (reduced, positive
// denominator, zero as 0/1) as long as every construction from raw parts goes
// through canonicalize(), which the helpers below do.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace polarsolve {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(long num, long den = 1) {
  return make_rational(Integer(num), Integer(den));
}

inline int sign(const Rational& r) { return sgn(r); }

/// Serializes as "num/den", always with an explicit denominator.
inline std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Shorter form for human-readable output: integers print without "/1".
inline std::string to_display(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return to_string(r);
}

namespace detail {
inline bool is_decimal_integer(std::string_view s) {
  std::size_t i = 0;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}
}  // namespace detail

/// Parses "a", "-a", "a/b" with decimal integers a, b (b > 0 after sign).
/// Throws std::invalid_argument on anything else.
inline Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!detail::is_decimal_integer(num) || !detail::is_decimal_integer(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  std::string n(num);
  if (n[0] == '+') n.erase(0, 1);
  Integer nz(n, 10), dz(std::string(den), 10);
  if (dz == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return make_rational(nz, dz);
}

inline Rational abs_value(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace polarsolve

#endif  // POLARSOLVE_RATIONAL_HPP
