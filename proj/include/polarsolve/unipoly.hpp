#ifndef POLARSOLVE_UNIPOLY_HPP
#define POLARSOLVE_UNIPOLY_HPP

#include <polarsolve/rational.hpp>

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polarsolve {

/// Dense univariate polynomial over Q, coefficients lowest degree first.
/// The coefficient vector never ends in a zero.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  UniPoly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

  static UniPoly constant(const Rational& v) { return UniPoly({v}); }
  static UniPoly x() { return UniPoly({Rational(0), Rational(1)}); }
  /// c * T^e
  static UniPoly monomial(std::size_t e, const Rational& c) {
    std::vector<Rational> v(e + 1);
    v[e] = c;
    return UniPoly(std::move(v));
  }

  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const Rational& leading() const { return c_.back(); }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

  UniPoly& operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  UniPoly& operator*=(const Rational& s) {
    for (auto& v : c_) v *= s;
    trim();
    return *this;
  }

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const Rational& s) { return a *= s; }
  friend UniPoly operator*(const Rational& s, UniPoly a) { return a *= s; }
  UniPoly operator-() const { return *this * Rational(-1); }

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(r));
  }
  UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

  friend bool operator==(const UniPoly&, const UniPoly&) = default;

  Rational eval(const Rational& x) const {
    Rational r(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      r *= x;
      r += *it;
    }
    return r;
  }

  std::string to_string(const std::string& var = "T") const;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline std::string UniPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  bool first = true;
  for (long i = degree(); i >= 0; --i) {
    const Rational& c = c_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    bool neg = c < 0;
    Rational a = neg ? Rational(-c) : c;
    out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    first = false;
    std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    if (i == 0)
      out += to_display(a);
    else if (a == 1)
      out += mono;
    else
      out += to_display(a) + "*" + mono;
  }
  return out;
}

/// Euclidean division; returns (quotient, remainder).
inline std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw std::domain_error("univariate division by zero");
  if (a.degree() < b.degree()) return {UniPoly{}, a};
  std::vector<Rational> r = a.coeffs();
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1);
  const auto& bc = b.coeffs();
  Rational inv_lead = 1 / b.leading();
  for (long i = a.degree(); i >= b.degree(); --i) {
    auto iu = static_cast<std::size_t>(i);
    if (r[iu] == 0) continue;
    Rational f = r[iu] * inv_lead;
    auto shift = static_cast<std::size_t>(i - b.degree());
    q[shift] = f;
    for (std::size_t j = 0; j < bc.size(); ++j) r[shift + j] -= f * bc[j];
  }
  return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

inline UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }

/// Exact quotient; throws std::domain_error if b does not divide a.
inline UniPoly exact_quotient(const UniPoly& a, const UniPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("univariate division is not exact");
  return q;
}

inline UniPoly monic(const UniPoly& p) {
  if (p.is_zero()) return p;
  return p * (1 / p.leading());
}

inline UniPoly derivative(const UniPoly& p) {
  if (p.degree() < 1) return {};
  std::vector<Rational> d(static_cast<std::size_t>(p.degree()));
  for (std::size_t i = 1; i < p.coeffs().size(); ++i) d[i - 1] = p.coeffs()[i] * static_cast<unsigned long>(i);
  return UniPoly(std::move(d));
}

/// Monic gcd; gcd(0, 0) = 0.
inline UniPoly uni_gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = a % b;
    a = std::move(b);
    b = monic(r);
  }
  return monic(a);
}

struct ExtendedGcd {
  UniPoly gcd;  // monic
  UniPoly s;    // s*a + t*b = gcd
  UniPoly t;
};

inline ExtendedGcd extended_gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly r0 = a, r1 = b, s0 = UniPoly::constant(1), s1, t0, t1 = UniPoly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    UniPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Rational inv = 1 / r0.leading();
  return {r0 * inv, s0 * inv, t0 * inv};
}

/// Monic q / gcd(q, q'): same roots, all simple.
inline UniPoly squarefree_part(const UniPoly& q) {
  if (q.is_zero()) throw std::invalid_argument("squarefree part of the zero polynomial");
  if (q.degree() == 0) return UniPoly::constant(1);
  return monic(exact_quotient(q, uni_gcd(q, derivative(q))));
}

inline bool is_squarefree(const UniPoly& q) {
  return !q.is_zero() && uni_gcd(q, derivative(q)).degree() == 0;
}

/// Inverse of a modulo m; throws if they are not coprime.
inline UniPoly inverse_mod(const UniPoly& a, const UniPoly& m) {
  auto eg = extended_gcd(a % m, m);
  if (eg.gcd.degree() != 0) throw std::domain_error("polynomial is not invertible modulo the given modulus");
  return eg.s % m;
}

}  // namespace polarsolve

#endif  // POLARSOLVE_UNIPOLY_HPP
