#ifndef POLARSOLVE_MULTIPOLY_HPP
#define POLARSOLVE_MULTIPOLY_HPP

#include <polarsolve/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace polarsolve {

using Exponent = std::uint32_t;
using Monomial = std::vector<Exponent>;

inline std::uint64_t monomial_degree(const Monomial& m) {
  return std::accumulate(m.begin(), m.end(), std::uint64_t{0});
}

/// Graded lexicographic order, X1 > X2 > ... > Xn. `operator()` is "greater",
/// so a std::map keyed with it iterates from the leading term down.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    auto da = monomial_degree(a), db = monomial_degree(b);
    if (da != db) return da > db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  }
};

/// Sparse multivariate polynomial over Q in X1..Xn. No zero coefficient is
/// ever stored; the zero polynomial has no terms.
class MultiPoly {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexGreater>;

  explicit MultiPoly(std::size_t nvars = 0) : nvars_(nvars) {}

  static MultiPoly constant(std::size_t nvars, const Rational& c) {
    MultiPoly p(nvars);
    p.add_term(Monomial(nvars, 0), c);
    return p;
  }

  /// The variable X_{index+1}; index is 0-based.
  static MultiPoly variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw std::out_of_range("variable index out of range");
    Monomial m(nvars, 0);
    m[index] = 1;
    MultiPoly p(nvars);
    p.add_term(m, Rational(1));
    return p;
  }

  static MultiPoly term(const Monomial& m, const Rational& c) {
    MultiPoly p(m.size());
    p.add_term(m, c);
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && monomial_degree(terms_.begin()->first) == 0);
  }

  Rational constant_term() const {
    auto it = terms_.find(Monomial(nvars_, 0));
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// -1 for the zero polynomial.
  long total_degree() const {
    return terms_.empty() ? -1 : static_cast<long>(monomial_degree(terms_.begin()->first));
  }

  long degree_in(std::size_t var) const {
    long d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<long>(m[var]));
    return d;
  }

  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const Rational& leading_coefficient() const { return terms_.begin()->second; }

  void add_term(const Monomial& m, const Rational& c) {
    if (m.size() != nvars_) throw std::invalid_argument("monomial length does not match variable count");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }

  MultiPoly& operator-=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  MultiPoly& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const Rational& s) { return a *= s; }
  friend MultiPoly operator*(const Rational& s, MultiPoly a) { return a *= s; }

  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_compatible(b);
    MultiPoly r(a.nvars_);
    Monomial m(a.nvars_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
        r.add_term(m, ca * cb);
      }
    }
    return r;
  }

  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  MultiPoly pow(unsigned e) const {
    MultiPoly result = constant(nvars_, Rational(1)), base = *this;
    while (e) {
      if (e & 1u) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  /// Exact value at x; |x| must equal nvars.
  Rational eval(std::span<const Rational> x) const {
    if (x.size() != nvars_) throw std::invalid_argument("evaluation point has wrong length");
    std::vector<std::vector<Rational>> powers(nvars_);
    for (std::size_t j = 0; j < nvars_; ++j) {
      long deg = degree_in(j);
      powers[j].reserve(static_cast<std::size_t>(std::max(deg, 0L)) + 1);
      powers[j].push_back(Rational(1));
      for (long e = 1; e <= deg; ++e) powers[j].push_back(powers[j].back() * x[j]);
    }
    Rational sum(0), t;
    for (const auto& [m, c] : terms_) {
      t = c;
      for (std::size_t j = 0; j < nvars_; ++j)
        if (m[j]) t *= powers[j][m[j]];
      sum += t;
    }
    return sum;
  }

  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  void check_compatible(const MultiPoly& o) const {
    if (o.nvars_ != nvars_) throw std::invalid_argument("polynomials live in different variable counts");
  }

  std::size_t nvars_;
  TermMap terms_;
};

inline std::string variable_name(std::size_t index, const std::vector<std::string>& names = {}) {
  if (index < names.size()) return names[index];
  return "X" + std::to_string(index + 1);
}

inline std::string MultiPoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    bool neg = c < 0;
    Rational a = neg ? Rational(-c) : c;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    bool constant_term = monomial_degree(m) == 0;
    std::string mono;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (!m[j]) continue;
      if (!mono.empty()) mono += "*";
      mono += variable_name(j, names);
      if (m[j] > 1) mono += "^" + std::to_string(m[j]);
    }
    if (constant_term) {
      out += to_display(a);
    } else if (a == 1) {
      out += mono;
    } else {
      out += to_display(a) + "*" + mono;
    }
  }
  return out;
}

enum class ArithOp { add, sub, mul };

inline MultiPoly poly_arith(const MultiPoly& a, const MultiPoly& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
  }
  throw std::invalid_argument("unknown arithmetic operation");
}

/// Formal partial derivative with respect to X_{var+1}.
inline MultiPoly partial_derivative(const MultiPoly& f, std::size_t var) {
  if (var >= f.nvars()) throw std::out_of_range("derivative variable index out of range");
  MultiPoly r(f.nvars());
  for (const auto& [m, c] : f.terms()) {
    if (m[var] == 0) continue;
    Monomial d = m;
    --d[var];
    r.add_term(d, c * m[var]);
  }
  return r;
}

inline Rational eval_poly(const MultiPoly& f, std::span<const Rational> x) { return f.eval(x); }

/// f(subs[0], ..., subs[n-1]); all substitutes share one variable count.
inline MultiPoly compose(const MultiPoly& f, std::span<const MultiPoly> subs) {
  if (subs.size() != f.nvars()) throw std::invalid_argument("compose: substitution count mismatch");
  std::size_t target = subs.empty() ? 0 : subs[0].nvars();
  std::vector<std::vector<MultiPoly>> powers(subs.size());
  for (std::size_t j = 0; j < subs.size(); ++j) {
    powers[j].push_back(MultiPoly::constant(target, Rational(1)));
    for (long e = 1; e <= f.degree_in(j); ++e) powers[j].push_back(powers[j].back() * subs[j]);
  }
  MultiPoly r(target);
  for (const auto& [m, c] : f.terms()) {
    MultiPoly t = MultiPoly::constant(target, c);
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m[j]) t *= powers[j][m[j]];
    r += t;
  }
  return r;
}

/// Embeds f into a ring with `nvars >= f.nvars()` variables (new ones appended).
inline MultiPoly extend_variables(const MultiPoly& f, std::size_t nvars) {
  if (nvars < f.nvars()) throw std::invalid_argument("cannot drop variables");
  MultiPoly r(nvars);
  for (const auto& [m, c] : f.terms()) {
    Monomial e = m;
    e.resize(nvars, 0);
    r.add_term(e, c);
  }
  return r;
}

/// a / b when b divides a exactly; throws std::domain_error otherwise.
inline MultiPoly exact_divide(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  MultiPoly q(a.nvars()), r = a;
  const Monomial& lb = b.leading_monomial();
  while (!r.is_zero()) {
    const Monomial& lr = r.leading_monomial();
    Monomial t(lr.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (lr[i] < lb[i]) throw std::domain_error("polynomial division is not exact");
      t[i] = lr[i] - lb[i];
    }
    MultiPoly step = MultiPoly::term(t, r.leading_coefficient() / b.leading_coefficient());
    q += step;
    r -= step * b;
  }
  return q;
}

}  // namespace polarsolve

#endif  // POLARSOLVE_MULTIPOLY_HPP
