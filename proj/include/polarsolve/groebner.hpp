#ifndef POLARSOLVE_GROEBNER_HPP
#define POLARSOLVE_GROEBNER_HPP

// Buchberger's algorithm over Q with the Gebauer-Moeller pair criteria.
// Polynomials are kept as term vectors sorted by a selectable monomial order.

#include <polarsolve/multipoly.hpp>
#include <polarsolve/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <list>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace polarsolve {

struct MonomialOrder {
  enum class Kind { grevlex, lex, block };
  Kind kind = Kind::grevlex;
  std::size_t block = 0;  // Kind::block: first `block` variables eliminated (grevlex in each block)

  static MonomialOrder grevlex() { return {Kind::grevlex, 0}; }
  static MonomialOrder lex() { return {Kind::lex, 0}; }
  static MonomialOrder elimination(std::size_t first) { return {Kind::block, first}; }

  /// <0, 0, >0 as a compares below, equal to, above b.
  int compare(const Monomial& a, const Monomial& b) const {
    switch (kind) {
      case Kind::lex:
        for (std::size_t i = 0; i < a.size(); ++i)
          if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
        return 0;
      case Kind::grevlex: return grevlex_range(a, b, 0, a.size());
      case Kind::block: {
        int c = grevlex_range(a, b, 0, block);
        return c ? c : grevlex_range(a, b, block, a.size());
      }
    }
    return 0;
  }

 private:
  static int grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
    std::uint64_t da = 0, db = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      da += a[i];
      db += b[i];
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = hi; i-- > lo;)
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    return 0;
  }
};

namespace gb {

struct Term {
  Monomial m;
  Rational c;
};

/// Terms in strictly decreasing order; no zero coefficients.
using Poly = std::vector<Term>;

inline bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

inline bool disjoint(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) return false;
  return true;
}

inline Poly from_multipoly(const MultiPoly& f, const MonomialOrder& ord) {
  Poly p;
  p.reserve(f.size());
  for (const auto& [m, c] : f.terms()) p.push_back({m, c});
  std::sort(p.begin(), p.end(), [&](const Term& a, const Term& b) { return ord.compare(a.m, b.m) > 0; });
  return p;
}

inline MultiPoly to_multipoly(const Poly& p, std::size_t nvars) {
  MultiPoly f(nvars);
  for (const auto& t : p) f.add_term(t.m, t.c);
  return f;
}

inline void make_monic(Poly& p) {
  if (p.empty() || p.front().c == 1) return;
  Rational inv = 1 / p.front().c;
  for (auto& t : p) t.c *= inv;
}

/// a - coeff * x^shift * b, starting from a[from] (terms before `from` are dropped).
inline Poly sub_scaled(const Poly& a, std::size_t from, const Rational& coeff, const Monomial& shift, const Poly& b,
                       const MonomialOrder& ord) {
  Poly r;
  r.reserve(a.size() - from + b.size());
  std::size_t i = from, j = 0;
  Monomial mb(shift.size());
  auto shifted = [&](std::size_t k) {
    for (std::size_t v = 0; v < shift.size(); ++v) mb[v] = b[k].m[v] + shift[v];
  };
  if (j < b.size()) shifted(j);
  while (i < a.size() || j < b.size()) {
    int cmp = i >= a.size() ? -1 : j >= b.size() ? 1 : ord.compare(a[i].m, mb);
    if (cmp > 0) {
      r.push_back(a[i++]);
    } else if (cmp < 0) {
      r.push_back({mb, -coeff * b[j].c});
      if (++j < b.size()) shifted(j);
    } else {
      Rational c = a[i].c - coeff * b[j].c;
      if (c != 0) r.push_back({a[i].m, std::move(c)});
      ++i;
      if (++j < b.size()) shifted(j);
    }
  }
  return r;
}

/// Full normal form of f modulo the polynomials `basis[idx]` for idx in `active`.
inline Poly reduce(Poly f, const std::vector<Poly>& basis, std::span<const std::size_t> active,
                   const MonomialOrder& ord) {
  Poly rem;
  std::size_t pos = 0;
  Monomial shift;
  while (pos < f.size()) {
    const Term& lt = f[pos];
    const Poly* divisor = nullptr;
    for (auto idx : active) {
      if (divides(basis[idx].front().m, lt.m)) {
        divisor = &basis[idx];
        break;
      }
    }
    if (!divisor) {
      rem.push_back(lt);
      ++pos;
      continue;
    }
    shift.assign(lt.m.size(), 0);
    for (std::size_t v = 0; v < shift.size(); ++v) shift[v] = lt.m[v] - divisor->front().m[v];
    Rational coeff = lt.c / divisor->front().c;
    f = sub_scaled(f, pos, coeff, shift, *divisor, ord);
    pos = 0;
  }
  return rem;
}

inline Poly s_polynomial(const Poly& a, const Poly& b, const MonomialOrder& ord) {
  Monomial l = lcm(a.front().m, b.front().m);
  Monomial sa(l.size()), sb(l.size());
  for (std::size_t v = 0; v < l.size(); ++v) {
    sa[v] = l[v] - a.front().m[v];
    sb[v] = l[v] - b.front().m[v];
  }
  Poly scaled_a;
  scaled_a.reserve(a.size());
  Rational inv = 1 / a.front().c;
  for (const auto& t : a) {
    Monomial m(l.size());
    for (std::size_t v = 0; v < l.size(); ++v) m[v] = t.m[v] + sa[v];
    scaled_a.push_back({std::move(m), t.c * inv});
  }
  return sub_scaled(scaled_a, 0, 1 / b.front().c, sb, b, ord);
}

}  // namespace gb

/// Reduced Groebner basis: monic, sorted by increasing leading monomial.
/// The unit ideal gives {1}; the zero ideal gives {}.
class GroebnerBasis {
 public:
  GroebnerBasis(std::vector<MultiPoly> generators, std::size_t nvars, MonomialOrder order = MonomialOrder::grevlex())
      : nvars_(nvars), order_(order) {
    compute(generators);
  }

  const MonomialOrder& order() const { return order_; }
  std::size_t nvars() const { return nvars_; }
  const std::vector<gb::Poly>& polys() const { return basis_; }
  std::size_t pairs_reduced() const { return pairs_reduced_; }

  bool is_unit() const { return basis_.size() == 1 && monomial_degree(basis_[0].front().m) == 0; }

  std::vector<MultiPoly> to_multipolys() const {
    std::vector<MultiPoly> out;
    for (const auto& p : basis_) out.push_back(gb::to_multipoly(p, nvars_));
    return out;
  }

  gb::Poly normal_form(const MultiPoly& f) const { return normal_form(gb::from_multipoly(f, order_)); }
  gb::Poly normal_form(gb::Poly f) const { return gb::reduce(std::move(f), basis_, all_, order_); }

  bool contains(const MultiPoly& f) const { return normal_form(f).empty(); }

  std::vector<Monomial> leading_monomials() const {
    std::vector<Monomial> lm;
    for (const auto& p : basis_) lm.push_back(p.front().m);
    return lm;
  }

 private:
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };

  void compute(const std::vector<MultiPoly>& generators) {
    std::vector<gb::Poly> store;
    std::vector<std::size_t> active;
    std::list<Pair> pairs;

    auto update = [&](std::size_t h) {
      const Monomial& lh = store[h].front().m;
      std::vector<Pair> c, d;
      for (auto g : active) c.push_back({h, g, gb::lcm(lh, store[g].front().m)});
      for (std::size_t a = 0; a < c.size(); ++a) {
        bool keep = gb::disjoint(lh, store[c[a].j].front().m);
        if (!keep) {
          keep = true;
          for (std::size_t b = 0; b < c.size() && keep; ++b)
            if (b > a && gb::divides(c[b].lcm, c[a].lcm)) keep = false;
          for (const auto& e : d)
            if (keep && gb::divides(e.lcm, c[a].lcm)) keep = false;
        }
        if (keep) d.push_back(c[a]);
      }
      std::vector<Pair> e;
      for (auto& pr : d)
        if (!gb::disjoint(lh, store[pr.j].front().m)) e.push_back(std::move(pr));
      for (auto it = pairs.begin(); it != pairs.end();) {
        const Monomial& li = store[it->i].front().m;
        const Monomial& lj = store[it->j].front().m;
        if (gb::divides(lh, it->lcm) && gb::lcm(li, lh) != it->lcm && gb::lcm(lj, lh) != it->lcm)
          it = pairs.erase(it);
        else
          ++it;
      }
      for (auto& pr : e) pairs.push_back(std::move(pr));
      std::vector<std::size_t> next;
      for (auto g : active)
        if (!gb::divides(lh, store[g].front().m)) next.push_back(g);
      next.push_back(h);
      active = std::move(next);
    };

    auto add = [&](gb::Poly p) -> bool {
      gb::make_monic(p);
      bool unit = monomial_degree(p.front().m) == 0;
      store.push_back(std::move(p));
      if (unit) return true;
      update(store.size() - 1);
      return false;
    };

    for (const auto& g : generators) {
      if (g.nvars() != nvars_) throw std::invalid_argument("generator has the wrong variable count");
      gb::Poly p = gb::reduce(gb::from_multipoly(g, order_), store, active, order_);
      if (p.empty()) continue;
      if (add(std::move(p))) return set_unit();
    }

    while (!pairs.empty()) {
      auto best = pairs.begin();
      for (auto it = std::next(pairs.begin()); it != pairs.end(); ++it)
        if (order_.compare(it->lcm, best->lcm) < 0) best = it;
      Pair pr = *best;
      pairs.erase(best);
      ++pairs_reduced_;
      gb::Poly s = gb::s_polynomial(store[pr.i], store[pr.j], order_);
      s = gb::reduce(std::move(s), store, active, order_);
      if (s.empty()) continue;
      if (add(std::move(s))) return set_unit();
    }

    // minimal, then interreduced
    std::vector<gb::Poly> minimal;
    for (auto g : active) minimal.push_back(store[g]);
    std::sort(minimal.begin(), minimal.end(),
              [&](const gb::Poly& a, const gb::Poly& b) { return order_.compare(a.front().m, b.front().m) < 0; });
    std::vector<std::size_t> idx(minimal.size());
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
    for (std::size_t k = 0; k < minimal.size(); ++k) {
      std::vector<std::size_t> others;
      for (std::size_t o = 0; o < minimal.size(); ++o)
        if (o != k) others.push_back(o);
      gb::Poly head{minimal[k].front()};
      gb::Poly tail(minimal[k].begin() + 1, minimal[k].end());
      tail = gb::reduce(std::move(tail), minimal, others, order_);
      head.insert(head.end(), tail.begin(), tail.end());
      minimal[k] = std::move(head);
      gb::make_monic(minimal[k]);
    }
    basis_ = std::move(minimal);
    all_ = std::move(idx);
  }

  void set_unit() {
    basis_.assign(1, gb::Poly{{Monomial(nvars_, 0), Rational(1)}});
    all_.assign(1, 0);
  }

  std::size_t nvars_;
  MonomialOrder order_;
  std::vector<gb::Poly> basis_;
  std::vector<std::size_t> all_;
  std::size_t pairs_reduced_ = 0;
};

/// Krull dimension of Q[X]/I from the leading monomials: the largest set of
/// variables none of whose pure monomials is a leading monomial multiple.
/// Returns -1 for the unit ideal.
inline long ideal_dimension(const GroebnerBasis& g) {
  if (g.is_unit()) return -1;
  const std::size_t n = g.nvars();
  auto lms = g.leading_monomials();
  long best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    long size = __builtin_popcountll(mask);
    if (size <= best) continue;
    bool independent = std::none_of(lms.begin(), lms.end(), [&](const Monomial& m) {
      for (std::size_t v = 0; v < n; ++v)
        if (m[v] && !(mask >> v & 1u)) return false;
      return true;
    });
    if (independent) best = size;
  }
  return best;
}

/// gcd of two multivariate polynomials through lcm = generator of (a) ∩ (b),
/// computed by eliminating t from (t a, (1-t) b).
inline MultiPoly multivariate_gcd(const MultiPoly& a, const MultiPoly& b) {
  const std::size_t n = a.nvars();
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  MultiPoly ta(n + 1), tb(n + 1);
  auto shift_in = [&](const MultiPoly& f) {
    MultiPoly r(n + 1);
    for (const auto& [m, c] : f.terms()) {
      Monomial e(n + 1, 0);
      std::copy(m.begin(), m.end(), e.begin() + 1);
      r.add_term(e, c);
    }
    return r;
  };
  MultiPoly t = MultiPoly::variable(n + 1, 0);
  MultiPoly one = MultiPoly::constant(n + 1, Rational(1));
  GroebnerBasis g({t * shift_in(a), (one - t) * shift_in(b)}, n + 1, MonomialOrder::elimination(1));
  MultiPoly l(n);
  for (const auto& p : g.polys()) {
    if (p.front().m[0] != 0) continue;
    for (const auto& term : p) l.add_term(Monomial(term.m.begin() + 1, term.m.end()), term.c);
    break;
  }
  if (l.is_zero()) throw std::logic_error("lcm computation found no t-free element");
  MultiPoly gcd = exact_divide(a * b, l);
  return gcd * (1 / gcd.leading_coefficient());
}

/// Squarefreeness over Q: gcd(f, df/dX1, ..., df/dXn) is a constant.
inline bool is_squarefree(const MultiPoly& f) {
  if (f.is_zero()) return false;
  MultiPoly g = f;
  for (std::size_t v = 0; v < f.nvars() && g.total_degree() > 0; ++v) {
    MultiPoly d = partial_derivative(f, v);
    if (d.is_zero()) continue;
    g = multivariate_gcd(g, d);
  }
  return g.total_degree() <= 0;
}

}  // namespace polarsolve

#endif  // POLARSOLVE_GROEBNER_HPP
