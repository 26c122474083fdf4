#ifndef POLARSOLVE_REALROOTS_HPP
#define POLARSOLVE_REALROOTS_HPP

#include <polarsolve/rational.hpp>
#include <polarsolve/unipoly.hpp>
#include <polarsolve/zerodim.hpp>

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace polarsolve {

/// Closed rational interval [lo, hi].
struct RatInterval {
  Rational lo, hi;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool positive() const { return lo > 0; }
  bool negative() const { return hi < 0; }
  friend bool operator==(const RatInterval&, const RatInterval&) = default;
};

inline RatInterval operator+(const RatInterval& a, const RatInterval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

inline RatInterval operator*(const RatInterval& a, const RatInterval& b) {
  Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

/// Horner evaluation in exact interval arithmetic; always encloses p(x) for x in `x`.
inline RatInterval eval_interval(const UniPoly& p, const RatInterval& x) {
  RatInterval acc{Rational(0), Rational(0)};
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + RatInterval{*it, *it};
  return acc;
}

struct SturmChain {
  std::vector<UniPoly> polys;

  /// Sign variations at a rational point (zeros skipped).
  int variations(const Rational& x) const {
    int count = 0, last = 0;
    for (const auto& p : polys) {
      int s = sign(p.eval(x));
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  }

  /// Sign variations at +infinity (positive = true) or -infinity.
  int variations_at_infinity(bool positive) const {
    int count = 0, last = 0;
    for (const auto& p : polys) {
      int s = sign(p.leading());
      if (!positive && p.degree() % 2) s = -s;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  }

  /// Number of distinct real roots in (a, b].
  int count(const Rational& a, const Rational& b) const { return variations(a) - variations(b); }
  int count_all() const { return variations_at_infinity(false) - variations_at_infinity(true); }
};

/// Canonical chain q, q', -rem(q, q'), ...; q must be squarefree of degree >= 1.
inline SturmChain sturm_chain(const UniPoly& q) {
  if (q.degree() < 1) throw std::invalid_argument("Sturm chain needs a polynomial of degree >= 1");
  if (!is_squarefree(q)) throw std::invalid_argument("Sturm chain needs a squarefree polynomial");
  SturmChain chain;
  chain.polys.push_back(q);
  chain.polys.push_back(derivative(q));
  while (true) {
    UniPoly r = chain.polys[chain.polys.size() - 2] % chain.polys.back();
    if (r.is_zero()) break;
    chain.polys.push_back(-r);
  }
  return chain;
}

/// Cauchy bound 1 + max|c_i| / |lead|: every root has absolute value below it.
inline Rational cauchy_bound(const UniPoly& q) {
  Rational m(0);
  for (std::size_t i = 0; i + 1 < q.coeffs().size(); ++i) m = std::max(m, abs_value(q.coeffs()[i]));
  return 1 + m / abs_value(q.leading());
}

namespace detail {

/// A non-root of q strictly inside (lo, hi), near the midpoint.
inline Rational split_point(const UniPoly& q, const Rational& lo, const Rational& hi) {
  Rational w = hi - lo;
  Rational mid = lo + w / 2;
  Rational step = w / 4;
  while (q.eval(mid) == 0) {
    mid = lo + w / 2 + step;
    step /= 2;
  }
  return mid;
}

/// Halves an isolating interval of a simple root of q, keeping the root.
inline void bisect_root(const UniPoly& q, RatInterval& iv) {
  Rational mid = iv.lo + iv.width() / 2;
  if (q.eval(mid) == 0) {
    Rational d = iv.width() / 8;
    iv = {mid - d, mid + d};
    return;
  }
  if (sign(q.eval(iv.lo)) != sign(q.eval(mid))) iv.hi = mid;
  else iv.lo = mid;
}

}  // namespace detail

/// Disjoint isolating intervals, ascending; endpoints are never roots.
inline std::vector<RatInterval> isolate_real_roots(const UniPoly& q) {
  std::vector<RatInterval> out;
  if (q.degree() < 1) return out;
  SturmChain chain = sturm_chain(q);
  Rational b = cauchy_bound(q);
  struct Work {
    Rational lo, hi;
    int roots;
  };
  std::vector<Work> stack{{-b, b, chain.count(-b, b)}};
  while (!stack.empty()) {
    Work w = stack.back();
    stack.pop_back();
    if (w.roots == 0) continue;
    if (w.roots == 1) {
      out.push_back({w.lo, w.hi});
      continue;
    }
    Rational mid = detail::split_point(q, w.lo, w.hi);
    int left = chain.count(w.lo, mid);
    stack.push_back({mid, w.hi, w.roots - left});
    stack.push_back({w.lo, mid, left});
  }
  std::sort(out.begin(), out.end(), [](const RatInterval& a, const RatInterval& b) { return a.lo < b.lo; });
  return out;
}

/// Exact sign of P at the root of q isolated by `iv`. May shrink `iv`.
inline int sign_at_root(const UniPoly& q, RatInterval& iv, const UniPoly& P) {
  if (P.is_zero()) return 0;
  RatInterval val = eval_interval(P, iv);
  if (val.lo > 0) return 1;
  if (val.hi < 0) return -1;
  UniPoly h = uni_gcd(q, P);
  if (h.degree() >= 1 && sturm_chain(h).count(iv.lo, iv.hi) == 1) return 0;
  SturmChain pc = sturm_chain(squarefree_part(P));
  while (pc.count(iv.lo, iv.hi) != 0) detail::bisect_root(q, iv);
  return sign(P.eval(iv.hi));
}

/// Signs of q', q'', ..., q^(deg q - 1) at the isolated root.
inline std::vector<int> thom_encode(const UniPoly& q, RatInterval& iv) {
  std::vector<int> code;
  UniPoly d = derivative(q);
  for (long k = 1; k < q.degree(); ++k) {
    code.push_back(sign_at_root(q, iv, d));
    d = derivative(d);
  }
  return code;
}

/// Bisects until the width is below eps.
inline RatInterval refine(const UniPoly& q, RatInterval iv, const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("refinement width must be positive");
  while (iv.width() >= eps) detail::bisect_root(q, iv);
  return iv;
}

struct AlgebraicPoint {
  RatInterval root_interval;
  std::vector<int> thom_code;
  std::vector<RatInterval> box;  // enclosure of p_k(u) for each coordinate
};

struct RealSolutionSet {
  UnivariateRepresentation representation;
  std::vector<AlgebraicPoint> points;
  bool empty_certificate = false;
  Rational root_bound;  // Cauchy bound used for the global Sturm count
  int sturm_count = 0;  // real roots of q on (-root_bound, root_bound]
};

inline std::vector<RatInterval> coordinate_box(const UnivariateRepresentation& rep, const RatInterval& iv) {
  std::vector<RatInterval> box;
  for (const auto& p : rep.params) box.push_back(eval_interval(p, iv));
  return box;
}

/// Refines a point until the root interval and every box side are narrower
/// than eps. The Thom code is carried over unchanged.
inline AlgebraicPoint refine_point(const UnivariateRepresentation& rep, AlgebraicPoint pt, const Rational& eps) {
  while (true) {
    pt.box = coordinate_box(rep, pt.root_interval);
    bool fine = pt.root_interval.width() < eps &&
                std::all_of(pt.box.begin(), pt.box.end(), [&](const RatInterval& b) { return b.width() < eps; });
    if (fine) return pt;
    detail::bisect_root(rep.q, pt.root_interval);
  }
}

inline RealSolutionSet real_points(const UnivariateRepresentation& rep, const Rational& eps) {
  RealSolutionSet out;
  out.representation = rep;
  if (rep.q.degree() < 1) {
    out.empty_certificate = true;
    out.root_bound = 1;
    return out;
  }
  out.root_bound = cauchy_bound(rep.q);
  out.sturm_count = sturm_chain(rep.q).count(-out.root_bound, out.root_bound);
  for (auto iv : isolate_real_roots(rep.q)) {
    AlgebraicPoint pt;
    pt.thom_code = thom_encode(rep.q, iv);
    pt.root_interval = iv;
    out.points.push_back(refine_point(rep, std::move(pt), eps));
  }
  out.empty_certificate = out.points.empty();
  return out;
}

}  // namespace polarsolve

#endif  // POLARSOLVE_REALROOTS_HPP
