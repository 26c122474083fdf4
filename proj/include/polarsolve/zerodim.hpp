#ifndef POLARSOLVE_ZERODIM_HPP
#define POLARSOLVE_ZERODIM_HPP

// Zero-dimensional solving by linear algebra in the quotient ring:
// Groebner basis -> standard monomials -> multiplication matrices ->
// minimal polynomials -> radical (Seidenberg) -> univariate representation.

#include <polarsolve/groebner.hpp>
#include <polarsolve/multipoly.hpp>
#include <polarsolve/polar.hpp>
#include <polarsolve/unipoly.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polarsolve {

class NotZeroDimensional : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SeparationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InconsistentCharts : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Generators in nvars variables; for a localized chart the last variable is
/// the Rabinowitsch variable T and the point coordinates are the first
/// `point_vars` ones.
struct ZeroDimIdeal {
  std::vector<MultiPoly> generators;
  std::size_t nvars = 0;
  std::size_t point_vars = 0;
};

/// Chart equations plus T*g - 1 in one extra variable.
inline ZeroDimIdeal localize(const PolarSystem& ps, std::size_t n, std::size_t p) {
  if (ps.i != n - p) throw std::invalid_argument("localize needs the top polar index n-p");
  ZeroDimIdeal ideal;
  ideal.nvars = n + 1;
  ideal.point_vars = n;
  for (const auto& e : ps.equations) ideal.generators.push_back(extend_variables(e, n + 1));
  MultiPoly t = MultiPoly::variable(n + 1, n);
  ideal.generators.push_back(t * extend_variables(ps.localization_g, n + 1) - MultiPoly::constant(n + 1, Rational(1)));
  return ideal;
}

/// Incremental row echelon form that remembers each stored row as a
/// combination of the inserted vectors.
class EchelonTracker {
 public:
  explicit EchelonTracker(std::size_t dim) : dim_(dim) {}

  std::size_t rank() const { return rows_.size(); }

  /// Reduces v; returns the combination c (length = inserted count) with
  /// v = sum c_i * inserted_i when v lies in the span, std::nullopt otherwise.
  std::optional<std::vector<Rational>> express(std::vector<Rational> v) const {
    std::vector<Rational> combo(inserted_);
    reduce(v, combo);
    if (std::any_of(v.begin(), v.end(), [](const Rational& x) { return x != 0; })) return std::nullopt;
    for (auto& c : combo) c = -c;
    return combo;
  }

  /// Inserts v; returns false (and inserts nothing) if v is dependent.
  bool insert(std::vector<Rational> v) {
    std::vector<Rational> combo(inserted_ + 1);
    combo[inserted_] = 1;
    reduce(v, combo);
    std::size_t piv = 0;
    while (piv < dim_ && v[piv] == 0) ++piv;
    if (piv == dim_) return false;
    Rational inv = 1 / v[piv];
    for (auto& x : v) x *= inv;
    for (auto& x : combo) x *= inv;
    for (auto& r : rows_) r.combo.resize(inserted_ + 1);
    rows_.push_back({piv, std::move(v), std::move(combo)});
    ++inserted_;
    return true;
  }

 private:
  struct Row {
    std::size_t pivot;
    std::vector<Rational> v;      // pivot entry is 1
    std::vector<Rational> combo;  // v = sum combo_i * inserted_i
  };

  // v <- v - sum f_r * row_r ; combo accumulates the same operations on the
  // combination side, so afterwards v_original + combo * inserted = v.
  void reduce(std::vector<Rational>& v, std::vector<Rational>& combo) const {
    for (const auto& r : rows_) {
      if (v[r.pivot] == 0) continue;
      Rational f = v[r.pivot];
      for (std::size_t k = r.pivot; k < dim_; ++k)
        if (r.v[k] != 0) v[k] -= f * r.v[k];
      for (std::size_t k = 0; k < r.combo.size(); ++k)
        if (r.combo[k] != 0) combo[k] -= f * r.combo[k];
    }
  }

  std::size_t dim_;
  std::size_t inserted_ = 0;
  std::vector<Row> rows_;
};

/// Q[X]/I for a zero-dimensional I given by a grevlex Groebner basis.
class QuotientRing {
 public:
  explicit QuotientRing(GroebnerBasis basis) : gb_(std::move(basis)) {
    const std::size_t n = gb_.nvars();
    if (gb_.is_unit()) return;
    auto lms = gb_.leading_monomials();
    std::vector<Exponent> bound(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
      bool found = false;
      for (const auto& m : lms) {
        bool pure = m[v] > 0;
        for (std::size_t w = 0; w < n && pure; ++w)
          if (w != v && m[w]) pure = false;
        if (pure && (!found || m[v] < bound[v])) {
          bound[v] = m[v];
          found = true;
        }
      }
      if (!found) throw NotZeroDimensional("ideal is not zero-dimensional (no pure power of X" + std::to_string(v + 1) + ")");
    }
    Monomial m(n, 0);
    while (true) {
      bool standard = std::none_of(lms.begin(), lms.end(), [&](const Monomial& l) { return gb::divides(l, m); });
      if (standard) basis_.push_back(m);
      std::size_t v = 0;
      while (v < n && ++m[v] >= bound[v]) m[v++] = 0;
      if (v == n) break;
    }
    std::sort(basis_.begin(), basis_.end(),
              [&](const Monomial& a, const Monomial& b) { return gb_.order().compare(a, b) < 0; });
    for (std::size_t i = 0; i < basis_.size(); ++i) index_[basis_[i]] = i;
  }

  const GroebnerBasis& groebner() const { return gb_; }
  const std::vector<Monomial>& basis() const { return basis_; }
  std::size_t dimension() const { return basis_.size(); }
  bool is_empty() const { return gb_.is_unit(); }

  std::vector<Rational> coordinates(const gb::Poly& nf) const {
    std::vector<Rational> v(basis_.size());
    for (const auto& t : nf) v[index_.at(t.m)] = t.c;
    return v;
  }

  std::vector<Rational> normal_form(const MultiPoly& f) const { return coordinates(gb_.normal_form(f)); }

  MultiPoly from_coordinates(const std::vector<Rational>& v) const {
    MultiPoly f(gb_.nvars());
    for (std::size_t i = 0; i < v.size(); ++i) f.add_term(basis_[i], v[i]);
    return f;
  }

  /// Column j = coordinates of NF(h * b_j).
  std::vector<std::vector<Rational>> multiplication_matrix(const MultiPoly& h) const {
    std::vector<std::vector<Rational>> cols;
    for (const auto& b : basis_) cols.push_back(normal_form(h * MultiPoly::term(b, Rational(1))));
    return cols;
  }

 private:
  GroebnerBasis gb_;
  std::vector<Monomial> basis_;
  std::map<Monomial, std::size_t> index_;
};

inline std::vector<Rational> mat_vec(const std::vector<std::vector<Rational>>& cols, const std::vector<Rational>& v) {
  std::vector<Rational> r(v.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (v[j] == 0) continue;
    for (std::size_t i = 0; i < r.size(); ++i)
      if (cols[j][i] != 0) r[i] += v[j] * cols[j][i];
  }
  return r;
}

/// Minimal polynomial of the multiplication map `cols` (monic). The Krylov
/// vectors 1, h, h^2, ... up to degree-1 are returned through `krylov` when
/// requested, as an echelon tracker able to express vectors in that basis.
inline UniPoly minimal_polynomial(const QuotientRing& q, const std::vector<std::vector<Rational>>& cols,
                                  EchelonTracker* krylov = nullptr) {
  const std::size_t dim = q.dimension();
  if (dim == 0) return UniPoly::constant(1);
  EchelonTracker local(dim);
  EchelonTracker& tr = krylov ? *krylov : local;
  std::vector<Rational> v = q.normal_form(MultiPoly::constant(q.groebner().nvars(), Rational(1)));
  while (true) {
    if (auto combo = tr.express(v)) {
      std::vector<Rational> c(combo->size() + 1);
      for (std::size_t i = 0; i < combo->size(); ++i) c[i] = -(*combo)[i];
      c.back() = 1;
      return UniPoly(std::move(c));
    }
    tr.insert(v);
    v = mat_vec(cols, v);
  }
}

/// Solutions of a zero-dimensional ideal, prepared once and queried for
/// several separating linear forms.
class ZeroDimSolver {
 public:
  explicit ZeroDimSolver(const ZeroDimIdeal& ideal) : ideal_(ideal) {
    GroebnerBasis g(ideal.generators, ideal.nvars);
    QuotientRing first(std::move(g));
    dimension_with_multiplicity_ = first.dimension();
    if (first.is_empty()) {
      radical_.emplace(std::move(first));
      return;
    }
    std::vector<MultiPoly> gens = first.groebner().to_multipolys();
    bool already_radical = true;
    for (std::size_t v = 0; v < ideal.nvars; ++v) {
      MultiPoly xv = MultiPoly::variable(ideal.nvars, v);
      UniPoly mu = minimal_polynomial(first, first.multiplication_matrix(xv));
      UniPoly sq = squarefree_part(mu);
      if (sq.degree() != mu.degree()) already_radical = false;
      gens.push_back(univariate_in(sq, v));
    }
    if (already_radical) {
      radical_.emplace(std::move(first));
    } else {
      radical_.emplace(GroebnerBasis(gens, ideal.nvars));
    }
    for (std::size_t v = 0; v < ideal.point_vars; ++v)
      var_mult_.push_back(radical_->multiplication_matrix(MultiPoly::variable(ideal.nvars, v)));
  }

  const ZeroDimIdeal& ideal() const { return ideal_; }
  const QuotientRing& radical_quotient() const { return *radical_; }
  /// Number of distinct complex solutions.
  std::size_t solution_count() const { return radical_->dimension(); }
  std::size_t dimension_with_multiplicity() const { return dimension_with_multiplicity_; }
  bool is_empty() const { return radical_->is_empty(); }

  /// Univariate representation for the linear form sum sep_k X_k over the
  /// point variables. Throws SeparationFailure if the form does not separate.
  struct Result {
    UniPoly q;
    std::vector<UniPoly> params;
  };

  Result represent(const std::vector<Rational>& sep) const {
    const std::size_t n = ideal_.point_vars;
    if (sep.size() != n) throw std::invalid_argument("separating form has the wrong length");
    const std::size_t dim = radical_->dimension();
    if (dim == 0) return {UniPoly::constant(1), std::vector<UniPoly>(n)};
    std::vector<std::vector<Rational>> cols(dim, std::vector<Rational>(dim));
    for (std::size_t v = 0; v < n; ++v) {
      if (sep[v] == 0) continue;
      for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t i = 0; i < dim; ++i)
          if (var_mult_[v][j][i] != 0) cols[j][i] += sep[v] * var_mult_[v][j][i];
    }
    EchelonTracker krylov(dim);
    UniPoly q = minimal_polynomial(*radical_, cols, &krylov);
    if (static_cast<std::size_t>(q.degree()) != dim)
      throw SeparationFailure("linear form takes equal values at distinct solutions (minimal polynomial degree " +
                              std::to_string(q.degree()) + " < " + std::to_string(dim) + " points)");
    std::vector<UniPoly> params;
    for (std::size_t v = 0; v < n; ++v) {
      // NF(X_v) is X_v times the basis monomial 1, which is stored first
      auto combo = krylov.express(var_mult_[v][0]);
      if (!combo) throw std::logic_error("Krylov basis does not span the quotient");
      params.push_back(UniPoly(std::move(*combo)));
    }
    return {std::move(q), std::move(params)};
  }

 private:
  static MultiPoly univariate_in(const UniPoly& u, std::size_t v, std::size_t nvars) {
    MultiPoly f(nvars);
    for (std::size_t e = 0; e < u.coeffs().size(); ++e) {
      Monomial m(nvars, 0);
      m[v] = static_cast<Exponent>(e);
      f.add_term(m, u.coeffs()[e]);
    }
    return f;
  }
  MultiPoly univariate_in(const UniPoly& u, std::size_t v) const { return univariate_in(u, v, ideal_.nvars); }

  ZeroDimIdeal ideal_;
  std::optional<QuotientRing> radical_;
  std::vector<std::vector<std::vector<Rational>>> var_mult_;
  std::size_t dimension_with_multiplicity_ = 0;
};

/// Monomial basis of the quotient; throws NotZeroDimensional.
inline QuotientRing quotient_basis(const ZeroDimIdeal& ideal) {
  return QuotientRing(GroebnerBasis(ideal.generators, ideal.nvars));
}

/// (q, p_1..p_n): points are (p_1(u), ..., p_n(u)) for the roots u of q, where
/// u is the value of the separating form sum separating_form_k X_k.
struct UnivariateRepresentation {
  UniPoly q = UniPoly::constant(1);
  std::vector<UniPoly> params;
  std::vector<Rational> separating_form;

  std::size_t degree() const { return static_cast<std::size_t>(std::max(q.degree(), 0L)); }
  friend bool operator==(const UnivariateRepresentation&, const UnivariateRepresentation&) = default;
};

inline UnivariateRepresentation univariate_representation(const ZeroDimIdeal& ideal, const std::vector<Rational>& sep) {
  ZeroDimSolver solver(ideal);
  auto r = solver.represent(sep);
  return {std::move(r.q), std::move(r.params), sep};
}

/// The separating forms tried in order: X_n, then X_i + X_n for i = 1..n-1.
inline std::vector<std::vector<Rational>> separating_candidates(std::size_t n) {
  std::vector<std::vector<Rational>> out;
  std::vector<Rational> last(n);
  last[n - 1] = 1;
  out.push_back(last);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    auto f = last;
    f[i] = 1;
    out.push_back(f);
  }
  return out;
}

/// f(a_1(T), ..., a_n(T)) mod q.
inline UniPoly compose_mod(const MultiPoly& f, const std::vector<UniPoly>& args, const UniPoly& q) {
  if (args.size() != f.nvars()) throw std::invalid_argument("compose_mod: argument count mismatch");
  if (q.degree() < 1) return {};
  std::vector<std::vector<UniPoly>> powers(args.size());
  for (std::size_t v = 0; v < args.size(); ++v) {
    powers[v].push_back(UniPoly::constant(1));
    for (long e = 1; e <= f.degree_in(v); ++e) powers[v].push_back((powers[v].back() * args[v]) % q);
  }
  UniPoly acc;
  for (const auto& [m, c] : f.terms()) {
    UniPoly t = UniPoly::constant(c);
    for (std::size_t v = 0; v < m.size(); ++v)
      if (m[v]) t = (t * powers[v][m[v]]) % q;
    acc += t;
  }
  return acc % q;
}

/// Membership certificate: every f vanishes on (p_1(T), ..., p_n(T)) mod q.
inline bool satisfies_membership(const UnivariateRepresentation& rep, const std::vector<MultiPoly>& polys) {
  return std::all_of(polys.begin(), polys.end(),
                     [&](const MultiPoly& f) { return compose_mod(f, rep.params, rep.q).is_zero(); });
}

/// Joins per-chart representations sharing one separating form: q is the
/// squarefree product, parameters come from Chinese remaindering over the
/// coprime pieces obtained by gcd splitting. Throws InconsistentCharts when two
/// charts parametrize a shared root differently.
inline UnivariateRepresentation combine_charts(const std::vector<UnivariateRepresentation>& reps) {
  if (reps.empty()) throw std::invalid_argument("combine_charts needs at least one representation");
  const std::size_t n = reps.front().params.size();
  for (const auto& r : reps)
    if (r.separating_form != reps.front().separating_form || r.params.size() != n)
      throw std::invalid_argument("representations use different separating forms");

  struct Piece {
    UniPoly h;
    std::vector<UniPoly> params;
  };
  std::vector<Piece> pieces;
  auto reduced = [](const std::vector<UniPoly>& ps, const UniPoly& m) {
    std::vector<UniPoly> out;
    for (const auto& p : ps) out.push_back(p % m);
    return out;
  };
  for (const auto& r : reps) {
    UniPoly rest = monic(r.q);
    if (rest.degree() < 1) continue;
    std::vector<Piece> next;
    for (auto& piece : pieces) {
      UniPoly g = uni_gcd(piece.h, rest);
      if (g.degree() < 1) {
        next.push_back(std::move(piece));
        continue;
      }
      for (std::size_t k = 0; k < n; ++k)
        if (!((piece.params[k] - r.params[k]) % g).is_zero())
          throw InconsistentCharts("charts disagree on the coordinates of a shared root");
      next.push_back({g, reduced(piece.params, g)});
      UniPoly other = exact_quotient(piece.h, g);
      if (other.degree() >= 1) next.push_back({monic(other), reduced(piece.params, other)});
      rest = monic(exact_quotient(rest, g));
    }
    if (rest.degree() >= 1) next.push_back({rest, reduced(r.params, rest)});
    pieces = std::move(next);
  }

  UnivariateRepresentation out;
  out.separating_form = reps.front().separating_form;
  out.params.assign(n, UniPoly{});
  out.q = UniPoly::constant(1);
  for (const auto& piece : pieces) out.q *= piece.h;
  for (const auto& piece : pieces) {
    UniPoly cofactor = exact_quotient(out.q, piece.h);
    UniPoly weight = (cofactor * inverse_mod(cofactor, piece.h)) % out.q;
    for (std::size_t k = 0; k < n; ++k) out.params[k] += (piece.params[k] * weight) % out.q;
  }
  for (auto& p : out.params) p = p % out.q;
  if (out.q.degree() < 1) {
    out.q = UniPoly::constant(1);
    for (auto& p : out.params) p = UniPoly{};
  }
  return out;
}

}  // namespace polarsolve

#endif  // POLARSOLVE_ZERODIM_HPP
