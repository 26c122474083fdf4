#ifndef POLARSOLVE_POLAR_HPP
#define POLARSOLVE_POLAR_HPP

// Jacobians, minors, the exchange identity between k- and (k-1)-minors, the
// triangular coordinate change A(z) and the localized polar-variety systems.
// Column and row indices in this header are 0-based.

#include <polarsolve/matrix.hpp>
#include <polarsolve/multipoly.hpp>
#include <polarsolve/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace polarsolve {

struct SystemInput {
  std::size_t n = 0;
  std::size_t p = 0;
  std::vector<MultiPoly> polys;
  long degree_bound_d = 0;

  /// Validates shapes and fills degree_bound_d with max deg f_k when it is 0.
  static SystemInput make(std::size_t n, std::vector<MultiPoly> polys, long d = 0) {
    SystemInput s;
    s.n = n;
    s.p = polys.size();
    if (s.p < 1 || s.p > n) throw std::invalid_argument("need 1 <= p <= n equations");
    long maxdeg = 0;
    for (const auto& f : polys) {
      if (f.nvars() != n) throw std::invalid_argument("equation has the wrong variable count");
      maxdeg = std::max(maxdeg, f.total_degree());
    }
    if (d != 0 && d < maxdeg) throw std::invalid_argument("degree bound below an equation's degree");
    s.polys = std::move(polys);
    s.degree_bound_d = d ? d : maxdeg;
    return s;
  }
};

inline PolyMatrix jacobian(const SystemInput& s) {
  PolyMatrix j(s.p);
  for (std::size_t k = 0; k < s.p; ++k)
    for (std::size_t v = 0; v < s.n; ++v) j[k].push_back(partial_derivative(s.polys[k], v));
  return j;
}

namespace detail {
inline void check_tuple(const std::vector<std::size_t>& cols, std::size_t n, bool require_increasing) {
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (cols[i] >= n) throw std::invalid_argument("column index out of range");
    for (std::size_t j = 0; j < i; ++j) {
      if (cols[j] == cols[i]) throw std::invalid_argument("repeated column index");
      if (require_increasing && cols[j] > cols[i]) throw std::invalid_argument("column tuple not increasing");
    }
  }
}

inline std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

/// All strictly increasing k-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> c = iota(k);
  while (true) {
    out.push_back(c);
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}
}  // namespace detail

/// p-minor of J on the given columns (all p rows), columns in the given order.
inline MultiPoly minor_on(const SystemInput& s, const PolyMatrix& jac, const std::vector<std::size_t>& cols) {
  detail::check_tuple(cols, s.n, false);
  if (cols.size() != s.p) throw std::invalid_argument("minor needs exactly p columns");
  auto rows = detail::iota(s.p);
  return poly_det(select(jac, rows, cols), s.n);
}

/// M(i1..ip) for a strictly increasing column tuple.
inline MultiPoly minor(const SystemInput& s, const std::vector<std::size_t>& columns) {
  detail::check_tuple(columns, s.n, true);
  return minor_on(s, jacobian(s), columns);
}

/// k-minor of `a` on its first k rows and the listed columns (in that order).
inline Rational leading_minor(const RatMatrix& a, const std::vector<std::size_t>& cols) {
  auto rows = detail::iota(cols.size());
  return determinant(a.select(rows, cols));
}

/// Sign eps_j of the exchange identity for j at 0-based position t of I_k:
/// (-1)^(k + t + 1), with M(I_{k-1} u {j}) taken in the order (I_{k-1}, j).
inline int exchange_sign(std::size_t k, std::size_t position) { return ((k + position + 1) % 2 == 0) ? 1 : -1; }

/// Checks M(I_{k-1}) M(I_k) = sum_j eps_j M(I_k \ {j}) M(I_{k-1} u {j}) exactly,
/// with the signs fixed by exchange_sign().
inline bool exchange_identity_check(const RatMatrix& a, const std::vector<std::size_t>& ik,
                                    const std::vector<std::size_t>& ik1) {
  const std::size_t k = ik.size();
  if (k == 0 || ik1.size() + 1 != k) throw std::invalid_argument("exchange identity needs |I_{k-1}| = |I_k| - 1 >= 0");
  if (k > a.rows()) throw std::invalid_argument("k exceeds the row count");
  detail::check_tuple(ik, a.cols(), false);
  detail::check_tuple(ik1, a.cols(), false);
  Rational lhs = leading_minor(a, ik1) * leading_minor(a, ik);
  Rational rhs(0);
  for (std::size_t t = 0; t < k; ++t) {
    std::size_t j = ik[t];
    if (std::find(ik1.begin(), ik1.end(), j) != ik1.end()) continue;
    std::vector<std::size_t> without = ik, with = ik1;
    without.erase(without.begin() + static_cast<std::ptrdiff_t>(t));
    with.push_back(j);
    rhs += exchange_sign(k, t) * leading_minor(a, without) * leading_minor(a, with);
  }
  return lhs == rhs;
}

/// Deterministic stream of small rational parameters. Uses the raw mt19937_64
/// output (fully specified by the standard) so results are portable.
class ParameterStream {
 public:
  explicit ParameterStream(std::uint64_t seed, long bound = 97) : gen_(seed), bound_(bound) {}
  Rational next() {
    auto span = static_cast<std::uint64_t>(2 * bound_ + 1);
    auto v = static_cast<long>(gen_() % span) - bound_;
    return Rational(v);
  }

 private:
  std::mt19937_64 gen_;
  long bound_;
};

struct CoordinateChange {
  std::size_t n = 0, p = 0;
  std::vector<Rational> z;  // Z_{r,t}, p <= t < r <= n, ordered by r then t (1-based names)
  RatMatrix matrix_A;

  static std::size_t parameter_count(std::size_t n, std::size_t p) { return (n - p) * (n - p + 1) / 2; }

  /// A = diag(I_{p-1}, Z) with Z unit lower triangular of size n-p+1.
  static CoordinateChange from_parameters(std::size_t n, std::size_t p, std::vector<Rational> z) {
    if (p < 1 || p > n) throw std::invalid_argument("need 1 <= p <= n");
    if (z.size() != parameter_count(n, p)) throw std::invalid_argument("wrong number of coordinate parameters");
    CoordinateChange c{n, p, std::move(z), RatMatrix::identity(n)};
    std::size_t idx = 0;
    for (std::size_t r = p; r < n; ++r)
      for (std::size_t t = p - 1; t < r; ++t) c.matrix_A(r, t) = c.z[idx++];
    return c;
  }

  static CoordinateChange identity(std::size_t n, std::size_t p) {
    return from_parameters(n, p, std::vector<Rational>(parameter_count(n, p), Rational(0)));
  }

  bool is_identity() const { return matrix_A == RatMatrix::identity(n); }
};

inline CoordinateChange build_coordinate_change(std::size_t n, std::size_t p, std::uint64_t seed, long bound = 97) {
  if (p < 1 || p > n) throw std::invalid_argument("need 1 <= p <= n");
  ParameterStream stream(seed, bound);
  std::vector<Rational> z(CoordinateChange::parameter_count(n, p));
  for (auto& v : z) v = stream.next();
  return CoordinateChange::from_parameters(n, p, std::move(z));
}

/// G_k(Y) = f_k(A Y).
inline SystemInput transform_system(const SystemInput& s, const CoordinateChange& c) {
  if (c.n != s.n) throw std::invalid_argument("coordinate change has the wrong dimension");
  std::vector<MultiPoly> subs;
  for (std::size_t r = 0; r < s.n; ++r) {
    MultiPoly x(s.n);
    for (std::size_t l = 0; l < s.n; ++l)
      if (c.matrix_A(r, l) != 0) x += MultiPoly::variable(s.n, l) * c.matrix_A(r, l);
    subs.push_back(std::move(x));
  }
  std::vector<MultiPoly> g;
  for (const auto& f : s.polys) g.push_back(compose(f, subs));
  return SystemInput::make(s.n, std::move(g), s.degree_bound_d);
}

/// A chart: p-minor on `columns`, and the (p-1)-minor obtained by deleting
/// row `deleted_row` and the column at position `deleted_col` of `columns`.
struct MinorSelection {
  std::vector<std::size_t> columns;
  std::size_t deleted_row = 0;
  std::size_t deleted_col = 0;

  friend bool operator==(const MinorSelection&, const MinorSelection&) = default;
  friend auto operator<=>(const MinorSelection&, const MinorSelection&) = default;

  /// Columns of the (p-1)-minor, ascending.
  std::vector<std::size_t> minor_columns() const {
    auto c = columns;
    c.erase(c.begin() + static_cast<std::ptrdiff_t>(deleted_col));
    return c;
  }

  /// Column order after moving the (p-1)-minor's columns to the front.
  std::vector<std::size_t> column_order(std::size_t n) const {
    auto order = minor_columns();
    for (std::size_t j = 0; j < n; ++j)
      if (std::find(order.begin(), order.end(), j) == order.end()) order.push_back(j);
    return order;
  }

  /// Whether the reordered first p+i-1 columns are the original first p+i-1
  /// columns, i.e. the chart localizes the same polar variety.
  bool respects_flag(std::size_t p, std::size_t i) const {
    auto mc = minor_columns();
    return std::all_of(mc.begin(), mc.end(), [&](std::size_t c) { return c < p + i - 1; });
  }

  /// "i1,...,ip:j,k" with 1-based indices.
  std::string to_string() const {
    std::string s;
    for (std::size_t t = 0; t < columns.size(); ++t) s += (t ? "," : "") + std::to_string(columns[t] + 1);
    return s + ":" + std::to_string(deleted_row + 1) + "," + std::to_string(deleted_col + 1);
  }

  static MinorSelection parse(const std::string& text, std::size_t n, std::size_t p) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("chart must look like i1,...,ip:j,k");
    auto split = [](const std::string& s) {
      std::vector<std::size_t> v;
      std::size_t start = 0;
      while (start <= s.size()) {
        auto comma = s.find(',', start);
        if (comma == std::string::npos) comma = s.size();
        std::string tok = s.substr(start, comma - start);
        if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit))
          throw std::invalid_argument("bad index '" + tok + "' in chart");
        v.push_back(std::stoul(tok));
        start = comma + 1;
      }
      return v;
    };
    auto cols = split(text.substr(0, colon));
    auto jk = split(text.substr(colon + 1));
    if (cols.size() != p || jk.size() != 2) throw std::invalid_argument("chart needs p columns and j,k");
    MinorSelection m;
    for (auto c : cols) {
      if (c < 1 || c > n) throw std::invalid_argument("chart column out of range");
      m.columns.push_back(c - 1);
    }
    detail::check_tuple(m.columns, n, true);
    if (jk[0] < 1 || jk[0] > p || jk[1] < 1 || jk[1] > p) throw std::invalid_argument("chart row/column out of range");
    m.deleted_row = jk[0] - 1;
    m.deleted_col = jk[1] - 1;
    return m;
  }
};

/// All p^2 * C(n,p) selections, ordered by columns, then row, then column.
inline std::vector<MinorSelection> enumerate_charts(std::size_t n, std::size_t p) {
  std::vector<MinorSelection> out;
  for (auto& cols : detail::combinations(n, p))
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t k = 0; k < p; ++k) out.push_back({cols, j, k});
  return out;
}

/// Columns (1..p-1, n), deleted row p, deleted column p: localizes the polar
/// variety W_{n-p} by m = the leading (p-1)-minor and M(1..p-1, n).
inline MinorSelection canonical_chart(std::size_t n, std::size_t p) {
  MinorSelection m;
  for (std::size_t c = 0; c + 1 < p; ++c) m.columns.push_back(c);
  m.columns.push_back(n - 1);
  m.deleted_row = p - 1;
  m.deleted_col = p - 1;
  return m;
}

struct PolarSystem {
  MinorSelection chart;
  std::size_t i = 0;                  // polar index, 1 <= i <= n-p (0 when n = p)
  std::vector<MultiPoly> equations;   // f_1..f_p, then i minors
  MultiPoly localization_g;           // m * M(chart.columns)
  MultiPoly m;                        // the chart's (p-1)-minor
  bool flag_compatible = true;
};

inline PolarSystem polar_system(const SystemInput& s, const PolyMatrix& jac, const MinorSelection& chart, std::size_t i) {
  // i = 0 only arises for n = p, where the variety itself is finite
  if (i > s.n - s.p || (i == 0 && s.n != s.p)) throw std::out_of_range("polar index must lie in 1..n-p");
  detail::check_tuple(chart.columns, s.n, true);
  if (chart.columns.size() != s.p || chart.deleted_row >= s.p || chart.deleted_col >= s.p)
    throw std::invalid_argument("malformed chart");
  PolarSystem ps;
  ps.chart = chart;
  ps.i = i;
  ps.equations = s.polys;
  auto mcols = chart.minor_columns();
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < s.p; ++r)
    if (r != chart.deleted_row) rows.push_back(r);
  ps.m = poly_det(select(jac, rows, mcols), s.n);
  ps.localization_g = ps.m * minor_on(s, jac, chart.columns);
  auto order = chart.column_order(s.n);
  for (std::size_t t = 0; t < i; ++t) {
    auto cols = mcols;
    cols.push_back(order[s.p - 1 + t]);
    ps.equations.push_back(minor_on(s, jac, cols));
  }
  ps.flag_compatible = chart.respects_flag(s.p, i);
  return ps;
}

inline PolarSystem polar_system(const SystemInput& s, const MinorSelection& chart, std::size_t i) {
  return polar_system(s, jacobian(s), chart, i);
}

/// det(J J^T), checked against the sum of squared p-minors (Cauchy-Binet).
inline MultiPoly cauchy_binet_D(const SystemInput& s) {
  auto jac = jacobian(s);
  PolyMatrix gram(s.p, std::vector<MultiPoly>(s.p, MultiPoly(s.n)));
  for (std::size_t a = 0; a < s.p; ++a)
    for (std::size_t b = 0; b < s.p; ++b)
      for (std::size_t v = 0; v < s.n; ++v) gram[a][b] += jac[a][v] * jac[b][v];
  MultiPoly d = poly_det(gram, s.n);
  MultiPoly sum(s.n);
  for (auto& cols : detail::combinations(s.n, s.p)) {
    MultiPoly mnr = minor_on(s, jac, cols);
    sum += mnr * mnr;
  }
  if (!(d == sum)) throw std::logic_error("Cauchy-Binet identity violated: arithmetic bug");
  return d;
}

struct DegreeReport {
  Integer bezout_D;                 // d_1 * ... * d_p
  std::vector<long> minor_degrees;  // c_1..c_{n-p}, max over charts
  Integer polar_bound;              // D * c_1 * ... * c_{n-p}
  Integer delta_bound;              // D * (d_1 + ... + d_p - p)^{n-p}
  Integer closed_form_bound;        // d^p (p d - p)^{n-p}
  long d = 0;
};

inline DegreeReport bezout_report(const SystemInput& s) {
  DegreeReport r;
  r.d = s.degree_bound_d;
  r.bezout_D = 1;
  long sum_d = 0;
  for (const auto& f : s.polys) {
    r.bezout_D *= std::max(f.total_degree(), 0L);
    sum_d += std::max(f.total_degree(), 0L);
  }
  const std::size_t top = s.n - s.p;
  r.minor_degrees.assign(top, 0);
  if (top > 0) {
    auto jac = jacobian(s);
    for (const auto& chart : enumerate_charts(s.n, s.p)) {
      auto ps = polar_system(s, jac, chart, top);
      for (std::size_t t = 0; t < top; ++t)
        r.minor_degrees[t] = std::max(r.minor_degrees[t], std::max(ps.equations[s.p + t].total_degree(), 0L));
    }
  }
  r.polar_bound = r.bezout_D;
  for (long c : r.minor_degrees) r.polar_bound *= c;
  Integer base(sum_d - static_cast<long>(s.p));
  Integer pw;
  mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), top);
  r.delta_bound = r.bezout_D * pw;
  Integer dp, rest;
  mpz_ui_pow_ui(dp.get_mpz_t(), static_cast<unsigned long>(r.d), s.p);
  Integer rest_base(static_cast<long>(s.p) * r.d - static_cast<long>(s.p));
  mpz_pow_ui(rest.get_mpz_t(), rest_base.get_mpz_t(), top);
  r.closed_form_bound = dp * rest;
  return r;
}

}  // namespace polarsolve

#endif  // POLARSOLVE_POLAR_HPP
