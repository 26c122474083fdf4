#ifndef POLARSOLVE_TEST_SUPPORT_HPP
#define POLARSOLVE_TEST_SUPPORT_HPP

// Random generators shared by the unit tests and the acceptance binary.

#include <polarsolve/circuit.hpp>
#include <polarsolve/matrix.hpp>
#include <polarsolve/multipoly.hpp>

#include <random>

namespace polarsolve::testing {

inline Rational random_rational(std::mt19937_64& rng, long bound = 9) {
  std::uniform_int_distribution<long> num(-bound, bound), den(1, bound);
  return make_rational(num(rng), den(rng));
}

inline MultiPoly random_poly(std::mt19937_64& rng, std::size_t nvars, unsigned max_deg = 3, std::size_t terms = 4) {
  std::uniform_int_distribution<unsigned> e(0, max_deg);
  MultiPoly f(nvars);
  for (std::size_t t = 0; t < terms; ++t) {
    Monomial m(nvars);
    unsigned budget = max_deg;
    for (std::size_t j = 0; j < nvars; ++j) {
      m[j] = std::min(e(rng), budget);
      budget -= m[j];
    }
    f.add_term(m, random_rational(rng));
  }
  return f;
}

inline std::vector<Rational> random_point(std::mt19937_64& rng, std::size_t n) {
  std::vector<Rational> x;
  for (std::size_t j = 0; j < n; ++j) x.push_back(random_rational(rng));
  return x;
}

inline RatMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long bound = 9) {
  RatMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_rational(rng, bound);
  return m;
}

// Random circuit with `size` arithmetic nodes over `nvars` inputs. A product is
// only formed when the degree bound stays within `max_degree`; otherwise the
// node becomes an addition, so expansion stays cheap.
inline Circuit random_circuit(std::mt19937_64& rng, std::size_t nvars, std::size_t size, std::size_t outputs = 2,
                              long max_degree = 8) {
  Circuit c(nvars);
  std::vector<long> deg;
  for (std::size_t j = 0; j < nvars; ++j) {
    c.input(j);
    deg.push_back(1);
  }
  c.constant(random_rational(rng, 5));
  deg.push_back(0);
  std::uniform_int_distribution<int> kind(0, 5);
  for (std::size_t k = 0; k < size; ++k) {
    int kd = kind(rng);
    if (kd == 5) {
      c.constant(random_rational(rng, 5));
      deg.push_back(0);
    }
    std::uniform_int_distribution<std::size_t> pick(0, c.nodes().size() - 1);
    std::size_t a = pick(rng), b = pick(rng);
    NodeKind nk = kd < 2 ? NodeKind::add : kd < 4 ? NodeKind::sub : NodeKind::mul;
    if (nk == NodeKind::mul && deg[a] + deg[b] > max_degree) nk = NodeKind::add;
    c.op(nk, a, b);
    deg.push_back(nk == NodeKind::mul ? deg[a] + deg[b] : std::max(deg[a], deg[b]));
  }
  std::uniform_int_distribution<std::size_t> tail(nvars + 1, c.nodes().size() - 1);
  for (std::size_t o = 0; o < outputs; ++o) c.add_output(tail(rng));
  return c;
}

}  // namespace polarsolve::testing

#endif
