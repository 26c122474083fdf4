#include "test_support.hpp"

#include <polarsolve/matrix.hpp>
#include <polarsolve/multipoly.hpp>
#include <polarsolve/poly_parser.hpp>
#include <polarsolve/rational.hpp>
#include <polarsolve/unipoly.hpp>

#include <gtest/gtest.h>

using namespace polarsolve;
using namespace polarsolve::testing;

namespace {

MultiPoly P(const char* s, std::size_t n = 3) { return parse_polynomial(s, n); }

UniPoly X() { return UniPoly::x(); }
UniPoly C(long v) { return UniPoly::constant(Rational(v)); }

// Naive evaluation: sum over terms of coefficient times a product of powers,
// computed by repeated multiplication without sharing.
Rational term_sum(const MultiPoly& f, const std::vector<Rational>& x) {
  Rational s = 0;
  for (const auto& [m, c] : f.terms()) {
    Rational t = c;
    for (std::size_t j = 0; j < m.size(); ++j)
      for (unsigned e = 0; e < m[j]; ++e) t *= x[j];
    s += t;
  }
  return s;
}

}  // namespace

TEST(Rational, CanonicalForm) {
  EXPECT_EQ(to_string(make_rational(4, -6)), "-2/3");
  EXPECT_EQ(to_string(Rational(0)), "0/1");
  EXPECT_EQ(parse_rational("-10/4"), Rational(-5, 2));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("a/b"), std::invalid_argument);
}

TEST(PolyArith, DifferenceOfSquares) {
  auto a = P("X1 + 1", 1), b = P("X1 - 1", 1);
  EXPECT_EQ(poly_arith(a, b, ArithOp::mul), P("X1^2 - 1", 1));
}

TEST(PolyArith, Identities) {
  auto f = P("X1^2 + X2^2 - 1", 2);
  EXPECT_EQ(poly_arith(f, MultiPoly(2), ArithOp::add), f);
  EXPECT_EQ(poly_arith(f, MultiPoly::constant(2, Rational(1)), ArithOp::mul), f);
  EXPECT_TRUE(poly_arith(f, f, ArithOp::sub).is_zero());
}

TEST(PolyArith, VariableCountMismatchThrows) {
  EXPECT_THROW(poly_arith(P("X1", 1), P("X1", 2), ArithOp::add), std::invalid_argument);
}

TEST(PolyArith, NoZeroCoefficientsStored) {
  auto f = P("X1*X2 + 3") - P("X1*X2");
  for (const auto& [m, c] : f.terms()) EXPECT_NE(c, 0);
  EXPECT_EQ(f.size(), 1u);
  EXPECT_EQ(f.total_degree(), 0);
  EXPECT_EQ(MultiPoly(3).total_degree(), -1);
}

TEST(PolyArith, RingAxiomsOnRandomTriples) {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 50; ++it) {
    auto a = random_poly(rng, 3), b = random_poly(rng, 3), c = random_poly(rng, 3);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a + b, b + a);
  }
}

TEST(PartialDerivative, Examples) {
  EXPECT_EQ(partial_derivative(P("X1^2 + X2^2 - 1", 2), 0), P("2*X1", 2));
  EXPECT_TRUE(partial_derivative(P("7/3"), 2).is_zero());
  EXPECT_EQ(partial_derivative(P("X1*X2*X3"), 1), P("X1*X3"));
  EXPECT_THROW(partial_derivative(P("X1"), 3), std::out_of_range);
}

TEST(PartialDerivative, LeibnizRule) {
  std::mt19937_64 rng(12);
  for (int it = 0; it < 40; ++it) {
    auto f = random_poly(rng, 3), g = random_poly(rng, 3);
    for (std::size_t j = 0; j < 3; ++j)
      EXPECT_EQ(partial_derivative(f * g, j), f * partial_derivative(g, j) + g * partial_derivative(f, j));
  }
}

TEST(PolyDet, Examples) {
  const std::size_t n = 2;
  PolyMatrix id = {{MultiPoly::constant(n, 1), MultiPoly(n)}, {MultiPoly(n), MultiPoly::constant(n, 1)}};
  EXPECT_EQ(poly_det(id, n), MultiPoly::constant(n, 1));
  PolyMatrix tri = {{P("2*X1", 2), P("2*X2", 2)}, {MultiPoly(n), MultiPoly::constant(n, 1)}};
  EXPECT_EQ(poly_det(tri, n), P("2*X1", 2));
  PolyMatrix rect = {{P("X1", 2), P("X2", 2)}};
  EXPECT_THROW(poly_det(rect, n), std::invalid_argument);
}

TEST(PolyDet, RandomThreeByThreeMatchesCofactorOracle) {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 20; ++it) {
    PolyMatrix m(3, std::vector<MultiPoly>(3));
    for (auto& row : m)
      for (auto& e : row) e = random_poly(rng, 2, 2, 3);
    // Rule of Sarrus, written out independently of the library.
    MultiPoly sarrus = m[0][0] * m[1][1] * m[2][2] + m[0][1] * m[1][2] * m[2][0] + m[0][2] * m[1][0] * m[2][1] -
                       m[0][2] * m[1][1] * m[2][0] - m[0][0] * m[1][2] * m[2][1] - m[0][1] * m[1][0] * m[2][2];
    EXPECT_EQ(poly_det(m, 2), sarrus);
  }
}

TEST(PolyDet, BareissAgreesWithCofactorOnLargerMatrices) {
  std::mt19937_64 rng(14);
  for (int it = 0; it < 5; ++it) {
    PolyMatrix m(5, std::vector<MultiPoly>(5));
    for (auto& row : m)
      for (auto& e : row) e = random_poly(rng, 2, 1, 2);
    EXPECT_EQ(detail::bareiss_det(m, 2), detail::cofactor_det(m, 2));
  }
}

TEST(PolyDet, EqualRowsGiveZero) {
  std::mt19937_64 rng(15);
  for (std::size_t size : {2u, 3u, 4u, 5u}) {
    PolyMatrix m(size, std::vector<MultiPoly>(size));
    for (auto& row : m)
      for (auto& e : row) e = random_poly(rng, 2, 2, 2);
    m[size - 1] = m[0];
    EXPECT_TRUE(poly_det(m, 2).is_zero()) << "size " << size;
  }
}

TEST(UniGcd, Examples) {
  EXPECT_EQ(uni_gcd(X() * X() - C(1), X() - C(1)), X() - C(1));
  auto p = C(3) * X() * X() + C(6);
  EXPECT_EQ(uni_gcd(p, UniPoly()), monic(p));
  EXPECT_TRUE(uni_gcd(UniPoly(), UniPoly()).is_zero());
  auto a = (X() - C(2)) * (X() - C(2)) * (X() + C(1));
  auto b = (X() - C(2)) * (X() + C(3));
  EXPECT_EQ(uni_gcd(a, b), X() - C(2));
}

TEST(SquarefreePart, Examples) {
  auto x1 = X() - C(1), x2 = X() - C(2);
  EXPECT_EQ(squarefree_part(x1 * x1 * x1), x1);
  EXPECT_EQ(squarefree_part(X() * X() - C(1)), X() * X() - C(1));
  EXPECT_EQ(squarefree_part((x1 * x2) * (x1 * x2)), x1 * x2);
  EXPECT_THROW(squarefree_part(UniPoly()), std::invalid_argument);
}

TEST(SquarefreePart, DividesAndIsSquarefree) {
  std::mt19937_64 rng(16);
  for (int it = 0; it < 30; ++it) {
    UniPoly q = C(1);
    std::uniform_int_distribution<int> mult(1, 3);
    for (int f = 0; f < 3; ++f) {
      UniPoly lin = X() - UniPoly::constant(random_rational(rng));
      for (int e = mult(rng); e > 0; --e) q = q * lin;
    }
    auto s = squarefree_part(q);
    EXPECT_TRUE((q % s).is_zero());
    EXPECT_EQ(uni_gcd(s, derivative(s)), C(1));
  }
}

TEST(EvalPoly, Examples) {
  std::vector<Rational> x = {Rational(1), Rational(0)};
  EXPECT_EQ(eval_poly(P("X1^2 + X2^2 - 1", 2), x), 0);
  EXPECT_EQ(eval_poly(MultiPoly::constant(2, Rational(5, 7)), x), Rational(5, 7));
  std::vector<Rational> bad = {Rational(1)};
  EXPECT_THROW(eval_poly(P("X1", 2), bad), std::invalid_argument);
}

TEST(EvalPoly, MatchesTermSumOracleAndIsMultiplicative) {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 50; ++it) {
    auto f = random_poly(rng, 3, 4, 6), g = random_poly(rng, 3);
    auto x = random_point(rng, 3);
    EXPECT_EQ(eval_poly(f, x), term_sum(f, x));
    EXPECT_EQ(eval_poly(f * g, x), eval_poly(f, x) * eval_poly(g, x));
  }
}

TEST(Parser, GrammarExamples) {
  auto f = P("3/2*X1^2*X3 - X2 + 1");
  Monomial m = {2, 0, 1};
  EXPECT_EQ(f.terms().at(m), Rational(3, 2));
  EXPECT_EQ(f.size(), 3u);
  EXPECT_EQ(P("  X1*X1 -1  ", 1), P("X1^2-1", 1));
  EXPECT_EQ(P("(X1 - 3)^2", 1), P("X1^2 - 6*X1 + 9", 1));
}

TEST(Parser, ErrorsCarryLineAndColumn) {
  try {
    parse_polynomial("X1 +\n  X4", 3);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
  }
  EXPECT_THROW(parse_polynomial("X1 + * 2", 2), ParseError);
  EXPECT_THROW(parse_polynomial("X1 2", 2), ParseError);
  EXPECT_THROW(parse_polynomial("1/0*X1", 2), ParseError);
}

TEST(Printing, RoundTripsThroughParser) {
  std::mt19937_64 rng(18);
  for (int it = 0; it < 30; ++it) {
    auto f = random_poly(rng, 3);
    EXPECT_EQ(parse_polynomial(f.to_string(), 3), f) << f.to_string();
  }
}
