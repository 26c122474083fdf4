#include "test_support.hpp"

#include <polarsolve/circuit.hpp>
#include <polarsolve/poly_parser.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

using namespace polarsolve;
using namespace polarsolve::testing;

namespace {

const char* kCircle =
    "# X1^2 + X2^2 - 1\n"
    "%1 = mul X1 X1\n"
    "%2 = mul X2 X2\n"
    "%3 = add %1 %2\n"
    "%4 = sub %3 1\n"
    "out %4\n";

std::size_t arithmetic_nodes(const Circuit& c) {
  return std::count_if(c.nodes().begin(), c.nodes().end(), [](const Node& n) { return n.is_arithmetic(); });
}

}  // namespace

TEST(ParseCircuit, Square) {
  auto c = parse_circuit("%1 = mul X1 X1\nout %1\n");
  EXPECT_EQ(c.nvars(), 1u);
  EXPECT_EQ(expand_circuit(c, 8).at(0), parse_polynomial("X1^2", 1));
  std::vector<Rational> x = {Rational(2)};
  EXPECT_EQ(eval_circuit(c, x).at(0), 4);
}

TEST(ParseCircuit, CircleVanishesAtPythagoreanPoint) {
  auto c = parse_circuit(kCircle);
  std::vector<Rational> x = {Rational(3, 5), Rational(4, 5)};
  EXPECT_EQ(eval_circuit(c, x).at(0), 0);
  EXPECT_EQ(expand_circuit(c, 8).at(0), parse_polynomial("X1^2 + X2^2 - 1", 2));
}

TEST(ParseCircuit, SampleFileMatchesInlineText) {
  std::ifstream in(std::string(POLARSOLVE_DATA_DIR) + "/circle.circ");
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(print_circuit(parse_circuit(ss.str())), print_circuit(parse_circuit(kCircle)));
}

TEST(ParseCircuit, Errors) {
  auto expect_error = [](const char* text, const char* needle, std::size_t line) {
    try {
      parse_circuit(text);
      ADD_FAILURE() << "no error for: " << text;
    } catch (const ParseError& e) {
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
      EXPECT_EQ(e.line(), line) << text;
    }
  };
  expect_error("%1 = add X1 %5\nout %1\n", "forward reference", 1);
  expect_error("%1 = mul X1 X1\n%2 = div %1 X1\nout %2\n", "division", 2);
  expect_error("%1 = add X1 Y7\nout %1\n", "unknown identifier", 1);
  expect_error("%1 = add X1 3/0\nout %1\n", "malformed constant", 1);
  expect_error("%1 = add X1 1\n%1 = add X1 2\nout %1\n", "defined twice", 2);
}

TEST(EvalCircuit, ConstantOnlyCircuit) {
  auto c = parse_circuit("%1 = add 2/3 1/3\nout %1\nout 5\n", 2);
  std::mt19937_64 rng(1);
  for (int it = 0; it < 5; ++it) {
    auto v = eval_circuit(c, random_point(rng, 2));
    EXPECT_EQ(v, (std::vector<Rational>{Rational(1), Rational(5)}));
  }
}

TEST(EvalCircuit, LengthMismatchThrows) {
  auto c = parse_circuit(kCircle);
  std::vector<Rational> x = {Rational(1)};
  EXPECT_THROW(eval_circuit(c, x), std::invalid_argument);
}

TEST(EvalCircuit, AgreesWithExpansionOnRandomCircuits) {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 60; ++it) {
    auto c = random_circuit(rng, 3, 30, 3);
    auto polys = expand_circuit(c, 64);
    auto x = random_point(rng, 3);
    auto v = eval_circuit(c, x);
    for (std::size_t k = 0; k < polys.size(); ++k) EXPECT_EQ(v[k], eval_poly(polys[k], x));
  }
}

TEST(ExpandCircuit, RepeatedSquaringHitsCap) {
  auto c = parse_circuit(
      "%1 = mul X1 X1\n%2 = mul %1 %1\n%3 = mul %2 %2\n%4 = mul %3 %3\n%5 = mul %4 %4\nout %5\n");
  try {
    expand_circuit(c, 16);
    FAIL() << "expected the degree cap to trip";
  } catch (const DegreeCapExceeded& e) {
    EXPECT_NE(std::string(e.what()).find("32"), std::string::npos) << e.what();
  }
  EXPECT_EQ(expand_circuit(c, 32).at(0), parse_polynomial("X1^32", 1));
}

TEST(Differentiate, SquareGivesTwoX) {
  auto d = differentiate_circuit(parse_circuit("%1 = mul X1 X1\nout %1\n"));
  std::mt19937_64 rng(2);
  for (int it = 0; it < 10; ++it) {
    auto x = random_point(rng, 1);
    EXPECT_EQ(eval_circuit(d, x).at(0), 2 * x[0]);
  }
}

TEST(Differentiate, ConstantCircuitHasZeroGradient) {
  auto d = differentiate_circuit(parse_circuit("%1 = mul 3 4\nout %1\n", 2));
  std::vector<Rational> x = {Rational(7), Rational(-1, 2)};
  EXPECT_EQ(eval_circuit(d, x), (std::vector<Rational>{Rational(0), Rational(0)}));
}

TEST(Differentiate, MatchesSymbolicPartialsOnRandomCircuits) {
  std::mt19937_64 rng(22);
  for (int it = 0; it < 60; ++it) {
    auto c = random_circuit(rng, 3, 40, 2);
    auto f = expand_circuit(c, 64);
    auto d = differentiate_circuit(c);
    auto df = expand_circuit(d, 64);
    ASSERT_EQ(df.size(), f.size() * 3);
    for (std::size_t k = 0; k < f.size(); ++k)
      for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(df[3 * k + j], partial_derivative(f[k], j));
    auto x = random_point(rng, 3);
    auto v = eval_circuit(d, x);
    for (std::size_t k = 0; k < f.size(); ++k)
      for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(v[3 * k + j], eval_poly(partial_derivative(f[k], j), x));
  }
}

TEST(Differentiate, GrowthIsLinearPerOutputRow) {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 30; ++it) {
    auto c = random_circuit(rng, 4, 60, 3);
    auto d = differentiate_circuit(c);
    std::size_t L = metrics(c).size_L;
    std::size_t added = arithmetic_nodes(d) - arithmetic_nodes(c);
    EXPECT_LE(added, c.outputs().size() * (5 * L + c.nvars()));
  }
}

TEST(Metrics, Examples) {
  auto sq = parse_circuit("%1 = mul X1 X1\nout %1\n");
  EXPECT_EQ(metrics(sq).size_L, 1u);
  EXPECT_EQ(metrics(sq).nonscalar_depth_ell, 1u);

  auto chain = parse_circuit("%1 = add X1 X2\n%2 = add %1 X1\n%3 = add %2 X2\n%4 = add %3 1\nout %4\n");
  EXPECT_EQ(metrics(chain).size_L, 4u);
  EXPECT_EQ(metrics(chain).nonscalar_depth_ell, 0u);

  auto prod = parse_circuit("%1 = mul X1 X2\n%2 = mul X3 X4\n%3 = mul %1 %2\nout %3\n");
  EXPECT_EQ(metrics(prod).size_L, 3u);
  EXPECT_EQ(metrics(prod).nonscalar_depth_ell, 2u);

  auto scalar = parse_circuit("%1 = mul 3 X1\n%2 = mul %1 X1\nout %2\n");
  EXPECT_EQ(metrics(scalar).nonscalar_depth_ell, 1u);
}

TEST(Metrics, InvariantUnderOutputReordering) {
  std::mt19937_64 rng(24);
  for (int it = 0; it < 20; ++it) {
    auto c = random_circuit(rng, 3, 25, 4);
    auto m = metrics(c);
    auto outs = c.outputs();
    std::reverse(outs.begin(), outs.end());
    c.set_outputs(outs);
    EXPECT_EQ(metrics(c), m);
    EXPECT_LE(m.nonscalar_depth_ell, m.size_L);
  }
}

TEST(PrintCircuit, RoundTrip) {
  std::mt19937_64 rng(25);
  for (int it = 0; it < 30; ++it) {
    auto c = random_circuit(rng, 3, 20, 2);
    std::string text = print_circuit(c);
    auto back = parse_circuit(text, 3);
    EXPECT_EQ(print_circuit(back), text);
    auto x = random_point(rng, 3);
    EXPECT_EQ(eval_circuit(back, x), eval_circuit(c, x));
  }
}
