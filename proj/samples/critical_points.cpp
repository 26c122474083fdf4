// Minimal library usage: critical points of a generic linear form on a sphere.

#include <polarsolve/pipeline.hpp>
#include <polarsolve/poly_parser.hpp>

#include <iostream>

int main() {
  using namespace polarsolve;
  auto sphere = SystemInput::make(3, {parse_polynomial("X1^2 + X2^2 + X3^2 - 1", 3)});

  JobConfig cfg;
  cfg.seed = 7;
  cfg.eps = Rational(1, 100);
  RunReport r = solve_system(sphere, cfg);

  std::cout << "q(T) = " << r.representation.q.to_string() << "\n";
  for (const auto& pt : r.solutions.points) {
    std::cout << "point:";
    for (const auto& b : pt.box) std::cout << "  [" << b.lo.get_d() << ", " << b.hi.get_d() << "]";
    std::cout << "\n";
  }
}
