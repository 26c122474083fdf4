// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Every tolerance and time limit is a named constant below.

#include "test_support.hpp"

#include <polarsolve/pipeline.hpp>
#include <polarsolve/report.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <sstream>

using namespace polarsolve;
using namespace polarsolve::testing;

namespace {

const std::filesystem::path kData = POLARSOLVE_DATA_DIR;

const Rational kEps(1, 1000);          // box width requested from the solver
constexpr double kCircleSeconds = 1;
constexpr double kSphereSeconds = 5;
constexpr double kTwoCirclesSeconds = 10;
constexpr double kSphereCylinderSeconds = 30;
constexpr double kTorusSeconds = 60;
constexpr int kExchangeCases = 200;     // k <= 4 rows, n <= 8 columns
constexpr int kCauchyBinetRandom = 50;
constexpr int kCircuitCases = 100;
constexpr std::size_t kCircuitMaxL = 60;
constexpr std::uint64_t kSeed = 1;

struct Outcome {
  bool pass = true;
  std::string note;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) note = ": " + what;
    pass = pass && ok;
  }
};

// Successful runs collected for the degree-bound criterion.
std::vector<std::pair<std::string, RunReport>> g_runs;

JobConfig config(CoordMode mode, std::uint64_t seed = kSeed) {
  JobConfig cfg;
  cfg.coords = mode;
  cfg.seed = seed;
  cfg.eps = kEps;
  cfg.assert_compact = true;
  return cfg;
}

SystemInput load(const char* name) { return load_input(kData / name).system; }

RunReport timed_solve(const std::string& label, const SystemInput& s, const JobConfig& cfg, double& seconds) {
  auto t0 = std::chrono::steady_clock::now();
  auto r = solve_system(s, cfg);
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  g_runs.emplace_back(label, r);
  return r;
}

// Oracle: substitute X_k = p_k(T) term by term and reduce modulo q; also
// checks that the separating form maps the parametrization back to T.
bool certificate(const UnivariateRepresentation& rep, const std::vector<MultiPoly>& polys) {
  for (const auto& f : polys) {
    UniPoly acc;
    for (const auto& [mono, coeff] : f.terms()) {
      UniPoly term = UniPoly::constant(coeff);
      for (std::size_t v = 0; v < mono.size(); ++v)
        for (Exponent e = 0; e < mono[v]; ++e) term = (term * rep.params[v]) % rep.q;
      acc = acc + term;
    }
    if (!(acc % rep.q).is_zero()) return false;
  }
  UniPoly lin;
  for (std::size_t v = 0; v < rep.params.size(); ++v) lin = lin + rep.params[v] * rep.separating_form[v];
  return ((lin - UniPoly::x()) % rep.q).is_zero();
}

bool boxes_narrow(const RunReport& r) {
  for (const auto& pt : r.solutions.points)
    for (const auto& b : pt.box)
      if (!(b.width() < kEps)) return false;
  return true;
}

Outcome circle_identity() {
  Outcome o;
  auto s = load("circle.json");
  double secs = 0;
  auto r = timed_solve("circle", s, config(CoordMode::identity), secs);
  const auto& rep = r.representation;
  o.require(r.solutions.points.size() == 2, "expected 2 points");
  // q proportional to T^2 - 1 with T = X2
  UniPoly target({Rational(-1), Rational(0), Rational(1)});
  o.require(rep.q.degree() == 2 && rep.q * (Rational(1) / rep.q.leading()) == target, "q not prop. to T^2-1");
  o.require(rep.separating_form == std::vector<Rational>{Rational(0), Rational(1)}, "separating form is not X2");
  std::vector<std::pair<int, int>> want = {{0, -1}, {0, 1}};
  for (std::size_t k = 0; k < r.solutions.points.size() && k < 2; ++k) {
    const auto& box = r.solutions.points[k].box;
    o.require(box[0].contains(Rational(want[k].first)) && box[1].contains(Rational(want[k].second)), "box misses (0,+-1)");
  }
  o.require(boxes_narrow(r), "box wider than eps");
  o.require(certificate(rep, s.polys), "membership certificate");
  o.require(secs < kCircleSeconds, "time limit");
  o.note += " (" + std::to_string(secs) + " s)";
  return o;
}

Outcome sphere_random() {
  Outcome o;
  auto s = load("sphere.json");
  double secs = 0;
  auto r = timed_solve("sphere", s, config(CoordMode::random), secs);
  o.require(!r.coordinates.is_identity(), "coordinates not randomized");
  o.require(r.solutions.points.size() == 2, "expected 2 points");
  o.require(r.representation.degree() == 2, "deg q != 2");
  o.require(certificate(r.representation, s.polys), "membership certificate");
  o.require(secs < kSphereSeconds, "time limit");
  o.note += " (" + std::to_string(secs) + " s)";
  return o;
}

Outcome two_circles() {
  Outcome o;
  auto s = load("two_circles.json");
  double secs = 0;
  auto r = timed_solve("two_circles", s, config(CoordMode::random), secs);
  o.require(r.solutions.points.size() == 4, "expected 4 points");
  int pos = 0, neg = 0;
  for (const auto& pt : r.solutions.points) {
    pos += pt.box[0].lo > 0;
    neg += pt.box[0].hi < 0;
  }
  o.require(pos >= 1 && neg >= 1 && pos + neg == 4, "X1 boxes do not separate the circles");
  o.require(certificate(r.representation, s.polys), "membership certificate");
  o.require(secs < kTwoCirclesSeconds, "time limit");
  o.note += " (" + std::to_string(secs) + " s)";
  return o;
}

Outcome sphere_cylinder() {
  Outcome o;
  auto s = load("sphere_cylinder.json");
  double secs = 0;
  auto r = timed_solve("sphere_cylinder", s, config(CoordMode::random), secs);
  o.require(r.representation.degree() == 4, "deg q != 4");
  bool upper = false, lower = false;
  for (const auto& pt : r.solutions.points) {
    const auto& b = pt.box[2];
    upper |= b.lo > 1 && b.hi < 2;
    lower |= b.lo > -2 && b.hi < -1;
  }
  o.require(upper && lower, "X3 boxes not inside (1,2) and (-2,-1)");
  o.require(certificate(r.representation, s.polys), "membership certificate");
  o.require(secs < kSphereCylinderSeconds, "time limit");
  o.note += " (" + std::to_string(secs) + " s)";
  return o;
}

Outcome torus() {
  Outcome o;
  auto s = load("torus.json");
  double secs = 0;
  auto r = timed_solve("torus", s, config(CoordMode::random), secs);
  o.require(r.representation.degree() == 4, "deg q != 4");
  o.require(r.solutions.points.size() == 4, "expected 4 real points");
  o.require(certificate(r.representation, s.polys), "membership certificate");
  o.require(secs < kTorusSeconds, "time limit");
  o.note += " (" + std::to_string(secs) + " s)";
  return o;
}

// Leibniz determinant of the leading rows x listed columns.
Rational leibniz(const RatMatrix& a, std::size_t rows, const std::vector<std::size_t>& cols) {
  std::vector<std::size_t> perm(cols.size());
  std::iota(perm.begin(), perm.end(), 0);
  Rational total = 0;
  do {
    int inv = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j) inv += perm[i] > perm[j];
    Rational prod = inv % 2 ? -1 : 1;
    for (std::size_t r = 0; r < rows; ++r) prod *= a(r, cols[perm[r]]);
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

std::vector<std::size_t> random_tuple(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(k);
  return all;  // unsorted on purpose: the identity holds for any column order
}

Outcome exchange_suite() {
  Outcome o;
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::size_t> rows_d(1, 4);
  for (int it = 0; it < kExchangeCases; ++it) {
    std::size_t k = rows_d(rng);
    std::size_t n = std::uniform_int_distribution<std::size_t>(k, 8)(rng);
    auto a = random_matrix(rng, k, n);
    auto ik = random_tuple(rng, n, k);
    auto ik1 = random_tuple(rng, n, k - 1);
    Rational lhs = leibniz(a, k - 1, ik1) * leibniz(a, k, ik), rhs = 0;
    for (std::size_t t = 0; t < k; ++t) {
      auto without = ik, with = ik1;
      without.erase(without.begin() + static_cast<std::ptrdiff_t>(t));
      with.push_back(ik[t]);
      rhs += exchange_sign(k, t) * leibniz(a, k - 1, without) * leibniz(a, k, with);
    }
    o.require(lhs == rhs, "oracle identity fails at case " + std::to_string(it));
    o.require(exchange_identity_check(a, ik, ik1), "library check fails at case " + std::to_string(it));
  }
  o.note += " (" + std::to_string(kExchangeCases) + " cases)";
  return o;
}

// Numeric oracle at a rational point: det(J J^T) by Leibniz against the sum of
// squared Leibniz p-minors of J, both from the evaluated Jacobian.
bool cauchy_binet_at(const SystemInput& s, const std::vector<Rational>& x) {
  auto jac = jacobian(s);
  RatMatrix j(s.p, s.n), g(s.p, s.p);
  for (std::size_t r = 0; r < s.p; ++r)
    for (std::size_t c = 0; c < s.n; ++c) j(r, c) = eval_poly(jac[r][c], x);
  for (std::size_t a = 0; a < s.p; ++a)
    for (std::size_t b = 0; b < s.p; ++b)
      for (std::size_t c = 0; c < s.n; ++c) g(a, b) += j(a, c) * j(b, c);
  std::vector<std::size_t> all(s.p);
  std::iota(all.begin(), all.end(), 0);
  Rational squares = 0;
  for (const auto& cols : detail::combinations(s.n, s.p)) {
    Rational m = leibniz(j, s.p, cols);
    squares += m * m;
  }
  return leibniz(g, s.p, all) == squares && eval_poly(cauchy_binet_D(s), x) == squares;
}

Outcome cauchy_binet() {
  Outcome o;
  std::mt19937_64 rng(102);
  int checked = 0;
  for (const auto& entry : std::filesystem::directory_iterator(kData)) {
    if (entry.path().extension() != ".json") continue;
    auto s = load_input(entry.path()).system;
    for (int t = 0; t < 3; ++t) o.require(cauchy_binet_at(s, random_point(rng, s.n)), entry.path().filename().string());
    ++checked;
  }
  for (int it = 0; it < kCauchyBinetRandom; ++it) {
    std::size_t n = 2 + it % 3, p = 1 + it % n;
    std::vector<MultiPoly> polys;
    for (std::size_t k = 0; k < p; ++k) polys.push_back(random_poly(rng, n, 2, 4));
    o.require(cauchy_binet_at(SystemInput::make(n, polys), random_point(rng, n)), "random case " + std::to_string(it));
    ++checked;
  }
  o.note += " (" + std::to_string(checked) + " systems)";
  return o;
}

Outcome circuit_differentiation() {
  Outcome o;
  std::mt19937_64 rng(103);
  constexpr std::size_t nvars = 3;
  for (int it = 0; it < kCircuitCases; ++it) {
    std::size_t size = 10 + static_cast<std::size_t>(it) % (kCircuitMaxL - 9);
    auto c = random_circuit(rng, nvars, size, 2);
    std::size_t L = metrics(c).size_L;
    o.require(L <= kCircuitMaxL, "L above cap");
    auto d = differentiate_circuit(c);
    auto f = expand_circuit(c, 64);
    auto x = random_point(rng, nvars);
    auto v = eval_circuit(d, x);
    for (std::size_t k = 0; k < f.size(); ++k)
      for (std::size_t j = 0; j < nvars; ++j)
        o.require(v[nvars * k + j] == eval_poly(partial_derivative(f[k], j), x), "gradient value, case " + std::to_string(it));
    auto arithmetic = [](const Circuit& cc) {
      return std::count_if(cc.nodes().begin(), cc.nodes().end(), [](const Node& nd) { return nd.is_arithmetic(); });
    };
    std::size_t added = static_cast<std::size_t>(arithmetic(d) - arithmetic(c));
    o.require(added <= c.outputs().size() * (5 * L + nvars), "gradient circuit too large, case " + std::to_string(it));
  }
  o.note += " (" + std::to_string(kCircuitCases) + " circuits)";
  return o;
}

Integer ipow(Integer b, std::size_t e) {
  Integer r = 1;
  while (e--) r *= b;
  return r;
}

Outcome degree_bounds() {
  Outcome o;
  for (const auto& [label, r] : g_runs) {
    // closed form recomputed here: d^p (p d - p)^(n - p)
    std::size_t n = r.representation.params.size(), p = r.hypothesis.radical_intermediate_ideals.size();
    Integer d = r.degrees.d;
    Integer closed = ipow(d, p) * ipow(Integer(static_cast<long>(p)) * d - Integer(static_cast<long>(p)), n - p);
    Integer dq = static_cast<long>(r.representation.degree());
    o.require(r.degree_bounds_ok, label + ": run flagged a bound violation");
    o.require(dq <= r.degrees.polar_bound && dq <= closed, label + ": deg q above bound");
    o.require(r.degrees.closed_form_bound == closed, label + ": closed-form bound mismatch");
  }
  o.note += " (" + std::to_string(g_runs.size()) + " runs)";
  return o;
}

Outcome emptiness() {
  Outcome o;
  auto r = solve_system(load("empty_circle.json"), config(CoordMode::random));
  auto j = ordered_json::parse(emit_json(r));
  o.require(j["empty"].get<bool>(), "empty flag not set");
  o.require(j["points"].empty(), "points reported");
  o.require(j["certificate"]["sturm_count"] == 0, "nonzero Sturm count");
  o.require(sturm_chain(r.representation.q).count_all() == 0, "q has real roots");
  return o;
}

Outcome determinism() {
  Outcome o;
  for (const char* name : {"circle.json", "sphere_cylinder.json", "torus.json"}) {
    auto s = load(name);
    JobConfig two = config(CoordMode::random);
    two.workers = 2;
    auto a = emit_json(solve_system(s, config(CoordMode::random)));
    auto b = emit_json(solve_system(s, config(CoordMode::random)));
    auto c = emit_json(solve_system(s, two));
    o.require(a == b, std::string(name) + ": repeated run differs");
    o.require(a == c, std::string(name) + ": worker count changes output");
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"circle, identity coordinates", circle_identity},
      {"sphere, random coordinates", sphere_random},
      {"two disjoint circles", two_circles},
      {"sphere meets cylinder", sphere_cylinder},
      {"torus", torus},
      {"exchange identity signs", exchange_suite},
      {"Cauchy-Binet identity", cauchy_binet},
      {"circuit differentiation", circuit_differentiation},
      {"degree bounds on successful runs", degree_bounds},
      {"emptiness certificate", emptiness},
      {"deterministic JSON", determinism},
  };
  int failures = 0, index = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note = std::string(": exception: ") + e.what();
    }
    failures += !o.pass;
    std::printf("%s  [%2d] %s%s\n", o.pass ? "PASS" : "FAIL", ++index, name, o.note.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
