#ifndef POLARSOLVE_PIPELINE_HPP
#define POLARSOLVE_PIPELINE_HPP

#include <polarsolve/circuit.hpp>
#include <polarsolve/groebner.hpp>
#include <polarsolve/poly_parser.hpp>
#include <polarsolve/polar.hpp>
#include <polarsolve/realroots.hpp>
#include <polarsolve/zerodim.hpp>

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace polarsolve {

enum class CheckStatus { verified, failed, unchecked };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::verified: return "verified";
    case CheckStatus::failed: return "failed";
    case CheckStatus::unchecked: return "unchecked";
  }
  return "unchecked";
}

struct HypothesisReport {
  CheckStatus regular_sequence = CheckStatus::unchecked;
  std::vector<CheckStatus> radical_intermediate_ideals;  // k = 1..p
  CheckStatus smooth_on_reals = CheckStatus::unchecked;
  std::string generic_position = "deferred-to-runtime";
  std::string compactness = "not-asserted";
  std::vector<std::string> details;

  bool any_failed() const {
    if (regular_sequence == CheckStatus::failed || smooth_on_reals == CheckStatus::failed) return true;
    for (auto s : radical_intermediate_ideals)
      if (s == CheckStatus::failed) return true;
    return false;
  }
  bool all_verified() const {
    if (regular_sequence != CheckStatus::verified || smooth_on_reals != CheckStatus::verified) return false;
    for (auto s : radical_intermediate_ideals)
      if (s != CheckStatus::verified) return false;
    return true;
  }
};

namespace detail {

/// Real points of a zero-dimensional ideal in `point_vars` coordinates, via
/// the standard separating forms and then a few pseudorandom ones.
inline std::optional<RealSolutionSet> real_solutions_of(const ZeroDimIdeal& ideal) {
  ZeroDimSolver solver(ideal);
  auto candidates = separating_candidates(ideal.point_vars);
  ParameterStream extra(0x5eed);
  for (int t = 0; t < 8; ++t) {
    std::vector<Rational> f(ideal.point_vars);
    for (auto& v : f) v = extra.next();
    candidates.push_back(f);
  }
  for (const auto& sep : candidates) {
    try {
      auto r = solver.represent(sep);
      UnivariateRepresentation rep{std::move(r.q), std::move(r.params), sep};
      return real_points(rep, Rational(1));
    } catch (const SeparationFailure&) {
    }
  }
  return std::nullopt;
}

}  // namespace detail

namespace detail {

/// True when (polys, all k-minors of their Jacobian) is the unit ideal, i.e.
/// the Jacobian has full rank at every complex point of V(polys).
inline bool jacobian_full_rank(const std::vector<MultiPoly>& polys, std::size_t n) {
  SystemInput s = SystemInput::make(n, polys);
  std::vector<MultiPoly> gens = polys;
  for (auto& cols : combinations(n, polys.size())) {
    MultiPoly m = minor(s, cols);
    if (!m.is_zero()) gens.push_back(std::move(m));
  }
  return GroebnerBasis(gens, n).is_unit();
}

}  // namespace detail

/// Best-effort checks of the solver's hypotheses. Never throws on
/// mathematical outcomes; every check reports verified, failed or unchecked.
inline HypothesisReport check_hypotheses(const SystemInput& s, bool compact_asserted = false) {
  HypothesisReport h;
  h.compactness = compact_asserted ? "asserted-by-user" : "not-asserted";
  const std::size_t n = s.n;

  h.regular_sequence = CheckStatus::verified;
  h.radical_intermediate_ideals.assign(s.p, CheckStatus::unchecked);
  for (std::size_t k = 1; k <= s.p; ++k) {
    std::vector<MultiPoly> prefix(s.polys.begin(), s.polys.begin() + static_cast<std::ptrdiff_t>(k));
    GroebnerBasis g(prefix, n);
    long dim = ideal_dimension(g);
    if (g.is_unit()) {
      h.regular_sequence = CheckStatus::failed;
      h.details.push_back("(f1..f" + std::to_string(k) + ") is the unit ideal: the variety is empty");
      break;
    }
    if (dim != static_cast<long>(n - k)) {
      h.regular_sequence = CheckStatus::failed;
      h.details.push_back("dim V(f1..f" + std::to_string(k) + ") = " + std::to_string(dim) + ", expected " +
                          std::to_string(n - k));
      break;
    }
    if (k == 1) {
      bool sqf = is_squarefree(s.polys[0]);
      h.radical_intermediate_ideals[0] = sqf ? CheckStatus::verified : CheckStatus::failed;
      if (!sqf) h.details.push_back("f1 is not squarefree, so (f1) is not radical");
    } else if (detail::jacobian_full_rank(prefix, n)) {
      // a complete intersection that is smooth everywhere is reduced
      h.radical_intermediate_ideals[k - 1] = CheckStatus::verified;
    } else if (dim == 0) {
      ZeroDimSolver zs({prefix, n, n});
      bool radical = zs.dimension_with_multiplicity() == zs.solution_count();
      h.radical_intermediate_ideals[k - 1] = radical ? CheckStatus::verified : CheckStatus::failed;
      if (!radical) h.details.push_back("(f1..f" + std::to_string(k) + ") has multiple points");
    }
  }

  // Real points with det(J J^T) = 0 are exactly the real points where every
  // p-minor vanishes (a sum of squares), so either ideal decides (iv); the
  // minors ideal is often zero-dimensional when the Gram form is not.
  try {
    std::vector<MultiPoly> minors_ideal = s.polys;
    for (auto& cols : detail::combinations(n, s.p)) {
      MultiPoly m = minor(s, cols);
      if (!m.is_zero()) minors_ideal.push_back(std::move(m));
    }
    std::vector<MultiPoly> gram_ideal = s.polys;
    gram_ideal.push_back(cauchy_binet_D(s));
    for (const auto* gens : {&minors_ideal, &gram_ideal}) {
      GroebnerBasis g(*gens, n);
      const char* what = gens == &minors_ideal ? "{f, p-minors}" : "{f, det(J J^T)}";
      if (g.is_unit()) {
        h.smooth_on_reals = CheckStatus::verified;
        h.details.push_back(std::string(what) + " is the unit ideal: V has no singular point");
        break;
      }
      if (ideal_dimension(g) != 0) {
        h.details.push_back(std::string(what) + " is not zero-dimensional");
        continue;
      }
      auto sols = detail::real_solutions_of({*gens, n, n});
      if (!sols) {
        h.details.push_back(std::string(what) + " is finite but no separating form was found");
      } else if (sols->points.empty()) {
        h.smooth_on_reals = CheckStatus::verified;
        h.details.push_back(std::string(what) + " has only non-real points");
      } else {
        h.smooth_on_reals = CheckStatus::failed;
        h.details.push_back(std::to_string(sols->points.size()) + " real singular point(s) on V");
      }
      break;
    }
    if (h.smooth_on_reals == CheckStatus::unchecked) h.details.push_back("smoothness on the reals unchecked");
  } catch (const std::exception& e) {
    h.smooth_on_reals = CheckStatus::unchecked;
    h.details.push_back(std::string("smoothness check skipped: ") + e.what());
  }
  return h;
}

enum class CoordMode { identity, random };
enum class OutputFormat { json, text };

struct JobConfig {
  std::string input_path;
  CoordMode coords = CoordMode::random;
  std::uint64_t seed = 1;
  std::size_t retry_limit = 5;
  Rational eps = Rational(1, 1000);
  std::optional<MinorSelection> chart_filter;
  OutputFormat output_format = OutputFormat::json;
  std::size_t workers = 1;
  bool assert_compact = false;
  bool strict = false;
  long degree_cap = 64;
  bool json_timings = false;
};

struct LoadedInput {
  SystemInput system;
  std::optional<CircuitMetrics> circuit_metrics;
  std::string source;  // "polynomials" or "circuit"
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline LoadedInput load_circuit_input(const Circuit& c, long degree_cap) {
  LoadedInput li;
  li.source = "circuit";
  li.circuit_metrics = metrics(c);
  li.system = SystemInput::make(c.nvars(), expand_circuit(c, degree_cap));
  return li;
}

/// `{ "n", "p", "polynomials" }` or `{ "circuit": path }` (path relative to the
/// JSON file); a bare `.circ` file is read as a circuit directly.
inline LoadedInput load_input(const std::filesystem::path& path, long degree_cap = 64) {
  if (path.extension() == ".circ") return load_circuit_input(parse_circuit(read_file(path)), degree_cap);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed input JSON: ") + e.what());
  }
  if (j.contains("circuit")) {
    auto cpath = std::filesystem::path(j.at("circuit").get<std::string>());
    if (cpath.is_relative()) cpath = path.parent_path() / cpath;
    long cap = j.value("degree_cap", degree_cap);
    std::optional<std::size_t> nv;
    if (j.contains("n")) nv = j.at("n").get<std::size_t>();
    return load_circuit_input(parse_circuit(read_file(cpath), nv), cap);
  }
  if (!j.contains("n") || !j.contains("polynomials")) throw InputError("input needs \"n\" and \"polynomials\"");
  auto n = j.at("n").get<std::size_t>();
  std::vector<MultiPoly> polys;
  std::size_t idx = 0;
  for (const auto& t : j.at("polynomials")) {
    try {
      polys.push_back(parse_polynomial(t.get<std::string>(), n));
    } catch (const ParseError& e) {
      throw InputError("polynomial " + std::to_string(idx + 1) + ": " + e.what());
    }
    ++idx;
  }
  if (j.contains("p") && j.at("p").get<std::size_t>() != polys.size())
    throw InputError("\"p\" does not match the number of polynomials");
  LoadedInput li;
  li.source = "polynomials";
  li.system = SystemInput::make(n, std::move(polys), j.value("d", 0L));
  return li;
}

enum class ChartStatus { skipped, empty, solved };

inline const char* to_string(ChartStatus s) {
  switch (s) {
    case ChartStatus::skipped: return "skipped";
    case ChartStatus::empty: return "empty";
    case ChartStatus::solved: return "solved";
  }
  return "?";
}

struct ChartOutcome {
  MinorSelection chart;
  ChartStatus status = ChartStatus::skipped;
  std::size_t solutions = 0;
};

struct RunReport {
  HypothesisReport hypothesis;
  UnivariateRepresentation representation;  // original coordinates
  RealSolutionSet solutions;
  CoordinateChange coordinates;
  std::vector<ChartOutcome> charts;
  std::size_t charts_used = 0;
  std::size_t retries = 0;
  std::uint64_t seed = 0;
  DegreeReport degrees;
  bool degree_bounds_ok = true;
  bool certificate_ok = false;
  std::optional<CircuitMetrics> circuit_metrics;
  std::vector<std::string> diagnostics;
  std::vector<std::pair<std::string, double>> timings;  // seconds per stage

  bool empty() const { return solutions.empty_certificate; }

  std::string conclusion() const {
    if (!empty()) return "representative points found";
    if (hypothesis.all_verified() && hypothesis.compactness == "asserted-by-user") return "S0 is empty";
    return "q has no real root; S0 is empty provided the unchecked hypotheses (incl. compactness) hold";
  }
};

class RetryLimitExhausted : public std::runtime_error {
 public:
  RetryLimitExhausted(const std::string& what, std::vector<std::string> diagnostics)
      : std::runtime_error(what), diagnostics_(std::move(diagnostics)) {}
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

class HypothesisFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

class GenericityFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class F>
void parallel_for(std::size_t count, std::size_t workers, F&& body) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          body(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

struct Attempt {
  UnivariateRepresentation rep_y;  // transformed coordinates
  std::vector<ChartOutcome> charts;
  std::size_t used = 0;
  SystemInput transformed;
};

inline Attempt run_attempt(const SystemInput& s, const CoordinateChange& c, const JobConfig& cfg) {
  Attempt at;
  at.transformed = transform_system(s, c);
  const SystemInput& g = at.transformed;
  auto jac = jacobian(g);
  std::vector<MinorSelection> charts =
      cfg.chart_filter ? std::vector<MinorSelection>{*cfg.chart_filter} : enumerate_charts(s.n, s.p);
  const std::size_t top = s.n - s.p;

  std::vector<std::optional<ZeroDimSolver>> solvers(charts.size());
  std::vector<PolarSystem> systems(charts.size());
  at.charts.resize(charts.size());
  parallel_for(charts.size(), cfg.workers, [&](std::size_t k) {
    at.charts[k].chart = charts[k];
    systems[k] = polar_system(g, jac, charts[k], top);
    if (!systems[k].flag_compatible) return;
    try {
      solvers[k].emplace(localize(systems[k], s.n, s.p));
    } catch (const NotZeroDimensional& e) {
      throw GenericityFailure("chart " + charts[k].to_string() + ": " + e.what());
    }
    at.charts[k].status = solvers[k]->is_empty() ? ChartStatus::empty : ChartStatus::solved;
    at.charts[k].solutions = solvers[k]->solution_count();
  });

  std::vector<std::size_t> live;
  for (std::size_t k = 0; k < charts.size(); ++k)
    if (at.charts[k].status == ChartStatus::solved) live.push_back(k);
  at.used = live.size();

  auto candidates = separating_candidates(s.n);
  if (live.empty()) {
    at.rep_y.q = UniPoly::constant(1);
    at.rep_y.params.assign(s.n, UniPoly{});
    at.rep_y.separating_form = candidates.front();
    return at;
  }
  std::string last_error;
  for (const auto& sep : candidates) {
    try {
      std::vector<UnivariateRepresentation> reps(live.size());
      parallel_for(live.size(), cfg.workers, [&](std::size_t t) {
        auto r = solvers[live[t]]->represent(sep);
        reps[t] = {std::move(r.q), std::move(r.params), sep};
      });
      for (std::size_t t = 0; t < live.size(); ++t)
        if (!satisfies_membership(reps[t], systems[live[t]].equations))
          throw std::logic_error("chart " + charts[live[t]].to_string() + " violates its membership certificate");
      at.rep_y = combine_charts(reps);
      return at;
    } catch (const SeparationFailure& e) {
      last_error = e.what();
    } catch (const InconsistentCharts& e) {
      last_error = e.what();
    }
  }
  throw GenericityFailure("no separating form among X_n, X_i + X_n: " + last_error);
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

/// X = A Y applied to the parametrization; the separating form is rewritten
/// in the original variables as l^T A^{-1}.
inline UnivariateRepresentation back_map(const UnivariateRepresentation& rep_y, const CoordinateChange& c) {
  UnivariateRepresentation out;
  out.q = rep_y.q;
  const std::size_t n = c.n;
  out.params.assign(n, UniPoly{});
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l)
      if (c.matrix_A(k, l) != 0) out.params[k] += rep_y.params[l] * c.matrix_A(k, l);
  RatMatrix inv = inverse(c.matrix_A);
  out.separating_form = inv.transpose().apply(rep_y.separating_form);
  return out;
}

/// Full chart loop, combination, verification and real-root extraction.
inline RunReport solve_system(const SystemInput& s, const JobConfig& cfg) {
  using clock = std::chrono::steady_clock;
  if (cfg.retry_limit < 1) throw std::invalid_argument("retry limit must be at least 1");
  if (cfg.eps <= 0) throw std::invalid_argument("eps must be positive");
  RunReport report;
  report.seed = cfg.seed;

  auto t0 = clock::now();
  report.hypothesis = check_hypotheses(s, cfg.assert_compact);
  report.timings.emplace_back("hypotheses", detail::seconds_since(t0));
  if (cfg.strict && report.hypothesis.any_failed())
    throw HypothesisFailure("a hypothesis check failed (strict mode)");

  std::vector<std::string> diagnostics;
  for (std::size_t attempt = 0; attempt < cfg.retry_limit; ++attempt) {
    CoordinateChange c = (cfg.coords == CoordMode::identity && attempt == 0)
                             ? CoordinateChange::identity(s.n, s.p)
                             : build_coordinate_change(s.n, s.p, cfg.seed + attempt);
    auto t1 = clock::now();
    try {
      detail::Attempt at = detail::run_attempt(s, c, cfg);
      report.timings.emplace_back("charts", detail::seconds_since(t1));
      report.coordinates = c;
      report.charts = std::move(at.charts);
      report.charts_used = at.used;
      report.retries = attempt;
      report.diagnostics = diagnostics;
      report.representation = back_map(at.rep_y, c);
      if (!satisfies_membership(at.rep_y, at.transformed.polys) ||
          !satisfies_membership(report.representation, s.polys))
        throw std::logic_error("membership certificate failed after combination");
      report.certificate_ok = true;
      report.degrees = bezout_report(at.transformed);
      Integer dq(static_cast<long>(report.representation.degree()));
      report.degree_bounds_ok = dq <= report.degrees.polar_bound && dq <= report.degrees.closed_form_bound;
      auto t2 = clock::now();
      report.solutions = real_points(report.representation, cfg.eps);
      report.timings.emplace_back("real-roots", detail::seconds_since(t2));
      report.timings.emplace_back("total", detail::seconds_since(t0));
      return report;
    } catch (const detail::GenericityFailure& e) {
      diagnostics.push_back("attempt " + std::to_string(attempt) + ": " + e.what());
    }
  }
  throw RetryLimitExhausted("retry limit exhausted after " + std::to_string(cfg.retry_limit) + " attempt(s)",
                            diagnostics);
}

inline RunReport solve(const JobConfig& cfg) {
  LoadedInput in = load_input(cfg.input_path, cfg.degree_cap);
  RunReport r = solve_system(in.system, cfg);
  r.circuit_metrics = in.circuit_metrics;
  return r;
}

}  // namespace polarsolve

#endif  // POLARSOLVE_PIPELINE_HPP
