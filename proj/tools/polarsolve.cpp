// Command-line front end: solve / check / degrees / charts.

#include <polarsolve/pipeline.hpp>
#include <polarsolve/report.hpp>

#include <CLI11.hpp>

#include <iostream>

using namespace polarsolve;

namespace {

struct Options {
  std::string input;
  std::string coords = "random";
  std::uint64_t seed = 1;
  std::size_t retry_limit = 5;
  std::string eps = "1/1000";
  std::string chart;
  std::size_t workers = 1;
  bool assert_compact = false;
  bool strict = false;
  bool timings = false;
  long degree_cap = 64;
  std::string format = "json";
};

JobConfig make_config(const Options& o, const SystemInput& s) {
  JobConfig cfg;
  cfg.input_path = o.input;
  cfg.coords = o.coords == "identity" ? CoordMode::identity : CoordMode::random;
  cfg.seed = o.seed;
  cfg.retry_limit = o.retry_limit;
  cfg.eps = parse_rational(o.eps);
  if (cfg.eps <= 0) throw std::invalid_argument("--eps must be positive");
  if (!o.chart.empty()) cfg.chart_filter = MinorSelection::parse(o.chart, s.n, s.p);
  cfg.workers = o.workers;
  cfg.assert_compact = o.assert_compact;
  cfg.strict = o.strict;
  cfg.degree_cap = o.degree_cap;
  cfg.json_timings = o.timings;
  cfg.output_format = o.format == "text" ? OutputFormat::text : OutputFormat::json;
  return cfg;
}

void warn_compactness(const Options& o) {
  if (!o.assert_compact)
    std::cerr << "warning: compactness of the real variety is not checked; pass --assert-compact to acknowledge it.\n"
                 "         Without it, an empty answer only means the polar system has no real point.\n";
}

int run_solve(const Options& o) {
  warn_compactness(o);
  LoadedInput in = load_input(o.input, o.degree_cap);
  JobConfig cfg = make_config(o, in.system);
  RunReport r = solve_system(in.system, cfg);
  r.circuit_metrics = in.circuit_metrics;
  if (cfg.output_format == OutputFormat::json) std::cout << emit_json(r, cfg.json_timings);
  else std::cout << emit_text(r);
  return 0;
}

int run_check(const Options& o) {
  LoadedInput in = load_input(o.input, o.degree_cap);
  HypothesisReport h = check_hypotheses(in.system, o.assert_compact);
  if (o.format == "json") {
    std::cout << to_json(h).dump(2) << "\n";
  } else {
    std::cout << "regular sequence: " << to_string(h.regular_sequence) << "\n";
    for (std::size_t k = 0; k < h.radical_intermediate_ideals.size(); ++k)
      std::cout << "radical (f1..f" << k + 1 << "): " << to_string(h.radical_intermediate_ideals[k]) << "\n";
    std::cout << "smooth on reals: " << to_string(h.smooth_on_reals) << "\n";
    std::cout << "generic position: " << h.generic_position << "\ncompactness: " << h.compactness << "\n";
    for (const auto& d : h.details) std::cout << "  - " << d << "\n";
  }
  return 0;
}

int run_degrees(const Options& o) {
  LoadedInput in = load_input(o.input, o.degree_cap);
  DegreeReport d = bezout_report(in.system);
  if (o.format == "json") {
    ordered_json j = to_json(d);
    if (in.circuit_metrics) j["circuit"] = to_json(*in.circuit_metrics);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "D = " << d.bezout_D.get_str() << "\nminor degrees:";
    for (long c : d.minor_degrees) std::cout << " " << c;
    std::cout << "\nD_top = " << d.polar_bound.get_str() << "\ndelta bound = " << d.delta_bound.get_str()
              << "\nd^p (pd-p)^(n-p) = " << d.closed_form_bound.get_str() << "\n";
  }
  return 0;
}

int run_charts(const Options& o) {
  LoadedInput in = load_input(o.input, o.degree_cap);
  const SystemInput& s = in.system;
  CoordinateChange c = o.coords == "identity" ? CoordinateChange::identity(s.n, s.p)
                                              : build_coordinate_change(s.n, s.p, o.seed);
  SystemInput g = transform_system(s, c);
  auto jac = jacobian(g);
  std::vector<MinorSelection> charts =
      o.chart.empty() ? enumerate_charts(s.n, s.p) : std::vector<MinorSelection>{MinorSelection::parse(o.chart, s.n, s.p)};
  ordered_json out = ordered_json::array();
  for (const auto& chart : charts) {
    PolarSystem ps = polar_system(g, jac, chart, s.n - s.p);
    if (o.format == "json") {
      ordered_json j;
      j["chart"] = chart.to_string();
      j["flag_compatible"] = ps.flag_compatible;
      std::vector<std::string> eqs;
      for (const auto& e : ps.equations) eqs.push_back(e.to_string());
      j["equations"] = eqs;
      j["g"] = ps.localization_g.to_string();
      out.push_back(j);
    } else {
      std::cout << "chart " << chart.to_string() << (ps.flag_compatible ? "" : "  (skipped by solve)") << "\n";
      for (const auto& e : ps.equations) std::cout << "  " << e.to_string() << " = 0\n";
      std::cout << "  g = " << ps.localization_g.to_string() << " != 0\n";
    }
  }
  if (o.format == "json") std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Real points on every connected component of a smooth compact complete intersection"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("input", o.input, "input JSON or .circ file")->required();
    sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--degree-cap", o.degree_cap, "maximum degree when expanding circuits");
  };
  auto add_coords = [&](CLI::App* sub) {
    sub->add_option("--coords", o.coords, "identity or random")->check(CLI::IsMember({"identity", "random"}));
    sub->add_option("--seed", o.seed, "seed of the coordinate-change stream");
    sub->add_option("--chart", o.chart, "restrict to one chart i1,...,ip:j,k (1-based)");
  };

  auto* solve = app.add_subcommand("solve", "compute representative real points");
  add_common(solve);
  add_coords(solve);
  solve->add_option("--retry-limit", o.retry_limit, "coordinate changes to try")->check(CLI::PositiveNumber);
  solve->add_option("--eps", o.eps, "target width a/b of isolating intervals and boxes");
  solve->add_option("--workers", o.workers, "threads for chart solving")->check(CLI::PositiveNumber);
  solve->add_flag("--assert-compact", o.assert_compact, "acknowledge that the real variety is compact");
  solve->add_flag("--strict", o.strict, "fail when a hypothesis check fails");
  solve->add_flag("--timings", o.timings, "include wall-clock timings in JSON output");

  auto* check = app.add_subcommand("check", "check the hypotheses only");
  add_common(check);
  check->add_flag("--assert-compact", o.assert_compact, "acknowledge that the real variety is compact");

  auto* degrees = app.add_subcommand("degrees", "Bezout-type degree bounds");
  add_common(degrees);

  auto* charts = app.add_subcommand("charts", "list the localized polar systems");
  add_common(charts);
  add_coords(charts);

  app.require_subcommand(1);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;  // --help exits 0, usage errors 1
  }

  try {
    if (*solve) return run_solve(o);
    if (*check) return run_check(o);
    if (*degrees) return run_degrees(o);
    if (*charts) return run_charts(o);
  } catch (const RetryLimitExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const auto& d : e.diagnostics()) std::cerr << "  " << d << "\n";
    return 3;
  } catch (const HypothesisFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
