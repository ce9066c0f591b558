#include "erisk/encode.hpp"
#include "erisk/exact.hpp"
#include "erisk/io.hpp"
#include "erisk/numeric.hpp"
#include "erisk/qualitative.hpp"
#include "erisk/reduction.hpp"
#include "erisk/sim.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

namespace {

using erisk::Rational;
using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "n", "n/d" or a plain decimal such as "0.001", converted exactly.
Rational parse_cli_rational(const std::string& text, const char* flag) {
  try {
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational::parse(text);
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const std::size_t places = text.size() - dot - 1;
    if (places == 0 || digits.empty() || digits == "-") throw std::invalid_argument("bad decimal");
    return Rational::parse(digits) / erisk::pow(Rational(10), places);
  } catch (const std::exception&) {
    throw UsageError(std::string(flag) + ": expected a rational like 1/1000 or 0.001, got '" + text + "'");
  }
}

std::string set_string(const erisk::Game& g, const erisk::StateSet& set) {
  std::string out = "{";
  bool first = true;
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (!set[s]) continue;
    out += (first ? "" : ", ") + g.state(s).id;
    first = false;
  }
  return out + "}";
}

json set_json(const erisk::Game& g, const erisk::StateSet& set) {
  json out = json::array();
  for (std::size_t s = 0; s < g.size(); ++s)
    if (set[s]) out.push_back(g.state(s).id);
  return out;
}

json strategy_json(const erisk::Game& g, const erisk::Strategy& st) {
  json out = json::object();
  for (std::size_t s = 0; s < g.size(); ++s)
    if (g.owner(s) == st.owner && s < st.choice.size()) out[g.state(s).id] = g.action(s, st.choice[s]).label;
  return out;
}

std::string strategy_line(const erisk::Game& g, const erisk::Strategy& st) {
  std::string out;
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (g.owner(s) != st.owner || g.action_count(s) < 2) continue;
    out += (out.empty() ? "" : ", ") + g.state(s).id + ": " + g.action(s, st.choice[s]).label;
  }
  return "{" + out + "}";
}

int decimal_digits(const Rational& tolerance) {
  int digits = 3;
  Rational step(1, 1000);
  while (step > tolerance && digits < 60) {
    step /= Rational(10);
    ++digits;
  }
  return digits + 2;
}

std::string decimal_interval(const erisk::Interval& i, int digits) {
  return "[" + erisk::to_decimal(i.lo, digits, erisk::Rounding::kDown) + ", " +
         erisk::to_decimal(i.hi, digits, erisk::Rounding::kUp) + "]";
}

json interval_json(const erisk::Interval& i, int digits) {
  return {{"lo", i.lo.str()},
          {"hi", i.hi.str()},
          {"lo_decimal", erisk::to_decimal(i.lo, digits, erisk::Rounding::kDown)},
          {"hi_decimal", erisk::to_decimal(i.hi, digits, erisk::Rounding::kUp)}};
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

struct Common {
  std::string file;
  bool json = false;
  unsigned threads = 0;
  erisk::SolverOptions solver;
};

unsigned resolve_threads(unsigned flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("ERISK_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("ERISK_THREADS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int run_analyze(const Common& c) {
  const erisk::ParsedInstance in = erisk::load_instance(c.file);
  const erisk::BoundarySets b = erisk::compute_boundary_sets(in.game);
  const bool stopping = erisk::check_stopping(in.game, b);
  if (c.json) {
    std::cout << json{{"S0", set_json(in.game, b.s0)}, {"Sinf", set_json(in.game, b.sinf)}, {"stopping", stopping}}.dump(2)
              << "\n";
  } else {
    std::cout << "S0=" << set_string(in.game, b.s0) << "\n"
              << "Sinf=" << set_string(in.game, b.sinf) << "\n"
              << "stopping=" << (stopping ? "true" : "false") << "\n";
  }
  return 0;
}

int run_reduce(const Common& c, const std::string& eps, const std::string& out) {
  erisk::ParsedInstance in = erisk::load_instance(c.file);
  if (!eps.empty()) in.params.epsilon = parse_cli_rational(eps, "--epsilon");
  if (!in.params.epsilon) throw UsageError("reduce needs --epsilon or params.epsilon");
  in.params.validate();
  const erisk::BoundarySets b = erisk::compute_boundary_sets(in.game);
  const erisk::PrecisionPlan plan = erisk::compute_precision_bits(in.game, in.params);
  const erisk::ReachGame rg = erisk::build_rounded_game(in.game, in.params, plan, b);
  json doc = erisk::to_json(rg.rounded, in.params);
  json factors = json::object();
  for (std::size_t s = 0; s < in.game.size(); ++s) factors[in.game.state(s).id] = rg.factor[s].str();
  erisk::StateSet zero = b.sinf;
  zero.push_back(true);
  erisk::StateSet target = b.s0;
  target.push_back(false);
  doc["reduction"] = {{"bits", rg.plan.bits},
                      {"z", rg.plan.z.str()},
                      {"sink", rg.rounded.state(rg.sink).id},
                      {"factors", factors},
                      {"target", set_json(rg.rounded, target)},
                      {"zero", set_json(rg.rounded, zero)}};
  write_text(out, doc.dump(2) + "\n");
  return 0;
}

int run_approx(const Common& c, const std::string& eps, const std::string& strategy_path, bool dump_values) {
  erisk::ParsedInstance in = erisk::load_instance(c.file);
  if (!eps.empty()) in.params.epsilon = parse_cli_rational(eps, "--epsilon");
  if (!in.params.epsilon) throw UsageError("approx needs --epsilon or params.epsilon");
  in.params.validate();
  const erisk::ApproxResult r = erisk::approximate_erisk(in.game, in.params, c.solver);
  const int digits = decimal_digits(*in.params.epsilon);
  const erisk::Game& g = in.game;
  if (!strategy_path.empty()) write_text(strategy_path, erisk::strategy_to_json(g, r.solution.max, r.solution.min).dump(2) + "\n");

  if (c.json) {
    json doc = {{"epsilon", in.params.epsilon->str()},
                {"infinite", !r.enclosure.has_value()},
                {"utility", r.utility.str()},
                {"bits", r.plan.bits},
                {"strategy", {{"max", strategy_json(g, r.solution.max)}, {"min", strategy_json(g, r.solution.min)}}}};
    if (r.enclosure) {
      doc["erisk"] = interval_json(*r.enclosure, digits);
      doc["estimate"] = r.estimate.str();
      doc["estimate_decimal"] = erisk::to_decimal(r.estimate, digits, erisk::Rounding::kDown);
    }
    if (dump_values) {
      json values = json::object();
      for (std::size_t s = 0; s < g.size() && s < r.solution.values.size(); ++s) values[g.state(s).id] = r.solution.values[s].str();
      doc["values"] = values;
    }
    std::cout << doc.dump(2) << "\n";
    return 0;
  }
  if (r.enclosure) {
    std::cout << "ERisk* in " << decimal_interval(*r.enclosure, digits) << "\n"
              << "estimate " << erisk::to_decimal(r.estimate, digits, erisk::Rounding::kDown) << " (+/- "
              << in.params.epsilon->str() << ")\n";
  } else {
    std::cout << "ERisk* = inf\n";
  }
  std::cout << "utility " << r.utility.str() << "\n"
            << "bits " << r.plan.bits << "\n"
            << "max " << strategy_line(g, r.solution.max) << "\n"
            << "min " << strategy_line(g, r.solution.min) << "\n";
  if (dump_values)
    for (std::size_t s = 0; s < g.size() && s < r.solution.values.size(); ++s)
      std::cout << "v(" << g.state(s).id << ") = " << r.solution.values[s].str() << "\n";
  return 0;
}

int run_exact(const Common& c) {
  const erisk::ParsedInstance in = erisk::load_instance(c.file);
  const erisk::Game& g = in.game;
  const erisk::ExactResult r = erisk::optimize_exact(g, in.params, erisk::compute_boundary_sets(g), c.solver);
  const erisk::AlgebraicNumber& u = r.at(g.initial());
  const Rational tol(1, 1000000000);
  const erisk::Interval ui = u.enclose(64);
  const erisk::ERiskValue e = erisk::exact_erisk(u, in.params, tol);
  const std::string poly = r.field->minimal_polynomial();
  if (c.json) {
    json coords = json::array();
    for (std::uint64_t i = 0; i < u.degree(); ++i) coords.push_back(u.coordinate(i).str());
    json doc = {{"minimal_polynomial", poly},
                {"coords", coords},
                {"utility", interval_json(ui, 12)},
                {"infinite", !e.has_value()},
                {"strategy", {{"max", strategy_json(g, r.max)}, {"min", strategy_json(g, r.min)}}}};
    if (e) doc["erisk"] = interval_json(*e, 12);
    std::cout << doc.dump(2) << "\n";
    return 0;
  }
  std::cout << "field Q(beta), beta root of " << poly << "\n"
            << "U*(" << g.state(g.initial()).id << ") = " << u.str() << " over (1, beta, ..., beta^"
            << (u.degree() - 1) << ")\n"
            << "U* in " << decimal_interval(ui, 12) << "\n";
  if (e) {
    std::cout << "ERisk* in " << decimal_interval(*e, 12) << "\n";
  } else {
    std::cout << "ERisk* = inf\n";
  }
  std::cout << "max " << strategy_line(g, r.max) << "\n"
            << "min " << strategy_line(g, r.min) << "\n";
  return 0;
}

int run_threshold(const Common& c, const std::string& t) {
  erisk::ParsedInstance in = erisk::load_instance(c.file);
  if (!t.empty()) in.params.threshold = parse_cli_rational(t, "--t");
  if (!in.params.threshold) throw UsageError("threshold needs --t or params.threshold");
  const erisk::Game& g = in.game;
  const erisk::ThresholdResult r = erisk::decide_threshold(g, in.params, c.solver);
  if (c.json) {
    std::cout << json{{"threshold", in.params.threshold->str()},
                      {"answer", r.holds ? "YES" : "NO"},
                      {"strategy", {{"max", strategy_json(g, r.solution.max)}, {"min", strategy_json(g, r.solution.min)}}}}
                     .dump(2)
              << "\n";
    return 0;
  }
  std::cout << (r.holds ? "YES" : "NO") << "\n"
            << "max " << strategy_line(g, r.solution.max) << "\n"
            << "min " << strategy_line(g, r.solution.min) << "\n";
  return 0;
}

int run_emit(const Common& c, const std::string& t, const std::string& out) {
  erisk::ParsedInstance in = erisk::load_instance(c.file);
  if (!t.empty()) in.params.threshold = parse_cli_rational(t, "--t");
  if (!in.params.threshold) throw UsageError("emit-smt needs --t or params.threshold");
  write_text(out, erisk::emit_inequalities(in.game, in.params, erisk::compute_boundary_sets(in.game)));
  return 0;
}

int run_simulate(const Common& c, std::uint64_t samples, std::uint64_t seed, const std::string& strategy_path,
                 double floor) {
  const erisk::ParsedInstance in = erisk::load_instance(c.file);
  const erisk::Game& g = in.game;
  erisk::Strategy max;
  erisk::Strategy min;
  json profile = json::object();
  if (!strategy_path.empty()) {
    std::ifstream f(strategy_path);
    if (!f) throw std::runtime_error("cannot read '" + strategy_path + "'");
    try {
      f >> profile;
    } catch (const json::parse_error& e) {
      throw erisk::ValidationError(strategy_path + ": " + e.what());
    }
  }
  erisk::strategy_from_json(g, profile, max, min);
  erisk::SimOptions opts;
  opts.samples = samples;
  opts.seed = seed;
  opts.floor = floor;
  opts.threads = resolve_threads(c.threads);
  const erisk::SimEstimate est = erisk::estimate_utility(g, in.params, max, min, opts);
  if (c.json) {
    std::cout << json{{"samples", est.samples},
                      {"seed", seed},
                      {"utility", est.mean},
                      {"ci", {est.ci_lo, est.ci_hi}},
                      {"cut", est.cut},
                      {"cut_bracket", est.cut_bracket}}
                     .dump(2)
              << "\n";
    return 0;
  }
  std::cout.precision(10);
  std::cout << "utility " << est.mean << "\n"
            << "99% interval [" << est.ci_lo << ", " << est.ci_hi << "]\n"
            << "samples " << est.samples << " (cut " << est.cut << ", bracket " << est.cut_bracket << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropic risk of total reward in stochastic games"};
  app.require_subcommand(1);
  Common c;
  app.add_flag("--json", c.json, "Print one JSON document");
  app.add_option("--threads", c.threads, "Worker threads (default: ERISK_THREADS or all cores)");
  app.add_option("--max-iterations", c.solver.max_iterations, "Policy iteration rounds before giving up")
      ->check(CLI::PositiveNumber);
  app.add_option("--enumeration-limit", c.solver.enumeration_limit,
                 "Largest number of Maximizer strategies the exhaustive fallback may visit");

  auto add = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("game", c.file, "Game description (JSON)")->required();
    sub->fallthrough();
    return sub;
  };

  CLI::App* analyze = add("analyze", "Boundary sets S0, Sinf and the stopping check");
  std::string eps;
  std::string out;
  CLI::App* reduce = add("reduce", "Dump the rounded reachability game");
  reduce->add_option("--epsilon", eps, "Absolute precision");
  reduce->add_option("--out,-o", out, "Output path (default: stdout)");

  CLI::App* approx = add("approx", "Approximate ERisk* to absolute error epsilon");
  std::string strategy_out;
  bool dump_values = false;
  approx->add_option("--epsilon", eps, "Absolute precision");
  approx->add_option("--emit-strategy", strategy_out, "Write the strategy profile JSON here");
  approx->add_flag("--dump-values", dump_values, "Print per-state utilities of the rounded game");

  CLI::App* exact = add("exact", "Exact optimal utility in Q(b^(1/q))");

  std::string t;
  CLI::App* threshold = add("threshold", "Decide ERisk* >= t exactly");
  threshold->add_option("--t", t, "Threshold");

  CLI::App* emit = add("emit-smt", "Write the QF_NRA inequality system for ERisk* >= t");
  emit->add_option("--t", t, "Threshold");
  emit->add_option("--out,-o", out, "Output path (default: stdout)");

  CLI::App* simulate = add("simulate", "Monte Carlo utility of a fixed strategy profile");
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  std::string strategy_in;
  double floor = 0x1p-64;
  simulate->add_option("--samples", samples, "Number of trajectories")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed, "Random seed");
  simulate->add_option("--strategy", strategy_in, "Profile JSON {state: action}; missing states use their first action");
  simulate->add_option("--floor", floor, "Weight below which a trajectory is cut");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*analyze) return run_analyze(c);
    if (*reduce) return run_reduce(c, eps, out);
    if (*approx) return run_approx(c, eps, strategy_out, dump_values);
    if (*exact) return run_exact(c);
    if (*threshold) return run_threshold(c, t);
    if (*emit) return run_emit(c, t, out);
    if (*simulate) return run_simulate(c, samples, seed, strategy_in, floor);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const erisk::ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const erisk::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
