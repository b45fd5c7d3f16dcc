#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "faircut/approximator.hpp"
#include "faircut/dimacs.hpp"
#include "faircut/driver.hpp"
#include "faircut/errors.hpp"
#include "faircut/generators.hpp"
#include "faircut/oracles.hpp"
#include "faircut/random.hpp"
#include "faircut/result_document.hpp"

namespace faircut::cli {
namespace {

// FAIRCUT_LOG = error | info | debug; logs go to the error stream.
std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_st>(err);
  auto log = std::make_shared<spdlog::logger>("faircut", sink);
  log->set_pattern("[%l] %v");
  log->set_level(spdlog::level::err);
  if (const char* level = std::getenv("FAIRCUT_LOG")) {
    const std::string name(level);
    if (name == "info") log->set_level(spdlog::level::info);
    if (name == "debug") log->set_level(spdlog::level::debug);
  }
  return log;
}

struct SolveArgs {
  std::string input;
  double epsilon = 0.05;
  std::string approximator = "multitree:8";
  std::uint64_t seed = 0;
  std::optional<int> max_iters;
  std::optional<std::int64_t> budget;
  std::string trace;
  std::string solver_trace;
  bool verify = false;
  int alpha_trials = 64;
};

struct VerifyArgs {
  std::string input;
  std::string cut;
  double alpha = 1.0;
};

struct BenchArgs {
  std::string family;
  int n = 0;
  int trials = 1;
  std::uint64_t seed = 0;
  double epsilon = 0.05;
  std::string approximator = "multitree:8";
  std::int64_t max_capacity = 100;
};

struct MeasureArgs {
  std::string input;
  std::string approximator = "multitree:8";
  std::uint64_t seed = 0;
  int trials = 64;
};

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

const auto kEpsilonRange = CLI::Validator(
    [](std::string& text) -> std::string {
      double value = 0.0;
      try {
        value = std::stod(text);
      } catch (const std::exception&) {
        return "epsilon must be a number";
      }
      if (!(value > 0.0 && value < 0.25)) return "epsilon must lie in (0, 0.25)";
      return {};
    },
    "in (0, 0.25)", "epsilon range");

int solve(const SolveArgs& args, std::ostream& out, std::ostream& err, spdlog::logger& log) {
  DimacsInstance inst;
  try {
    inst = parse_dimacs_file(args.input);
  } catch (const std::exception& e) {
    err << "faircut: " << args.input << ": " << e.what() << '\n';
    return kUsage;
  }
  const CapacitatedGraph g = inst.graph();
  log.info("instance: n={} m={} s={} t={}", g.vertex_count(), g.edge_count(), inst.source + 1,
           inst.sink + 1);

  std::ofstream solver_trace;
  if (!args.solver_trace.empty()) {
    solver_trace.open(args.solver_trace);
    if (!solver_trace) {
      err << "faircut: cannot write " << args.solver_trace << '\n';
      return kUsage;
    }
    solver_trace << "call,iter,violation,best_sweep_cut\n";
  }

  FairCutOptions options;
  options.epsilon = args.epsilon;
  options.approximator = args.approximator;
  options.seed = args.seed;
  options.max_iterations = args.max_iters;
  options.budget = args.budget;
  options.certify = args.verify;
  options.alpha_trials = args.alpha_trials;
  options.strict_contraction = false;
  int call = 0;
  if (solver_trace.is_open()) {
    options.observer = [&](const SolverProgress& p) {
      if (p.iteration == 1) ++call;
      solver_trace << call << ',' << p.iteration << ',' << p.violation << ',' << p.best_sweep_cut << '\n';
    };
  }

  const auto start = std::chrono::steady_clock::now();
  std::optional<FairCutResult> result;
  try {
    require_connected(g);
    const CutMatrix r = build_approximator(g, args.approximator, args.seed, args.alpha_trials);
    log.info("approximator {}: {} rows, alpha {}", r.descriptor(), r.row_count(), *r.alpha());
    result.emplace(fair_cut(g, inst.source, inst.sink, r, options));
  } catch (const SolverExhausted& e) {
    err << "faircut: " << e.what() << '\n';
    for (const TraceRow& row : e.trace()) {
      err << "  round " << row.index << " potential " << row.potential << " branch "
          << branch_name(row.branch) << " solver iterations " << row.solver_iterations << '\n';
    }
    return kExhausted;
  } catch (const std::invalid_argument& e) {
    err << "faircut: " << e.what() << '\n';
    return kUsage;
  } catch (const std::runtime_error& e) {
    err << "faircut: " << e.what() << '\n';
    return kUsage;
  }
  const double ms = elapsed_ms(start);

  for (const TraceRow& row : result->trace) {
    log.debug("round {} potential {} {} gap {} -> {}", row.index, row.potential, branch_name(row.branch),
              row.primal_gap, row.next_potential);
    if (!row.contraction_ok) log.error("round {} failed to contract the potential by 0.75", row.index);
  }
  if (!args.trace.empty()) {
    std::ofstream trace(args.trace);
    if (!trace) {
      err << "faircut: cannot write " << args.trace << '\n';
      return kUsage;
    }
    trace << "iter,potential,branch,primal_gap\n";
    for (const TraceRow& row : result->trace) {
      trace << row.index << ',' << row.potential << ',' << branch_name(row.branch) << ','
            << row.primal_gap << '\n';
    }
  }
  out << make_result_document(g, inst.source, inst.sink, options, *result, ms).to_json();
  return kOk;
}

// Accepts [ids...], {"side": [ids...]} or a solve document's {"cut": {"side": [...]}}.
std::vector<std::int64_t> read_cut_ids(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  const auto doc = nlohmann::json::parse(in);
  const nlohmann::json* ids = &doc;
  if (doc.is_object() && doc.contains("cut")) ids = &doc.at("cut");
  if (ids->is_object()) ids = &ids->at("side");
  if (!ids->is_array()) throw std::runtime_error("cut file must hold a list of vertex ids");
  return ids->get<std::vector<std::int64_t>>();
}

int verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  DimacsInstance inst;
  std::vector<std::int64_t> ids;
  try {
    inst = parse_dimacs_file(args.input);
    ids = read_cut_ids(args.cut);
  } catch (const std::exception& e) {
    err << "faircut: " << e.what() << '\n';
    return kUsage;
  }
  const CapacitatedGraph g = inst.graph();
  std::vector<Vertex> side;
  for (std::int64_t id : ids) {
    if (id < 1 || id > g.vertex_count()) {
      err << "faircut: cut id " << id << " out of range\n";
      return kUsage;
    }
    side.push_back(static_cast<Vertex>(id - 1));
  }
  std::optional<VertexCut> cut;
  try {
    cut.emplace(g.vertex_count(), side, inst.source, inst.sink);
  } catch (const std::invalid_argument& e) {
    err << "faircut: cut does not separate s from t: " << e.what() << '\n';
    return kUsage;
  }

  const FairnessVerdict verdict = verify_fairness(g, *cut, args.alpha);
  nlohmann::ordered_json doc;
  doc["alpha"] = args.alpha;
  doc["cut_value"] = undirected_cut_value(g, cut->mask());
  if (const auto* ok = std::get_if<FairnessCertificate>(&verdict)) {
    doc["fair"] = true;
    doc["flow_value"] = ok->value;
    double weakest = std::numeric_limits<double>::infinity();
    for (ArcId a : outgoing_arcs(g, cut->mask())) {
      weakest = std::min(weakest, ok->witness[a] / static_cast<double>(g.capacity(a)));
    }
    doc["min_cut_arc_utilization"] = std::isfinite(weakest) ? weakest : 1.0;
    out << doc.dump(2) << '\n';
    return kOk;
  }
  const auto& refusal = std::get<FairnessRefusal>(verdict);
  doc["fair"] = false;
  doc["deficit"] = refusal.deficit;
  std::vector<Vertex> violated;
  for (Vertex v : set_members(refusal.violated_set)) violated.push_back(v + 1);
  doc["violated_set"] = violated;
  out << doc.dump(2) << '\n';
  return kNotFair;
}

int bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  static const std::set<std::string> families{"path", "cycle", "grid", "random"};
  if (!families.count(args.family)) {
    err << "faircut: unknown family '" << args.family << "'\n";
    return kUsage;
  }
  out << "n,m,eps,iterations,final_potential,achieved_alpha,mincut_ratio,ms\n";
  for (int trial = 0; trial < args.trials; ++trial) {
    const CapacitatedGraph g =
        family_graph(args.family, args.n, args.max_capacity, derive_seed(args.seed, trial));
    const Vertex t = g.vertex_count() - 1;
    FairCutOptions options;
    options.epsilon = args.epsilon;
    options.approximator = args.approximator;
    options.seed = derive_seed(args.seed, trial);
    options.strict_contraction = false;
    const auto start = std::chrono::steady_clock::now();
    std::optional<FairCutResult> result;
    try {
      result.emplace(fair_cut(g, 0, t, options));
    } catch (const SolverExhausted& e) {
      err << "faircut: trial " << trial << ": " << e.what() << '\n';
      return kExhausted;
    } catch (const std::exception& e) {
      err << "faircut: trial " << trial << ": " << e.what() << '\n';
      return kUsage;
    }
    const double ms = elapsed_ms(start);
    const double maxflow = max_flow_exact(g, 0, t).value;
    out << g.vertex_count() << ',' << g.edge_count() << ',' << args.epsilon << ',' << result->trace.size()
        << ',' << result->final_potential << ',' << result->achieved_alpha.value_or(0.0) << ','
        << result->cut_value / maxflow << ',' << ms << '\n';
  }
  return kOk;
}

int measure(const MeasureArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const DimacsInstance inst = parse_dimacs_file(args.input);
    const CapacitatedGraph g = inst.graph();
    require_connected(g);
    const CutMatrix r = build_approximator(g, args.approximator, args.seed, args.trials);
    nlohmann::ordered_json doc;
    doc["descriptor"] = r.descriptor();
    doc["rows"] = r.row_count();
    doc["measured_alpha"] = measure_alpha(r, g, args.trials, derive_seed(args.seed, 7));
    doc["solver_alpha"] = *r.alpha();
    out << doc.dump(2) << '\n';
    return kOk;
  } catch (const std::exception& e) {
    err << "faircut: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Approximately fair (s,t)-cuts on undirected capacitated graphs", "faircut"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Compute a fair cut of a DIMACS instance");
  solve_cmd->add_option("--input", solve_args.input, "DIMACS max-flow file")->required();
  solve_cmd->add_option("--epsilon", solve_args.epsilon, "Accuracy parameter")
      ->check(kEpsilonRange)
      ->capture_default_str();
  solve_cmd->add_option("--approximator", solve_args.approximator, "exhaustive | tree | multitree:K")
      ->capture_default_str();
  solve_cmd->add_option("--seed", solve_args.seed, "Random seed")->capture_default_str();
  solve_cmd->add_option("--max-iters", solve_args.max_iters, "Round limit (default from the graph)")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--budget", solve_args.budget, "Solver iterations per round")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--trace", solve_args.trace, "Per-round CSV trace");
  solve_cmd->add_option("--solver-trace", solve_args.solver_trace, "Per-solver-iteration CSV trace");
  solve_cmd->add_option("--alpha-trials", solve_args.alpha_trials, "Demands used to calibrate alpha")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  solve_cmd->add_flag("--verify", solve_args.verify, "Measure the achieved fairness with the exact oracle");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Check whether a cut is alpha-fair");
  verify_cmd->add_option("--input", verify_args.input, "DIMACS max-flow file")->required();
  verify_cmd->add_option("--cut", verify_args.cut, "JSON list of S-side vertex ids")->required();
  verify_cmd->add_option("--alpha", verify_args.alpha, "Fairness factor (>= 1)")
      ->check(CLI::Range(1.0, std::numeric_limits<double>::max()))
      ->capture_default_str();

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Run fair_cut on generated instances and print CSV");
  bench_cmd->add_option("--family", bench_args.family, "path | cycle | grid | random")->required();
  bench_cmd->add_option("--n", bench_args.n, "Vertex count")->required()->check(CLI::Range(2, 1 << 24));
  bench_cmd->add_option("--trials", bench_args.trials, "Instances to run")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  bench_cmd->add_option("--seed", bench_args.seed, "Random seed")->capture_default_str();
  bench_cmd->add_option("--epsilon", bench_args.epsilon, "Accuracy parameter")
      ->check(kEpsilonRange)
      ->capture_default_str();
  bench_cmd->add_option("--approximator", bench_args.approximator, "exhaustive | tree | multitree:K")
      ->capture_default_str();
  bench_cmd->add_option("--max-capacity", bench_args.max_capacity, "Largest edge capacity")
      ->check(CLI::Range(std::int64_t{1}, kDefaultCapacityBound))
      ->capture_default_str();

  MeasureArgs measure_args;
  auto* measure_cmd = app.add_subcommand("measure-alpha", "Estimate an approximator's alpha");
  measure_cmd->add_option("--input", measure_args.input, "DIMACS max-flow file")->required();
  measure_cmd->add_option("--approximator", measure_args.approximator, "exhaustive | tree | multitree:K")
      ->capture_default_str();
  measure_cmd->add_option("--seed", measure_args.seed, "Random seed")->capture_default_str();
  measure_cmd->add_option("--trials", measure_args.trials, "Sampled demands")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  auto log = make_logger(err);
  if (*solve_cmd) return solve(solve_args, out, err, *log);
  if (*verify_cmd) return verify(verify_args, out, err);
  if (*bench_cmd) return bench(bench_args, out, err);
  return measure(measure_args, out, err);
}

}  // namespace faircut::cli
