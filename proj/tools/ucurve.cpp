// ucurve: command-line front end for the U-curve solvers and experiments.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ucurve/harness.hpp"
#include "ucurve/instance_io.hpp"
#include "ucurve/oracle.hpp"
#include "ucurve/seeding.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ucurve;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;  // verify found a witness / no counterexample found
constexpr int kExitBudget = 2;
constexpr int kExitInvalid = 3;

json report_to_json(const SearchReport& r) {
  json minima = json::array();
  for (const auto& m : r.minima) minima.push_back(m.to_string());
  return json{{"algorithm", r.algorithm},
              {"minima", minima},
              {"best_cost", r.best_cost},
              {"computed_nodes", r.computed_nodes},
              {"wall_time_s", std::chrono::duration<double>(r.wall_time).count()},
              {"time_in_cost_s", std::chrono::duration<double>(r.time_in_cost).count()},
              {"time_other_s", std::chrono::duration<double>(r.time_other()).count()},
              {"dfs_calls", r.dfs_calls},
              {"minmax_calls", r.minmax_calls},
              {"iterations", r.iterations},
              {"budget_exhausted", r.budget_exhausted},
              {"target_reached", r.target_reached}};
}

Instance load_problem(const std::string& instance_path, const std::string& samples_path) {
  if (!samples_path.empty()) return Instance::mce(load_samples(samples_path));
  if (instance_path.empty()) throw InputError("either --instance or --samples is required");
  return load_instance(instance_path);
}

struct GenerateArgs {
  std::string kind = "subset-sum";
  int n = 10;
  std::size_t count = 1;
  std::uint64_t seed = 42;
  std::uint64_t weight_max = 1000;
  std::size_t rows = 1152;
  std::string out;
};

int run_generate(const GenerateArgs& a) {
  if (a.kind != "subset-sum" && a.kind != "samples") throw InputError("--kind must be subset-sum or samples");
  if (a.n < 1 || a.n > kMaxDegree) throw InputError("--n must be in [1, 64]");
  for (std::size_t i = 0; i < a.count; ++i) {
    const std::uint64_t seed = derive_seed(a.seed, {static_cast<std::uint64_t>(a.n), i});
    const std::string stem = "instance_n" + std::to_string(a.n) + "_" + std::to_string(i);
    if (a.kind == "subset-sum") {
      save_instance(generate_subset_sum_instance(a.n, seed, a.weight_max), fs::path(a.out) / (stem + ".json"));
    } else {
      std::mt19937_64 rng(derive_seed(seed, {1}));
      ElementSet planted = ElementSet::empty(a.n);
      for (int k = 0; k < std::max(1, a.n / 3); ++k)
        planted = planted.with(std::uniform_int_distribution<int>(0, a.n - 1)(rng));
      save_samples(generate_sample_table(a.n, a.rows, seed, planted), fs::path(a.out) / (stem + ".txt"));
    }
  }
  return kExitOk;
}

struct SolveArgs {
  std::string algorithm = "ucs";
  std::string instance;
  std::string samples;
  std::optional<std::uint64_t> budget;
  std::optional<double> cost_target;
  std::uint64_t seed = 0;
  double p_up = 0.5;
  bool trace = false;
};

int run_solve(const SolveArgs& a) {
  const Instance instance = load_problem(a.instance, a.samples);
  SolveOptions options;
  if (a.budget) options.stop = StopCriterion::budget(*a.budget);
  if (a.cost_target) options.stop = StopCriterion::target(*a.cost_target);
  options.seed = a.seed;
  options.p_up = a.p_up;
  if (a.trace) {
    options.observer = [](const UcsEvent& e, const UcsContext& ctx) {
      std::cerr << json{{"event", std::string(to_string(e.kind))},
                        {"element", e.element.to_string()},
                        {"lower_restrictions", ctx.lower.size()},
                        {"upper_restrictions", ctx.upper.size()},
                        {"computed_nodes", ctx.cost.computed_nodes()}}
                       .dump()
                << "\n";
    };
  }
  const SearchReport report = run_algorithm(parse_algorithm(a.algorithm), instance, options);
  std::cout << report_to_json(report).dump(2) << "\n";
  return report.budget_exhausted ? kExitBudget : kExitOk;
}

struct BenchArgs {
  std::string config;
  std::string mode;
  std::string out = "results";
  std::optional<unsigned> jobs;
  std::string format = "both";
};

void write_table(const Table& table, const fs::path& stem, const std::string& format) {
  if (format == "csv" || format == "both") emit_report(table, ReportFormat::csv, fs::path(stem).concat(".csv"));
  if (format == "json" || format == "both") emit_report(table, ReportFormat::json, fs::path(stem).concat(".json"));
}

int run_bench(const BenchArgs& a) {
  std::ifstream in(a.config);
  if (!in) throw InputError("cannot open " + a.config);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(a.config + ": " + e.what());
  }
  if (!a.mode.empty()) j["mode"] = a.mode;
  if (a.jobs) j["jobs"] = *a.jobs;
  const ExperimentConfig config = config_from_json(j);
  const fs::path out(a.out);
  const bool timing = config.jobs == 1;
  if (!timing) std::cerr << "note: --jobs > 1, timing columns are not written\n";

  if (config.mode == ExperimentMode::optimal) {
    OptimalResult result = run_optimal(config);
    write_table(results_table(result.rows), out / "optimal", a.format);
    write_table(dynamics_table(dynamics_from_runs(result.runs)), out / "dynamics", a.format);
    if (timing) write_table(timing_table(result.rows), out / "optimal_timing", a.format);
  } else {
    SuboptimalResult result = run_suboptimal(config);
    write_table(thresholds_table(result.thresholds), out / "thresholds", a.format);
    write_table(results_table(result.rows), out / "suboptimal", a.format);
    write_table(dynamics_table(dynamics_from_runs(result.runs)), out / "dynamics", a.format);
    if (timing) write_table(timing_table(result.rows), out / "suboptimal_timing", a.format);
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string instance;
  std::string samples;
  std::string mode = "exhaustive";
  std::size_t chains = 1000;
  std::uint64_t seed = 0;
};

int run_verify(const VerifyArgs& a) {
  const Instance instance = load_problem(a.instance, a.samples);
  DecomposabilityMode mode = ExhaustiveCheck{};
  if (a.mode == "sampled")
    mode = SampledCheck{a.chains, a.seed};
  else if (a.mode != "exhaustive")
    throw InputError("--mode must be exhaustive or sampled");
  const auto witness = verify_decomposable(instance, mode);
  json out{{"decomposable", !witness}, {"mode", a.mode}};
  if (witness)
    out["witness"] = {witness->lower.to_string(), witness->middle.to_string(), witness->upper.to_string()};
  std::cout << out.dump() << "\n";
  return witness ? kExitNegative : kExitOk;
}

struct CounterexampleArgs {
  int n = 5;
  std::size_t trials = 10000;
  std::uint64_t seed = 7;
  std::string out;
};

int run_find_counterexample(const CounterexampleArgs& a) {
  const auto found = find_counterexample(a.n, a.trials, a.seed);
  if (!found) {
    std::cout << json{{"found", false}, {"trials", a.trials}}.dump() << "\n";
    return kExitNegative;
  }
  json summary{{"found", true},
               {"trial", found->trial},
               {"legacy_seed", found->legacy_seed},
               {"legacy_cost", found->legacy_cost},
               {"optimum", found->optimum}};
  if (!a.out.empty())
    save_instance(found->instance, a.out,
                  json{{"legacy_seed", found->legacy_seed},
                       {"legacy_cost", found->legacy_cost},
                       {"optimum", found->optimum}});
  std::cout << summary.dump() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and heuristic search for costs decomposable in U-shaped curves"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write random instances");
  generate->add_option("--kind", gen.kind, "subset-sum or samples")->capture_default_str();
  generate->add_option("--n", gen.n, "Number of features")->required();
  generate->add_option("--count", gen.count, "Number of instances")->capture_default_str();
  generate->add_option("--seed", gen.seed)->capture_default_str();
  generate->add_option("--weight-max", gen.weight_max)->capture_default_str();
  generate->add_option("--rows", gen.rows, "Rows per sample file")->capture_default_str();
  generate->add_option("--out", gen.out, "Output directory")->required();

  SolveArgs sol;
  auto* solve = app.add_subcommand("solve", "Run one solver on one instance");
  solve->add_option("--algorithm", sol.algorithm, "ucs, ubb, sffs, exhaustive or ucurve-legacy")->capture_default_str();
  solve->add_option("--instance", sol.instance, "Instance JSON");
  solve->add_option("--samples", sol.samples, "Sample file (mean conditional entropy cost)");
  auto* budget = solve->add_option("--budget", sol.budget, "Maximum number of cost computations");
  solve->add_option("--cost-target", sol.cost_target, "Stop once a cost at or below this is found")->excludes(budget);
  solve->add_option("--seed", sol.seed)->capture_default_str();
  solve->add_option("--p-up", sol.p_up, "Probability of a bottom-up iteration")->capture_default_str();
  solve->add_flag("--trace", sol.trace, "Emit one JSON line per search event on stderr");

  BenchArgs ben;
  auto* bench = app.add_subcommand("bench", "Run an experiment protocol");
  bench->add_option("--config", ben.config, "Experiment JSON")->required();
  bench->add_option("--mode", ben.mode, "optimal or suboptimal (overrides the config)");
  bench->add_option("--out", ben.out, "Output directory")->capture_default_str();
  bench->add_option("--jobs", ben.jobs, "Worker threads (timing is only written for 1)");
  bench->add_option("--format", ben.format, "csv, json or both")->capture_default_str();

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Check decomposability in U-shaped curves");
  verify->add_option("--instance", ver.instance, "Instance JSON");
  verify->add_option("--samples", ver.samples, "Sample file");
  verify->add_option("--mode", ver.mode, "exhaustive or sampled")->capture_default_str();
  verify->add_option("--chains", ver.chains, "Chains drawn in sampled mode")->capture_default_str();
  verify->add_option("--seed", ver.seed)->capture_default_str();

  CounterexampleArgs cex;
  auto* counter = app.add_subcommand("find-counterexample", "Search for an instance the legacy algorithm gets wrong");
  counter->add_option("--n", cex.n)->capture_default_str();
  counter->add_option("--trials", cex.trials)->capture_default_str();
  counter->add_option("--seed", cex.seed)->capture_default_str();
  counter->add_option("--out", cex.out, "Write the instance as explicit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*generate) return run_generate(gen);
    if (*solve) return run_solve(sol);
    if (*bench) return run_bench(ben);
    if (*verify) return run_verify(ver);
    if (*counter) return run_find_counterexample(cex);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ContractViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return kExitOk;
}
