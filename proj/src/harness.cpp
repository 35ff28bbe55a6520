#include "ucurve/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include "ucurve/instance_io.hpp"
#include "ucurve/oracle.hpp"
#include "ucurve/seeding.hpp"
#include "ucurve/sffs.hpp"
#include "ucurve/ubb.hpp"

namespace ucurve {

using nlohmann::json;

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::ucs: return "ucs";
    case Algorithm::ubb: return "ubb";
    case Algorithm::sffs: return "sffs";
    case Algorithm::exhaustive: return "exhaustive";
    case Algorithm::legacy: return "ucurve-legacy";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::ucs, Algorithm::ubb, Algorithm::sffs, Algorithm::exhaustive, Algorithm::legacy})
    if (to_string(a) == name) return a;
  throw ContractViolation("unknown algorithm \"" + std::string(name) + "\"");
}

SearchReport run_algorithm(Algorithm algorithm, const Instance& instance, const SolveOptions& options) {
  CostEvaluator evaluator(instance, options.stop);
  switch (algorithm) {
    case Algorithm::ucs: {
      UcsOptions ucs;
      ucs.seed = options.seed;
      ucs.p_up = options.p_up;
      ucs.observer = options.observer;
      return ucs_solve(evaluator, ucs);
    }
    case Algorithm::ubb: return ubb_solve(evaluator);
    case Algorithm::sffs: return sffs_solve(evaluator);
    case Algorithm::exhaustive: return exhaustive_solve(evaluator);
    case Algorithm::legacy: return legacy_ucurve_solve(evaluator, options.seed, options.p_up);
  }
  throw ContractViolation("unknown algorithm");
}

void ExperimentConfig::validate() const {
  if (sizes.empty()) throw ContractViolation("experiment needs at least one size");
  for (int n : sizes)
    if (n < 1 || n > kMaxDegree) throw ContractViolation("experiment sizes must be in [1, 64]");
  if (instances_per_size < 1) throw ContractViolation("instances_per_size must be at least 1");
  if (algorithms.empty()) throw ContractViolation("experiment needs at least one algorithm");
  if (cost_kind == CostKind::explicit_table) throw ContractViolation("experiments generate subset_sum or mce instances");
  if (!(p_up >= 0.0 && p_up <= 1.0)) throw ContractViolation("p_up must lie in [0, 1]");
  if (jobs < 1) throw ContractViolation("jobs must be at least 1");
}

namespace {

std::string_view to_string(ExperimentMode m) { return m == ExperimentMode::optimal ? "optimal" : "suboptimal"; }
std::string_view to_string(ThresholdScope s) { return s == ThresholdScope::mean ? "mean" : "per-instance"; }

}  // namespace

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  try {
    c.sizes = j.at("sizes").get<std::vector<int>>();
    c.instances_per_size = j.value("instances_per_size", c.instances_per_size);
    c.seed = j.value("seed", c.seed);
    if (j.contains("algorithms")) {
      c.algorithms.clear();
      for (const auto& a : j["algorithms"]) c.algorithms.push_back(parse_algorithm(a.get<std::string>()));
    }
    const std::string kind = j.value("cost_kind", std::string("subset_sum"));
    if (kind == "subset_sum" || kind == "subset-sum")
      c.cost_kind = CostKind::subset_sum;
    else if (kind == "mce")
      c.cost_kind = CostKind::mce;
    else
      throw ContractViolation("cost_kind must be subset_sum or mce");
    c.weight_max = j.value("weight_max", c.weight_max);
    c.sample_rows = j.value("sample_rows", c.sample_rows);
    const std::string mode = j.value("mode", std::string("optimal"));
    if (mode != "optimal" && mode != "suboptimal") throw ContractViolation("mode must be optimal or suboptimal");
    c.mode = mode == "optimal" ? ExperimentMode::optimal : ExperimentMode::suboptimal;
    const std::string scope = j.value("threshold_scope", std::string("mean"));
    if (scope != "mean" && scope != "per-instance") throw ContractViolation("threshold_scope must be mean or per-instance");
    c.threshold_scope = scope == "mean" ? ThresholdScope::mean : ThresholdScope::per_instance;
    c.p_up = j.value("p_up", c.p_up);
    c.jobs = j.value("jobs", c.jobs);
  } catch (const json::exception& e) {
    throw ContractViolation(std::string("bad experiment config: ") + e.what());
  }
  c.validate();
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json algorithms = json::array();
  for (Algorithm a : c.algorithms) algorithms.push_back(std::string(to_string(a)));
  return json{{"sizes", c.sizes},
              {"instances_per_size", c.instances_per_size},
              {"seed", c.seed},
              {"algorithms", algorithms},
              {"cost_kind", std::string(to_string(c.cost_kind))},
              {"weight_max", c.weight_max},
              {"sample_rows", c.sample_rows},
              {"mode", std::string(to_string(c.mode))},
              {"threshold_scope", std::string(to_string(c.threshold_scope))},
              {"p_up", c.p_up},
              {"jobs", c.jobs}};
}

std::vector<Instance> make_instances(const ExperimentConfig& config, int degree) {
  std::vector<Instance> out;
  out.reserve(config.instances_per_size);
  for (std::size_t i = 0; i < config.instances_per_size; ++i) {
    const std::uint64_t seed = derive_seed(config.seed, {static_cast<std::uint64_t>(degree), i});
    if (config.cost_kind == CostKind::mce) {
      std::mt19937_64 rng(derive_seed(seed, {1}));
      ElementSet planted = ElementSet::empty(degree);
      for (int k = 0; k < std::max(1, degree / 3); ++k)
        planted = planted.with(std::uniform_int_distribution<int>(0, degree - 1)(rng));
      out.push_back(Instance::mce(generate_sample_table(degree, config.sample_rows, seed, planted)));
    } else {
      out.push_back(generate_subset_sum_instance(degree, seed, config.weight_max));
    }
  }
  return out;
}

std::uint64_t instance_fingerprint(const Instance& instance) {
  const std::string text = instance.kind() == CostKind::mce
                               ? samples_to_text(std::get<SampleTable>(instance.payload()))
                               : instance_to_json(instance).dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace {

template <typename F>
void parallel_for(std::size_t count, unsigned jobs, F&& body) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
}

std::uint64_t solver_seed(const ExperimentConfig& config, int degree, std::size_t instance) {
  return derive_seed(config.seed, {static_cast<std::uint64_t>(degree), instance, 0x5eed});
}

Cost effective_cost(const SearchReport& r) {
  return r.minima.empty() ? std::numeric_limits<Cost>::infinity() : r.best_cost;
}

struct InstanceSet {
  int degree;
  std::vector<Instance> instances;
  std::vector<std::uint64_t> fingerprints;

  void verify() const {
    for (std::size_t i = 0; i < instances.size(); ++i)
      if (instance_fingerprint(instances[i]) != fingerprints[i])
        throw std::runtime_error("instance set changed between protocol steps");
  }
};

std::vector<InstanceSet> build_instance_sets(const ExperimentConfig& config) {
  std::vector<InstanceSet> sets;
  for (int n : config.sizes) {
    InstanceSet s{n, make_instances(config, n), {}};
    for (const auto& inst : s.instances) s.fingerprints.push_back(instance_fingerprint(inst));
    sets.push_back(std::move(s));
  }
  return sets;
}

struct Job {
  std::size_t set;
  std::size_t instance;
  Algorithm algorithm;
  StopCriterion stop;
};

std::vector<RunRecord> run_jobs(const ExperimentConfig& config, const std::vector<InstanceSet>& sets,
                                const std::vector<Job>& jobs) {
  std::vector<RunRecord> records(jobs.size());
  parallel_for(jobs.size(), config.jobs, [&](std::size_t k) {
    const Job& job = jobs[k];
    const InstanceSet& set = sets[job.set];
    SolveOptions options;
    options.stop = job.stop;
    options.seed = solver_seed(config, set.degree, job.instance);
    options.p_up = config.p_up;
    records[k] = RunRecord{set.degree, job.instance, job.algorithm,
                           run_algorithm(job.algorithm, set.instances[job.instance], options), false};
  });
  return records;
}

double seconds(std::chrono::nanoseconds ns) { return static_cast<double>(ns.count()) * 1e-9; }

}  // namespace

std::vector<ResultRow> summarize(std::vector<RunRecord>& runs, const std::vector<Algorithm>& order) {
  std::map<std::pair<int, std::size_t>, Cost> best;
  for (const auto& r : runs) {
    const auto key = std::make_pair(r.degree, r.instance);
    const Cost c = effective_cost(r.report);
    auto [it, inserted] = best.emplace(key, c);
    if (!inserted) it->second = std::min(it->second, c);
  }
  for (auto& r : runs) {
    const Cost c = effective_cost(r.report);
    r.best = std::isfinite(c) && c == best.at({r.degree, r.instance});
  }

  std::vector<int> degrees;
  for (const auto& r : runs)
    if (std::find(degrees.begin(), degrees.end(), r.degree) == degrees.end()) degrees.push_back(r.degree);

  std::vector<ResultRow> rows;
  for (int n : degrees) {
    for (Algorithm a : order) {
      ResultRow row;
      row.degree = n;
      row.algorithm = a;
      for (const auto& r : runs) {
        if (r.degree != n || r.algorithm != a) continue;
        ++row.instances;
        row.mean_computed_nodes += static_cast<double>(r.report.computed_nodes);
        row.max_computed_nodes = std::max(row.max_computed_nodes, r.report.computed_nodes);
        row.best_solution_count += r.best ? 1 : 0;
        row.stopped_count += r.report.stopped_early() ? 1 : 0;
        row.mean_time += seconds(r.report.wall_time);
        row.mean_time_in_cost += seconds(r.report.time_in_cost);
        row.mean_time_other += seconds(r.report.time_other());
      }
      if (row.instances == 0) continue;
      const auto k = static_cast<double>(row.instances);
      row.mean_computed_nodes /= k;
      row.mean_time /= k;
      row.mean_time_in_cost /= k;
      row.mean_time_other /= k;
      rows.push_back(row);
    }
  }
  return rows;
}

OptimalResult run_optimal(const ExperimentConfig& config) {
  config.validate();
  const auto sets = build_instance_sets(config);
  std::vector<Job> jobs;
  for (std::size_t s = 0; s < sets.size(); ++s)
    for (std::size_t i = 0; i < sets[s].instances.size(); ++i)
      for (Algorithm a : config.algorithms) jobs.push_back({s, i, a, StopCriterion::none()});
  OptimalResult result;
  result.runs = run_jobs(config, sets, jobs);
  result.rows = summarize(result.runs, config.algorithms);
  return result;
}

std::uint64_t node_threshold(double ucs_nodes, double ubb_nodes, double sffs_nodes) {
  return static_cast<std::uint64_t>(std::ceil(std::max({ucs_nodes, ubb_nodes, sffs_nodes})));
}

SuboptimalResult run_suboptimal(const ExperimentConfig& config) {
  config.validate();
  const auto sets = build_instance_sets(config);
  const bool mean_scope = config.threshold_scope == ThresholdScope::mean;

  // Step 1: unrestricted SFFS gives the cost targets.
  std::vector<Job> step1;
  for (std::size_t s = 0; s < sets.size(); ++s)
    for (std::size_t i = 0; i < sets[s].instances.size(); ++i) step1.push_back({s, i, Algorithm::sffs, {}});
  const auto sffs_runs = run_jobs(config, sets, step1);

  std::vector<std::vector<Cost>> cost_target(sets.size());
  std::vector<std::vector<double>> sffs_nodes(sets.size());
  {
    std::size_t k = 0;
    for (std::size_t s = 0; s < sets.size(); ++s) {
      std::vector<Cost> costs;
      for (std::size_t i = 0; i < sets[s].instances.size(); ++i, ++k) {
        costs.push_back(sffs_runs[k].report.best_cost);
        sffs_nodes[s].push_back(static_cast<double>(sffs_runs[k].report.computed_nodes));
      }
      if (mean_scope) {
        double mean = 0.0;
        for (Cost c : costs) mean += c;
        mean /= static_cast<double>(costs.size());
        costs.assign(costs.size(), mean);
      }
      cost_target[s] = std::move(costs);
    }
  }

  // Step 2: UCS and UBB stop at the cost target; their node counts (and the
  // SFFS node count) give the node budgets.
  for (const auto& s : sets) s.verify();
  std::vector<Job> step2;
  for (std::size_t s = 0; s < sets.size(); ++s)
    for (std::size_t i = 0; i < sets[s].instances.size(); ++i)
      for (Algorithm a : {Algorithm::ucs, Algorithm::ubb})
        step2.push_back({s, i, a, StopCriterion::target(cost_target[s][i])});
  const auto step2_runs = run_jobs(config, sets, step2);

  SuboptimalResult result;
  std::vector<std::vector<std::uint64_t>> node_budget(sets.size());
  {
    std::size_t k = 0;
    for (std::size_t s = 0; s < sets.size(); ++s) {
      const std::size_t count = sets[s].instances.size();
      std::vector<double> ucs(count), ubb(count);
      for (std::size_t i = 0; i < count; ++i) {
        ucs[i] = static_cast<double>(step2_runs[k++].report.computed_nodes);
        ubb[i] = static_cast<double>(step2_runs[k++].report.computed_nodes);
      }
      if (mean_scope) {
        auto mean = [](const std::vector<double>& v) {
          double m = 0.0;
          for (double x : v) m += x;
          return m / static_cast<double>(v.size());
        };
        ThresholdRow row{sets[s].degree, std::nullopt, cost_target[s][0], mean(ucs), mean(ubb), mean(sffs_nodes[s]), 0};
        row.node_threshold = node_threshold(row.ucs_nodes, row.ubb_nodes, row.sffs_nodes);
        node_budget[s].assign(count, row.node_threshold);
        result.thresholds.push_back(row);
      } else {
        for (std::size_t i = 0; i < count; ++i) {
          ThresholdRow row{sets[s].degree, i, cost_target[s][i], ucs[i], ubb[i], sffs_nodes[s][i], 0};
          row.node_threshold = node_threshold(ucs[i], ubb[i], sffs_nodes[s][i]);
          node_budget[s].push_back(row.node_threshold);
          result.thresholds.push_back(row);
        }
      }
    }
  }

  // Step 3: all three under the node budget.
  for (const auto& s : sets) s.verify();
  const std::vector<Algorithm> order{Algorithm::ucs, Algorithm::ubb, Algorithm::sffs};
  std::vector<Job> step3;
  for (std::size_t s = 0; s < sets.size(); ++s)
    for (std::size_t i = 0; i < sets[s].instances.size(); ++i)
      for (Algorithm a : order) step3.push_back({s, i, a, StopCriterion::budget(node_budget[s][i])});
  result.runs = run_jobs(config, sets, step3);
  result.rows = summarize(result.runs, order);
  return result;
}

std::vector<DynamicsRow> dynamics_from_runs(const std::vector<RunRecord>& runs) {
  std::map<int, std::pair<double, double>> sums;
  std::map<int, std::size_t> counts;
  std::vector<int> degrees;
  for (const auto& r : runs) {
    if (r.algorithm != Algorithm::ucs) continue;
    if (!counts.contains(r.degree)) degrees.push_back(r.degree);
    sums[r.degree].first += static_cast<double>(r.report.dfs_calls);
    sums[r.degree].second += static_cast<double>(r.report.minmax_calls);
    ++counts[r.degree];
  }
  std::vector<DynamicsRow> rows;
  for (int n : degrees) {
    const auto k = static_cast<double>(counts[n]);
    DynamicsRow row{n, sums[n].first / k, sums[n].second / k, 0.0};
    row.ratio = row.mean_minmax_calls > 0.0 ? row.mean_dfs_calls / row.mean_minmax_calls : 0.0;
    rows.push_back(row);
  }
  return rows;
}

std::vector<DynamicsRow> dynamics_profile(const ExperimentConfig& config) {
  ExperimentConfig ucs_only = config;
  ucs_only.algorithms = {Algorithm::ucs};
  return dynamics_from_runs(run_optimal(ucs_only).runs);
}

namespace {

std::string fixed(double v, int decimals = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

bool is_number(const std::string& s) {
  if (s.empty()) return false;
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  return ec == std::errc() && ptr == end;
}

}  // namespace

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) out += (c ? "," : "") + csv_escape(columns[c]);
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + csv_escape(row[c]);
    out += "\n";
  }
  return out;
}

std::string Table::to_json() const {
  json out{{"columns", columns}, {"rows", json::array()}};
  for (const auto& row : rows) {
    json obj = json::object();
    for (std::size_t c = 0; c < row.size(); ++c)
      obj[columns[c]] = is_number(row[c]) ? json::parse(row[c]) : json(row[c]);
    out["rows"].push_back(obj);
  }
  return out.dump(2) + "\n";
}

Table results_table(const std::vector<ResultRow>& rows) {
  Table t{{"n", "lattice_size", "algorithm", "instances", "mean_computed_nodes", "max_computed_nodes",
           "best_solution_count", "stopped_count"},
          {}};
  for (const auto& r : rows) {
    t.rows.push_back({std::to_string(r.degree), std::to_string(std::uint64_t{1} << r.degree),
                      std::string(to_string(r.algorithm)), std::to_string(r.instances), fixed(r.mean_computed_nodes),
                      std::to_string(r.max_computed_nodes), std::to_string(r.best_solution_count),
                      std::to_string(r.stopped_count)});
  }
  return t;
}

Table timing_table(const std::vector<ResultRow>& rows) {
  Table t{{"n", "algorithm", "mean_time_s", "mean_time_in_cost_s", "mean_time_other_s", "log2_time_in_cost",
           "log2_time_other"},
          {}};
  auto log2s = [](double s) { return fixed(std::log2(std::max(s, 1e-9))); };
  for (const auto& r : rows) {
    t.rows.push_back({std::to_string(r.degree), std::string(to_string(r.algorithm)), fixed(r.mean_time),
                      fixed(r.mean_time_in_cost), fixed(r.mean_time_other), log2s(r.mean_time_in_cost),
                      log2s(r.mean_time_other)});
  }
  return t;
}

Table thresholds_table(const std::vector<ThresholdRow>& rows) {
  Table t{{"n", "instance", "cost_threshold", "ucs_nodes", "ubb_nodes", "sffs_nodes", "node_threshold"}, {}};
  for (const auto& r : rows) {
    t.rows.push_back({std::to_string(r.degree), r.instance ? std::to_string(*r.instance) : std::string("mean"),
                      fixed(r.cost_threshold), fixed(r.ucs_nodes), fixed(r.ubb_nodes), fixed(r.sffs_nodes),
                      std::to_string(r.node_threshold)});
  }
  return t;
}

Table dynamics_table(const std::vector<DynamicsRow>& rows) {
  Table t{{"n", "mean_dfs_calls", "mean_minmax_calls", "ratio"}, {}};
  for (const auto& r : rows)
    t.rows.push_back({std::to_string(r.degree), fixed(r.mean_dfs_calls), fixed(r.mean_minmax_calls), fixed(r.ratio, 4)});
  return t;
}

void emit_report(const Table& table, ReportFormat format, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << (format == ReportFormat::csv ? table.to_csv() : table.to_json());
}

}  // namespace ucurve
