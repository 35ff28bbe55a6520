#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ucurve/cost.hpp"
#include "ucurve/report.hpp"
#include "ucurve/ucs.hpp"

namespace ucurve {

enum class Algorithm { ucs, ubb, sffs, exhaustive, legacy };

std::string_view to_string(Algorithm algorithm);
/// Accepts "ucs", "ubb", "sffs", "exhaustive", "ucurve-legacy".
Algorithm parse_algorithm(std::string_view name);

struct SolveOptions {
  StopCriterion stop;
  std::uint64_t seed = 0;
  double p_up = 0.5;
  UcsObserver observer;  // ucs only
};

/// Runs one solver on a fresh evaluator for `instance`.
SearchReport run_algorithm(Algorithm algorithm, const Instance& instance, const SolveOptions& options = {});

enum class ExperimentMode { optimal, suboptimal };
enum class ThresholdScope { mean, per_instance };

struct ExperimentConfig {
  std::vector<int> sizes;
  std::size_t instances_per_size = 100;
  std::uint64_t seed = 42;
  std::vector<Algorithm> algorithms{Algorithm::ucs, Algorithm::ubb, Algorithm::sffs};
  CostKind cost_kind = CostKind::subset_sum;  // subset_sum or mce (synthetic samples)
  std::uint64_t weight_max = 1000;
  std::size_t sample_rows = 1152;
  ExperimentMode mode = ExperimentMode::optimal;
  ThresholdScope threshold_scope = ThresholdScope::mean;
  double p_up = 0.5;
  unsigned jobs = 1;

  void validate() const;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);

/// The deterministic instance set for one size of an experiment.
std::vector<Instance> make_instances(const ExperimentConfig& config, int degree);

/// FNV-1a over the serialized instance; used to check that every protocol
/// step sees the same instances.
std::uint64_t instance_fingerprint(const Instance& instance);

struct RunRecord {
  int degree = 0;
  std::size_t instance = 0;
  Algorithm algorithm = Algorithm::ucs;
  SearchReport report;
  bool best = false;  // best cost among the compared algorithms on this instance
};

struct ResultRow {
  int degree = 0;
  Algorithm algorithm = Algorithm::ucs;
  std::size_t instances = 0;
  double mean_computed_nodes = 0.0;
  std::uint64_t max_computed_nodes = 0;
  std::size_t best_solution_count = 0;
  std::size_t stopped_count = 0;
  double mean_time = 0.0;  // seconds
  double mean_time_in_cost = 0.0;
  double mean_time_other = 0.0;
};

struct ThresholdRow {
  int degree = 0;
  std::optional<std::size_t> instance;  // set in per-instance scope
  double cost_threshold = 0.0;
  double ucs_nodes = 0.0;
  double ubb_nodes = 0.0;
  double sffs_nodes = 0.0;
  std::uint64_t node_threshold = 0;
};

struct DynamicsRow {
  int degree = 0;
  double mean_dfs_calls = 0.0;
  double mean_minmax_calls = 0.0;
  double ratio = 0.0;  // mean_dfs_calls / mean_minmax_calls
};

struct OptimalResult {
  std::vector<ResultRow> rows;
  std::vector<RunRecord> runs;
};

struct SuboptimalResult {
  std::vector<ThresholdRow> thresholds;
  std::vector<ResultRow> rows;  // step three
  std::vector<RunRecord> runs;  // step three
};

/// The step-three node budget: the largest step-one/two node count, rounded up.
std::uint64_t node_threshold(double ucs_nodes, double ubb_nodes, double sffs_nodes);

/// Every configured algorithm on every instance, no stop criterion.
OptimalResult run_optimal(const ExperimentConfig& config);

/// Three steps on one instance set: SFFS costs give cost targets, UCS and UBB
/// runs against those targets give node counts, and the largest node count
/// (SFFS included) becomes the budget for a final run of all three.
SuboptimalResult run_suboptimal(const ExperimentConfig& config);

std::vector<DynamicsRow> dynamics_from_runs(const std::vector<RunRecord>& runs);
/// UCS-only optimal runs summarized as DFS calls per minimal/maximal call.
std::vector<DynamicsRow> dynamics_profile(const ExperimentConfig& config);

/// Marks RunRecord::best per (degree, instance) and aggregates rows.
std::vector<ResultRow> summarize(std::vector<RunRecord>& runs, const std::vector<Algorithm>& order);

/// A rendered table: fixed column order, preformatted cells.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const;
  /// {"columns": [...], "rows": [{column: value}]}; numeric cells become numbers.
  std::string to_json() const;
};

enum class ReportFormat { csv, json };

Table results_table(const std::vector<ResultRow>& rows);
/// Wall-clock columns, seconds and log2 seconds. Only meaningful for single-job runs.
Table timing_table(const std::vector<ResultRow>& rows);
Table thresholds_table(const std::vector<ThresholdRow>& rows);
Table dynamics_table(const std::vector<DynamicsRow>& rows);

void emit_report(const Table& table, ReportFormat format, const std::filesystem::path& path);

}  // namespace ucurve
