#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scarp/ga.hpp"
#include "scarp/simulator.hpp"

namespace scarp {

struct RunConfig {
  std::string instance_path;
  std::string approach = "tight";
  double k_noise = 0.1;
  int n_replications = 1000;
  std::uint64_t seed = 1;
  int nc = 30;
  double pm = 0.1;
  long mni = 20000;
  long mnui = 6000;
  double stop_ratio = 1.05;
  std::optional<double> reference;
  bool replication = true;
  int replication_threads = 1;
  std::string solution_out;
  std::string log_out;
  bool baseline = false;  // suites compare the other approaches against this run

  void check() const;
  GaParams ga_params() const;
  ObjectiveSpec objective() const;
};

struct EmpiricalColumns {
  double mean_cost = 0.0;
  double mean_trips = 0.0;
  double extra_trip_rate = 0.0;
  double std_cost = 0.0;
  double std_trips = 0.0;
  double variability = 0.0;
  bool operator==(const EmpiricalColumns&) const = default;
};

struct ResultRow {
  std::string instance;
  std::string approach;
  std::uint64_t seed = 0;
  double fitness = 0.0;
  double h = 0.0;
  int t = 0;
  double mean_H = 0.0;
  double sigma_H = 0.0;
  double mean_T = 0.0;
  double sigma_T = 0.0;
  double prob_extra = 0.0;
  std::optional<EmpiricalColumns> empirical;
  double total_time_s = 0.0;
  double time_to_best_s = 0.0;

  bool operator==(const ResultRow&) const = default;
};

struct Experiment {
  ResultRow row;
  Solution best;
  RunLog log;
};

// Optimizes, then replicates the best solution unless replication is off.
// Writes the solution and log files named in the config. Errors are rethrown
// as std::runtime_error prefixed with the instance path.
Experiment run_experiment_detailed(const RunConfig& config);
ResultRow run_experiment(const RunConfig& config);

std::string results_csv_header();
std::string to_csv_line(const ResultRow& row);
std::string to_csv(const std::vector<ResultRow>& rows);
std::vector<ResultRow> parse_results_csv(std::string_view text);

// Averages, over the instances shared with the baseline, of the comparison
// ratios used by the result tables (fractions, not percents).
struct ApproachSummary {
  std::string approach;
  int instances = 0;
  double gap_h = 0.0;              // (h(Si) - h(S)) / h(S)
  double gap_mean_H = 0.0;         // (mean_H(Si) - h(S)) / h(S)
  std::optional<double> gap_empirical;    // (H(Si,n) - h(Si)) / h(Si)
  std::optional<double> extra_trip_rate;  // p(Si,n)
  std::optional<double> variability;      // sigma_H(Si,n) / H(Si,n)
  std::optional<double> analytic_gap;     // (mean_H(Si) - H(Si,n)) / mean_H(Si)
};

struct SuiteResult {
  std::vector<ResultRow> rows;  // config order
  std::vector<ApproachSummary> summary;  // empty without a baseline
  std::vector<std::string> errors;       // one per failed config
  bool ok() const { return errors.empty(); }
};

// Runs every config (jobs workers) and aggregates against the baseline runs.
SuiteResult run_suite(const std::vector<RunConfig>& configs, int jobs = 1);
std::vector<ApproachSummary> summarize(const std::vector<ResultRow>& rows, const std::vector<bool>& is_baseline);

// Fixed two-decimal table for people, percentages where the paper uses them.
std::string format_table(const std::vector<ResultRow>& rows);
std::string format_summary(const std::vector<ApproachSummary>& summary);

}  // namespace scarp
