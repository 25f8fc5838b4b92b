// scarp: optimize and replicate stochastic CARP solutions.
//
//   scarp solve --instance gdb1.txt --approach law-meanstd:10 --out rows.csv
//   scarp suite --manifest runs.txt --out rows.csv
//   scarp convert --classic gdb1.dat --out gdb1.txt --reference 316

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scarp/experiment.hpp"
#include "scarp/instance.hpp"
#include "scarp/text.hpp"

namespace {

struct RunOptions {
  scarp::RunConfig config;
  bool no_replication = false;
  double reference = 0.0;
};

void add_run_options(CLI::App& app, RunOptions& o) {
  auto& c = o.config;
  app.add_option("--instance", c.instance_path, "Instance file (canonical or classic format)")->required();
  app.add_option("--approach", c.approach, "Objective, e.g. tight, slack:0.9, law-meanstd:10")->required();
  app.add_option("--k-noise", c.k_noise, "Demand standard deviation coefficient")->capture_default_str();
  app.add_option("--replications", c.n_replications, "Monte-Carlo replications")->capture_default_str();
  app.add_option("--seed", c.seed, "Random seed")->capture_default_str();
  app.add_option("--nc", c.nc, "Population size")->capture_default_str();
  app.add_option("--pm", c.pm, "Local search rate")->capture_default_str();
  app.add_option("--mni", c.mni, "Maximum iterations")->capture_default_str();
  app.add_option("--mnui", c.mnui, "Maximum iterations without improvement")->capture_default_str();
  app.add_option("--stop-ratio", c.stop_ratio, "Stop once best <= ratio x reference")->capture_default_str();
  app.add_option("--reference", o.reference, "Reference cost overriding the instance's");
  app.add_flag("--no-replication", o.no_replication, "Skip the replication phase");
  app.add_option("--threads", c.replication_threads, "Replication worker threads")->capture_default_str();
  app.add_option("--solution-out", c.solution_out, "Write the best solution here");
  app.add_option("--log-out", c.log_out, "Write the GA log CSV here");
}

scarp::RunConfig finish(const CLI::App& app, RunOptions o) {
  o.config.replication = !o.no_replication;
  if (app.count("--reference")) o.config.reference = o.reference;
  return o.config;
}

std::vector<scarp::RunConfig> read_manifest(const std::string& path) {
  std::vector<scarp::RunConfig> configs;
  std::istringstream in(scarp::text::read_file(path));
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (scarp::text::trim(line).empty()) continue;
    CLI::App entry{"manifest entry"};
    RunOptions o;
    bool baseline = false;
    add_run_options(entry, o);
    entry.add_flag("--baseline", baseline);
    try {
      entry.parse(line, false);
    } catch (const CLI::ParseError& e) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    auto config = finish(entry, o);
    config.baseline = baseline;
    configs.push_back(std::move(config));
  }
  if (configs.empty()) throw std::runtime_error(path + ": manifest lists no runs");
  return configs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic CARP solver"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "Optimize one instance, then replicate the best solution");
  RunOptions solve_opts;
  std::string solve_out;
  add_run_options(*solve, solve_opts);
  solve->add_option("--out", solve_out, "Results CSV");

  auto* suite = app.add_subcommand("suite", "Run every configuration listed in a manifest");
  std::string manifest, suite_out;
  int jobs = 1;
  suite->add_option("--manifest", manifest, "One solve argument line per run; --baseline marks the reference runs")
      ->required();
  suite->add_option("--out", suite_out, "Results CSV");
  suite->add_option("--jobs", jobs, "Concurrent runs")->capture_default_str();

  auto* convert = app.add_subcommand("convert", "Convert a classic .dat instance to the canonical format");
  std::string classic, convert_out;
  double convert_ref = 0.0;
  convert->add_option("--classic", classic, "Classic instance file")->required();
  convert->add_option("--out", convert_out, "Canonical output file")->required();
  convert->add_option("--reference", convert_ref, "Reference cost to record");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      const auto row = scarp::run_experiment(finish(*solve, solve_opts));
      std::cout << scarp::format_table({row});
      if (!solve_out.empty()) scarp::text::write_file(solve_out, scarp::to_csv({row}));
      return 0;
    }
    if (*suite) {
      const auto result = scarp::run_suite(read_manifest(manifest), jobs);
      std::cout << scarp::format_table(result.rows);
      const auto summary = scarp::format_summary(result.summary);
      if (!summary.empty()) std::cout << '\n' << summary;
      if (!suite_out.empty()) scarp::text::write_file(suite_out, scarp::to_csv(result.rows));
      for (const auto& e : result.errors) std::cerr << "error: " << e << '\n';
      return result.ok() ? 0 : 1;
    }
    if (*convert) {
      auto instance = scarp::import_classic(scarp::text::read_file(classic));
      if (convert->count("--reference")) instance.reference_cost = convert_ref;
      scarp::text::write_file(convert_out, scarp::serialize_instance(instance));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
