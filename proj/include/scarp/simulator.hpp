#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "scarp/stochastic.hpp"

namespace scarp {

// Realized demand of every task, indexed by 0-based task number.
struct Scenario {
  std::vector<double> realized_demand;
};

struct Failure {
  int trip = 0;
  int position = 0;  // index of the task the vehicle could not start
  bool operator==(const Failure&) const = default;
};

struct ExecutionResult {
  double cost = 0.0;  // H(S, w)
  int trips = 0;      // T(S, w)
  std::vector<Failure> failures;
};

struct ReplicationStats {
  double mean_cost = 0.0;
  double mean_trips = 0.0;
  double extra_trip_rate = 0.0;
  double std_cost = 0.0;
  double std_trips = 0.0;
  double variability = 0.0;  // std_cost / mean_cost
  int n = 0;

  bool operator==(const ReplicationStats&) const = default;
};

// Draws N(q, (k q)^2) per task, redrawn until it falls in [1, Q].
// Throws std::invalid_argument if a task has q < 1 or q > Q.
Scenario sample_scenario(const Problem& problem, double k_noise, std::mt19937_64& rng);

// Services each trip in planned order. Before a task whose realized demand
// does not fit, the vehicle detours from its position to the depot and back.
ExecutionResult execute_with_recourse(const Solution& solution, const Scenario& scenario, const ArcTable& arcs,
                                      const DistanceMatrix& dist, NodeId depot, double capacity);
ExecutionResult execute_with_recourse(const Solution& solution, const Scenario& scenario, const Problem& problem);

struct ReplicationOptions {
  int threads = 1;
  std::string dump_path;  // per-replication CSV when non-empty
};

// n >= 2 independent replications. Replication i uses its own generator seeded
// from (seed, i); results are aggregated in index order, so the statistics do
// not depend on the thread count.
ReplicationStats replicate(const Solution& solution, const Problem& problem, double k_noise, int n,
                           std::uint64_t seed, const ReplicationOptions& options = {});

// Finite demand law: (value, probability) pairs.
using DiscreteLaw = std::vector<std::pair<double, double>>;

struct Expectation {
  double mean_cost = 0.0;
  double mean_trips = 0.0;
};

// Exact expectations by enumerating every joint scenario. laws[k] is the law
// of task k. Throws std::invalid_argument beyond 10^6 joint scenarios.
Expectation exact_expectation_oracle(const Solution& solution, const std::vector<DiscreteLaw>& laws,
                                     const ArcTable& arcs, const DistanceMatrix& dist, NodeId depot,
                                     double capacity);

}  // namespace scarp
