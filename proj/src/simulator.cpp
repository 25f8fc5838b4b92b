#include "scarp/simulator.hpp"

#include <cassert>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "scarp/text.hpp"

namespace scarp {

Scenario sample_scenario(const Problem& problem, double k_noise, std::mt19937_64& rng) {
  const double cap = problem.capacity();
  const int t = problem.task_count();
  Scenario s;
  s.realized_demand.resize(t);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int k = 0; k < t; ++k) {
    const double q = problem.arcs[problem.arcs.task_arc(k)].demand;
    if (q < 1.0 || q > cap)
      throw std::invalid_argument("sample_scenario: task " + std::to_string(k) + " has demand " +
                                  text::format_real(q) + " outside [1, Q]");
    if (k_noise == 0.0) {
      s.realized_demand[k] = q;
      continue;
    }
    double x;
    do {
      x = q + k_noise * q * normal(rng);
    } while (x < 1.0 || x > cap);
    s.realized_demand[k] = x;
  }
  return s;
}

ExecutionResult execute_with_recourse(const Solution& solution, const Scenario& scenario, const ArcTable& arcs,
                                      const DistanceMatrix& dist, NodeId depot, double capacity) {
  ExecutionResult r;
  r.cost = solution.cost;
  r.trips = solution.trip_count();
  for (int ti = 0; ti < solution.trip_count(); ++ti) {
    const auto& tasks = solution.trips[ti].tasks;
    double load = 0.0;
    NodeId at = depot;
    for (int pos = 0; pos < static_cast<int>(tasks.size()); ++pos) {
      const Arc& arc = arcs[tasks[pos]];
      const double q = scenario.realized_demand[arc.task];
      assert(q <= capacity);
      if (load + q > capacity) {
        r.cost += dist(at, depot) + dist(depot, arc.tail) - dist(at, arc.tail);
        r.failures.push_back({ti, pos});
        ++r.trips;
        load = 0.0;
      }
      load += q;
      at = arc.head;
    }
  }
  return r;
}

ExecutionResult execute_with_recourse(const Solution& solution, const Scenario& scenario, const Problem& problem) {
  return execute_with_recourse(solution, scenario, problem.arcs, problem.dist, problem.depot(), problem.capacity());
}

namespace {

std::mt19937_64 replication_rng(std::uint64_t seed, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  return std::mt19937_64(seq);
}

}  // namespace

ReplicationStats replicate(const Solution& solution, const Problem& problem, double k_noise, int n,
                           std::uint64_t seed, const ReplicationOptions& options) {
  if (n < 2) throw std::invalid_argument("replicate: n must be >= 2");
  if (!(k_noise >= 0.0)) throw std::invalid_argument("replicate: k_noise must be >= 0");
  std::vector<ExecutionResult> runs(n);
  auto work = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      auto rng = replication_rng(seed, i);
      runs[i] = execute_with_recourse(solution, sample_scenario(problem, k_noise, rng), problem);
    }
  };
  const int threads = std::max(1, std::min(options.threads, n));
  if (threads == 1) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (int w = 0; w < threads; ++w) {
      const int begin = static_cast<int>(static_cast<long>(n) * w / threads);
      const int end = static_cast<int>(static_cast<long>(n) * (w + 1) / threads);
      pool.emplace_back([&, w, begin, end] {
        try {
          work(begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  ReplicationStats st;
  st.n = n;
  int with_failure = 0;
  for (const auto& r : runs) {
    st.mean_cost += r.cost;
    st.mean_trips += r.trips;
    if (!r.failures.empty()) ++with_failure;
  }
  st.mean_cost /= n;
  st.mean_trips /= n;
  double ss_cost = 0.0, ss_trips = 0.0;
  for (const auto& r : runs) {
    ss_cost += (r.cost - st.mean_cost) * (r.cost - st.mean_cost);
    ss_trips += (r.trips - st.mean_trips) * (r.trips - st.mean_trips);
  }
  st.std_cost = std::sqrt(ss_cost / (n - 1));
  st.std_trips = std::sqrt(ss_trips / (n - 1));
  st.extra_trip_rate = static_cast<double>(with_failure) / n;
  st.variability = st.mean_cost > 0.0 ? st.std_cost / st.mean_cost : 0.0;

  if (!options.dump_path.empty()) {
    std::ofstream out(options.dump_path);
    if (!out) throw std::runtime_error("replicate: cannot write " + options.dump_path);
    out << "replication,cost,trips,failures\n";
    for (int i = 0; i < n; ++i)
      out << i << ',' << text::format_real(runs[i].cost) << ',' << runs[i].trips << ',' << runs[i].failures.size()
          << '\n';
  }
  return st;
}

Expectation exact_expectation_oracle(const Solution& solution, const std::vector<DiscreteLaw>& laws,
                                     const ArcTable& arcs, const DistanceMatrix& dist, NodeId depot,
                                     double capacity) {
  const int t = static_cast<int>(laws.size());
  double states = 1.0;
  for (const auto& law : laws) {
    if (law.empty()) throw std::invalid_argument("exact_expectation_oracle: empty demand law");
    states *= static_cast<double>(law.size());
  }
  if (states > 1e6) throw std::invalid_argument("exact_expectation_oracle: more than 10^6 joint scenarios");

  Expectation e;
  std::vector<std::size_t> idx(t, 0);
  Scenario sc;
  sc.realized_demand.resize(t);
  for (;;) {
    double prob = 1.0;
    for (int k = 0; k < t; ++k) {
      sc.realized_demand[k] = laws[k][idx[k]].first;
      prob *= laws[k][idx[k]].second;
    }
    const auto r = execute_with_recourse(solution, sc, arcs, dist, depot, capacity);
    e.mean_cost += prob * r.cost;
    e.mean_trips += prob * r.trips;
    int k = 0;
    while (k < t && ++idx[k] == laws[k].size()) idx[k++] = 0;
    if (k == t) break;
  }
  return e;
}

}  // namespace scarp
