#pragma once

// Shared fixtures and independent reference computations for the tests.

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "scarp/graph.hpp"
#include "scarp/instance.hpp"

namespace scarp::testing {

struct RandomInstanceSpec {
  int nodes = 8;
  int edges = 12;
  int required = 8;  // at most `edges`
  int max_cost = 20;
  int max_demand = 5;
  double capacity = 10;
};

// Connected random graph: a random spanning tree plus extra edges. The first
// `required` edges (after shuffling) carry demand.
inline Instance random_instance(std::mt19937_64& rng, const RandomInstanceSpec& s, const std::string& name = "rnd") {
  Instance inst;
  inst.name = name;
  inst.node_count = s.nodes;
  inst.depot = 1;
  inst.capacity = s.capacity;
  std::set<std::pair<int, int>> used;
  std::vector<std::pair<int, int>> pairs;
  for (int v = 2; v <= s.nodes; ++v) {
    const int u = std::uniform_int_distribution<int>(1, v - 1)(rng);
    used.insert({u, v});
    pairs.push_back({u, v});
  }
  const int max_edges = s.nodes * (s.nodes - 1) / 2;
  while (static_cast<int>(pairs.size()) < std::min(s.edges, max_edges)) {
    int a = std::uniform_int_distribution<int>(1, s.nodes)(rng);
    int b = std::uniform_int_distribution<int>(1, s.nodes)(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (used.insert({a, b}).second) pairs.push_back({a, b});
  }
  std::shuffle(pairs.begin(), pairs.end(), rng);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    Edge e;
    e.u = pairs[i].first;
    e.v = pairs[i].second;
    e.cost = std::uniform_int_distribution<int>(1, s.max_cost)(rng);
    e.demand = static_cast<int>(i) < s.required ? std::uniform_int_distribution<int>(1, s.max_demand)(rng) : 0;
    inst.edges.push_back(e);
  }
  return inst;
}

// Floyd-Warshall on the raw edge list, independent of the library's Dijkstra.
inline std::vector<std::vector<double>> floyd(const Instance& inst) {
  const int n = inst.node_count;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n + 1, std::vector<double>(n + 1, inf));
  for (int i = 1; i <= n; ++i) d[i][i] = 0;
  for (const auto& e : inst.edges) {
    d[e.u][e.v] = std::min(d[e.u][e.v], e.cost);
    d[e.v][e.u] = std::min(d[e.v][e.u], e.cost);
  }
  for (int k = 1; k <= n; ++k)
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

// Endpoints of a task orientation straight from the edge list.
struct OrientedTask {
  int tail, head;
  double cost, demand;
};

inline OrientedTask oriented(const Instance& inst, const ArcTable& arcs, ArcId a) {
  const Arc& arc = arcs[a];
  return {arc.tail, arc.head, arc.cost, arc.demand};
}

// Out-of-library cost of a trip: depot legs, services and connecting paths.
inline double trip_cost_oracle(const Instance& inst, const ArcTable& arcs, const std::vector<std::vector<double>>& d,
                               const std::vector<ArcId>& tasks) {
  double c = 0;
  int at = inst.depot;
  for (ArcId a : tasks) {
    const auto o = oriented(inst, arcs, a);
    c += d[at][o.tail] + o.cost;
    at = o.head;
  }
  return c + d[at][inst.depot];
}

inline double normal_cdf_oracle(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Path graph 1-2-3-4 with unit costs and the given demands on (1,2),(2,3),(3,4).
inline Instance path_instance(double capacity, double q1, double q2, double q3) {
  Instance inst;
  inst.name = "path";
  inst.node_count = 4;
  inst.depot = 1;
  inst.capacity = capacity;
  inst.edges = {{1, 2, 1, q1}, {2, 3, 1, q2}, {3, 4, 1, q3}};
  return inst;
}

}  // namespace scarp::testing
