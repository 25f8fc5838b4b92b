#include "scarp/graph.hpp"

#include <functional>
#include <queue>
#include <stdexcept>
#include <utility>

namespace scarp {

ArcTable::ArcTable(const Instance& instance) {
  arcs_.reserve(2 * instance.edges.size());
  for (const auto& e : instance.edges) {
    const int task = e.required() ? static_cast<int>(task_arcs_.size()) : -1;
    if (task >= 0) task_arcs_.push_back(static_cast<ArcId>(arcs_.size()));
    arcs_.push_back({e.u, e.v, e.cost, e.demand, task});
    arcs_.push_back({e.v, e.u, e.cost, e.demand, task});
  }
}

ArcTable build_arc_table(const Instance& instance) { return ArcTable(instance); }

DistanceMatrix all_pairs_shortest_paths(const Instance& instance) {
  const int n = instance.node_count;
  std::vector<std::vector<std::pair<NodeId, double>>> adj(n + 1);
  for (const auto& e : instance.edges) {
    adj[e.u].emplace_back(e.v, e.cost);
    adj[e.v].emplace_back(e.u, e.cost);
  }

  DistanceMatrix dist(n);
  using Item = std::pair<double, NodeId>;
  for (NodeId src = 1; src <= n; ++src) {
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist.at(src, src) = 0.0;
    pq.emplace(0.0, src);
    while (!pq.empty()) {
      auto [d, x] = pq.top();
      pq.pop();
      if (d > dist(src, x)) continue;
      for (auto [y, c] : adj[x]) {
        const double nd = d + c;
        if (nd < dist(src, y)) {
          dist.at(src, y) = nd;
          pq.emplace(nd, y);
        }
      }
    }
  }
  return dist;
}

namespace {

Instance checked(Instance inst) {
  auto violations = validate(inst);
  if (!violations.empty()) throw std::invalid_argument("invalid instance: " + violations.front());
  return inst;
}

}  // namespace

Problem::Problem(Instance inst)
    : instance(checked(std::move(inst))), arcs(instance), dist(all_pairs_shortest_paths(instance)) {}

}  // namespace scarp
