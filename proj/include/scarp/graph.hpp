#pragma once

#include <limits>
#include <vector>

#include "scarp/instance.hpp"

namespace scarp {

// Arc ids are 0-based: edge e yields arcs 2e (u->v) and 2e+1 (v->u), so the
// opposite arc is a ^ 1.
using ArcId = int;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

inline constexpr ArcId inv(ArcId a) { return a ^ 1; }

struct Arc {
  NodeId tail = 0;
  NodeId head = 0;
  double cost = 0.0;
  double demand = 0.0;
  int task = -1;  // 0-based task index, -1 when the edge is not required
};

class ArcTable {
 public:
  ArcTable() = default;
  explicit ArcTable(const Instance& instance);

  int arc_count() const { return static_cast<int>(arcs_.size()); }
  int task_count() const { return static_cast<int>(task_arcs_.size()); }
  const Arc& operator[](ArcId a) const { return arcs_[a]; }
  // Forward arc (u->v as listed in the file) of a task.
  ArcId task_arc(int task) const { return task_arcs_[task]; }
  bool is_task(ArcId a) const { return arcs_[a].task >= 0; }

 private:
  std::vector<Arc> arcs_;
  std::vector<ArcId> task_arcs_;
};

ArcTable build_arc_table(const Instance& instance);

// Shortest-path costs over the undirected network, indexed by 1-based node ids.
// Unreachable pairs hold kInfinity.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(int node_count)
      : n_(node_count), d_(static_cast<std::size_t>(node_count + 1) * (node_count + 1), kInfinity) {}

  int node_count() const { return n_; }
  double operator()(NodeId i, NodeId j) const { return d_[index(i, j)]; }
  double& at(NodeId i, NodeId j) { return d_[index(i, j)]; }

 private:
  std::size_t index(NodeId i, NodeId j) const {
    return static_cast<std::size_t>(i) * (n_ + 1) + static_cast<std::size_t>(j);
  }
  int n_ = 0;
  std::vector<double> d_;
};

// Dijkstra from every node.
DistanceMatrix all_pairs_shortest_paths(const Instance& instance);

// Everything the solvers need about one instance, built once.
struct Problem {
  Instance instance;
  ArcTable arcs;
  DistanceMatrix dist;

  explicit Problem(Instance inst);

  NodeId depot() const { return instance.depot; }
  double capacity() const { return instance.capacity; }
  int task_count() const { return arcs.task_count(); }
};

}  // namespace scarp
