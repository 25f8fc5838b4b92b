#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "scarp/graph.hpp"

namespace scarp {

// Delimiter-free sequence of task arcs; each task appears once, in one of its
// two orientations.
using GiantTour = std::vector<ArcId>;

class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// What the per-trip weights and robustness terms need to know about a trip.
// The detour endpoints describe a depot visit inserted just before the last
// task: from the head of the second-to-last task (or the depot for one-task
// trips) to the tail of the last task.
struct TripSummary {
  double det_cost = 0.0;
  double load = 0.0;
  double sum_sq_demand = 0.0;
  int size = 0;
  NodeId detour_from = 0;
  NodeId detour_to = 0;
};

struct Trip {
  std::vector<ArcId> tasks;
  double load = 0.0;
  double sum_sq_demand = 0.0;
  double det_cost = 0.0;

  TripSummary summary(const Problem& problem) const;
};

struct Solution {
  std::vector<Trip> trips;
  double cost = 0.0;  // h(S)

  int trip_count() const { return static_cast<int>(trips.size()); }
  int task_count() const;
};

// det_cost = d(s, tail(a1)) + sum of service costs + connecting paths + d(head(an), s).
Trip evaluate_trip(std::span<const ArcId> tasks, const Problem& problem);

// Builds a solution from trip task lists, recomputing every cost from scratch.
Solution make_solution(const std::vector<std::vector<ArcId>>& trips, const Problem& problem);

bool is_valid_tour(std::span<const ArcId> tour, const ArcTable& arcs);
bool covers_all_tasks(const Solution& solution, const ArcTable& arcs);
bool fits_capacity(const Solution& solution, double capacity);

// Reverses a trip: the task order flips and each task is serviced the other way.
std::vector<ArcId> reversed(std::span<const ArcId> tasks);

using TripWeight = std::function<double(const TripSummary&)>;

struct SplitResult {
  Solution solution;
  double weight = 0.0;
};

// Optimal segmentation of the tour into consecutive trips with load <= capacity,
// minimising the sum of trip weights (shortest path on the auxiliary DAG).
// Ties prefer fewer trips. Throws InfeasibleError if one task alone exceeds the
// capacity.
SplitResult split_weighted(std::span<const ArcId> tour, const Problem& problem, double capacity,
                           const TripWeight& weight);

// Deterministic split: weight = det_cost.
Solution split(std::span<const ArcId> tour, const Problem& problem, double capacity);

GiantTour concat(const Solution& solution);

// One line per trip of "u->v" task arcs after COST/TRIPS header lines.
std::string serialize_solution(const Solution& solution, const Problem& problem);
Solution parse_solution(std::string_view text, const Problem& problem);

}  // namespace scarp
