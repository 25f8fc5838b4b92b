#include "scarp/solution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "scarp/text.hpp"

namespace scarp {

int Solution::task_count() const {
  int n = 0;
  for (const auto& trip : trips) n += static_cast<int>(trip.tasks.size());
  return n;
}

TripSummary Trip::summary(const Problem& problem) const {
  TripSummary s;
  s.det_cost = det_cost;
  s.load = load;
  s.sum_sq_demand = sum_sq_demand;
  s.size = static_cast<int>(tasks.size());
  s.detour_from = s.size >= 2 ? problem.arcs[tasks[s.size - 2]].head : problem.depot();
  s.detour_to = s.size >= 1 ? problem.arcs[tasks.back()].tail : problem.depot();
  return s;
}

Trip evaluate_trip(std::span<const ArcId> tasks, const Problem& problem) {
  if (tasks.empty()) throw std::invalid_argument("evaluate_trip: empty task list");
  const auto& arcs = problem.arcs;
  const auto& d = problem.dist;
  Trip trip;
  trip.tasks.assign(tasks.begin(), tasks.end());
  NodeId at = problem.depot();
  for (ArcId a : tasks) {
    const Arc& arc = arcs[a];
    trip.det_cost += d(at, arc.tail) + arc.cost;
    trip.load += arc.demand;
    trip.sum_sq_demand += arc.demand * arc.demand;
    at = arc.head;
  }
  trip.det_cost += d(at, problem.depot());
  return trip;
}

Solution make_solution(const std::vector<std::vector<ArcId>>& trips, const Problem& problem) {
  Solution s;
  for (const auto& tasks : trips) {
    if (tasks.empty()) continue;
    s.trips.push_back(evaluate_trip(tasks, problem));
    s.cost += s.trips.back().det_cost;
  }
  return s;
}

bool is_valid_tour(std::span<const ArcId> tour, const ArcTable& arcs) {
  if (static_cast<int>(tour.size()) != arcs.task_count()) return false;
  std::vector<bool> seen(arcs.task_count(), false);
  for (ArcId a : tour) {
    if (a < 0 || a >= arcs.arc_count() || !arcs.is_task(a)) return false;
    const int k = arcs[a].task;
    if (seen[k]) return false;
    seen[k] = true;
  }
  return true;
}

bool covers_all_tasks(const Solution& solution, const ArcTable& arcs) {
  return is_valid_tour(concat(solution), arcs);
}

bool fits_capacity(const Solution& solution, double capacity) {
  return std::all_of(solution.trips.begin(), solution.trips.end(),
                     [capacity](const Trip& t) { return t.load <= capacity; });
}

std::vector<ArcId> reversed(std::span<const ArcId> tasks) {
  std::vector<ArcId> out(tasks.rbegin(), tasks.rend());
  for (auto& a : out) a = inv(a);
  return out;
}

SplitResult split_weighted(std::span<const ArcId> tour, const Problem& problem, double capacity,
                           const TripWeight& weight) {
  const int t = static_cast<int>(tour.size());
  const auto& arcs = problem.arcs;
  const auto& d = problem.dist;
  const NodeId s = problem.depot();

  for (ArcId a : tour)
    if (arcs[a].demand > capacity)
      throw InfeasibleError("split: a task demand exceeds the effective capacity");

  // Label per DAG node i (= tour prefix of length i).
  std::vector<double> best(t + 1, kInfinity);
  std::vector<int> trips(t + 1, 0);
  std::vector<int> pred(t + 1, -1);
  best[0] = 0.0;

  for (int i = 0; i < t; ++i) {
    if (i > 0 && pred[i] < 0) continue;
    TripSummary seg;
    double inner = 0.0;  // service + connecting costs, no depot legs
    const NodeId start = arcs[tour[i]].tail;
    for (int j = i; j < t; ++j) {
      const Arc& arc = arcs[tour[j]];
      seg.load += arc.demand;
      if (seg.load > capacity) break;
      seg.sum_sq_demand += arc.demand * arc.demand;
      if (j > i) inner += d(arcs[tour[j - 1]].head, arc.tail);
      inner += arc.cost;
      seg.size = j - i + 1;
      seg.det_cost = d(s, start) + inner + d(arc.head, s);
      seg.detour_from = j > i ? arcs[tour[j - 1]].head : s;
      seg.detour_to = arc.tail;

      const double cand = best[i] + weight(seg);
      const double cur = best[j + 1];
      const double tol = 1e-12 * std::max(1.0, std::abs(cand));
      const bool better = pred[j + 1] < 0 || cand < cur - tol ||
                          (std::abs(cand - cur) <= tol && trips[i] + 1 < trips[j + 1]);
      if (better) {
        best[j + 1] = cand;
        trips[j + 1] = trips[i] + 1;
        pred[j + 1] = i;
      }
    }
  }
  if (t > 0 && pred[t] < 0) throw InfeasibleError("split: no feasible segmentation");

  std::vector<std::vector<ArcId>> segments;
  for (int j = t; j > 0; j = pred[j]) segments.emplace_back(tour.begin() + pred[j], tour.begin() + j);
  std::reverse(segments.begin(), segments.end());
  return {make_solution(segments, problem), best[t]};
}

Solution split(std::span<const ArcId> tour, const Problem& problem, double capacity) {
  return split_weighted(tour, problem, capacity, [](const TripSummary& s) { return s.det_cost; }).solution;
}

GiantTour concat(const Solution& solution) {
  GiantTour tour;
  tour.reserve(solution.task_count());
  for (const auto& trip : solution.trips) tour.insert(tour.end(), trip.tasks.begin(), trip.tasks.end());
  return tour;
}

std::string serialize_solution(const Solution& solution, const Problem& problem) {
  std::ostringstream out;
  out << "COST " << text::format_real(solution.cost) << '\n';
  out << "TRIPS " << solution.trip_count() << '\n';
  for (const auto& trip : solution.trips) {
    out << "TRIP";
    for (ArcId a : trip.tasks) out << ' ' << problem.arcs[a].tail << "->" << problem.arcs[a].head;
    out << '\n';
  }
  return out.str();
}

Solution parse_solution(std::string_view text_in, const Problem& problem) {
  const auto& arcs = problem.arcs;
  std::vector<bool> used(arcs.task_count(), false);
  std::vector<std::vector<ArcId>> trips;
  int declared = -1;

  std::istringstream in{std::string(text_in)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto tok = text::split_ws(raw);
    if (tok.empty() || tok[0].front() == '#') continue;
    if (tok[0] == "COST") continue;
    if (tok[0] == "TRIPS") {
      auto n = tok.size() == 2 ? text::parse_int(tok[1]) : std::nullopt;
      if (!n) throw ParseError(line_no, "TRIPS expects an integer");
      declared = static_cast<int>(*n);
      continue;
    }
    if (tok[0] != "TRIP") throw ParseError(line_no, "expected TRIP line");
    std::vector<ArcId> tasks;
    for (std::size_t i = 1; i < tok.size(); ++i) {
      auto arrow = tok[i].find("->");
      if (arrow == std::string_view::npos) throw ParseError(line_no, "task must be written u->v");
      auto u = text::parse_int(tok[i].substr(0, arrow));
      auto v = text::parse_int(tok[i].substr(arrow + 2));
      if (!u || !v) throw ParseError(line_no, "malformed task");
      ArcId found = -1;
      for (int k = 0; k < arcs.task_count() && found < 0; ++k) {
        if (used[k]) continue;
        const ArcId a = arcs.task_arc(k);
        if (arcs[a].tail == *u && arcs[a].head == *v) found = a;
        else if (arcs[inv(a)].tail == *u && arcs[inv(a)].head == *v) found = inv(a);
        if (found >= 0) used[k] = true;
      }
      if (found < 0) throw ParseError(line_no, "no unserviced task " + std::string(tok[i]));
      tasks.push_back(found);
    }
    if (tasks.empty()) throw ParseError(line_no, "empty trip");
    trips.push_back(std::move(tasks));
  }
  if (declared >= 0 && declared != static_cast<int>(trips.size()))
    throw ParseError(0, "TRIPS count does not match trip lines");
  return make_solution(trips, problem);
}

}  // namespace scarp
