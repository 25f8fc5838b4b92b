#include "scarp/stochastic.hpp"

#include <algorithm>
#include <cmath>

namespace scarp {

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

double trip_failure_probability(double load, double sum_sq_demand, double k_noise, double capacity) {
  const double slack = capacity - load;
  const double sd = k_noise * std::sqrt(sum_sq_demand);
  if (!(sd > 0.0)) return slack > 0.0 ? 0.0 : (slack == 0.0 ? 0.5 : 1.0);
  return 1.0 - std_normal_cdf(slack / sd);
}

double trip_failure_probability(const Trip& trip, double k_noise, double capacity) {
  return trip_failure_probability(trip.load, trip.sum_sq_demand, k_noise, capacity);
}

double trip_detour_cost(const TripSummary& trip, const DistanceMatrix& dist, NodeId depot) {
  if (trip.size < 2) return 0.0;
  const NodeId a = trip.detour_from;
  const NodeId b = trip.detour_to;
  // Clamp rounding noise; the triangle inequality makes this non-negative.
  return std::max(0.0, dist(a, depot) + dist(depot, b) - dist(a, b));
}

double trip_detour_cost(const Trip& trip, const Problem& problem) {
  return trip_detour_cost(trip.summary(problem), problem.dist, problem.depot());
}

TripRobustness trip_robustness(double det_cost, double p, double s) {
  TripRobustness r;
  r.p = p;
  r.s = s;
  r.det_cost = det_cost;
  r.mean_cost = det_cost + s * p;
  r.var_cost = std::max(0.0, s * s * (p - p * p));
  return r;
}

TripRobustness trip_robustness(const TripSummary& trip, double k_noise, double capacity,
                               const DistanceMatrix& dist, NodeId depot) {
  return trip_robustness(trip.det_cost,
                         trip_failure_probability(trip.load, trip.sum_sq_demand, k_noise, capacity),
                         trip_detour_cost(trip, dist, depot));
}

TripRobustness trip_robustness(const Trip& trip, double k_noise, const Problem& problem) {
  return trip_robustness(trip.summary(problem), k_noise, problem.capacity(), problem.dist, problem.depot());
}

SolutionRobustness solution_robustness(std::span<const TripRobustness> trips) {
  SolutionRobustness r;
  r.t = static_cast<int>(trips.size());
  double survive = 1.0;
  for (const auto& tr : trips) {
    r.h += tr.det_cost;
    r.mean_H += tr.mean_cost;
    r.var_H += tr.var_cost;
    r.mean_T += 1.0 + tr.p;
    r.var_T += tr.p - tr.p * tr.p;
    survive *= 1.0 - tr.p;
    r.max_p = std::max(r.max_p, tr.p);
  }
  r.var_T = std::max(0.0, r.var_T);
  r.sigma_H = std::sqrt(r.var_H);
  r.sigma_T = std::sqrt(r.var_T);
  r.prob_extra = 1.0 - survive;
  return r;
}

SolutionRobustness solution_robustness(const Solution& solution, double k_noise, const Problem& problem) {
  std::vector<TripRobustness> trips;
  trips.reserve(solution.trips.size());
  for (const auto& trip : solution.trips) trips.push_back(trip_robustness(trip, k_noise, problem));
  return solution_robustness(trips);
}

double prob_extra_exceeds(std::span<const double> p, int m) {
  if (m < 0) return 1.0;
  const int n = static_cast<int>(p.size());
  if (m >= n) return 0.0;
  // pmf[c] = P{exactly c successes}, only counts 0..m are tracked.
  std::vector<double> pmf(m + 1, 0.0);
  pmf[0] = 1.0;
  for (double pj : p) {
    for (int c = m; c >= 1; --c) pmf[c] = pmf[c] * (1.0 - pj) + pmf[c - 1] * pj;
    pmf[0] *= 1.0 - pj;
  }
  double at_most = 0.0;
  for (double v : pmf) at_most += v;
  return std::clamp(1.0 - at_most, 0.0, 1.0);
}

}  // namespace scarp
