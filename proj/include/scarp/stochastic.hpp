#pragma once

#include <span>
#include <vector>

#include "scarp/solution.hpp"

namespace scarp {

// Demand law of one task: N(mean, (k_noise * mean)^2) truncated to [lower, upper].
struct DemandLaw {
  double mean = 0.0;
  double sigma = 0.0;
  double lower = 1.0;
  double upper = 0.0;

  static DemandLaw for_task(double mean, double k_noise, double capacity) {
    return {mean, k_noise * mean, 1.0, capacity};
  }
};

struct TripRobustness {
  double p = 0.0;          // probability of a depot return
  double s = 0.0;          // extra cost of that return
  double det_cost = 0.0;
  double mean_cost = 0.0;  // det_cost + s p
  double var_cost = 0.0;   // s^2 (p - p^2)
};

struct SolutionRobustness {
  double h = 0.0;
  int t = 0;
  double mean_H = 0.0;
  double var_H = 0.0;
  double sigma_H = 0.0;
  double mean_T = 0.0;
  double var_T = 0.0;
  double sigma_T = 0.0;
  double prob_extra = 0.0;  // P{T > t}: at least one extra trip
  double max_p = 0.0;
};

// Standard normal CDF through the complementary error function.
double std_normal_cdf(double x);

// p = 1 - phi((Q - sum q) / (k sqrt(sum q^2))), untruncated Gaussian sum.
// With k_noise = 0 the law is degenerate: 0 below capacity, 1/2 at capacity,
// 1 above it.
double trip_failure_probability(double load, double sum_sq_demand, double k_noise, double capacity);
double trip_failure_probability(const Trip& trip, double k_noise, double capacity);

// d(a, s) + d(s, b) - d(a, b) for the detour before the last task; 0 for
// one-task trips.
double trip_detour_cost(const TripSummary& trip, const DistanceMatrix& dist, NodeId depot);
double trip_detour_cost(const Trip& trip, const Problem& problem);

TripRobustness trip_robustness(double det_cost, double p, double s);
TripRobustness trip_robustness(const TripSummary& trip, double k_noise, double capacity,
                               const DistanceMatrix& dist, NodeId depot);
TripRobustness trip_robustness(const Trip& trip, double k_noise, const Problem& problem);

// Aggregates per-trip terms under the at-most-one-failure, before-last-task model.
SolutionRobustness solution_robustness(std::span<const TripRobustness> trips);
SolutionRobustness solution_robustness(const Solution& solution, double k_noise, const Problem& problem);

// P{sum of independent Bernoulli(p_j) > m}, exact DP over the count.
double prob_extra_exceeds(std::span<const double> p, int m);

}  // namespace scarp
