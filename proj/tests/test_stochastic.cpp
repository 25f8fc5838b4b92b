#include <doctest.h>

#include <random>

#include "scarp/stochastic.hpp"
#include "support.hpp"

using namespace scarp;

namespace {

// Composite Simpson integral of the standard normal density from 0 to x.
double normal_cdf_quadrature(double x) {
  const int n = 20000;
  const double h = x / n;
  auto f = [](double u) { return std::exp(-0.5 * u * u) / std::sqrt(2 * M_PI); };
  double s = f(0) + f(x);
  for (int i = 1; i < n; ++i) s += f(i * h) * (i % 2 ? 4 : 2);
  return 0.5 + s * h / 3;
}

}  // namespace

TEST_CASE("normal cdf") {
  CHECK(std_normal_cdf(0) == 0.5);
  CHECK(std_normal_cdf(1.0) == doctest::Approx(0.8413447).epsilon(1e-6));
  for (double x : {0.3, 1.7, 2.5, 4.0, 6.5}) {
    CHECK(std_normal_cdf(x) + std_normal_cdf(-x) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(std_normal_cdf(x) - normal_cdf_quadrature(x)) < 1e-10);
  }
}

TEST_CASE("failure probability matches a Gaussian Monte-Carlo estimate") {
  // Demands {4,4}, Q = 10, k = 0.1: z = 2 / (0.1 sqrt(32)) ~ 3.5355.
  const double p = trip_failure_probability(8, 32, 0.1, 10);
  CHECK(p == doctest::Approx(1 - testing::normal_cdf_oracle(2 / (0.1 * std::sqrt(32.0)))));
  CHECK(p == doctest::Approx(2.03e-4).epsilon(0.01));

  std::mt19937_64 rng(17);
  std::normal_distribution<double> n4(4, 0.4);
  const int draws = 2'000'000;
  int over = 0;
  for (int i = 0; i < draws; ++i) over += n4(rng) + n4(rng) > 10;
  const double mc = static_cast<double>(over) / draws;
  const double se = std::sqrt(p * (1 - p) / draws);
  CHECK(std::abs(mc - p) < 4 * se);

  // A bigger probability estimated the same way.
  std::normal_distribution<double> n5(5, 1.0), n3(3, 0.6);
  over = 0;
  for (int i = 0; i < draws; ++i) over += n5(rng) + n3(rng) > 9;
  const double p2 = trip_failure_probability(8, 34, 0.2, 9);
  CHECK(std::abs(static_cast<double>(over) / draws - p2) < 4 * std::sqrt(p2 * (1 - p2) / draws));
}

TEST_CASE("failure probability edge cases") {
  CHECK(trip_failure_probability(10, 50, 0.3, 10) == 0.5);
  CHECK(trip_failure_probability(9, 81, 0.0, 10) == 0.0);
  CHECK(trip_failure_probability(10, 100, 0.0, 10) == 0.5);
  CHECK(trip_failure_probability(11, 121, 0.0, 10) == 1.0);
  CHECK(trip_failure_probability(5, 25, 1e-6, 10) < 1e-12);
}

TEST_CASE("detour cost on the path graph") {
  // Arcs: 0 = 1->2, 2 = 2->3, 4 = 3->4 and their opposites 1, 3, 5.
  const Problem p(testing::path_instance(10, 1, 1, 1));
  // Last two tasks (2->3),(3->4): d(3,1) + d(1,3) - d(3,3) = 2 + 2 - 0.
  CHECK(trip_detour_cost(evaluate_trip(std::vector<ArcId>{0, 2, 4}, p), p) == 4);
  // (1->2),(3->4): d(2,1) + d(1,3) - d(2,3) = 1 + 2 - 1.
  CHECK(trip_detour_cost(evaluate_trip(std::vector<ArcId>{0, 4}, p), p) == 2);
  // One-task trips never detour.
  CHECK(trip_detour_cost(evaluate_trip(std::vector<ArcId>{4}, p), p) == 0);
}

TEST_CASE("detour collapses when the depot joins the last two tasks") {
  const Problem p(testing::path_instance(10, 1, 1, 1));
  CHECK(trip_detour_cost(evaluate_trip(std::vector<ArcId>{1, 4}, p), p) == 0);  // (2->1) ends at the depot
  CHECK(trip_detour_cost(evaluate_trip(std::vector<ArcId>{4, 0}, p), p) == 0);  // (1->2) starts there
}

TEST_CASE("trip robustness arithmetic") {
  const auto r = trip_robustness(100, 0.5, 10);
  CHECK(r.mean_cost == 105);
  CHECK(r.var_cost == 25);
  CHECK(trip_robustness(100, 0, 10).mean_cost == 100);
  CHECK(trip_robustness(100, 0, 10).var_cost == 0);
  CHECK(trip_robustness(100, 1, 10).mean_cost == 110);
  CHECK(trip_robustness(100, 1, 10).var_cost == 0);
}

TEST_CASE("solution robustness aggregates") {
  const std::vector<TripRobustness> trips = {trip_robustness(10, 0.1, 2), trip_robustness(20, 0.2, 3),
                                             trip_robustness(30, 0.3, 4)};
  const auto r = solution_robustness(trips);
  CHECK(r.t == 3);
  CHECK(r.h == 60);
  CHECK(r.mean_T == doctest::Approx(3.6));
  CHECK(r.var_T == doctest::Approx(0.46));
  CHECK(r.prob_extra == doctest::Approx(0.496));
  CHECK(r.max_p == 0.3);
  CHECK(r.mean_H == doctest::Approx(60 + 0.2 + 0.6 + 1.2));
  CHECK(r.var_H == doctest::Approx(4 * 0.09 + 9 * 0.16 + 16 * 0.21));
  CHECK(r.sigma_H == doctest::Approx(std::sqrt(r.var_H)));

  const std::vector<TripRobustness> safe = {trip_robustness(7, 0, 5), trip_robustness(8, 0, 1)};
  const auto z = solution_robustness(safe);
  CHECK(z.mean_H == z.h);
  CHECK(z.sigma_H == 0);
  CHECK(z.prob_extra == 0);
}

TEST_CASE("poisson-binomial tail") {
  const std::vector<double> p = {0.1, 0.2, 0.3};
  CHECK(prob_extra_exceeds(p, 0) == doctest::Approx(0.496).epsilon(1e-12));
  CHECK(prob_extra_exceeds(p, 1) == doctest::Approx(0.098).epsilon(1e-12));
  CHECK(prob_extra_exceeds(std::vector<double>{0.5, 0.5}, 1) == doctest::Approx(0.25));
  CHECK(prob_extra_exceeds(p, 3) == 0);
  CHECK(prob_extra_exceeds(p, -1) == 1);

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> q(1 + i % 10);
    for (auto& x : q) x = u(rng);
    double survive = 1;
    for (double x : q) survive *= 1 - x;
    CHECK(prob_extra_exceeds(q, 0) == doctest::Approx(1 - survive).epsilon(1e-12));
  }
}

TEST_CASE("per-trip terms from a problem") {
  const Problem p(testing::path_instance(4, 2, 1, 2));
  const Trip trip = evaluate_trip(std::vector<ArcId>{0, 2, 4}, p);
  const auto r = trip_robustness(trip, 0.2, p);
  CHECK(r.p == doctest::Approx(1 - testing::normal_cdf_oracle(-1 / (0.2 * 3))));
  CHECK(r.det_cost == 6);
  CHECK(r.s == 4);
  CHECK(r.mean_cost == doctest::Approx(6 + 4 * r.p));
}
