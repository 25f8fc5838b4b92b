#include <doctest.h>

#include <random>

#include "benchmark_criteria.hpp"
#include "support.hpp"

using namespace scarp;

namespace {

std::vector<bench::Named> synthetic_set() {
  std::mt19937_64 rng(31);
  std::vector<bench::Named> set;
  for (int i = 0; i < 4; ++i) {
    testing::RandomInstanceSpec s;
    s.nodes = 9 + i;
    s.edges = 16 + i;
    s.required = 16 + i;
    s.capacity = 10;
    set.push_back({"syn" + std::to_string(i), Problem(testing::random_instance(rng, s))});
  }
  return set;
}

GaParams small_params() {
  GaParams p;
  p.mni = 300;
  p.mnui = 100;
  return p;
}

}  // namespace

TEST_CASE("benchmark lookup reports missing files") {
  CHECK_FALSE(bench::find_gdb("no/such/dir").has_value());
}

TEST_CASE("analytic gap machinery") {
  const auto o = bench::analytic_gap(synthetic_set(), small_params(), 0.1, 200, 0.05);
  CHECK(o.detail.find("mean gap") != std::string::npos);
}

TEST_CASE("tight quality machinery") {
  auto set = synthetic_set();
  std::vector<double> ref;
  for (const auto& s : set) ref.push_back(run_ga(s.problem, ObjectiveSpec::tight(), small_params()).best.value());
  // The same seed reproduces the references exactly.
  GaParams params = small_params();
  const auto o = bench::tight_quality(set, ref, params, {1}, 0.0, 4, 0);
  CHECK_MESSAGE(o.pass, o.detail);
  // An unreachable reference fails honestly.
  ref[0] *= 0.5;
  CHECK_FALSE(bench::tight_quality(set, ref, params, {1}, 0.03, 4, 0).pass);
}

TEST_CASE("robustness ordering machinery") {
  bench::RobustnessOrder r;
  const auto o = bench::robustness_ordering(synthetic_set(), small_params(), 200, 0.5, 0.85, 3, &r);
  CHECK(r.k_noise > 0);
  CHECK(r.tight_rate >= 0.5);
  CHECK(r.tight_rate <= 0.85);
  CHECK(r.var_tight >= 0);
  CHECK(o.detail.find("variability") != std::string::npos);
}
