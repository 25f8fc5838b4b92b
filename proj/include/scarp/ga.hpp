#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "scarp/objectives.hpp"

namespace scarp {

using Rng = std::mt19937_64;

struct GaParams {
  int nc = 30;
  double pm = 0.1;
  long mni = 20000;
  long mnui = 6000;
  double stop_ratio = 1.05;
  std::uint64_t seed = 1;
  int ls_max_iters = 20;
  // Stop threshold reference; falls back to the instance's REFERENCE.
  std::optional<double> reference;

  void check() const;
};

class DegenerateInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Chromosome {
  GiantTour tour;
  Solution solution;
  Fitness fitness;

  double value() const { return fitness.value; }
};

// Splits the tour under the objective and scores the resulting trips exactly.
Chromosome evaluate(GiantTour tour, const ObjectiveSpec& spec, const Problem& problem);

// Clone rule: |a - b| <= 1e-6 max(1, |a|); two infinite values are clones.
bool is_clone(double a, double b);

// Members sorted by ascending fitness with pairwise distinct (non-clone) values.
class Population {
 public:
  int size() const { return static_cast<int>(members_.size()); }
  const Chromosome& operator[](int i) const { return members_[i]; }
  const Chromosome& best() const { return members_.front(); }
  const std::vector<Chromosome>& members() const { return members_; }

  // True if some member other than `except` has a fitness cloning `value`.
  bool has_clone(double value, int except = -1) const;

  // Adds when clone-free; keeps the order. Returns false on a clone.
  bool insert(Chromosome c);

  // Overwrites member k and restores the order.
  void replace_at(int k, Chromosome c);

 private:
  std::vector<Chromosome> members_;
};

// Greedy nearest-task construction, run with the five classic tie-break rules;
// returns the best of the five under the objective.
Solution path_scanning(const Problem& problem, const ObjectiveSpec& spec);

// One trip per task, absorb tasks lying on longer trips' shortest paths, then
// merge trip pairs by best positive saving.
Solution augment_merge(const Problem& problem, const ObjectiveSpec& spec);

// Both heuristic solutions plus random giant tours, clone-free; stops after
// nc * 50 random draws. The returned size is the updated nc. Throws
// DegenerateInstance when fewer than three distinct fitness values exist.
Population init_population(const Problem& problem, const ObjectiveSpec& spec, const GaParams& params, Rng& rng);

GiantTour random_tour(const ArcTable& arcs, Rng& rng);

// Indices of two parents, each the better of two uniform draws.
std::pair<int, int> binary_tournament(const Population& population, Rng& rng);

// Modified OX with explicit 0-based cut ranks first <= last.
std::pair<GiantTour, GiantTour> ox_crossover(const GiantTour& p1, const GiantTour& p2, int first, int last,
                                             const ArcTable& arcs);
std::pair<GiantTour, GiantTour> ox_crossover(const GiantTour& p1, const GiantTour& p2, const ArcTable& arcs,
                                             Rng& rng);

// First-improvement descent over relocations, swaps and both 2-opt moves,
// at most max_iters applied moves.
Solution local_search(const Solution& solution, const ObjectiveSpec& spec, const Problem& problem,
                      int max_iters = 20);

// Uniform over the worse half: 0-based ranks ceil(n/2) .. n-1.
int draw_victim(const Population& population, Rng& rng);

// Productive iff the child clones no member other than the victim.
bool replace(Population& population, Chromosome child, int victim);
bool replace(Population& population, Chromosome child, Rng& rng);

struct RunLogEntry {
  long iteration = 0;
  double best_fitness = 0.0;
  double elapsed_seconds = 0.0;
};

struct RunLog {
  std::vector<RunLogEntry> entries;  // one per improvement of the best
  long iterations = 0;
  long productive_iterations = 0;
  int population_size = 0;
  double total_time = 0.0;
  double time_to_best = 0.0;
  std::string stop_reason;

  std::string to_csv() const;
};

struct GaResult {
  Chromosome best;
  RunLog log;
};

GaResult run_ga(const Problem& problem, const ObjectiveSpec& spec, const GaParams& params, Rng& rng);
GaResult run_ga(const Problem& problem, const ObjectiveSpec& spec, const GaParams& params);

}  // namespace scarp
