#pragma once

#include <string>
#include <string_view>

#include "scarp/stochastic.hpp"

namespace scarp {

enum class ObjectiveKind { Tight, Slack, LawMean, LawMeanStd, Obj2, Obj3, Obj4, Obj5 };

// Base value that the constrained and weighted objectives build on.
enum class CostBase { MeanH, H };

// Term penalised (Obj3) or constrained (Obj4).
enum class RobustTerm { SigmaH, MeanT, SigmaT };

// One entry of the objective catalog. The canonical string forms are
//   tight | slack:<k> | law-mean | law-meanstd:<k>
//   obj2:eps=<e>,m=<m>,base=meanH|h
//   obj3:k=<w>,term=sigmaH|meanT|sigmaT,base=meanH|h
//   obj4:eps=<e>,term=sigmaH|sigmaT,base=meanH|h
//   obj5:eps=<e>,base=meanH|h
struct ObjectiveSpec {
  ObjectiveKind kind = ObjectiveKind::Tight;
  double slack = 1.0;      // capacity fraction, Slack only
  double weight = 0.0;     // k of LawMeanStd / Obj3
  double epsilon = 0.0;    // Obj2 / Obj4 / Obj5 bound
  int extra_trips = 0;     // m of Obj2
  CostBase base = CostBase::MeanH;
  RobustTerm term = RobustTerm::SigmaH;
  double k_noise = 0.1;    // demand standard deviation coefficient

  static ObjectiveSpec tight() { return {}; }
  static ObjectiveSpec slack_of(double k) { return {.kind = ObjectiveKind::Slack, .slack = k}; }
  static ObjectiveSpec law_mean() { return {.kind = ObjectiveKind::LawMean}; }
  static ObjectiveSpec law_mean_std(double k) { return {.kind = ObjectiveKind::LawMeanStd, .weight = k}; }

  ObjectiveSpec with_noise(double k) const {
    ObjectiveSpec s = *this;
    s.k_noise = k;
    return s;
  }

  // Checks the parameter invariants; throws std::invalid_argument.
  void check() const;
  bool operator==(const ObjectiveSpec&) const = default;
};

ObjectiveSpec parse_objective(std::string_view text);
std::string to_string(const ObjectiveSpec& spec);

// k Q under Slack, Q otherwise.
double effective_capacity(const ObjectiveSpec& spec, double capacity);

struct Fitness {
  double value = 0.0;  // +inf when a constraint is violated
  SolutionRobustness robustness;
};

// Exact fitness of a whole solution. Robustness terms always use the nominal
// capacity Q. Throws InfeasibleError if a trip exceeds the effective capacity.
Fitness fitness(const Solution& solution, const ObjectiveSpec& spec, const Problem& problem);

// Fitness from already computed per-trip terms (used by local search).
double fitness_value(const SolutionRobustness& r, std::span<const TripRobustness> trips, const ObjectiveSpec& spec);

// Additive per-trip weight used by the split. Deterministic objectives use the
// trip cost; stochastic ones use the trip's expected cost plus the weighted
// per-trip spread, an upper bound of the non-additive solution-level term.
double split_weight(const TripSummary& trip, const ObjectiveSpec& spec, const Problem& problem);

SplitResult split(std::span<const ArcId> tour, const ObjectiveSpec& spec, const Problem& problem);

}  // namespace scarp
