#include "scarp/objectives.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "scarp/text.hpp"

namespace scarp {

void ObjectiveSpec::check() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("objective: " + msg); };
  if (!(k_noise >= 0.0)) fail("k_noise must be >= 0");
  switch (kind) {
    case ObjectiveKind::Slack:
      if (!(slack > 0.0 && slack < 1.0)) fail("slack fraction must lie in (0,1)");
      break;
    case ObjectiveKind::LawMeanStd:
    case ObjectiveKind::Obj3:
      if (!(weight >= 0.0)) fail("weight must be >= 0");
      break;
    case ObjectiveKind::Obj2:
      if (!(epsilon > 0.0)) fail("eps must be > 0");
      if (extra_trips < 0) fail("m must be >= 0");
      break;
    case ObjectiveKind::Obj4:
      if (!(epsilon > 0.0)) fail("eps must be > 0");
      if (term == RobustTerm::MeanT) fail("obj4 constrains sigmaH or sigmaT");
      break;
    case ObjectiveKind::Obj5:
      if (!(epsilon > 0.0)) fail("eps must be > 0");
      break;
    default:
      break;
  }
}

namespace {

std::string_view base_name(CostBase b) { return b == CostBase::MeanH ? "meanH" : "h"; }

std::string_view term_name(RobustTerm t) {
  switch (t) {
    case RobustTerm::SigmaH: return "sigmaH";
    case RobustTerm::MeanT: return "meanT";
    case RobustTerm::SigmaT: return "sigmaT";
  }
  return "";
}

double number(std::string_view v, std::string_view what) {
  auto x = text::parse_real(v);
  if (!x) throw std::invalid_argument("objective: bad number for " + std::string(what) + ": '" + std::string(v) + "'");
  return *x;
}

}  // namespace

ObjectiveSpec parse_objective(std::string_view input) {
  const auto textv = text::trim(input);
  const auto colon = textv.find(':');
  const std::string_view name = textv.substr(0, colon);
  const std::string_view args = colon == std::string_view::npos ? std::string_view{} : textv.substr(colon + 1);

  ObjectiveSpec spec;
  auto no_args = [&] {
    if (!args.empty()) throw std::invalid_argument("objective: '" + std::string(name) + "' takes no arguments");
  };
  auto keyed = [&](std::initializer_list<std::string_view> allowed) {
    std::map<std::string, std::string, std::less<>> kv;
    if (args.empty()) return kv;
    for (auto part : text::split(args, ',')) {
      auto eq = part.find('=');
      if (eq == std::string_view::npos) throw std::invalid_argument("objective: expected key=value, got '" + std::string(part) + "'");
      auto key = text::trim(part.substr(0, eq));
      bool ok = false;
      for (auto a : allowed) ok = ok || a == key;
      if (!ok) throw std::invalid_argument("objective: unknown key '" + std::string(key) + "'");
      kv[std::string(key)] = std::string(text::trim(part.substr(eq + 1)));
    }
    return kv;
  };
  auto parse_base = [](const std::string& v) {
    if (v == "meanH") return CostBase::MeanH;
    if (v == "h") return CostBase::H;
    throw std::invalid_argument("objective: base must be meanH or h");
  };
  auto parse_term = [](const std::string& v) {
    if (v == "sigmaH") return RobustTerm::SigmaH;
    if (v == "meanT") return RobustTerm::MeanT;
    if (v == "sigmaT") return RobustTerm::SigmaT;
    throw std::invalid_argument("objective: term must be sigmaH, meanT or sigmaT");
  };
  auto require = [](const auto& kv, const char* key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw std::invalid_argument(std::string("objective: missing ") + key);
    return it->second;
  };

  if (name == "tight") {
    no_args();
    spec.kind = ObjectiveKind::Tight;
  } else if (name == "slack") {
    spec.kind = ObjectiveKind::Slack;
    spec.slack = number(args, "slack");
  } else if (name == "law-mean") {
    no_args();
    spec.kind = ObjectiveKind::LawMean;
  } else if (name == "law-meanstd") {
    spec.kind = ObjectiveKind::LawMeanStd;
    spec.weight = number(args, "k");
  } else if (name == "obj2") {
    auto kv = keyed({"eps", "m", "base"});
    spec.kind = ObjectiveKind::Obj2;
    spec.epsilon = number(require(kv, "eps"), "eps");
    if (kv.count("m")) {
      auto m = text::parse_int(kv["m"]);
      if (!m) throw std::invalid_argument("objective: m must be an integer");
      spec.extra_trips = static_cast<int>(*m);
    }
    if (kv.count("base")) spec.base = parse_base(kv["base"]);
  } else if (name == "obj3") {
    auto kv = keyed({"k", "term", "base"});
    spec.kind = ObjectiveKind::Obj3;
    spec.weight = number(require(kv, "k"), "k");
    if (kv.count("term")) spec.term = parse_term(kv["term"]);
    if (kv.count("base")) spec.base = parse_base(kv["base"]);
  } else if (name == "obj4") {
    auto kv = keyed({"eps", "term", "base"});
    spec.kind = ObjectiveKind::Obj4;
    spec.epsilon = number(require(kv, "eps"), "eps");
    if (kv.count("term")) spec.term = parse_term(kv["term"]);
    if (kv.count("base")) spec.base = parse_base(kv["base"]);
  } else if (name == "obj5") {
    auto kv = keyed({"eps", "base"});
    spec.kind = ObjectiveKind::Obj5;
    spec.epsilon = number(require(kv, "eps"), "eps");
    if (kv.count("base")) spec.base = parse_base(kv["base"]);
  } else {
    throw std::invalid_argument("objective: unknown approach '" + std::string(name) + "'");
  }
  spec.check();
  return spec;
}

std::string to_string(const ObjectiveSpec& spec) {
  using text::format_real;
  const std::string base = "base=" + std::string(base_name(spec.base));
  switch (spec.kind) {
    case ObjectiveKind::Tight: return "tight";
    case ObjectiveKind::Slack: return "slack:" + format_real(spec.slack);
    case ObjectiveKind::LawMean: return "law-mean";
    case ObjectiveKind::LawMeanStd: return "law-meanstd:" + format_real(spec.weight);
    case ObjectiveKind::Obj2:
      return "obj2:eps=" + format_real(spec.epsilon) + ",m=" + std::to_string(spec.extra_trips) + "," + base;
    case ObjectiveKind::Obj3:
      return "obj3:k=" + format_real(spec.weight) + ",term=" + std::string(term_name(spec.term)) + "," + base;
    case ObjectiveKind::Obj4:
      return "obj4:eps=" + format_real(spec.epsilon) + ",term=" + std::string(term_name(spec.term)) + "," + base;
    case ObjectiveKind::Obj5: return "obj5:eps=" + format_real(spec.epsilon) + "," + base;
  }
  return "";
}

double effective_capacity(const ObjectiveSpec& spec, double capacity) {
  return spec.kind == ObjectiveKind::Slack ? spec.slack * capacity : capacity;
}

namespace {

double base_value(const SolutionRobustness& r, CostBase base) { return base == CostBase::MeanH ? r.mean_H : r.h; }

double term_value(const SolutionRobustness& r, RobustTerm term) {
  switch (term) {
    case RobustTerm::SigmaH: return r.sigma_H;
    case RobustTerm::MeanT: return r.mean_T;
    case RobustTerm::SigmaT: return r.sigma_T;
  }
  return 0.0;
}

}  // namespace

double fitness_value(const SolutionRobustness& r, std::span<const TripRobustness> trips, const ObjectiveSpec& spec) {
  switch (spec.kind) {
    case ObjectiveKind::Tight:
    case ObjectiveKind::Slack:
      return r.h;
    case ObjectiveKind::LawMean:
      return r.mean_H;
    case ObjectiveKind::LawMeanStd:
      return r.mean_H + spec.weight * r.sigma_H;
    case ObjectiveKind::Obj2: {
      std::vector<double> p;
      p.reserve(trips.size());
      for (const auto& tr : trips) p.push_back(tr.p);
      const double tail = spec.extra_trips == 0 ? r.prob_extra : prob_extra_exceeds(p, spec.extra_trips);
      return tail > spec.epsilon ? kInfinity : base_value(r, spec.base);
    }
    case ObjectiveKind::Obj3:
      return base_value(r, spec.base) + spec.weight * term_value(r, spec.term);
    case ObjectiveKind::Obj4:
      return term_value(r, spec.term) > spec.epsilon ? kInfinity : base_value(r, spec.base);
    case ObjectiveKind::Obj5:
      return r.max_p > spec.epsilon ? kInfinity : base_value(r, spec.base);
  }
  return kInfinity;
}

Fitness fitness(const Solution& solution, const ObjectiveSpec& spec, const Problem& problem) {
  if (!fits_capacity(solution, effective_capacity(spec, problem.capacity())))
    throw InfeasibleError("fitness: a trip exceeds the effective capacity");
  std::vector<TripRobustness> trips;
  trips.reserve(solution.trips.size());
  for (const auto& trip : solution.trips) trips.push_back(trip_robustness(trip, spec.k_noise, problem));
  Fitness f;
  f.robustness = solution_robustness(trips);
  f.value = fitness_value(f.robustness, trips, spec);
  return f;
}

double split_weight(const TripSummary& trip, const ObjectiveSpec& spec, const Problem& problem) {
  if (spec.kind == ObjectiveKind::Tight || spec.kind == ObjectiveKind::Slack) return trip.det_cost;
  const auto r = trip_robustness(trip, spec.k_noise, problem.capacity(), problem.dist, problem.depot());
  switch (spec.kind) {
    case ObjectiveKind::LawMean:
      return r.mean_cost;
    case ObjectiveKind::LawMeanStd:
      return r.mean_cost + spec.weight * std::sqrt(r.var_cost);
    case ObjectiveKind::Obj3: {
      const double base = spec.base == CostBase::MeanH ? r.mean_cost : r.det_cost;
      double term = 0.0;
      switch (spec.term) {
        case RobustTerm::SigmaH: term = std::sqrt(r.var_cost); break;
        case RobustTerm::MeanT: term = 1.0 + r.p; break;
        case RobustTerm::SigmaT: term = std::sqrt(std::max(0.0, r.p - r.p * r.p)); break;
      }
      return base + spec.weight * term;
    }
    default:  // constrained objectives split like their unconstrained parent
      return spec.base == CostBase::MeanH ? r.mean_cost : r.det_cost;
  }
}

SplitResult split(std::span<const ArcId> tour, const ObjectiveSpec& spec, const Problem& problem) {
  return split_weighted(tour, problem, effective_capacity(spec, problem.capacity()),
                        [&](const TripSummary& t) { return split_weight(t, spec, problem); });
}

}  // namespace scarp
