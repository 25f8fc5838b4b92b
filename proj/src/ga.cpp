#include "scarp/ga.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "scarp/text.hpp"

namespace scarp {

void GaParams::check() const {
  if (nc < 3) throw std::invalid_argument("ga: nc must be >= 3");
  if (!(pm >= 0.0 && pm <= 1.0)) throw std::invalid_argument("ga: pm must lie in [0,1]");
  if (mni < 0 || mnui < 0) throw std::invalid_argument("ga: iteration limits must be >= 0");
  if (!(stop_ratio > 0.0)) throw std::invalid_argument("ga: stop ratio must be positive");
  if (ls_max_iters < 0) throw std::invalid_argument("ga: ls_max_iters must be >= 0");
}

Chromosome evaluate(GiantTour tour, const ObjectiveSpec& spec, const Problem& problem) {
  Chromosome c;
  c.solution = split(tour, spec, problem).solution;
  c.fitness = fitness(c.solution, spec, problem);
  c.tour = std::move(tour);
  return c;
}

bool is_clone(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= 1e-6 * std::max(1.0, std::abs(a));
}

bool Population::has_clone(double value, int except) const {
  for (int i = 0; i < size(); ++i)
    if (i != except && is_clone(members_[i].value(), value)) return true;
  return false;
}

bool Population::insert(Chromosome c) {
  if (has_clone(c.value())) return false;
  auto pos = std::upper_bound(members_.begin(), members_.end(), c.value(),
                              [](double v, const Chromosome& m) { return v < m.value(); });
  members_.insert(pos, std::move(c));
  return true;
}

void Population::replace_at(int k, Chromosome c) {
  members_.erase(members_.begin() + k);
  auto pos = std::upper_bound(members_.begin(), members_.end(), c.value(),
                              [](double v, const Chromosome& m) { return v < m.value(); });
  members_.insert(pos, std::move(c));
}

// ---------------------------------------------------------------------------
// Constructive heuristics

namespace {

double fitness_or_inf(const Solution& s, const ObjectiveSpec& spec, const Problem& problem) {
  return fitness(s, spec, problem).value;
}

}  // namespace

Solution path_scanning(const Problem& problem, const ObjectiveSpec& spec) {
  const auto& arcs = problem.arcs;
  const auto& d = problem.dist;
  const NodeId s = problem.depot();
  const double cap = effective_capacity(spec, problem.capacity());
  const int t = problem.task_count();

  Solution best;
  double best_value = kInfinity;
  bool have_best = false;
  for (int rule = 0; rule < 5; ++rule) {
    std::vector<bool> served(t, false);
    int left = t;
    std::vector<std::vector<ArcId>> trips;
    while (left > 0) {
      std::vector<ArcId> route;
      double load = 0.0;
      NodeId at = s;
      for (;;) {
        ArcId pick = -1;
        double pick_dist = kInfinity;
        for (int k = 0; k < t; ++k) {
          if (served[k]) continue;
          for (ArcId a : {arcs.task_arc(k), inv(arcs.task_arc(k))}) {
            const Arc& arc = arcs[a];
            if (load + arc.demand > cap) continue;
            const double dist = d(at, arc.tail);
            bool take = false;
            if (pick < 0 || dist < pick_dist) {
              take = true;
            } else if (dist == pick_dist) {
              const Arc& cur = arcs[pick];
              const double ratio_a = arc.demand / arc.cost, ratio_c = cur.demand / cur.cost;
              switch (rule) {
                case 0: take = d(arc.head, s) > d(cur.head, s); break;
                case 1: take = d(arc.head, s) < d(cur.head, s); break;
                case 2: take = ratio_a > ratio_c; break;
                case 3: take = ratio_a < ratio_c; break;
                default:
                  take = load < cap / 2.0 ? d(arc.head, s) > d(cur.head, s) : d(arc.head, s) < d(cur.head, s);
              }
            }
            if (take) {
              pick = a;
              pick_dist = dist;
            }
          }
        }
        if (pick < 0) break;
        route.push_back(pick);
        load += arcs[pick].demand;
        at = arcs[pick].head;
        served[arcs[pick].task] = true;
        --left;
      }
      if (route.empty()) throw InfeasibleError("path_scanning: a task exceeds the effective capacity");
      trips.push_back(std::move(route));
    }
    Solution sol = make_solution(trips, problem);
    const double value = fitness_or_inf(sol, spec, problem);
    if (!have_best || value < best_value) {
      best = std::move(sol);
      best_value = value;
      have_best = true;
    }
  }
  return best;
}

Solution augment_merge(const Problem& problem, const ObjectiveSpec& spec) {
  const auto& arcs = problem.arcs;
  const auto& d = problem.dist;
  const NodeId s = problem.depot();
  const double cap = effective_capacity(spec, problem.capacity());
  const int t = problem.task_count();

  struct Route {
    std::vector<ArcId> tasks;
    double load = 0.0;
    double cost = 0.0;
    bool alive = true;
  };
  auto out_and_back = [&](ArcId a) { return d(s, arcs[a].tail) + arcs[a].cost + d(arcs[a].head, s); };

  std::vector<Route> routes;
  routes.reserve(t);
  for (int k = 0; k < t; ++k) {
    ArcId a = arcs.task_arc(k);
    if (out_and_back(inv(a)) < out_and_back(a)) a = inv(a);
    if (arcs[a].demand > cap) throw InfeasibleError("augment_merge: a task exceeds the effective capacity");
    routes.push_back({{a}, arcs[a].demand, out_and_back(a), true});
  }

  // Augment: longest trips first absorb single tasks lying on their paths.
  std::vector<int> order(t);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return routes[x].cost > routes[y].cost; });
  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    Route& big = routes[order[oi]];
    if (!big.alive) continue;
    for (std::size_t oj = oi + 1; oj < order.size(); ++oj) {
      Route& small = routes[order[oj]];
      if (!small.alive || small.tasks.size() != 1) continue;
      if (big.load + small.load > cap) continue;
      const ArcId task = small.tasks.front();
      bool placed = false;
      for (std::size_t pos = 0; pos <= big.tasks.size() && !placed; ++pos) {
        const NodeId from = pos == 0 ? s : arcs[big.tasks[pos - 1]].head;
        const NodeId to = pos == big.tasks.size() ? s : arcs[big.tasks[pos]].tail;
        for (ArcId a : {task, inv(task)}) {
          const double extra = d(from, arcs[a].tail) + arcs[a].cost + d(arcs[a].head, to) - d(from, to);
          if (extra <= 1e-9 * std::max(1.0, big.cost)) {
            big.tasks.insert(big.tasks.begin() + static_cast<long>(pos), a);
            big.load += small.load;
            small.alive = false;
            placed = true;
            break;
          }
        }
      }
    }
  }

  // Merge: repeatedly apply the best positive saving.
  auto first_node = [&](const std::vector<ArcId>& r, bool rev) { return rev ? arcs[r.back()].head : arcs[r.front()].tail; };
  auto last_node = [&](const std::vector<ArcId>& r, bool rev) { return rev ? arcs[r.front()].tail : arcs[r.back()].head; };
  for (;;) {
    double best_saving = 1e-9;
    int bi = -1, bj = -1, bmode = -1;
    for (int i = 0; i < t; ++i) {
      if (!routes[i].alive) continue;
      for (int j = i + 1; j < t; ++j) {
        if (!routes[j].alive || routes[i].load + routes[j].load > cap) continue;
        // Modes: i+j, i+rev(j), rev(i)+j, j+i.
        for (int mode = 0; mode < 4; ++mode) {
          const bool swap = mode == 3;
          const auto& A = swap ? routes[j].tasks : routes[i].tasks;
          const auto& B = swap ? routes[i].tasks : routes[j].tasks;
          const bool revA = mode == 2, revB = mode == 1;
          const NodeId endA = last_node(A, revA), startB = first_node(B, revB);
          const double saving = d(endA, s) + d(s, startB) - d(endA, startB);
          if (saving > best_saving) {
            best_saving = saving;
            bi = i;
            bj = j;
            bmode = mode;
          }
        }
      }
    }
    if (bi < 0) break;
    Route& ri = routes[bi];
    Route& rj = routes[bj];
    std::vector<ArcId> merged;
    switch (bmode) {
      case 0: merged = ri.tasks; merged.insert(merged.end(), rj.tasks.begin(), rj.tasks.end()); break;
      case 1: { merged = ri.tasks; auto r = reversed(rj.tasks); merged.insert(merged.end(), r.begin(), r.end()); break; }
      case 2: { merged = reversed(ri.tasks); merged.insert(merged.end(), rj.tasks.begin(), rj.tasks.end()); break; }
      default: merged = rj.tasks; merged.insert(merged.end(), ri.tasks.begin(), ri.tasks.end()); break;
    }
    ri.tasks = std::move(merged);
    ri.load += rj.load;
    ri.cost = ri.cost + rj.cost - best_saving;
    rj.alive = false;
  }

  std::vector<std::vector<ArcId>> trips;
  for (const auto& r : routes)
    if (r.alive) trips.push_back(r.tasks);
  return make_solution(trips, problem);
}

// ---------------------------------------------------------------------------
// Population management and genetic operators

GiantTour random_tour(const ArcTable& arcs, Rng& rng) {
  GiantTour tour(arcs.task_count());
  for (int k = 0; k < arcs.task_count(); ++k) tour[k] = arcs.task_arc(k);
  std::shuffle(tour.begin(), tour.end(), rng);
  for (auto& a : tour)
    if (rng() & 1U) a = inv(a);
  return tour;
}

Population init_population(const Problem& problem, const ObjectiveSpec& spec, const GaParams& params, Rng& rng) {
  Population pop;
  pop.insert(evaluate(concat(path_scanning(problem, spec)), spec, problem));
  if (pop.size() < params.nc) pop.insert(evaluate(concat(augment_merge(problem, spec)), spec, problem));
  const long max_draws = 50L * params.nc;
  for (long draw = 0; draw < max_draws && pop.size() < params.nc; ++draw)
    pop.insert(evaluate(random_tour(problem.arcs, rng), spec, problem));
  if (pop.size() < 3)
    throw DegenerateInstance("init_population: only " + std::to_string(pop.size()) +
                             " distinct fitness value(s) found; instance is degenerate");
  return pop;
}

namespace {

int uniform_index(int n, Rng& rng) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

}  // namespace

std::pair<int, int> binary_tournament(const Population& population, Rng& rng) {
  const int n = population.size();
  auto one = [&] {
    const int a = uniform_index(n, rng);
    const int b = uniform_index(n, rng);
    return std::min(a, b);  // sorted ascending: lower rank is fitter
  };
  const int first = one();
  const int second = one();
  return {first, second};
}

std::pair<GiantTour, GiantTour> ox_crossover(const GiantTour& p1, const GiantTour& p2, int first, int last,
                                             const ArcTable& arcs) {
  const int t = static_cast<int>(p1.size());
  auto make_child = [&](const GiantTour& keep, const GiantTour& fill) {
    GiantTour child(t, -1);
    std::vector<bool> present(arcs.task_count(), false);
    for (int i = first; i <= last; ++i) {
      child[i] = keep[i];
      present[arcs[keep[i]].task] = true;
    }
    int pos = (last + 1) % t;
    for (int k = 0; k < t; ++k) {
      const ArcId a = fill[(last + 1 + k) % t];
      if (present[arcs[a].task]) continue;
      present[arcs[a].task] = true;
      child[pos] = a;
      pos = (pos + 1) % t;
    }
    return child;
  };
  return {make_child(p1, p2), make_child(p2, p1)};
}

std::pair<GiantTour, GiantTour> ox_crossover(const GiantTour& p1, const GiantTour& p2, const ArcTable& arcs,
                                             Rng& rng) {
  const int t = static_cast<int>(p1.size());
  int a = uniform_index(t, rng);
  int b = uniform_index(t, rng);
  if (a > b) std::swap(a, b);
  return ox_crossover(p1, p2, a, b, arcs);
}

int draw_victim(const Population& population, Rng& rng) {
  const int n = population.size();
  const int lo = (n + 1) / 2;  // ceil(n/2), 0-based
  if (lo >= n) return n - 1;
  return std::uniform_int_distribution<int>(lo, n - 1)(rng);
}

bool replace(Population& population, Chromosome child, int victim) {
  if (population.has_clone(child.value(), victim)) return false;
  population.replace_at(victim, std::move(child));
  return true;
}

bool replace(Population& population, Chromosome child, Rng& rng) {
  return replace(population, std::move(child), draw_victim(population, rng));
}

// ---------------------------------------------------------------------------
// Local search

namespace {

class LocalSearch {
 public:
  LocalSearch(const Solution& start, const ObjectiveSpec& spec, const Problem& problem)
      : spec_(spec), problem_(problem), cap_(effective_capacity(spec, problem.capacity())) {
    for (const auto& trip : start.trips) {
      routes_.push_back(trip.tasks);
      rob_.push_back(robustness_of(trip.tasks));
      load_.push_back(trip.load);
    }
    current_ = value_with({});
  }

  // Applies the first strictly improving move; false when none exists.
  bool step() {
    return relocate() || swap() || two_opt_intra() || two_opt_inter();
  }

  Solution result() const { return make_solution(routes_, problem_); }

 private:
  struct Change {
    int route;
    const std::vector<ArcId>* tasks;  // empty vector deletes the route
  };

  TripRobustness robustness_of(const std::vector<ArcId>& tasks) const {
    if (tasks.empty()) return {};
    const Trip trip = evaluate_trip(tasks, problem_);
    return trip_robustness(trip.summary(problem_), spec_.k_noise, problem_.capacity(), problem_.dist,
                           problem_.depot());
  }

  double load_of(const std::vector<ArcId>& tasks) const {
    double l = 0.0;
    for (ArcId a : tasks) l += problem_.arcs[a].demand;
    return l;
  }

  double value_with(std::initializer_list<Change> changes) {
    scratch_.clear();
    for (int r = 0; r < static_cast<int>(routes_.size()); ++r) {
      const Change* ch = nullptr;
      for (const auto& c : changes)
        if (c.route == r) ch = &c;
      if (!ch) {
        scratch_.push_back(rob_[r]);
      } else if (!ch->tasks->empty()) {
        scratch_.push_back(robustness_of(*ch->tasks));
      }
    }
    const auto agg = solution_robustness(scratch_);
    return fitness_value(agg, scratch_, spec_);
  }

  bool improves(double candidate) const {
    if (std::isinf(current_)) return !std::isinf(candidate);
    return candidate < current_ - 1e-9 * std::max(1.0, std::abs(current_));
  }

  bool try_apply(std::initializer_list<Change> changes) {
    for (const auto& c : changes)
      if (load_of(*c.tasks) > cap_) return false;
    const double v = value_with(changes);
    if (!improves(v)) return false;
    for (const auto& c : changes) {
      routes_[c.route] = *c.tasks;
      rob_[c.route] = robustness_of(routes_[c.route]);
      load_[c.route] = load_of(routes_[c.route]);
    }
    for (int r = static_cast<int>(routes_.size()) - 1; r >= 0; --r) {
      if (routes_[r].empty()) {
        routes_.erase(routes_.begin() + r);
        rob_.erase(rob_.begin() + r);
        load_.erase(load_.begin() + r);
      }
    }
    current_ = v;
    return true;
  }

  int route_count() const { return static_cast<int>(routes_.size()); }

  bool relocate() {
    for (int r1 = 0; r1 < route_count(); ++r1) {
      for (int i = 0; i < static_cast<int>(routes_[r1].size()); ++i) {
        const ArcId x = routes_[r1][i];
        std::vector<ArcId> removed = routes_[r1];
        removed.erase(removed.begin() + i);
        for (int r2 = 0; r2 < route_count(); ++r2) {
          const std::vector<ArcId>& target = r2 == r1 ? removed : routes_[r2];
          if (r2 != r1 && load_[r2] + problem_.arcs[x].demand > cap_) continue;
          for (int j = 0; j <= static_cast<int>(target.size()); ++j) {
            for (ArcId o : {x, inv(x)}) {
              if (r2 == r1 && j == i && o == x) continue;
              cand_a_ = target;
              cand_a_.insert(cand_a_.begin() + j, o);
              bool ok = r2 == r1 ? try_apply({{r1, &cand_a_}}) : try_apply({{r1, &removed}, {r2, &cand_a_}});
              if (ok) return true;
            }
          }
        }
      }
    }
    return false;
  }

  bool swap() {
    for (int r1 = 0; r1 < route_count(); ++r1) {
      for (int i = 0; i < static_cast<int>(routes_[r1].size()); ++i) {
        for (int r2 = r1; r2 < route_count(); ++r2) {
          const int j0 = r2 == r1 ? i + 1 : 0;
          for (int j = j0; j < static_cast<int>(routes_[r2].size()); ++j) {
            const ArcId x = routes_[r1][i], y = routes_[r2][j];
            for (ArcId ox : {x, inv(x)}) {
              for (ArcId oy : {y, inv(y)}) {
                if (r1 == r2) {
                  cand_a_ = routes_[r1];
                  cand_a_[i] = oy;
                  cand_a_[j] = ox;
                  if (try_apply({{r1, &cand_a_}})) return true;
                } else {
                  cand_a_ = routes_[r1];
                  cand_b_ = routes_[r2];
                  cand_a_[i] = oy;
                  cand_b_[j] = ox;
                  if (try_apply({{r1, &cand_a_}, {r2, &cand_b_}})) return true;
                }
              }
            }
          }
        }
      }
    }
    return false;
  }

  bool two_opt_intra() {
    for (int r = 0; r < route_count(); ++r) {
      const int n = static_cast<int>(routes_[r].size());
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          cand_a_ = routes_[r];
          std::reverse(cand_a_.begin() + i, cand_a_.begin() + j + 1);
          for (int k = i; k <= j; ++k) cand_a_[k] = inv(cand_a_[k]);
          if (try_apply({{r, &cand_a_}})) return true;
        }
      }
    }
    return false;
  }

  bool two_opt_inter() {
    for (int r1 = 0; r1 < route_count(); ++r1) {
      for (int r2 = r1 + 1; r2 < route_count(); ++r2) {
        const auto& A = routes_[r1];
        const auto& B = routes_[r2];
        const int na = static_cast<int>(A.size()), nb = static_cast<int>(B.size());
        for (int i = 0; i <= na; ++i) {
          for (int j = 0; j <= nb; ++j) {
            // A[:i] + B[j:] and B[:j] + A[i:]
            if (!((i == 0 && j == 0) || (i == na && j == nb))) {
              cand_a_.assign(A.begin(), A.begin() + i);
              cand_a_.insert(cand_a_.end(), B.begin() + j, B.end());
              cand_b_.assign(B.begin(), B.begin() + j);
              cand_b_.insert(cand_b_.end(), A.begin() + i, A.end());
              if (try_apply({{r1, &cand_a_}, {r2, &cand_b_}})) return true;
            }
            // A[:i] + rev(B[:j]) and rev(A[i:]) + B[j:]
            if (!((i == na && j == 0) || (i == 0 && j == nb))) {
              cand_a_.assign(A.begin(), A.begin() + i);
              for (int k = j - 1; k >= 0; --k) cand_a_.push_back(inv(B[k]));
              cand_b_.clear();
              for (int k = na - 1; k >= i; --k) cand_b_.push_back(inv(A[k]));
              cand_b_.insert(cand_b_.end(), B.begin() + j, B.end());
              if (try_apply({{r1, &cand_a_}, {r2, &cand_b_}})) return true;
            }
          }
        }
      }
    }
    return false;
  }

  const ObjectiveSpec& spec_;
  const Problem& problem_;
  double cap_;
  std::vector<std::vector<ArcId>> routes_;
  std::vector<TripRobustness> rob_;
  std::vector<double> load_;
  std::vector<TripRobustness> scratch_;
  std::vector<ArcId> cand_a_, cand_b_;
  double current_ = 0.0;
};

}  // namespace

Solution local_search(const Solution& solution, const ObjectiveSpec& spec, const Problem& problem, int max_iters) {
  LocalSearch ls(solution, spec, problem);
  for (int it = 0; it < max_iters; ++it)
    if (!ls.step()) break;
  return ls.result();
}

// ---------------------------------------------------------------------------
// Main loop

std::string RunLog::to_csv() const {
  std::ostringstream out;
  out << "iteration,best_fitness,elapsed_seconds\n";
  for (const auto& e : entries)
    out << e.iteration << ',' << text::format_real(e.best_fitness) << ',' << text::format_real(e.elapsed_seconds)
        << '\n';
  out << "total_time,," << text::format_real(total_time) << '\n';
  out << "time_to_best,," << text::format_real(time_to_best) << '\n';
  return out.str();
}

GaResult run_ga(const Problem& problem, const ObjectiveSpec& spec, const GaParams& params, Rng& rng) {
  params.check();
  spec.check();
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - t0).count(); };

  Population pop = init_population(problem, spec, params, rng);
  RunLog log;
  log.population_size = pop.size();
  log.entries.push_back({0, pop.best().value(), elapsed()});
  log.time_to_best = log.entries.back().elapsed_seconds;

  const std::optional<double> reference = params.reference ? params.reference : problem.instance.reference_cost;
  auto threshold_reached = [&] {
    return reference && pop.best().value() <= params.stop_ratio * *reference * (1.0 + 1e-12);
  };

  long ni = 0, nui = 0;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  log.stop_reason = "mni";
  while (true) {
    if (threshold_reached()) { log.stop_reason = "threshold"; break; }
    if (ni >= params.mni) { log.stop_reason = "mni"; break; }
    if (nui >= params.mnui) { log.stop_reason = "mnui"; break; }
    ++ni;

    const auto [i1, i2] = binary_tournament(pop, rng);
    auto children = ox_crossover(pop[i1].tour, pop[i2].tour, problem.arcs, rng);
    GiantTour kept = (rng() & 1U) ? std::move(children.second) : std::move(children.first);
    Chromosome child = evaluate(std::move(kept), spec, problem);
    const int victim = draw_victim(pop, rng);

    if (unit(rng) <= params.pm) {
      Solution improved = local_search(child.solution, spec, problem, params.ls_max_iters);
      Chromosome mutant = evaluate(concat(improved), spec, problem);
      if (!pop.has_clone(mutant.value(), victim)) child = std::move(mutant);
    }

    if (pop.has_clone(child.value(), victim)) continue;  // unproductive
    ++log.productive_iterations;
    const bool improved = child.value() < pop.best().value();
    nui = improved ? 0 : nui + 1;
    pop.replace_at(victim, std::move(child));
    if (improved) {
      log.entries.push_back({ni, pop.best().value(), elapsed()});
      log.time_to_best = log.entries.back().elapsed_seconds;
    }

#ifndef NDEBUG
    if (ni % 1000 == 0) {
      for (const auto& m : pop.members()) {
        [[maybe_unused]] const double again = evaluate(m.tour, spec, problem).value();
        assert(again == m.value() || (std::isinf(again) && std::isinf(m.value())));
      }
    }
#endif
  }
  log.iterations = ni;
  log.total_time = elapsed();
  return {pop.best(), std::move(log)};
}

GaResult run_ga(const Problem& problem, const ObjectiveSpec& spec, const GaParams& params) {
  Rng rng(params.seed);
  return run_ga(problem, spec, params, rng);
}

}  // namespace scarp
