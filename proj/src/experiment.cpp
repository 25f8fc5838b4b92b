#include "scarp/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <exception>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "scarp/text.hpp"

namespace scarp {

void RunConfig::check() const {
  if (instance_path.empty()) throw std::invalid_argument("run config: instance path is empty");
  if (!(k_noise >= 0.0)) throw std::invalid_argument("run config: k_noise must be >= 0");
  if (replication && n_replications < 2) throw std::invalid_argument("run config: replications must be >= 2");
  if (replication_threads < 1) throw std::invalid_argument("run config: replication threads must be >= 1");
  ga_params().check();
  objective();
}

GaParams RunConfig::ga_params() const {
  GaParams p;
  p.nc = nc;
  p.pm = pm;
  p.mni = mni;
  p.mnui = mnui;
  p.stop_ratio = stop_ratio;
  p.seed = seed;
  p.reference = reference;
  return p;
}

ObjectiveSpec RunConfig::objective() const { return parse_objective(approach).with_noise(k_noise); }

Experiment run_experiment_detailed(const RunConfig& config) {
  try {
    config.check();
    const ObjectiveSpec spec = config.objective();
    Problem problem(load_any_instance(config.instance_path));
    GaResult ga = run_ga(problem, spec, config.ga_params());

    Experiment ex;
    ex.best = ga.best.solution;
    ex.log = std::move(ga.log);
    ResultRow& row = ex.row;
    const auto& r = ga.best.fitness.robustness;
    row.instance = problem.instance.name;
    row.approach = to_string(spec);
    row.seed = config.seed;
    row.fitness = ga.best.value();
    row.h = r.h;
    row.t = r.t;
    row.mean_H = r.mean_H;
    row.sigma_H = r.sigma_H;
    row.mean_T = r.mean_T;
    row.sigma_T = r.sigma_T;
    row.prob_extra = r.prob_extra;
    row.total_time_s = ex.log.total_time;
    row.time_to_best_s = ex.log.time_to_best;
    if (config.replication) {
      ReplicationOptions opts;
      opts.threads = config.replication_threads;
      const auto st = replicate(ex.best, problem, config.k_noise, config.n_replications, config.seed, opts);
      row.empirical = EmpiricalColumns{st.mean_cost, st.mean_trips, st.extra_trip_rate,
                                       st.std_cost,  st.std_trips,  st.variability};
    }
    if (!config.solution_out.empty()) text::write_file(config.solution_out, serialize_solution(ex.best, problem));
    if (!config.log_out.empty()) text::write_file(config.log_out, ex.log.to_csv());
    return ex;
  } catch (const std::exception& e) {
    throw std::runtime_error(config.instance_path + " [" + config.approach + "]: " + e.what());
  }
}

ResultRow run_experiment(const RunConfig& config) { return run_experiment_detailed(config).row; }

// ---------------------------------------------------------------------------
// CSV

namespace {

constexpr const char* kColumns[] = {
    "instance",   "approach",   "seed",       "fitness",    "h",           "t",
    "mean_H",     "sigma_H",    "mean_T",     "sigma_T",    "prob_extra",  "emp_mean_cost",
    "emp_mean_trips", "emp_extra_trip_rate", "emp_std_cost", "emp_std_trips", "emp_variability",
    "total_time_s", "time_to_best_s"};
constexpr std::size_t kColumnCount = sizeof(kColumns) / sizeof(kColumns[0]);

std::string quoted(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> csv_fields(std::string_view line) {
  std::vector<std::string> fields(1);
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        in_quotes = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (in_quotes) throw std::invalid_argument("results csv: unterminated quote");
  return fields;
}

double real_field(const std::string& v, const char* name) {
  auto x = text::parse_real(v);
  if (!x) throw std::invalid_argument(std::string("results csv: bad ") + name + " '" + v + "'");
  return *x;
}

}  // namespace

std::string results_csv_header() {
  std::string h;
  for (std::size_t i = 0; i < kColumnCount; ++i) h += (i ? "," : "") + std::string(kColumns[i]);
  return h;
}

std::string to_csv_line(const ResultRow& row) {
  using text::format_real;
  std::vector<std::string> f = {quoted(row.instance), quoted(row.approach), std::to_string(row.seed),
                                format_real(row.fitness), format_real(row.h), std::to_string(row.t),
                                format_real(row.mean_H), format_real(row.sigma_H), format_real(row.mean_T),
                                format_real(row.sigma_T), format_real(row.prob_extra)};
  if (row.empirical) {
    const auto& e = *row.empirical;
    for (double v : {e.mean_cost, e.mean_trips, e.extra_trip_rate, e.std_cost, e.std_trips, e.variability})
      f.push_back(format_real(v));
  } else {
    f.insert(f.end(), 6, "");
  }
  f.push_back(format_real(row.total_time_s));
  f.push_back(format_real(row.time_to_best_s));
  std::string line;
  for (std::size_t i = 0; i < f.size(); ++i) line += (i ? "," : "") + f[i];
  return line;
}

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::string out = results_csv_header() + "\n";
  for (const auto& r : rows) out += to_csv_line(r) + "\n";
  return out;
}

std::vector<ResultRow> parse_results_csv(std::string_view textv) {
  std::vector<ResultRow> rows;
  bool header = true;
  int line_no = 0;
  std::istringstream in{std::string(textv)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    if (header) {
      if (line != results_csv_header()) throw std::invalid_argument("results csv: unexpected header");
      header = false;
      continue;
    }
    const auto f = csv_fields(line);
    if (f.size() != kColumnCount)
      throw std::invalid_argument("results csv line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(kColumnCount) + " fields");
    ResultRow r;
    r.instance = f[0];
    r.approach = f[1];
    const auto [end, ec] = std::from_chars(f[2].data(), f[2].data() + f[2].size(), r.seed);
    if (ec != std::errc() || end != f[2].data() + f[2].size() || f[2].empty())
      throw std::invalid_argument("results csv: bad seed '" + f[2] + "'");
    r.fitness = real_field(f[3], "fitness");
    r.h = real_field(f[4], "h");
    auto t = text::parse_int(f[5]);
    if (!t) throw std::invalid_argument("results csv: bad t '" + f[5] + "'");
    r.t = static_cast<int>(*t);
    r.mean_H = real_field(f[6], "mean_H");
    r.sigma_H = real_field(f[7], "sigma_H");
    r.mean_T = real_field(f[8], "mean_T");
    r.sigma_T = real_field(f[9], "sigma_T");
    r.prob_extra = real_field(f[10], "prob_extra");
    if (!f[11].empty()) {
      r.empirical = EmpiricalColumns{real_field(f[11], "emp_mean_cost"),  real_field(f[12], "emp_mean_trips"),
                                     real_field(f[13], "emp_extra_trip_rate"), real_field(f[14], "emp_std_cost"),
                                     real_field(f[15], "emp_std_trips"), real_field(f[16], "emp_variability")};
    }
    r.total_time_s = real_field(f[17], "total_time_s");
    r.time_to_best_s = real_field(f[18], "time_to_best_s");
    rows.push_back(std::move(r));
  }
  if (header) throw std::invalid_argument("results csv: missing header");
  return rows;
}

// ---------------------------------------------------------------------------
// Suites

std::vector<ApproachSummary> summarize(const std::vector<ResultRow>& rows, const std::vector<bool>& is_baseline) {
  std::map<std::string, const ResultRow*> base;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (i < is_baseline.size() && is_baseline[i]) base.emplace(rows[i].instance, &rows[i]);
  if (base.empty()) return {};

  struct Acc {
    ApproachSummary s;
    double emp = 0.0, rate = 0.0, var = 0.0, agap = 0.0;
    bool all_empirical = true;
  };
  std::vector<Acc> acc;
  for (const auto& r : rows) {
    auto b = base.find(r.instance);
    if (b == base.end()) continue;
    auto it = std::find_if(acc.begin(), acc.end(), [&](const Acc& a) { return a.s.approach == r.approach; });
    if (it == acc.end()) {
      acc.push_back({});
      acc.back().s.approach = r.approach;
      it = acc.end() - 1;
    }
    const double hb = b->second->h;
    it->s.instances += 1;
    it->s.gap_h += (r.h - hb) / hb;
    it->s.gap_mean_H += (r.mean_H - hb) / hb;
    if (r.empirical) {
      it->emp += (r.empirical->mean_cost - r.h) / r.h;
      it->rate += r.empirical->extra_trip_rate;
      it->var += r.empirical->variability;
      it->agap += (r.mean_H - r.empirical->mean_cost) / r.mean_H;
    } else {
      it->all_empirical = false;
    }
  }
  std::vector<ApproachSummary> out;
  for (auto& a : acc) {
    const double n = a.s.instances;
    a.s.gap_h /= n;
    a.s.gap_mean_H /= n;
    if (a.all_empirical) {
      a.s.gap_empirical = a.emp / n;
      a.s.extra_trip_rate = a.rate / n;
      a.s.variability = a.var / n;
      a.s.analytic_gap = a.agap / n;
    }
    out.push_back(a.s);
  }
  return out;
}

SuiteResult run_suite(const std::vector<RunConfig>& configs, int jobs) {
  if (configs.empty()) throw std::invalid_argument("run_suite: no configurations");
  const int n = static_cast<int>(configs.size());
  std::vector<std::optional<ResultRow>> rows(n);
  std::vector<std::string> errors(n);
  auto work = [&](int i) {
    try {
      rows[i] = run_experiment(configs[i]);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  };
  jobs = std::max(1, std::min(jobs, n));
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w)
      pool.emplace_back([&, w] {
        for (int i = w; i < n; i += jobs) work(i);
      });
    for (auto& th : pool) th.join();
  }

  SuiteResult result;
  std::vector<bool> baseline;
  for (int i = 0; i < n; ++i) {
    if (rows[i]) {
      result.rows.push_back(*rows[i]);
      baseline.push_back(configs[i].baseline);
    } else {
      result.errors.push_back(errors[i]);
    }
  }
  result.summary = summarize(result.rows, baseline);
  return result;
}

std::string format_table(const std::vector<ResultRow>& rows) {
  using text::format_fixed;
  std::ostringstream out;
  auto cell = [&](const std::string& s, int w) { out << std::setw(w) << s; };
  out << std::left << std::setw(12) << "instance" << std::setw(28) << "approach" << std::right;
  for (const char* c : {"h(S)", "t(S)", "mean_H", "sigma_H", "mean_T", "P{T>t}%", "H(S,n)", "T(S,n)", "p(S,n)%",
                        "sH(S,n)", "sT(S,n)", "var%", "time_s", "best_s"})
    cell(c, 10);
  out << '\n';
  for (const auto& r : rows) {
    out << std::left << std::setw(12) << r.instance << std::setw(28) << r.approach << std::right;
    cell(format_fixed(r.h, 2), 10);
    cell(std::to_string(r.t), 10);
    cell(format_fixed(r.mean_H, 2), 10);
    cell(format_fixed(r.sigma_H, 2), 10);
    cell(format_fixed(r.mean_T, 2), 10);
    cell(format_fixed(100.0 * r.prob_extra, 2), 10);
    if (r.empirical) {
      const auto& e = *r.empirical;
      cell(format_fixed(e.mean_cost, 2), 10);
      cell(format_fixed(e.mean_trips, 2), 10);
      cell(format_fixed(100.0 * e.extra_trip_rate, 2), 10);
      cell(format_fixed(e.std_cost, 2), 10);
      cell(format_fixed(e.std_trips, 2), 10);
      cell(format_fixed(100.0 * e.variability, 2), 10);
    } else {
      for (int i = 0; i < 6; ++i) cell("-", 10);
    }
    cell(format_fixed(r.total_time_s, 2), 10);
    cell(format_fixed(r.time_to_best_s, 2), 10);
    out << '\n';
  }
  return out.str();
}

std::string format_summary(const std::vector<ApproachSummary>& summary) {
  using text::format_fixed;
  if (summary.empty()) return "";
  std::ostringstream out;
  auto pct = [](const std::optional<double>& v) { return v ? format_fixed(100.0 * *v, 2) : std::string("-"); };
  out << std::left << std::setw(28) << "approach" << std::right << std::setw(6) << "n";
  for (const char* c : {"dh%", "dmeanH%", "dH(n)%", "p(S,n)%", "var%", "gap%"}) out << std::setw(10) << c;
  out << '\n';
  for (const auto& s : summary) {
    out << std::left << std::setw(28) << s.approach << std::right << std::setw(6) << s.instances;
    out << std::setw(10) << format_fixed(100.0 * s.gap_h, 2) << std::setw(10) << format_fixed(100.0 * s.gap_mean_H, 2)
        << std::setw(10) << pct(s.gap_empirical) << std::setw(10) << pct(s.extra_trip_rate) << std::setw(10)
        << pct(s.variability) << std::setw(10) << pct(s.analytic_gap) << '\n';
  }
  return out.str();
}

}  // namespace scarp
