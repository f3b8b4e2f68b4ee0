#include "msched/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <thread>

#include "msched/errors.hpp"
#include "msched/instance_io.hpp"
#include "msched/moea.hpp"
#include "msched/reference.hpp"

namespace msched {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string counts_str(const HeadcountVector& hc) {
  std::string out;
  for (std::size_t j = 0; j < hc.size(); ++j) {
    if (j) out += ' ';
    out += std::to_string(hc[j]);
  }
  return out;
}

std::string bundle_str(const ObjectiveBundle& bundle) {
  std::string out;
  for (const auto& o : bundle) {
    if (!out.empty()) out += ", ";
    out += o.name();
  }
  return out;
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t k) {
  return seed ^ (0x9E3779B97F4A7C15ULL * (k + 1));
}

// Runs fn(i) for i in [0, n), on worker threads when `parallel`.
template <class Fn>
void for_each_index(std::size_t n, bool parallel, Fn fn) {
  const std::size_t workers =
      parallel ? std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency())) : 1;
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

int attended_days(const AttendanceTensor& t, std::size_t job) {
  int total = 0;
  for (std::size_t i = 0; i < t.staff(); ++i) {
    for (std::size_t d = 0; d < t.days(); ++d) {
      for (Shift s : kAllShifts) {
        if (t.at(i, d, s, job)) {
          ++total;
          break;
        }
      }
    }
  }
  return total;
}

// Feasible points of the box that no other feasible point dominates.
std::vector<std::vector<double>> exhaustive_front(const ProblemInstance& inst,
                                                  const ObjectiveBundle& bundle,
                                                  const ConstraintExpr& expr) {
  std::vector<std::vector<double>> pts;
  const std::size_t n = inst.job_count();
  HeadcountVector hc{std::vector<int>(n)};
  auto walk = [&](std::size_t k, auto& self) -> void {
    if (k == n) {
      const AttendanceSummary s = summarize_nominal(hc, inst);
      if (!eval_expr(expr, s, inst)) return;
      std::vector<double> p;
      for (const auto& o : bundle) p.push_back(o.normalized(s, inst));
      pts.push_back(std::move(p));
      return;
    }
    for (int x = inst.jobs[k].headcount_min; x <= inst.jobs[k].headcount_max; ++x) {
      hc.counts[k] = x;
      self(k + 1, self);
    }
  };
  walk(0, walk);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<std::vector<double>> front;
  for (const auto& p : pts) {
    bool dominated = false;
    for (const auto& q : pts) {
      if (dominates(q, p)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) front.push_back(p);
  }
  return front;
}

void add_trial_files(ExperimentReport& r) {
  for (const auto& t : r.trials) {
    r.files.emplace_back("traces/" + t.solver + "-" + std::to_string(t.trial) + ".csv",
                         t.trace.to_csv(false));
  }
}

std::optional<double> ip_reference(const std::vector<TrialRecord>& trials) {
  for (const auto& t : trials) {
    if (t.solver == "ip" && t.feasible) return t.value;
  }
  return std::nullopt;
}

ExperimentReport comparison_experiment(const std::string& id, const ProblemInstance& inst,
                                       const ObjectiveBundle& bundle, const ConstraintExpr& expr,
                                       const BenchConfig& cfg) {
  ExperimentReport r;
  r.id = id;
  r.instance_name = inst.name;
  r.constraints = to_string(expr);
  r.objectives = bundle_str(bundle);
  r.seed_base = cfg.seed_base;
  const auto t0 = Clock::now();
  r.trials = run_trials(inst, bundle, expr, cfg);
  r.timings.emplace_back("trials_ms", num(ms_since(t0)));
  const std::optional<double> ref = ip_reference(r.trials);
  r.rows = compare(r.trials, ref, bundle.front().direction);
  if (ref) r.facts.emplace_back("exact_optimum", num(*ref));
  add_trial_files(r);
  return r;
}

void validity_fact(ExperimentReport& r, const std::string& key, bool ok) {
  r.facts.emplace_back(key, ok ? "valid" : "INVALID");
}

ExperimentReport exp1(const ProblemInstance& inst, const BenchConfig& cfg) {
  const ObjectiveBundle bundle{Objective::total_time()};
  const ConstraintExpr expr = basic_constraints();
  ExperimentReport r = comparison_experiment("exp1", inst, bundle, expr, cfg);

  const auto t0 = Clock::now();
  const PipelineResult p = run_pipeline(inst, bundle, expr, cfg.ea, cfg.seed_base);
  r.timings.emplace_back("pipeline_ms", num(ms_since(t0)));
  r.facts.emplace_back("pipeline_headcounts", counts_str(p.staffing.best));
  r.facts.emplace_back("pipeline_nominal_total_time", num(p.staffing.evaluation.raw_objective));
  validity_fact(r, "pipeline_staffing", p.staffing_valid);
  r.facts.emplace_back("pipeline_assignment_total_time", num(p.assignment.evaluation.raw_objective));
  validity_fact(r, "pipeline_assignment", p.assignment_valid);
  r.facts.emplace_back("pipeline_table_entries", std::to_string(p.table.slot_count()));
  r.facts.emplace_back("pipeline_table_total_time", num(p.table_objective));
  validity_fact(r, "pipeline_table", p.table_valid);
  r.files.emplace_back("headcounts.csv", headcounts_to_csv(p.staffing.best, inst));
  r.files.emplace_back("assignment.csv", tensor_to_csv(p.assignment.tensor, inst));
  r.files.emplace_back("table.csv", table_to_csv(p.table, inst));
  r.files.emplace_back("table_tensor.csv", tensor_to_csv(p.table_tensor, inst));
  return r;
}

ExperimentReport exp2(const ProblemInstance& base, const BenchConfig& cfg) {
  ProblemInstance inst = base;
  if (!inst.multi_shift) {
    inst.multi_shift = true;
    inst.name += "-multishift";
  }
  const ObjectiveBundle bundle{Objective::multishift_salary()};
  const ConstraintExpr expr = basic_constraints();
  ExperimentReport r = comparison_experiment("exp2", inst, bundle, expr, cfg);

  // Three guarded positions shared by five people of the first job that
  // staffs at least five.
  std::optional<std::size_t> job;
  HeadcountVector hc;
  for (const auto& t : r.trials) {
    if (t.feasible) {
      hc = t.best;
      break;
    }
  }
  for (std::size_t j = 0; j < hc.size(); ++j) {
    if (hc[j] >= 5) {
      job = j;
      break;
    }
  }
  if (!job) {
    r.facts.emplace_back("rotation", "skipped, no job staffs five people");
    return r;
  }
  RotationSpec spec{3, 5, *job, {}};
  const ScheduleTable table = generate_rotation(spec, inst.horizon_days);
  std::vector<EmployeeId> people;
  for (std::size_t k = 0; k < 5; ++k) people.push_back({*job, k});
  const auto loads = member_loads(table, people);
  std::string load_str;
  for (int l : loads) load_str += (load_str.empty() ? "" : " ") + std::to_string(l);
  r.facts.emplace_back("rotation_job", inst.jobs[*job].code);
  r.facts.emplace_back("rotation_loads", load_str);
  r.files.emplace_back("rotation.csv", table_to_csv(table, inst));
  return r;
}

ExperimentReport exp3(const ProblemInstance& inst, const BenchConfig& cfg) {
  const ObjectiveBundle bundle{Objective::total_time()};
  return comparison_experiment("exp3", inst, bundle, parse_constraint_string("k1&k2&!k5|k3"), cfg);
}

ExperimentReport exp4(const ProblemInstance& inst, const BenchConfig& cfg) {
  if (!inst.emergency) throw ConfigurationError("exp4 needs an emergency section in the instance");
  const ObjectiveBundle bundle{Objective::total_time()};
  const ConstraintExpr expr =
      ConstraintExpr::all_of({basic_constraints(), ConstraintExpr::atom(AtomKind::Y1)});
  ExperimentReport r = comparison_experiment("exp4", inst, bundle, expr, cfg);

  // The emergency hits the plain optimum first; the y1 solve then staffs ahead.
  const ConstraintExpr after_check = parse_constraint_string("k2&k3&y2");
  const SolveResult plain = ip_solve(inst, bundle, basic_constraints());
  r.facts.emplace_back("baseline_headcounts", counts_str(plain.best));
  r.facts.emplace_back("baseline_total_time", num(plain.value));
  const EmergencyOutcome hit = apply_emergency(plain.best, plain.value,
                                               f2_total_salary(plain.best, inst), *inst.emergency);
  r.facts.emplace_back("baseline_after_emergency_headcounts", counts_str(hit.headcounts));
  r.facts.emplace_back("baseline_after_emergency_total_time", num(hit.total_time));
  r.facts.emplace_back("baseline_after_emergency_cost", num(hit.cost));
  validity_fact(r, "baseline_after_emergency_staffing",
                eval_expr(after_check, summarize_nominal(hit.headcounts, inst), inst));

  const SolveResult ready = ip_solve(inst, bundle, expr);
  r.facts.emplace_back("ready_headcounts", counts_str(ready.best));
  r.facts.emplace_back("ready_total_time", num(ready.value));
  const EmergencyOutcome out = apply_emergency(ready.best, ready.value,
                                               f2_total_salary(ready.best, inst), *inst.emergency);
  r.facts.emplace_back("ready_after_emergency_headcounts", counts_str(out.headcounts));
  r.facts.emplace_back("ready_after_emergency_total_time", num(out.total_time));
  r.facts.emplace_back("ready_after_emergency_cost", num(out.cost));
  validity_fact(r, "ready_after_emergency_staffing",
                eval_expr(after_check, summarize_nominal(out.headcounts, inst), inst));
  return r;
}

ExperimentReport exp5(const ProblemInstance& inst, const BenchConfig& cfg) {
  ObjectiveBundle bundle{parse_objective_token("max:headcount:b+c+e", inst), Objective::total_time()};
  const ConstraintExpr expr = basic_constraints();
  ExperimentReport r;
  r.id = "exp5";
  r.instance_name = inst.name;
  r.constraints = to_string(expr);
  r.objectives = bundle_str(bundle);
  r.seed_base = cfg.seed_base;

  const auto front = exhaustive_front(inst, bundle, expr);
  r.facts.emplace_back("exhaustive_front_size", std::to_string(front.size()));
  std::vector<MoeaResult> runs(static_cast<std::size_t>(cfg.trials));
  const auto t0 = Clock::now();
  for_each_index(runs.size(), cfg.parallel, [&](std::size_t t) {
    MoeaConfig mc;
    mc.ea = cfg.ea;
    mc.ea.seed = cfg.seed_base + t;
    runs[t] = run_moea(inst, bundle, expr, mc);
  });
  r.timings.emplace_back("moea_ms", num(ms_since(t0)));
  int exact = 0;
  std::string csv = "trial,archive_size,exact_front,final_hypervolume\n";
  for (std::size_t t = 0; t < runs.size(); ++t) {
    std::vector<std::vector<double>> pts;
    for (const auto& a : runs[t].archive) pts.push_back(a.objectives);
    std::sort(pts.begin(), pts.end());
    const bool same = pts == front;
    exact += same;
    csv += std::to_string(t) + ',' + std::to_string(runs[t].archive.size()) + ',' +
           (same ? "1" : "0") + ',' + num(runs[t].hypervolume.back()) + '\n';
  }
  r.facts.emplace_back("runs_matching_front", std::to_string(exact) + "/" + std::to_string(runs.size()));
  r.files.emplace_back("moea_runs.csv", csv);
  if (!runs.empty()) {
    r.files.emplace_back("archive.csv", archive_to_csv(runs.front().archive, bundle, inst));
    std::string hv = "generation,hypervolume\n";
    for (std::size_t g = 0; g < runs.front().hypervolume.size(); ++g) {
      hv += std::to_string(g) + ',' + num(runs.front().hypervolume[g]) + '\n';
    }
    r.files.emplace_back("hypervolume.csv", hv);
  }
  return r;
}

ProblemInstance stretched(const ProblemInstance& inst, int days) {
  ProblemInstance out = inst;
  const double scale = static_cast<double>(days) / inst.horizon_days;
  out.horizon_days = days;
  for (auto& b : out.work_time_bounds) b = {b.lower * scale, b.upper * scale};
  out.salary_bounds = {inst.salary_bounds.lower * scale, inst.salary_bounds.upper * scale};
  out.rest_cap = static_cast<int>(std::floor(inst.rest_cap * scale));
  return out;
}

ExperimentReport tablegen_timing(const ProblemInstance& inst, const BenchConfig& cfg) {
  ExperimentReport r;
  r.id = "tablegen";
  r.instance_name = inst.name;
  r.constraints = to_string(basic_constraints());
  r.seed_base = cfg.seed_base;
  const ObjectiveBundle bundle{Objective::total_time()};
  const HeadcountVector hc = ip_solve(inst, bundle, basic_constraints()).best;
  r.facts.emplace_back("headcounts", counts_str(hc));
  for (int days : {7, 30}) {
    const ProblemInstance span = stretched(inst, days);
    const std::vector<int> need = minimal_daily_need(span, hc);
    int replayed = 0;
    int valid = 0;
    const auto t0 = Clock::now();
    for (int t = 0; t < cfg.trials; ++t) {
      const ScheduleTable table = staffing_table(span, hc, need, cfg.seed_base + t);
      bool ok = true;
      for (std::size_t j = 0; j < hc.size(); ++j) {
        std::vector<EmployeeId> members;
        for (int k = 0; k < hc[j]; ++k) members.push_back({j, static_cast<std::size_t>(k)});
        ScheduleTable mine;
        mine.days = table.days;
        mine.rows.resize(table.rows.size());
        for (std::size_t d = 0; d < table.rows.size(); ++d) {
          for (const auto& e : table.rows[d]) {
            if (e.employee.job == j) mine.rows[d].push_back(e);
          }
        }
        ok = ok && replay_table(mine, members, need[j], instance_policy(span, j, hc[j], need[j]));
      }
      replayed += ok;
      valid += eval_expr(basic_constraints(), table_to_tensor(table, hc, span), hc, span);
    }
    const std::string key = std::to_string(days) + "_day";
    r.timings.emplace_back(key + "_ms_per_table", num(ms_since(t0) / std::max(1, cfg.trials)));
    r.facts.emplace_back(key + "_tables_replayed", std::to_string(replayed) + "/" + std::to_string(cfg.trials));
    r.facts.emplace_back(key + "_tables_valid", std::to_string(valid) + "/" + std::to_string(cfg.trials));
  }
  return r;
}

}  // namespace

std::string experiment_name(ExperimentId id) {
  switch (id) {
    case ExperimentId::Exp1: return "exp1";
    case ExperimentId::Exp2: return "exp2";
    case ExperimentId::Exp3: return "exp3";
    case ExperimentId::Exp4: return "exp4";
    case ExperimentId::Exp5: return "exp5";
    case ExperimentId::TablegenTiming: return "tablegen";
  }
  return "?";
}

std::optional<ExperimentId> parse_experiment(std::string_view name) {
  for (ExperimentId id : {ExperimentId::Exp1, ExperimentId::Exp2, ExperimentId::Exp3,
                          ExperimentId::Exp4, ExperimentId::Exp5, ExperimentId::TablegenTiming}) {
    if (experiment_name(id) == name) return id;
  }
  return std::nullopt;
}

TrialRecord run_solver(const std::string& solver, const ProblemInstance& inst,
                       const ObjectiveBundle& bundle, const ConstraintExpr& expr,
                       const BenchConfig& cfg, std::uint64_t seed) {
  TrialRecord rec;
  rec.solver = solver;
  rec.seed = seed;
  const auto t0 = Clock::now();
  try {
    if (solver == "ea-ri" || solver == "ea-bg") {
      EAConfig ea = cfg.ea;
      ea.encoding = solver == "ea-ri" ? Encoding::RealInteger : Encoding::Binary;
      ea.seed = seed;
      EAResult res = run_ea(inst, bundle, expr, ea);
      rec.feasible = res.evaluation.feasible;
      rec.value = res.evaluation.raw_objective;
      rec.best = res.best;
      rec.iteration_of_best = res.generation_of_best;
      rec.evaluations = res.evaluations;
      rec.trace = std::move(res.trace);
    } else {
      SolveResult res;
      if (solver == "ip") {
        res = ip_solve(inst, bundle, expr);
      } else if (solver == "pso") {
        PSOConfig pc = cfg.pso;
        pc.seed = seed;
        res = pso_solve(inst, bundle, expr, pc);
      } else if (solver == "sa") {
        SAConfig sc = cfg.sa;
        sc.seed = seed;
        res = sa_solve(inst, bundle, expr, sc);
      } else {
        throw ConfigurationError("unknown solver '" + solver + "'");
      }
      rec.feasible = res.feasible;
      rec.value = res.value;
      rec.best = res.best;
      rec.iteration_of_best = res.iteration_of_best;
      rec.evaluations = res.evaluations;
      rec.trace = std::move(res.trace);
    }
    if (!rec.feasible) rec.status = "infeasible";
  } catch (const InfeasibilityError& e) {
    rec.status = "infeasible";
    rec.best = HeadcountVector{e.best_counts()};
  }
  rec.millis = ms_since(t0);
  return rec;
}

std::vector<TrialRecord> run_trials(const ProblemInstance& inst, const ObjectiveBundle& bundle,
                                    const ConstraintExpr& expr, const BenchConfig& cfg) {
  if (cfg.trials < 1) throw ConfigurationError("trials must be positive");
  for (const auto& s : cfg.solvers) {
    if (std::find(kSolverNames.begin(), kSolverNames.end(), s) == kSolverNames.end()) {
      throw ConfigurationError("unknown solver '" + s + "'");
    }
  }
  const auto trials = static_cast<std::size_t>(cfg.trials);
  std::vector<TrialRecord> out(cfg.solvers.size() * trials);
  for_each_index(out.size(), cfg.parallel, [&](std::size_t i) {
    const std::size_t t = i % trials;
    out[i] = run_solver(cfg.solvers[i / trials], inst, bundle, expr, cfg, cfg.seed_base + t);
    out[i].trial = static_cast<int>(t);
  });
  return out;
}

double accuracy(double reference, double other) {
  if (!(reference > 0.0) || !(other > 0.0)) {
    throw std::domain_error("accuracy is undefined for nonpositive values");
  }
  return std::round(reference / other * 1000.0) / 10.0;
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double stability(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  std::map<double, int> freq;
  for (double v : values) ++freq[v];
  double mode = values.front();
  int best = 0;
  for (const auto& [v, c] : freq) {
    if (c > best) {
      best = c;
      mode = v;
    }
  }
  const double tol = 1e-3 * std::abs(mode);
  const auto near = std::count_if(values.begin(), values.end(),
                                  [&](double v) { return std::abs(v - mode) <= tol; });
  return static_cast<double>(near) / static_cast<double>(values.size());
}

std::vector<int> convergence_rank(const std::vector<double>& frequencies) {
  std::vector<int> rank(frequencies.size());
  for (std::size_t i = 0; i < frequencies.size(); ++i) {
    int above = 0;
    for (double f : frequencies) above += f > frequencies[i];
    rank[i] = above + 1;
  }
  return rank;
}

std::vector<ComparisonRow> compare(const std::vector<TrialRecord>& trials,
                                   std::optional<double> reference, Direction direction) {
  std::vector<ComparisonRow> rows;
  std::vector<std::string> order;
  for (const auto& t : trials) {
    if (std::find(order.begin(), order.end(), t.solver) == order.end()) order.push_back(t.solver);
  }
  std::vector<double> freqs;
  for (const auto& name : order) {
    ComparisonRow row;
    row.solver = name;
    std::vector<double> values, iters, ms;
    for (const auto& t : trials) {
      if (t.solver != name) continue;
      ms.push_back(t.millis);
      if (!t.feasible) continue;
      ++row.feasible_trials;
      values.push_back(t.value);
      iters.push_back(t.iteration_of_best);
    }
    row.median_value = median(values);
    row.median_iteration_of_best = median(iters);
    row.median_ms = median(ms);
    row.stability = stability(values);
    if (reference && !values.empty() && *reference > 0.0 && row.median_value > 0.0) {
      row.accuracy = direction == Direction::Minimize ? accuracy(*reference, row.median_value)
                                                      : accuracy(row.median_value, *reference);
    }
    freqs.push_back(row.stability);
    rows.push_back(row);
  }
  const auto ranks = convergence_rank(freqs);
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].convergence_rank = ranks[i];
  return rows;
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows, bool include_timing) {
  std::string out =
      "solver,feasible_trials,median_value,median_iteration_of_best,accuracy,stability,"
      "convergence_rank";
  out += include_timing ? ",median_ms\n" : "\n";
  for (const auto& r : rows) {
    out += r.solver + ',' + std::to_string(r.feasible_trials) + ',' + num(r.median_value) + ',' +
           num(r.median_iteration_of_best) + ',' + (r.accuracy ? num(*r.accuracy) : "") + ',' +
           num(r.stability) + ',' + std::to_string(r.convergence_rank);
    out += include_timing ? ',' + num(r.median_ms) + '\n' : "\n";
  }
  return out;
}

std::vector<int> minimal_daily_need(const ProblemInstance& inst, const HeadcountVector& hc) {
  if (hc.size() != inst.job_count()) throw StructuralError("staffing must list every job");
  const int days = inst.horizon_days;
  std::vector<int> need;
  for (std::size_t j = 0; j < hc.size(); ++j) {
    if (hc[j] == 0 || days == 0) {
      need.push_back(0);
      continue;
    }
    // Rest cap: with balanced loads everyone works at least need*days/N days.
    int n = (hc[j] * (days - inst.rest_cap) + days - 1) / days;
    const double hours = daily_work_hours(inst.jobs[j]) * days;
    if (hours > 0.0 && j < inst.work_time_bounds.size()) {
      n = std::max(n, static_cast<int>(std::ceil(inst.work_time_bounds[j].lower / hours - 1e-9)));
    }
    need.push_back(std::clamp(n, 1, hc[j]));
  }
  return need;
}

ScheduleTable staffing_table(const ProblemInstance& inst, const HeadcountVector& hc,
                             const std::vector<int>& per_day_need, std::uint64_t seed) {
  if (hc.size() != inst.job_count() || per_day_need.size() != inst.job_count()) {
    throw StructuralError("staffing and need must list every job");
  }
  std::vector<ScheduleTable> parts;
  for (std::size_t j = 0; j < hc.size(); ++j) {
    if (hc[j] == 0) continue;
    std::vector<EmployeeId> members;
    for (int k = 0; k < hc[j]; ++k) members.push_back({j, static_cast<std::size_t>(k)});
    const int need = per_day_need[j];
    parts.push_back(generate_table(members, inst.horizon_days, need,
                                   instance_policy(inst, j, hc[j], need), mix(seed, j)));
  }
  ScheduleTable merged = merge_tables(parts);
  merged.days = inst.horizon_days;
  merged.rows.resize(static_cast<std::size_t>(inst.horizon_days));
  return merged;
}

PipelineResult run_pipeline(const ProblemInstance& inst, const ObjectiveBundle& bundle,
                            const ConstraintExpr& expr, const EAConfig& ea, std::uint64_t seed) {
  PipelineResult p;
  EAConfig cfg = ea;
  cfg.seed = seed;
  p.staffing = run_ea(inst, bundle, expr, cfg);
  const HeadcountVector& hc = p.staffing.best;
  p.staffing_valid = eval_expr(expr, summarize_nominal(hc, inst), inst);

  p.assignment = solve_assignment(hc, inst, bundle, expr,
                                  assignment_defaults(assignment_bits(hc, inst), mix(seed, 100)));
  p.assignment_valid = eval_expr(expr, p.assignment.tensor, hc, inst);

  // Enough people per day to cover the attendance the assignment settled on.
  std::vector<int> need;
  for (std::size_t j = 0; j < hc.size(); ++j) {
    const int days = attended_days(p.assignment.tensor, j);
    const int n = (days + inst.horizon_days - 1) / inst.horizon_days;
    need.push_back(std::clamp(n, std::min(1, hc[j]), hc[j]));
  }
  p.table = staffing_table(inst, hc, need, mix(seed, 200));
  p.table_tensor = table_to_tensor(p.table, hc, inst);
  p.table_valid = eval_expr(expr, p.table_tensor, hc, inst);
  p.table_objective = bundle.front().raw(summarize(p.table_tensor, hc, inst), inst);
  return p;
}

ExperimentReport run_experiment(ExperimentId id, const ProblemInstance& inst,
                                const BenchConfig& cfg) {
  switch (id) {
    case ExperimentId::Exp1: return exp1(inst, cfg);
    case ExperimentId::Exp2: return exp2(inst, cfg);
    case ExperimentId::Exp3: return exp3(inst, cfg);
    case ExperimentId::Exp4: return exp4(inst, cfg);
    case ExperimentId::Exp5: return exp5(inst, cfg);
    case ExperimentId::TablegenTiming: return tablegen_timing(inst, cfg);
  }
  throw ConfigurationError("unknown experiment");
}

std::string render_report(const ExperimentReport& r, bool include_timing) {
  std::string out = "experiment: " + r.id + "\n";
  out += "instance: " + r.instance_name + "\n";
  out += "constraints: " + r.constraints + "\n";
  if (!r.objectives.empty()) out += "objectives: " + r.objectives + "\n";
  out += "seed_base: " + std::to_string(r.seed_base) + "\n";
  for (const auto& [k, v] : r.facts) out += k + ": " + v + "\n";
  if (!r.rows.empty()) {
    out += "\n";
    out += comparison_csv(r.rows, include_timing);
  }
  if (include_timing && !r.timings.empty()) {
    out += "\n";
    for (const auto& [k, v] : r.timings) out += k + ": " + v + "\n";
  }
  return out;
}

namespace {

std::string trials_csv(const std::vector<TrialRecord>& trials) {
  std::string out = "solver,trial,seed,status,value,iteration_of_best,evaluations,counts,millis\n";
  for (const auto& t : trials) {
    out += t.solver + ',' + std::to_string(t.trial) + ',' + std::to_string(t.seed) + ',' +
           t.status + ',' + (t.feasible ? num(t.value) : "") + ',' +
           std::to_string(t.iteration_of_best) + ',' + std::to_string(t.evaluations) + ',' +
           counts_str(t.best) + ',' + num(t.millis) + '\n';
  }
  return out;
}

}  // namespace

void write_report(const ExperimentReport& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_file_atomic(dir / "report.txt", render_report(r, true));
  if (!r.rows.empty()) write_file_atomic(dir / "comparison.csv", comparison_csv(r.rows, true));
  if (!r.trials.empty()) write_file_atomic(dir / "trials.csv", trials_csv(r.trials));
  for (const auto& [name, content] : r.files) {
    const auto path = dir / name;
    std::filesystem::create_directories(path.parent_path());
    write_file_atomic(path, content);
  }
}

}  // namespace msched
