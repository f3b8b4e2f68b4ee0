#include "msched/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "msched/bench.hpp"
#include "msched/errors.hpp"
#include "msched/instance_io.hpp"
#include "msched/moea.hpp"

namespace msched {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string instance;
  std::string constraints = "k1&k2&k3&k4&k5&k6";
  std::vector<std::string> objectives;
  std::string solver = "ea";
  std::string encoding = "ri";
  std::string penalty = "external";
  std::optional<std::uint64_t> seed;
  std::string out = "out";
  std::vector<std::string> overrides;
  std::string headcounts;
  std::string experiment = "exp1";
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// An argument naming an existing file is read from it.
ConstraintExpr load_constraints(const std::string& arg) {
  std::error_code ec;
  if (fs::is_regular_file(arg, ec)) {
    std::string text = read_file(arg);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
    return parse_constraint_string(text);
  }
  return parse_constraint_string(arg);
}

ObjectiveBundle load_objectives(const Options& o, const ProblemInstance& inst) {
  ObjectiveBundle bundle;
  for (const auto& t : o.objectives) bundle.push_back(parse_objective_token(t, inst));
  if (bundle.empty()) bundle.push_back(Objective::total_time());
  return bundle;
}

std::map<std::string, std::string> parse_overrides(const std::vector<std::string>& sets) {
  std::map<std::string, std::string> out;
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigurationError("--set expects key=value, got '" + s + "'");
    }
    out[s.substr(0, eq)] = s.substr(eq + 1);
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw ConfigurationError("--set " + key + ": not a number: " + v);
  return d;
}

int to_int(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  if (d != static_cast<int>(d)) throw ConfigurationError("--set " + key + ": not an integer: " + v);
  return static_cast<int>(d);
}

struct Settings {
  BenchConfig bench;
  std::uint64_t seed = 0;
  bool seed_from_flag = false;
};

Settings build_settings(const Options& o) {
  Settings s;
  s.seed_from_flag = o.seed.has_value();
  s.seed = o.seed ? *o.seed : std::random_device{}();
  BenchConfig& b = s.bench;
  b.seed_base = s.seed;

  if (o.encoding == "ri") {
    b.ea.encoding = Encoding::RealInteger;
  } else if (o.encoding == "bg") {
    b.ea.encoding = Encoding::Binary;
  } else {
    throw ConfigurationError("unknown encoding '" + o.encoding + "' (ri or bg)");
  }
  if (o.penalty == "external") {
    b.ea.penalty.method = PenaltyMethod::External;
  } else if (o.penalty == "internal") {
    b.ea.penalty.method = PenaltyMethod::Internal;
  } else {
    throw ConfigurationError("unknown penalty '" + o.penalty + "' (external or internal)");
  }

  for (const auto& [k, v] : parse_overrides(o.overrides)) {
    if (k == "population") b.ea.population_size = to_int(k, v);
    else if (k == "generations") b.ea.generations = to_int(k, v);
    else if (k == "crossover_rate") b.ea.crossover_rate = to_double(k, v);
    else if (k == "mutation_rate") b.ea.mutation_rate = to_double(k, v);
    else if (k == "tournament_size") b.ea.tournament_size = to_int(k, v);
    else if (k == "selection") {
      if (v == "tournament") b.ea.selection = SelectionMethod::Tournament;
      else if (v == "proportional") b.ea.selection = SelectionMethod::RowProportional;
      else throw ConfigurationError("--set selection: tournament or proportional");
    }
    else if (k == "penalty_coefficient") b.ea.penalty.coefficient = to_double(k, v);
    else if (k == "barrier_coefficient") b.ea.penalty.barrier_coefficient = to_double(k, v);
    else if (k == "swarm_size") b.pso.swarm_size = to_int(k, v);
    else if (k == "iterations") b.pso.iterations = to_int(k, v);
    else if (k == "inertia_start") b.pso.inertia_start = to_double(k, v);
    else if (k == "inertia_end") b.pso.inertia_end = to_double(k, v);
    else if (k == "c1") b.pso.c1 = to_double(k, v);
    else if (k == "c2") b.pso.c2 = to_double(k, v);
    else if (k == "v_max") b.pso.v_max = to_double(k, v);
    else if (k == "initial_temperature") b.sa.initial_temperature = to_double(k, v);
    else if (k == "cooling_rate") b.sa.cooling_rate = to_double(k, v);
    else if (k == "termination_temperature") b.sa.termination_temperature = to_double(k, v);
    else if (k == "moves_per_temperature") b.sa.moves_per_temperature = to_int(k, v);
    else if (k == "trials") b.trials = to_int(k, v);
    else if (k == "parallel") b.parallel = v != "0" && v != "false";
    else throw ConfigurationError("unknown setting '" + k + "'");
  }
  b.pso.penalty = b.ea.penalty;
  b.sa.penalty = b.ea.penalty;
  validate(b.ea);
  validate(b.pso);
  validate(b.sa);
  return s;
}

HeadcountVector parse_headcounts(const std::string& text, const ProblemInstance& inst) {
  HeadcountVector hc;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = -1;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || v < 0) {
      throw ConfigurationError("--headcounts: bad count '" + item + "'");
    }
    hc.counts.push_back(v);
  }
  if (hc.size() != inst.job_count()) {
    throw ConfigurationError("--headcounts lists " + std::to_string(hc.size()) +
                             " counts, the instance has " + std::to_string(inst.job_count()) +
                             " jobs");
  }
  return hc;
}

std::string header(const std::string& command, const Settings& s, const ProblemInstance& inst,
                   const ConstraintExpr& expr, const ObjectiveBundle& bundle) {
  std::string out = "command: " + command + "\n";
  out += "instance: " + inst.name + "\n";
  out += "constraints: " + to_string(expr) + "\n";
  out += "objectives:";
  for (const auto& o : bundle) out += " " + o.name();
  out += "\nseed: " + std::to_string(s.seed) + (s.seed_from_flag ? "\n" : " (random)\n");
  return out;
}

std::string counts_line(const HeadcountVector& hc) {
  std::string out;
  for (std::size_t j = 0; j < hc.size(); ++j) out += (j ? "," : "") + std::to_string(hc[j]);
  return out;
}

struct Context {
  Options opt;
  ProblemInstance inst;
  ConstraintExpr expr;
  ObjectiveBundle bundle;
  Settings settings;
  fs::path out;
};

Context load_context(const Options& o) {
  Context c;
  c.opt = o;
  c.inst = load_instance(o.instance);
  c.expr = load_constraints(o.constraints);
  check_resolvable(c.expr, c.inst);
  c.bundle = load_objectives(o, c.inst);
  c.settings = build_settings(o);
  c.out = o.out;
  fs::create_directories(c.out);
  return c;
}

int cmd_solve(const Context& c, std::ostream& out) {
  if (c.bundle.size() != 1) throw ConfigurationError("solve takes one objective; use pareto for more");
  std::string name = c.opt.solver;
  if (name == "ea") name = c.settings.bench.ea.encoding == Encoding::Binary ? "ea-bg" : "ea-ri";
  if (std::find(kSolverNames.begin(), kSolverNames.end(), name) == kSolverNames.end()) {
    throw ConfigurationError("unknown solver '" + c.opt.solver + "' (ea, ip, pso or sa)");
  }
  const TrialRecord t =
      run_solver(name, c.inst, c.bundle, c.expr, c.settings.bench, c.settings.seed);
  std::string report = header("solve", c.settings, c.inst, c.expr, c.bundle);
  report += "solver: " + name + "\nstatus: " + t.status + "\n";
  if (!t.feasible) {
    write_file_atomic(c.out / "report.txt", report);
    out << report;
    return kExitInfeasible;
  }
  report += "headcounts: " + counts_line(t.best) + "\n";
  report += "objective: " + num(t.value) + "\n";
  report += "iteration_of_best: " + std::to_string(t.iteration_of_best) + "\n";
  report += "evaluations: " + std::to_string(t.evaluations) + "\n";
  write_file_atomic(c.out / "headcounts.csv", headcounts_to_csv(t.best, c.inst));
  write_file_atomic(c.out / "trace.csv", t.trace.to_csv(true));
  write_file_atomic(c.out / "report.txt", report);
  out << report;
  return kExitOk;
}

int cmd_pareto(const Context& c, std::ostream& out) {
  MoeaConfig mc;
  mc.ea = c.settings.bench.ea;
  mc.ea.seed = c.settings.seed;
  const MoeaResult r = run_moea(c.inst, c.bundle, c.expr, mc);
  std::string report = header("pareto", c.settings, c.inst, c.expr, c.bundle);
  report += "archive_size: " + std::to_string(r.archive.size()) + "\n";
  report += "final_hypervolume: " + num(r.hypervolume.empty() ? 0.0 : r.hypervolume.back()) + "\n";
  std::string hv = "generation,hypervolume\n";
  for (std::size_t g = 0; g < r.hypervolume.size(); ++g) {
    hv += std::to_string(g) + ',' + num(r.hypervolume[g]) + '\n';
  }
  write_file_atomic(c.out / "archive.csv", archive_to_csv(r.archive, c.bundle, c.inst));
  write_file_atomic(c.out / "hypervolume.csv", hv);
  write_file_atomic(c.out / "trace.csv", r.trace.to_csv(true));
  write_file_atomic(c.out / "report.txt", report);
  out << report;
  return r.archive.empty() ? kExitInfeasible : kExitOk;
}

HeadcountVector staffing_for(const Context& c) {
  if (!c.opt.headcounts.empty()) return parse_headcounts(c.opt.headcounts, c.inst);
  if (c.bundle.size() != 1) throw ConfigurationError("staffing needs exactly one objective");
  EAConfig ea = c.settings.bench.ea;
  ea.seed = c.settings.seed;
  return run_ea(c.inst, c.bundle, c.expr, ea).best;
}

int cmd_assign(const Context& c, std::ostream& out) {
  const HeadcountVector hc = staffing_for(c);
  const AssignmentResult r = solve_assignment(
      hc, c.inst, c.bundle, c.expr, assignment_defaults(assignment_bits(hc, c.inst), c.settings.seed));
  std::string report = header("assign", c.settings, c.inst, c.expr, c.bundle);
  report += "headcounts: " + counts_line(hc) + "\n";
  report += "objective: " + num(r.evaluation.raw_objective) + "\n";
  report += std::string("status: ") + (r.evaluation.feasible ? "ok" : "infeasible") + "\n";
  write_file_atomic(c.out / "assignment.csv", tensor_to_csv(r.tensor, c.inst));
  write_file_atomic(c.out / "trace.csv", r.trace.to_csv(true));
  write_file_atomic(c.out / "report.txt", report);
  out << report;
  return r.evaluation.feasible ? kExitOk : kExitInfeasible;
}

int cmd_table(const Context& c, std::ostream& out) {
  const HeadcountVector hc = staffing_for(c);
  const ScheduleTable table =
      staffing_table(c.inst, hc, minimal_daily_need(c.inst, hc), c.settings.seed);
  const AttendanceTensor t = table_to_tensor(table, hc, c.inst);
  const bool ok = eval_expr(c.expr, t, hc, c.inst);
  std::string report = header("table", c.settings, c.inst, c.expr, c.bundle);
  report += "headcounts: " + counts_line(hc) + "\n";
  report += "entries: " + std::to_string(table.slot_count()) + "\n";
  report += std::string("status: ") + (ok ? "ok" : "infeasible") + "\n";
  write_file_atomic(c.out / "table.csv", table_to_csv(table, c.inst));
  write_file_atomic(c.out / "tensor.csv", tensor_to_csv(t, c.inst));
  write_file_atomic(c.out / "report.txt", report);
  out << report;
  return ok ? kExitOk : kExitInfeasible;
}

int cmd_bench(const Context& c, std::ostream& out) {
  std::vector<ExperimentId> ids;
  if (c.opt.experiment == "all") {
    ids = {ExperimentId::Exp1, ExperimentId::Exp2, ExperimentId::Exp3,
           ExperimentId::Exp4, ExperimentId::Exp5, ExperimentId::TablegenTiming};
  } else if (auto id = parse_experiment(c.opt.experiment)) {
    ids = {*id};
  } else {
    throw ConfigurationError("unknown experiment '" + c.opt.experiment + "'");
  }
  for (ExperimentId id : ids) {
    const ExperimentReport r = run_experiment(id, c.inst, c.settings.bench);
    write_report(r, c.out / experiment_name(id));
    out << render_report(r, true);
    if (!c.settings.seed_from_flag) out << "(seed chosen at random)\n";
    out << '\n';
  }
  return kExitOk;
}

int cmd_validate(const Options& o, std::ostream& out) {
  const ProblemInstance inst = parse_instance(read_file(o.instance));
  const auto problems = validate_instance(inst);
  for (const auto& p : problems) out << p << '\n';
  if (problems.empty()) out << "ok\n";
  return problems.empty() ? kExitOk : kExitUsage;
}

void add_common(CLI::App* sub, Options& o, bool solver_flags) {
  sub->add_option("--instance", o.instance, "Instance JSON file")->required();
  sub->add_option("--constraints", o.constraints, "Constraint expression or a file holding one");
  sub->add_option("--objective", o.objectives, "Objective token, repeatable");
  sub->add_option("--seed", o.seed, "Random seed (random when absent)");
  sub->add_option("--out", o.out, "Output directory");
  sub->add_option("--set", o.overrides, "Solver setting key=value, repeatable");
  if (solver_flags) {
    sub->add_option("--encoding", o.encoding, "ri or bg");
    sub->add_option("--penalty", o.penalty, "external or internal");
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Manpower scheduling solver"};
  app.require_subcommand(1);
  Options o;

  auto* solve = app.add_subcommand("solve", "Optimize staffing for one objective");
  add_common(solve, o, true);
  solve->add_option("--solver", o.solver, "ea, ip, pso or sa");
  auto* pareto = app.add_subcommand("pareto", "Pareto archive for several objectives");
  add_common(pareto, o, true);
  auto* table = app.add_subcommand("table", "Randomized duty table for a staffing");
  add_common(table, o, true);
  table->add_option("--headcounts", o.headcounts, "Comma-separated staffing; solved when absent");
  auto* assign = app.add_subcommand("assign", "Attendance assignment for a staffing");
  add_common(assign, o, true);
  assign->add_option("--headcounts", o.headcounts, "Comma-separated staffing; solved when absent");
  auto* bench = app.add_subcommand("bench", "Run an experiment and write its report");
  add_common(bench, o, true);
  bench->add_option("--experiment", o.experiment, "exp1..exp5, tablegen or all");
  auto* validate_cmd = app.add_subcommand("validate", "Check an instance file");
  validate_cmd->add_option("--instance", o.instance, "Instance JSON file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(o, out);
    const Context c = load_context(o);
    if (solve->parsed()) return cmd_solve(c, out);
    if (pareto->parsed()) return cmd_pareto(c, out);
    if (table->parsed()) return cmd_table(c, out);
    if (assign->parsed()) return cmd_assign(c, out);
    return cmd_bench(c, out);
  } catch (const InfeasibilityError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const TableGenerationError& e) {
    err << "table generation failed: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const ConfigurationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SyntaxError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const StructuralError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (...) {
    err << "internal error\n";
    return kExitInternal;
  }
}

}  // namespace msched
