#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "msched/baselines.hpp"
#include "msched/evolution.hpp"
#include "msched/tablegen.hpp"

namespace msched {

enum class ExperimentId : std::uint8_t { Exp1, Exp2, Exp3, Exp4, Exp5, TablegenTiming };

std::string experiment_name(ExperimentId id);
std::optional<ExperimentId> parse_experiment(std::string_view name);

// Solver names accepted by the bench and the CLI.
inline const std::vector<std::string> kSolverNames = {"ea-ri", "ea-bg", "ip", "pso", "sa"};

struct BenchConfig {
  int trials = 10;
  std::uint64_t seed_base = 1;
  std::vector<std::string> solvers = kSolverNames;
  EAConfig ea;
  PSOConfig pso;
  SAConfig sa;
  bool parallel = true;
};

struct TrialRecord {
  std::string solver;
  int trial = 0;
  std::uint64_t seed = 0;
  std::string status = "ok";  // ok | infeasible
  bool feasible = false;
  double value = 0.0;
  HeadcountVector best;
  int iteration_of_best = 0;
  std::size_t evaluations = 0;
  double millis = 0.0;
  RunTrace trace;
};

// One single-objective run of a named solver with the given seed.
TrialRecord run_solver(const std::string& solver, const ProblemInstance& inst,
                       const ObjectiveBundle& bundle, const ConstraintExpr& expr,
                       const BenchConfig& cfg, std::uint64_t seed);

// Every solver for cfg.trials paired seeds (seed_base + trial), in solver order.
std::vector<TrialRecord> run_trials(const ProblemInstance& inst, const ObjectiveBundle& bundle,
                                    const ConstraintExpr& expr, const BenchConfig& cfg);

// reference / other * 100, rounded to one decimal.
double accuracy(double reference, double other);

// Fraction of values within 0.1% of the most frequent value.
double stability(const std::vector<double>& values);

// Competition ranking by descending frequency: (1, 1, .8, .5) -> (1, 1, 3, 4).
std::vector<int> convergence_rank(const std::vector<double>& frequencies);

double median(std::vector<double> values);

struct ComparisonRow {
  std::string solver;
  int feasible_trials = 0;
  double median_value = 0.0;
  double median_iteration_of_best = 0.0;
  std::optional<double> accuracy;
  double stability = 0.0;
  int convergence_rank = 0;
  double median_ms = 0.0;
};

// Accuracy is taken against `reference`, normally the exact optimum.
std::vector<ComparisonRow> compare(const std::vector<TrialRecord>& trials,
                                   std::optional<double> reference, Direction direction);

std::string comparison_csv(const std::vector<ComparisonRow>& rows, bool include_timing);

struct PipelineResult {
  EAResult staffing;
  AssignmentResult assignment;
  ScheduleTable table;
  AttendanceTensor table_tensor;
  bool staffing_valid = false;
  bool assignment_valid = false;
  bool table_valid = false;
  double table_objective = 0.0;
};

/// Staffing by the EA, attendance by solve_assignment, then one randomized
/// table per job sized to the assignment's attendance, checked against
/// `expr` at every stage.
PipelineResult run_pipeline(const ProblemInstance& inst, const ObjectiveBundle& bundle,
                            const ConstraintExpr& expr, const EAConfig& ea, std::uint64_t seed);

// Smallest per-day headcount per job whose balanced table meets the rest cap
// and the lower work time bound.
std::vector<int> minimal_daily_need(const ProblemInstance& inst, const HeadcountVector& hc);

// Per-job randomized tables for a fixed staffing, merged.
ScheduleTable staffing_table(const ProblemInstance& inst, const HeadcountVector& hc,
                             const std::vector<int>& per_day_need, std::uint64_t seed);

struct ExperimentReport {
  std::string id;
  std::string instance_name;
  std::string constraints;
  std::string objectives;
  std::uint64_t seed_base = 0;
  std::vector<TrialRecord> trials;
  std::vector<ComparisonRow> rows;
  std::vector<std::pair<std::string, std::string>> facts;    // deterministic
  std::vector<std::pair<std::string, std::string>> timings;  // wall clock
  std::vector<std::pair<std::string, std::string>> files;    // relative path, content
};

ExperimentReport run_experiment(ExperimentId id, const ProblemInstance& inst,
                                const BenchConfig& cfg);

// Timing lines and columns are left out unless include_timing is set, so two
// runs with one seed render identically.
std::string render_report(const ExperimentReport& report, bool include_timing);

// report.txt, comparison.csv, trials.csv and the report's files under `dir`.
void write_report(const ExperimentReport& report, const std::filesystem::path& dir);

}  // namespace msched
