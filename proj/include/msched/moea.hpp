#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "msched/evolution.hpp"

namespace msched {

struct ScoredIndividual {
  Genome genome;
  HeadcountVector decoded;
  std::vector<double> objectives;  // direction-normalized, minimized
  std::vector<double> raw_objectives;
  double violation = 0.0;
  int rank = 0;
  double crowd = 0.0;

  bool feasible() const { return violation == 0.0; }
};

/// Constraint-domination: a feasible point beats an infeasible one, two
/// infeasible points compare by violation, two feasible points by Pareto order.
bool dominates(const ScoredIndividual& u, const ScoredIndividual& v);

// Plain Pareto dominance for minimization; throws StructuralError on arity mismatch.
bool dominates(const std::vector<double>& u, const std::vector<double>& v);

// Fronts of indices into `pop`; also writes each member's rank.
std::vector<std::vector<std::size_t>> non_dominated_sort(std::vector<ScoredIndividual>& pop);

// Crowding distance over the given front; boundary members get +infinity.
void crowding(std::vector<ScoredIndividual>& pop, const std::vector<std::size_t>& front);

using ParetoArchive = std::vector<ScoredIndividual>;

struct MoeaConfig {
  EAConfig ea;
  // Hypervolume reference point in normalized objective space; derived from
  // the initial population when absent.
  std::optional<std::vector<double>> reference_point;
};

struct MoeaResult {
  ParetoArchive archive;
  RunTrace trace;                    // best = min of first normalized objective among feasible
  std::vector<double> hypervolume;   // rank-0 feasible set, per generation
  std::vector<double> reference_point;
  std::size_t evaluations = 0;
};

// Exact dominated hypervolume of a point set (minimization) w.r.t. `ref`.
double hypervolume(std::vector<std::vector<double>> points, const std::vector<double>& ref);

MoeaResult run_moea(const ProblemInstance& inst, const ObjectiveBundle& bundle,
                    const ConstraintExpr& expr, const MoeaConfig& cfg);

// decoded counts then raw objective values, one row per archive member.
std::string archive_to_csv(const ParetoArchive& archive, const ObjectiveBundle& bundle,
                           const ProblemInstance& inst);

}  // namespace msched
