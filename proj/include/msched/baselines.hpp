#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "msched/evolution.hpp"

namespace msched {

/// Common result shape for every single-objective solver.
struct SolveResult {
  HeadcountVector best;
  double value = 0.0;    // raw objective of `best`
  double fitness = 0.0;  // penalized, direction-normalized
  bool feasible = false;
  RunTrace trace;
  std::size_t evaluations = 0;
  int iteration_of_best = 0;
};

inline constexpr double kIpNodeLimit = 1e8;

/// Exact optimum by depth-first branch and bound over the headcount box,
/// pruning with the linear lower bound when the objective admits one.
/// Ties resolve to the lexicographically smallest vector. Throws
/// ConfigurationError when the box exceeds kIpNodeLimit leaves and
/// InfeasibilityError when no point satisfies the expression.
SolveResult ip_solve(const ProblemInstance& inst, const ObjectiveBundle& bundle,
                     const ConstraintExpr& expr);

// Number of leaves in the search box.
double ip_search_size(const ProblemInstance& inst);

struct PSOConfig {
  int swarm_size = 30;
  int iterations = 100;
  double inertia_start = 0.9;
  double inertia_end = 0.4;
  double c1 = 2.0;
  double c2 = 2.0;
  double v_max = 0.0;  // 0 selects 20% of each variable's range
  std::uint64_t seed = 1;
  PenaltyConfig penalty;
};

void validate(const PSOConfig& cfg);

struct Particle {
  std::vector<double> position;
  std::vector<double> velocity;
};

using UniformSource = std::function<double()>;

/// v = w v + c1 r1 (p - x) + c2 r2 (g - x), clamped to +-v_max, then x += v.
/// `rand` is drawn twice per dimension (r1 then r2).
Particle pso_step(const Particle& particle, const std::vector<double>& p_best,
                  const std::vector<double>& g_best, double inertia, double c1, double c2,
                  const std::vector<double>& v_max, const UniformSource& rand);

struct ContinuousResult {
  std::vector<double> best;
  double value = 0.0;
  RunTrace trace;
};

// Box-constrained continuous minimization; the swarm core behind pso_solve.
ContinuousResult pso_minimize(const std::function<double(const std::vector<double>&)>& f,
                              const std::vector<double>& lower, const std::vector<double>& upper,
                              const PSOConfig& cfg);

// Positions are continuous; each evaluation rounds and clamps to the box.
SolveResult pso_solve(const ProblemInstance& inst, const ObjectiveBundle& bundle,
                      const ConstraintExpr& expr, const PSOConfig& cfg);

struct SAConfig {
  double initial_temperature = 1000.0;
  double cooling_rate = 0.95;
  double termination_temperature = 0.01;
  int moves_per_temperature = 20;
  std::uint64_t seed = 1;
  PenaltyConfig penalty;
};

void validate(const SAConfig& cfg);

// True with probability 1 if e_b < e_a, otherwise exp(-(e_b - e_a) / t).
bool sa_accept(double e_a, double e_b, double temperature, Rng& rng);

struct IntegerResult {
  std::vector<int> best;
  double value = 0.0;
  RunTrace trace;
  std::size_t evaluations = 0;
  int iteration_of_best = 0;
};

// Geometric cooling with +-1 single-coordinate moves inside the box.
IntegerResult sa_minimize(const std::function<double(const std::vector<int>&)>& energy,
                          const std::vector<VariableBounds>& box, const SAConfig& cfg);

SolveResult sa_solve(const ProblemInstance& inst, const ObjectiveBundle& bundle,
                     const ConstraintExpr& expr, const SAConfig& cfg);

}  // namespace msched
