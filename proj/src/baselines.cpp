#include "msched/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "msched/errors.hpp"

namespace msched {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void require_single(const ObjectiveBundle& bundle, const char* solver) {
  if (bundle.size() != 1) {
    throw ConfigurationError(std::string(solver) + " needs exactly one objective");
  }
}

std::vector<int> round_into(const std::vector<double>& x, const std::vector<VariableBounds>& box) {
  std::vector<int> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    out[k] = std::clamp(static_cast<int>(std::lround(x[k])), box[k].lower, box[k].upper);
  }
  return out;
}

std::vector<VariableBounds> headcount_box(const ProblemInstance& inst) {
  std::vector<VariableBounds> box;
  for (const Job& j : inst.jobs) box.push_back({j.headcount_min, j.headcount_max});
  return box;
}

SolveResult finish(const HeadcountVector& best, const ProblemInstance& inst,
                   const ObjectiveBundle& bundle, const ConstraintExpr& expr,
                   const PenaltyConfig& penalty) {
  const Evaluation e = evaluate_headcounts(best, bundle, expr, inst, penalty);
  SolveResult r;
  r.best = best;
  r.value = e.raw_objective;
  r.fitness = e.fitness;
  r.feasible = e.feasible;
  return r;
}

}  // namespace

double ip_search_size(const ProblemInstance& inst) {
  double size = 1.0;
  for (const Job& j : inst.jobs) size *= std::max(0, j.headcount_max - j.headcount_min + 1);
  return size;
}

SolveResult ip_solve(const ProblemInstance& inst, const ObjectiveBundle& bundle,
                     const ConstraintExpr& expr) {
  require_single(bundle, "ip_solve");
  check_resolvable(expr, inst);
  const double size = ip_search_size(inst);
  if (size > kIpNodeLimit) {
    throw ConfigurationError("integer search box has " + std::to_string(size) +
                             " leaves, above the limit of " + std::to_string(kIpNodeLimit));
  }
  const auto t0 = Clock::now();
  const Objective& objective = bundle.front();
  const std::size_t n = inst.job_count();
  const auto box = headcount_box(inst);

  // Normalized objective = sum_j coef_j * N_j when a linear form exists.
  std::vector<double> coef = objective.linear_coefficients(inst);
  const bool prunable = !coef.empty();
  for (double& c : coef) c = objective.normalize(c);
  std::vector<double> tail_min(n + 1, 0.0);
  if (prunable) {
    for (std::size_t k = n; k-- > 0;) {
      tail_min[k] = tail_min[k + 1] + std::min(coef[k] * box[k].lower, coef[k] * box[k].upper);
    }
  }

  HeadcountVector current{std::vector<int>(n, 0)};
  std::optional<HeadcountVector> best;
  double best_value = kInf;
  std::size_t evaluations = 0;
  const PenaltyConfig exact{};

  auto search = [&](std::size_t depth, double partial, auto& self) -> void {
    if (depth == n) {
      const AttendanceSummary s = summarize_nominal(current, inst);
      ++evaluations;
      if (!eval_expr(expr, s, inst)) return;
      const double v = objective.normalized(s, inst);
      if (v < best_value) {
        best_value = v;
        best = current;
      }
      return;
    }
    for (int x = box[depth].lower; x <= box[depth].upper; ++x) {
      current.counts[depth] = x;
      const double next = prunable ? partial + coef[depth] * x : 0.0;
      if (prunable && best && next + tail_min[depth + 1] >= best_value) continue;
      self(depth + 1, next, self);
    }
  };
  search(0, 0.0, search);

  if (!best) throw InfeasibilityError("no staffing in the search box satisfies the constraints");
  SolveResult r = finish(*best, inst, bundle, expr, exact);
  r.evaluations = evaluations;
  r.trace.rows.push_back({0, r.fitness, r.fitness, evaluations, ms_since(t0)});
  return r;
}

void validate(const PSOConfig& cfg) {
  if (cfg.swarm_size < 1) throw ConfigurationError("swarm_size must be positive");
  if (cfg.iterations < 0) throw ConfigurationError("iterations must be nonnegative");
  if (cfg.inertia_start < 0 || cfg.inertia_end < 0 || cfg.c1 < 0 || cfg.c2 < 0) {
    throw ConfigurationError("inertia and learning factors must be nonnegative");
  }
  if (cfg.v_max < 0) throw ConfigurationError("v_max must be nonnegative");
}

Particle pso_step(const Particle& particle, const std::vector<double>& p_best,
                  const std::vector<double>& g_best, double inertia, double c1, double c2,
                  const std::vector<double>& v_max, const UniformSource& rand) {
  const std::size_t n = particle.position.size();
  if (particle.velocity.size() != n || p_best.size() != n || g_best.size() != n ||
      v_max.size() != n) {
    throw StructuralError("particle, bests and velocity limits differ in dimension");
  }
  Particle next = particle;
  for (std::size_t k = 0; k < n; ++k) {
    const double r1 = rand();
    const double r2 = rand();
    const double x = particle.position[k];
    double v = inertia * particle.velocity[k] + c1 * r1 * (p_best[k] - x) + c2 * r2 * (g_best[k] - x);
    v = std::clamp(v, -v_max[k], v_max[k]);
    next.velocity[k] = v;
    next.position[k] = x + v;
  }
  return next;
}

ContinuousResult pso_minimize(const std::function<double(const std::vector<double>&)>& f,
                              const std::vector<double>& lower, const std::vector<double>& upper,
                              const PSOConfig& cfg) {
  validate(cfg);
  const std::size_t n = lower.size();
  if (upper.size() != n) throw StructuralError("bounds differ in dimension");
  const auto t0 = Clock::now();
  Rng rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const UniformSource rand = [&] { return unit(rng); };

  std::vector<double> v_max(n);
  for (std::size_t k = 0; k < n; ++k) {
    v_max[k] = cfg.v_max > 0 ? cfg.v_max : std::max(0.2 * (upper[k] - lower[k]), 1e-12);
  }
  const auto swarm_n = static_cast<std::size_t>(cfg.swarm_size);
  std::vector<Particle> swarm(swarm_n);
  std::vector<std::vector<double>> p_best(swarm_n);
  std::vector<double> p_val(swarm_n);
  ContinuousResult out;
  out.value = kInf;
  std::size_t evals = 0;

  for (std::size_t i = 0; i < swarm_n; ++i) {
    auto& p = swarm[i];
    p.position.resize(n);
    p.velocity.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      p.position[k] = lower[k] + unit(rng) * (upper[k] - lower[k]);
      p.velocity[k] = (2.0 * unit(rng) - 1.0) * v_max[k];
    }
    p_best[i] = p.position;
    p_val[i] = f(p.position);
    ++evals;
    if (p_val[i] < out.value) {
      out.value = p_val[i];
      out.best = p.position;
    }
  }
  auto record = [&](int it) {
    double sum = 0.0;
    for (double v : p_val) sum += v;
    out.trace.rows.push_back({it, out.value, sum / static_cast<double>(swarm_n), evals, ms_since(t0)});
  };
  record(0);

  for (int it = 1; it <= cfg.iterations; ++it) {
    const double frac = cfg.iterations > 1 ? static_cast<double>(it - 1) / (cfg.iterations - 1) : 0.0;
    const double inertia = cfg.inertia_start + (cfg.inertia_end - cfg.inertia_start) * frac;
    const std::vector<double> g_best = out.best;
    for (std::size_t i = 0; i < swarm_n; ++i) {
      Particle next = pso_step(swarm[i], p_best[i], g_best, inertia, cfg.c1, cfg.c2, v_max, rand);
      for (std::size_t k = 0; k < n; ++k) {
        if (next.position[k] < lower[k] || next.position[k] > upper[k]) {
          next.position[k] = std::clamp(next.position[k], lower[k], upper[k]);
          next.velocity[k] = 0.0;
        }
      }
      swarm[i] = std::move(next);
      const double v = f(swarm[i].position);
      ++evals;
      if (v < p_val[i]) {
        p_val[i] = v;
        p_best[i] = swarm[i].position;
      }
      if (v < out.value) {
        out.value = v;
        out.best = swarm[i].position;
      }
    }
    record(it);
  }
  return out;
}

SolveResult pso_solve(const ProblemInstance& inst, const ObjectiveBundle& bundle,
                      const ConstraintExpr& expr, const PSOConfig& cfg) {
  require_single(bundle, "pso_solve");
  check_resolvable(expr, inst);
  const auto box = headcount_box(inst);
  std::vector<double> lower, upper;
  for (const auto& b : box) {
    // Half-unit margins give boundary integers the same rounding basin as
    // interior ones.
    lower.push_back(b.lower - 0.499);
    upper.push_back(b.upper + 0.499);
  }
  PenaltyConfig penalty = cfg.penalty;
  penalty.method = PenaltyMethod::External;
  std::optional<HeadcountVector> best_feasible;
  double best_feasible_value = kInf;
  int best_iteration = 0;
  int iteration = 0;
  std::size_t evals = 0;
  const auto f = [&](const std::vector<double>& x) {
    const HeadcountVector hc{round_into(x, box)};
    const Evaluation e = evaluate_headcounts(hc, bundle, expr, inst, penalty);
    ++evals;
    if (e.feasible && e.objective < best_feasible_value) {
      best_feasible_value = e.objective;
      best_feasible = hc;
      best_iteration = iteration;
    }
    return e.fitness;
  };
  // Iteration index for trace attribution: each iteration makes swarm_size calls.
  const auto counted = [&](const std::vector<double>& x) {
    iteration = static_cast<int>(evals / static_cast<std::size_t>(cfg.swarm_size));
    return f(x);
  };
  ContinuousResult cont = pso_minimize(counted, lower, upper, cfg);
  const HeadcountVector chosen = best_feasible ? *best_feasible : HeadcountVector{round_into(cont.best, box)};
  SolveResult r = finish(chosen, inst, bundle, expr, penalty);
  r.trace = std::move(cont.trace);
  r.evaluations = evals;
  r.iteration_of_best = best_iteration;
  return r;
}

void validate(const SAConfig& cfg) {
  if (!(cfg.termination_temperature > 0.0 &&
        cfg.termination_temperature < cfg.initial_temperature)) {
    throw ConfigurationError("temperatures must satisfy 0 < final < initial");
  }
  if (!(cfg.cooling_rate > 0.0 && cfg.cooling_rate < 1.0)) {
    throw ConfigurationError("cooling_rate must lie in (0, 1)");
  }
  if (cfg.moves_per_temperature < 1) throw ConfigurationError("moves_per_temperature must be positive");
}

bool sa_accept(double e_a, double e_b, double temperature, Rng& rng) {
  if (!(temperature > 0.0)) throw ConfigurationError("temperature must be positive");
  if (e_b < e_a) return true;
  const double p = std::exp(-(e_b - e_a) / temperature);
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

IntegerResult sa_minimize(const std::function<double(const std::vector<int>&)>& energy,
                          const std::vector<VariableBounds>& box, const SAConfig& cfg) {
  validate(cfg);
  if (box.empty()) throw ConfigurationError("annealing needs at least one variable");
  const auto t0 = Clock::now();
  Rng rng(cfg.seed);
  IntegerResult out;
  std::vector<int> state;
  for (const auto& b : box) state.push_back(std::uniform_int_distribution<int>(b.lower, b.upper)(rng));
  double e = energy(state);
  out.evaluations = 1;
  out.best = state;
  out.value = e;

  std::uniform_int_distribution<std::size_t> coord(0, box.size() - 1);
  std::bernoulli_distribution up(0.5);
  int step = 0;
  out.trace.rows.push_back({0, out.value, e, out.evaluations, ms_since(t0)});
  for (double t = cfg.initial_temperature; t > cfg.termination_temperature; t *= cfg.cooling_rate) {
    ++step;
    double sum = 0.0;
    for (int m = 0; m < cfg.moves_per_temperature; ++m) {
      std::vector<int> cand = state;
      const std::size_t k = coord(rng);
      cand[k] = std::clamp(cand[k] + (up(rng) ? 1 : -1), box[k].lower, box[k].upper);
      const double ec = energy(cand);
      ++out.evaluations;
      if (sa_accept(e, ec, t, rng)) {
        state = std::move(cand);
        e = ec;
      }
      if (e < out.value) {
        out.value = e;
        out.best = state;
        out.iteration_of_best = step;
      }
      sum += e;
    }
    out.trace.rows.push_back({step, out.value, sum / cfg.moves_per_temperature, out.evaluations, ms_since(t0)});
  }
  return out;
}

SolveResult sa_solve(const ProblemInstance& inst, const ObjectiveBundle& bundle,
                     const ConstraintExpr& expr, const SAConfig& cfg) {
  require_single(bundle, "sa_solve");
  check_resolvable(expr, inst);
  PenaltyConfig penalty = cfg.penalty;
  penalty.method = PenaltyMethod::External;
  const auto energy = [&](const std::vector<int>& x) {
    return evaluate_headcounts({x}, bundle, expr, inst, penalty).fitness;
  };
  IntegerResult res = sa_minimize(energy, headcount_box(inst), cfg);
  SolveResult r = finish({res.best}, inst, bundle, expr, penalty);
  r.trace = std::move(res.trace);
  r.evaluations = res.evaluations;
  r.iteration_of_best = res.iteration_of_best;
  return r;
}

}  // namespace msched
