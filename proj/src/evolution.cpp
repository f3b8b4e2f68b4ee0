#include "msched/evolution.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "msched/errors.hpp"

namespace msched {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::size_t bits_for_range(int range) {
  std::size_t w = 0;
  while ((1LL << w) < static_cast<long long>(range) + 1) ++w;
  return w;
}

struct Individual {
  Genome genome;
  Evaluation eval;
};

using Evaluator = std::function<Evaluation(const Genome&)>;
using Initializer = std::function<Genome(std::size_t index, Rng&)>;

struct EvolutionOutcome {
  std::optional<Individual> best_feasible;
  Individual least_violating;
  int generation_of_best = 0;
  RunTrace trace;
  std::size_t evaluations = 0;
};

std::size_t pick_tournament(const std::vector<Individual>& pop, int k, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, pop.size() - 1);
  std::size_t best = pick(rng);
  for (int t = 1; t < k; ++t) {
    const std::size_t c = pick(rng);
    if (pop[c].eval.fitness < pop[best].eval.fitness) best = c;
  }
  return best;
}

// Fitness-proportional over rows: weight = worst - fitness + epsilon.
std::size_t pick_proportional(const std::vector<Individual>& pop, Rng& rng) {
  double worst = -kInf;
  double best = kInf;
  for (const auto& ind : pop) {
    if (std::isfinite(ind.eval.fitness)) {
      worst = std::max(worst, ind.eval.fitness);
      best = std::min(best, ind.eval.fitness);
    }
  }
  std::uniform_int_distribution<std::size_t> uniform(0, pop.size() - 1);
  if (!std::isfinite(worst)) return uniform(rng);
  const double eps = 1e-9 + 0.01 * (worst - best);
  std::vector<double> weights;
  weights.reserve(pop.size());
  for (const auto& ind : pop) {
    weights.push_back(std::isfinite(ind.eval.fitness) ? worst - ind.eval.fitness + eps : 0.0);
  }
  std::discrete_distribution<std::size_t> dist(weights.begin(), weights.end());
  return dist(rng);
}

/// Generational loop with single-individual elitism over one random stream.
EvolutionOutcome evolve(const GenomeSpace& space, const Evaluator& evaluate,
                        const Initializer& init, const EAConfig& cfg, Rng& rng,
                        bool require_feasible_start) {
  const auto start = Clock::now();
  EvolutionOutcome out;
  bool have_least = false;
  int generation = 0;

  auto consider = [&](const Individual& ind) {
    if (ind.eval.feasible &&
        (!out.best_feasible || ind.eval.objective < out.best_feasible->eval.objective ||
         (ind.eval.objective == out.best_feasible->eval.objective &&
          ind.eval.fitness < out.best_feasible->eval.fitness))) {
      out.best_feasible = ind;
      out.generation_of_best = generation;
    }
    if (!have_least || ind.eval.violation < out.least_violating.eval.violation) {
      out.least_violating = ind;
      have_least = true;
    }
  };
  auto make = [&](Genome g) {
    Individual ind{std::move(g), {}};
    ind.eval = evaluate(ind.genome);
    ++out.evaluations;
    consider(ind);
    return ind;
  };
  auto record = [&](const std::vector<Individual>& pop) {
    RunTrace::Row row;
    row.generation = generation;
    row.best = kInf;
    double sum = 0.0;
    std::size_t finite = 0;
    for (const auto& ind : pop) {
      row.best = std::min(row.best, ind.eval.fitness);
      if (std::isfinite(ind.eval.fitness)) {
        sum += ind.eval.fitness;
        ++finite;
      }
    }
    row.mean = finite ? sum / static_cast<double>(finite) : kInf;
    row.evaluations = out.evaluations;
    row.millis = elapsed_ms(start);
    out.trace.rows.push_back(row);
  };

  const auto pop_size = static_cast<std::size_t>(cfg.population_size);
  std::vector<Individual> pop;
  pop.reserve(pop_size);
  if (require_feasible_start) {
    const std::size_t budget = 100 * pop_size;
    for (std::size_t attempt = 0; attempt < budget && pop.size() < pop_size; ++attempt) {
      Individual ind = make(init(attempt, rng));
      if (ind.eval.feasible && std::isfinite(ind.eval.fitness)) pop.push_back(std::move(ind));
    }
    if (pop.empty()) {
      throw InfeasibilityError(
          "internal penalty method found no strictly feasible starting individual",
          space.decode(out.least_violating.genome), out.least_violating.eval.violation);
    }
    for (std::size_t k = 0; pop.size() < pop_size; ++k) pop.push_back(pop[k]);
  } else {
    for (std::size_t k = 0; k < pop_size; ++k) pop.push_back(make(init(k, rng)));
  }
  record(pop);

  for (generation = 1; generation <= cfg.generations; ++generation) {
    std::vector<Individual> next;
    next.reserve(pop_size);
    const auto elite = std::min_element(pop.begin(), pop.end(), [](const auto& a, const auto& b) {
      return a.eval.fitness < b.eval.fitness;
    });
    next.push_back(*elite);

    std::uniform_real_distribution<double> coin(0.0, 1.0);
    while (next.size() < pop_size) {
      auto select = [&]() -> const Individual& {
        return cfg.selection == SelectionMethod::Tournament
                   ? pop[pick_tournament(pop, cfg.tournament_size, rng)]
                   : pop[pick_proportional(pop, rng)];
      };
      const Individual& pa = select();
      const Individual& pb = select();
      Genome ca = pa.genome;
      Genome cb = pb.genome;
      if (coin(rng) < cfg.crossover_rate) std::tie(ca, cb) = space.crossover(pa.genome, pb.genome, rng);
      space.mutate(ca, cfg.mutation_rate, rng);
      space.mutate(cb, cfg.mutation_rate, rng);
      next.push_back(make(std::move(ca)));
      if (next.size() < pop_size) next.push_back(make(std::move(cb)));
    }
    pop = std::move(next);
    record(pop);
  }
  return out;
}

}  // namespace

std::string to_string(Encoding e) { return e == Encoding::Binary ? "BG" : "RI"; }

void validate(const EAConfig& cfg) {
  if (cfg.population_size < 2) throw ConfigurationError("population_size must be at least 2");
  if (cfg.generations < 0) throw ConfigurationError("generations must be nonnegative");
  if (!(cfg.crossover_rate >= 0.0 && cfg.crossover_rate <= 1.0)) {
    throw ConfigurationError("crossover_rate must lie in [0, 1]");
  }
  if (!(cfg.mutation_rate >= 0.0 && cfg.mutation_rate <= 1.0)) {
    throw ConfigurationError("mutation_rate must lie in [0, 1]");
  }
  if (cfg.tournament_size < 1) throw ConfigurationError("tournament_size must be positive");
  if (!(cfg.penalty.coefficient > 0.0)) throw ConfigurationError("penalty coefficient must be positive");
  if (!(cfg.penalty.barrier_coefficient > 0.0)) {
    throw ConfigurationError("barrier coefficient must be positive");
  }
}

GenomeSpace::GenomeSpace(Encoding encoding, std::vector<VariableBounds> bounds)
    : encoding_(encoding), bounds_(std::move(bounds)) {
  widths_.reserve(bounds_.size());
  for (const auto& b : bounds_) {
    if (b.lower > b.upper) throw ConfigurationError("variable lower bound exceeds upper bound");
    widths_.push_back(bits_for_range(b.upper - b.lower));
  }
}

std::size_t GenomeSpace::gene_count() const {
  if (encoding_ == Encoding::RealInteger) return bounds_.size();
  std::size_t n = 0;
  for (std::size_t w : widths_) n += w;
  return n;
}

Genome GenomeSpace::random(Rng& rng) const {
  Genome g;
  g.encoding = encoding_;
  if (encoding_ == Encoding::Binary) {
    std::bernoulli_distribution bit(0.5);
    g.bits.resize(gene_count());
    for (auto& b : g.bits) b = bit(rng) ? 1 : 0;
  } else {
    g.values.reserve(bounds_.size());
    for (const auto& b : bounds_) {
      g.values.push_back(std::uniform_int_distribution<int>(b.lower, b.upper)(rng));
    }
  }
  return g;
}

Genome GenomeSpace::encode(const std::vector<int>& values, bool* clamped) const {
  if (values.size() != bounds_.size()) {
    throw StructuralError("expected " + std::to_string(bounds_.size()) + " variables, got " +
                          std::to_string(values.size()));
  }
  bool any_clamped = false;
  Genome g;
  g.encoding = encoding_;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const int v = std::clamp(values[k], bounds_[k].lower, bounds_[k].upper);
    any_clamped = any_clamped || v != values[k];
    if (encoding_ == Encoding::RealInteger) {
      g.values.push_back(v);
      continue;
    }
    const auto offset = static_cast<unsigned long long>(v - bounds_[k].lower);
    for (std::size_t bit = widths_[k]; bit-- > 0;) g.bits.push_back((offset >> bit) & 1ULL);
  }
  if (clamped) *clamped = any_clamped;
  return g;
}

std::vector<int> GenomeSpace::decode(const Genome& g) const {
  std::vector<int> out;
  out.reserve(bounds_.size());
  if (g.encoding != encoding_) throw StructuralError("genome encoding does not match the space");
  if (encoding_ == Encoding::RealInteger) {
    if (g.values.size() != bounds_.size()) throw StructuralError("genome has wrong length");
    for (std::size_t k = 0; k < bounds_.size(); ++k) {
      out.push_back(std::clamp(g.values[k], bounds_[k].lower, bounds_[k].upper));
    }
    return out;
  }
  if (g.bits.size() != gene_count()) throw StructuralError("genome has wrong length");
  std::size_t pos = 0;
  for (std::size_t k = 0; k < bounds_.size(); ++k) {
    long long offset = 0;
    for (std::size_t bit = 0; bit < widths_[k]; ++bit) offset = (offset << 1) | g.bits[pos++];
    const long long v = bounds_[k].lower + offset;
    out.push_back(static_cast<int>(std::min<long long>(v, bounds_[k].upper)));
  }
  return out;
}

std::pair<Genome, Genome> GenomeSpace::crossover(const Genome& a, const Genome& b,
                                                 Rng& rng) const {
  Genome ca = a;
  Genome cb = b;
  if (encoding_ == Encoding::Binary) {
    const std::size_t n = a.bits.size();
    if (n < 2) return {ca, cb};
    const std::size_t cut = std::uniform_int_distribution<std::size_t>(1, n - 1)(rng);
    for (std::size_t k = cut; k < n; ++k) std::swap(ca.bits[k], cb.bits[k]);
    return {ca, cb};
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t k = 0; k < a.values.size(); ++k) {
    const double w = unit(rng);
    const double x = a.values[k];
    const double y = b.values[k];
    ca.values[k] = std::clamp(static_cast<int>(std::lround(w * x + (1.0 - w) * y)),
                              bounds_[k].lower, bounds_[k].upper);
    cb.values[k] = std::clamp(static_cast<int>(std::lround((1.0 - w) * x + w * y)),
                              bounds_[k].lower, bounds_[k].upper);
  }
  return {ca, cb};
}

void GenomeSpace::mutate(Genome& g, double rate, Rng& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (encoding_ == Encoding::Binary) {
    for (auto& b : g.bits) {
      if (unit(rng) < rate) b ^= 1;
    }
    return;
  }
  for (std::size_t k = 0; k < g.values.size(); ++k) {
    if (unit(rng) < rate) {
      g.values[k] = std::uniform_int_distribution<int>(bounds_[k].lower, bounds_[k].upper)(rng);
    }
  }
}

GenomeSpace headcount_space(const ProblemInstance& inst, Encoding encoding) {
  std::vector<VariableBounds> bounds;
  bounds.reserve(inst.job_count());
  for (const Job& j : inst.jobs) bounds.push_back({j.headcount_min, j.headcount_max});
  return GenomeSpace(encoding, std::move(bounds));
}

EncodedHeadcounts encode(const HeadcountVector& hc, const ProblemInstance& inst, Encoding mode) {
  EncodedHeadcounts out;
  out.genome = headcount_space(inst, mode).encode(hc.counts, &out.clamped);
  return out;
}

HeadcountVector decode(const Genome& g, const ProblemInstance& inst) {
  return {headcount_space(inst, g.encoding).decode(g)};
}

Evaluation evaluate_summary(const AttendanceSummary& s, const Objective& objective,
                            const ConstraintExpr& expr, const ProblemInstance& inst,
                            const PenaltyConfig& penalty) {
  Evaluation e;
  e.raw_objective = objective.raw(s, inst);
  e.objective = objective.normalize(e.raw_objective);
  e.violation = violation_expr(expr, s, inst);
  e.feasible = e.violation == 0.0;
  if (penalty.method == PenaltyMethod::External) {
    e.fitness = e.objective + penalty.coefficient * e.violation * e.violation;
  } else {
    e.fitness = e.feasible ? e.objective + penalty.barrier_coefficient * barrier_expr(expr, s, inst)
                           : kInf;
  }
  return e;
}

Evaluation evaluate_headcounts(const HeadcountVector& hc, const ObjectiveBundle& bundle,
                               const ConstraintExpr& expr, const ProblemInstance& inst,
                               const PenaltyConfig& penalty) {
  if (bundle.empty()) throw ConfigurationError("objective bundle is empty");
  return evaluate_summary(summarize_nominal(hc, inst), bundle.front(), expr, inst, penalty);
}

double fitness(const Genome& g, const ObjectiveBundle& bundle, const ConstraintExpr& expr,
               const ProblemInstance& inst, const EAConfig& cfg) {
  if (cfg.penalty.method == PenaltyMethod::Internal) require_inequality_form(expr, inst);
  return evaluate_headcounts(decode(g, inst), bundle, expr, inst, cfg.penalty).fitness;
}

std::string RunTrace::to_csv(bool include_timing) const {
  std::ostringstream out;
  out.precision(17);
  out << "generation,best,mean,evals";
  if (include_timing) out << ",millis";
  out << '\n';
  for (const auto& r : rows) {
    out << r.generation << ',' << r.best << ',' << r.mean << ',' << r.evaluations;
    if (include_timing) out << ',' << r.millis;
    out << '\n';
  }
  return out.str();
}

EAResult run_ea(const ProblemInstance& inst, const ObjectiveBundle& bundle,
                const ConstraintExpr& expr, const EAConfig& cfg) {
  validate(cfg);
  if (bundle.size() != 1) {
    throw ConfigurationError("run_ea needs exactly one objective; use run_moea for several");
  }
  check_resolvable(expr, inst);
  const bool internal = cfg.penalty.method == PenaltyMethod::Internal;
  if (internal) require_inequality_form(expr, inst);

  const GenomeSpace space = headcount_space(inst, cfg.encoding);
  Rng rng(cfg.seed);
  const Evaluator evaluate = [&](const Genome& g) {
    return evaluate_headcounts({space.decode(g)}, bundle, expr, inst, cfg.penalty);
  };
  const Initializer init = [&space](std::size_t, Rng& r) { return space.random(r); };
  EvolutionOutcome outcome = evolve(space, evaluate, init, cfg, rng, internal);

  if (!outcome.best_feasible) {
    throw InfeasibilityError("no feasible staffing found", space.decode(outcome.least_violating.genome),
                             outcome.least_violating.eval.violation);
  }
  EAResult result;
  result.genome = outcome.best_feasible->genome;
  result.best = {space.decode(result.genome)};
  result.evaluation = outcome.best_feasible->eval;
  result.trace = std::move(outcome.trace);
  result.generation_of_best = outcome.generation_of_best;
  result.evaluations = outcome.evaluations;
  return result;
}

std::size_t assignment_bits(const HeadcountVector& hc, const ProblemInstance& inst) {
  const std::size_t per_day = inst.multi_shift ? kShiftsPerDay : 1;
  return static_cast<std::size_t>(std::max(0, hc.total())) *
         static_cast<std::size_t>(inst.horizon_days) * per_day;
}

AttendanceTensor assignment_tensor(const std::vector<int>& bits, const HeadcountVector& hc,
                                   const ProblemInstance& inst) {
  if (bits.size() != assignment_bits(hc, inst)) {
    throw StructuralError("attendance bit count does not match the staffing");
  }
  AttendanceTensor t = AttendanceTensor::for_instance(hc, inst);
  const auto roster = employee_roster(hc);
  const auto days = static_cast<std::size_t>(inst.horizon_days);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < roster.size(); ++i) {
    for (std::size_t d = 0; d < days; ++d) {
      if (inst.multi_shift) {
        for (std::size_t k = 0; k < kShiftsPerDay; ++k) {
          if (bits[pos++] != 0) t.set(i, d * kShiftsPerDay + k, roster[i].job, true);
        }
      } else if (bits[pos++] != 0) {
        t.set_day(i, d, roster[i].job, true);
      }
    }
  }
  return t;
}

EAConfig assignment_defaults(std::size_t bits, std::uint64_t seed) {
  EAConfig cfg;
  cfg.seed = seed;
  cfg.mutation_rate = bits > 0 ? std::min(0.1, 2.0 / static_cast<double>(bits)) : 0.0;
  cfg.tournament_size = 3;
  return cfg;
}

AssignmentResult solve_assignment(const HeadcountVector& hc, const ProblemInstance& inst,
                                  const ObjectiveBundle& bundle, const ConstraintExpr& expr,
                                  const EAConfig& cfg) {
  validate(cfg);
  if (bundle.empty()) throw ConfigurationError("objective bundle is empty");
  if (hc.size() != inst.job_count()) {
    throw StructuralError("headcount vector does not match the instance job count");
  }
  check_resolvable(expr, inst);
  {
    const AttendanceSummary nominal = summarize_nominal(hc, inst);
    for (AtomKind k : {AtomKind::Y2, AtomKind::K5}) {
      if (!eval_atom({k}, nominal, inst)) {
        throw InfeasibilityError("staffing violates " + std::string(atom_name(k)) +
                                 "; no attendance assignment can repair it",
                                 hc.counts, violation_atom({k}, nominal, inst));
      }
    }
  }
  const bool internal = cfg.penalty.method == PenaltyMethod::Internal;
  if (internal) require_inequality_form(expr, inst);

  const std::size_t n_bits = assignment_bits(hc, inst);
  const GenomeSpace space(Encoding::Binary, std::vector<VariableBounds>(n_bits, {0, 1}));
  Rng rng(cfg.seed);
  const Objective& objective = bundle.front();
  const Evaluator evaluate = [&](const Genome& g) {
    const AttendanceTensor t = assignment_tensor(space.decode(g), hc, inst);
    return evaluate_summary(summarize(t, hc, inst), objective, expr, inst, cfg.penalty);
  };
  // Attendance densities spread from sparse to full so the initial
  // population brackets both coverage-driven and cost-driven optima.
  const auto pop = static_cast<double>(cfg.population_size);
  const Initializer init = [&](std::size_t index, Rng& r) {
    Genome g;
    g.encoding = Encoding::Binary;
    const double density = static_cast<double>(index % cfg.population_size + 1) / pop;
    std::bernoulli_distribution bit(density);
    g.bits.resize(n_bits);
    for (auto& b : g.bits) b = bit(r) ? 1 : 0;
    return g;
  };

  EvolutionOutcome outcome = evolve(space, evaluate, init, cfg, rng, internal);
  if (!outcome.best_feasible) {
    throw InfeasibilityError("no feasible attendance assignment found for the staffing",
                             hc.counts, outcome.least_violating.eval.violation);
  }

  // First-improvement bit-flip descent on the best feasible assignment.
  Individual best = *outcome.best_feasible;
  for (bool improved = true; improved;) {
    improved = false;
    for (std::size_t k = 0; k < n_bits; ++k) {
      Genome trial = best.genome;
      trial.bits[k] ^= 1;
      const Evaluation e = evaluate(trial);
      ++outcome.evaluations;
      if (e.feasible && (e.objective < best.eval.objective ||
                         (e.objective == best.eval.objective && e.fitness < best.eval.fitness))) {
        best = {std::move(trial), e};
        improved = true;
      }
    }
  }

  AssignmentResult result;
  result.tensor = assignment_tensor(space.decode(best.genome), hc, inst);
  result.evaluation = best.eval;
  result.trace = std::move(outcome.trace);
  result.evaluations = outcome.evaluations;
  return result;
}

}  // namespace msched
