#include "msched/moea.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "msched/errors.hpp"

namespace msched {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Crowded-comparison: lower rank first, then larger crowding distance.
bool crowded_less(const ScoredIndividual& a, const ScoredIndividual& b) {
  if (a.rank != b.rank) return a.rank < b.rank;
  return a.crowd > b.crowd;
}

ScoredIndividual score(Genome g, const GenomeSpace& space, const ObjectiveBundle& bundle,
                       const ConstraintExpr& expr, const ProblemInstance& inst) {
  ScoredIndividual s;
  s.decoded = {space.decode(g)};
  s.genome = std::move(g);
  const AttendanceSummary summary = summarize_nominal(s.decoded, inst);
  for (const auto& obj : bundle) {
    const double raw = obj.raw(summary, inst);
    s.raw_objectives.push_back(raw);
    s.objectives.push_back(obj.normalize(raw));
  }
  s.violation = violation_expr(expr, summary, inst);
  return s;
}

// Two-dimensional sweep; higher dimensions slice along the last objective.
double hv_recursive(std::vector<std::vector<double>> pts, const std::vector<double>& ref,
                    std::size_t dims) {
  if (pts.empty()) return 0.0;
  if (dims == 1) {
    double best = ref[0];
    for (const auto& p : pts) best = std::min(best, p[0]);
    return ref[0] - best;
  }
  const std::size_t last = dims - 1;
  std::sort(pts.begin(), pts.end(), [last](const auto& a, const auto& b) { return a[last] < b[last]; });
  double volume = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const double upper = k + 1 < pts.size() ? pts[k + 1][last] : ref[last];
    const double height = upper - pts[k][last];
    if (height <= 0.0) continue;
    std::vector<std::vector<double>> slice(pts.begin(), pts.begin() + static_cast<long>(k) + 1);
    volume += height * hv_recursive(std::move(slice), ref, dims - 1);
  }
  return volume;
}

}  // namespace

bool dominates(const std::vector<double>& u, const std::vector<double>& v) {
  if (u.size() != v.size()) {
    throw StructuralError("objective vectors differ in length: " + std::to_string(u.size()) +
                          " vs " + std::to_string(v.size()));
  }
  bool strictly = false;
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (u[k] > v[k]) return false;
    if (u[k] < v[k]) strictly = true;
  }
  return strictly;
}

bool dominates(const ScoredIndividual& u, const ScoredIndividual& v) {
  if (u.objectives.size() != v.objectives.size()) {
    throw StructuralError("objective vectors differ in length");
  }
  if (u.feasible() && !v.feasible()) return true;
  if (!u.feasible() && v.feasible()) return false;
  if (!u.feasible()) return u.violation < v.violation;
  return dominates(u.objectives, v.objectives);
}

std::vector<std::vector<std::size_t>> non_dominated_sort(std::vector<ScoredIndividual>& pop) {
  const std::size_t n = pop.size();
  std::vector<std::vector<std::size_t>> dominated_by_me(n);
  std::vector<int> dominator_count(n, 0);
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> current;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      if (dominates(pop[p], pop[q])) {
        dominated_by_me[p].push_back(q);
        ++dominator_count[q];
      } else if (dominates(pop[q], pop[p])) {
        dominated_by_me[q].push_back(p);
        ++dominator_count[p];
      }
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (dominator_count[p] == 0) current.push_back(p);
  }
  int rank = 0;
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t p : current) {
      pop[p].rank = rank;
      for (std::size_t q : dominated_by_me[p]) {
        if (--dominator_count[q] == 0) next.push_back(q);
      }
    }
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
    ++rank;
  }
  return fronts;
}

void crowding(std::vector<ScoredIndividual>& pop, const std::vector<std::size_t>& front) {
  if (front.empty()) throw StructuralError("crowding needs a nonempty front");
  for (std::size_t i : front) pop[i].crowd = 0.0;
  const std::size_t m = pop[front.front()].objectives.size();
  std::vector<std::size_t> order(front);
  for (std::size_t k = 0; k < m; ++k) {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return pop[a].objectives[k] < pop[b].objectives[k];
    });
    pop[order.front()].crowd = kInf;
    pop[order.back()].crowd = kInf;
    const double range = pop[order.back()].objectives[k] - pop[order.front()].objectives[k];
    if (range <= 0.0) continue;
    for (std::size_t r = 1; r + 1 < order.size(); ++r) {
      pop[order[r]].crowd +=
          (pop[order[r + 1]].objectives[k] - pop[order[r - 1]].objectives[k]) / range;
    }
  }
}

double hypervolume(std::vector<std::vector<double>> points, const std::vector<double>& ref) {
  std::vector<std::vector<double>> inside;
  for (auto& p : points) {
    if (p.size() != ref.size()) throw StructuralError("point and reference differ in length");
    bool ok = true;
    for (std::size_t k = 0; k < p.size(); ++k) ok = ok && p[k] < ref[k];
    if (ok) inside.push_back(std::move(p));
  }
  return hv_recursive(std::move(inside), ref, ref.size());
}

MoeaResult run_moea(const ProblemInstance& inst, const ObjectiveBundle& bundle,
                    const ConstraintExpr& expr, const MoeaConfig& cfg) {
  validate(cfg.ea);
  if (bundle.size() < 2) throw ConfigurationError("run_moea needs at least two objectives");
  check_resolvable(expr, inst);
  const auto start = std::chrono::steady_clock::now();
  const GenomeSpace space = headcount_space(inst, cfg.ea.encoding);
  const auto n = static_cast<std::size_t>(cfg.ea.population_size);
  Rng rng(cfg.ea.seed);
  MoeaResult result;

  std::vector<ScoredIndividual> pop;
  pop.reserve(n);
  for (std::size_t k = 0; k < n; ++k) pop.push_back(score(space.random(rng), space, bundle, expr, inst));
  result.evaluations = n;

  if (cfg.reference_point) {
    result.reference_point = *cfg.reference_point;
    if (result.reference_point.size() != bundle.size()) {
      throw ConfigurationError("reference point arity does not match the objectives");
    }
  } else {
    result.reference_point.assign(bundle.size(), -kInf);
    for (const auto& s : pop) {
      for (std::size_t k = 0; k < bundle.size(); ++k) {
        result.reference_point[k] = std::max(result.reference_point[k], s.objectives[k]);
      }
    }
    for (double& r : result.reference_point) r += 1.0;
  }

  auto rank_and_crowd = [](std::vector<ScoredIndividual>& group) {
    auto fronts = non_dominated_sort(group);
    for (const auto& f : fronts) crowding(group, f);
    return fronts;
  };
  auto record = [&](int generation) {
    RunTrace::Row row;
    row.generation = generation;
    row.best = kInf;
    double sum = 0.0;
    std::size_t count = 0;
    std::vector<std::vector<double>> front;
    for (const auto& s : pop) {
      if (!s.feasible()) continue;
      row.best = std::min(row.best, s.objectives.front());
      sum += s.objectives.front();
      ++count;
      if (s.rank == 0) front.push_back(s.objectives);
    }
    row.mean = count ? sum / static_cast<double>(count) : kInf;
    row.evaluations = result.evaluations;
    row.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    result.trace.rows.push_back(row);
    result.hypervolume.push_back(hypervolume(std::move(front), result.reference_point));
  };

  rank_and_crowd(pop);
  record(0);

  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  auto tournament = [&]() -> const ScoredIndividual& {
    const std::size_t a = pick(rng);
    const std::size_t b = pick(rng);
    return crowded_less(pop[b], pop[a]) ? pop[b] : pop[a];
  };

  for (int generation = 1; generation <= cfg.ea.generations; ++generation) {
    std::vector<ScoredIndividual> pool = pop;
    pool.reserve(2 * n);
    while (pool.size() < 2 * n) {
      const ScoredIndividual& pa = tournament();
      const ScoredIndividual& pb = tournament();
      Genome ca = pa.genome;
      Genome cb = pb.genome;
      if (coin(rng) < cfg.ea.crossover_rate) std::tie(ca, cb) = space.crossover(pa.genome, pb.genome, rng);
      space.mutate(ca, cfg.ea.mutation_rate, rng);
      space.mutate(cb, cfg.ea.mutation_rate, rng);
      pool.push_back(score(std::move(ca), space, bundle, expr, inst));
      ++result.evaluations;
      if (pool.size() < 2 * n) {
        pool.push_back(score(std::move(cb), space, bundle, expr, inst));
        ++result.evaluations;
      }
    }

    // Fill front by front; the first front that does not fit is truncated
    // once by crowding distance, most crowded members eliminated first.
    const auto fronts = rank_and_crowd(pool);
    std::vector<ScoredIndividual> next;
    next.reserve(n);
    for (const auto& front : fronts) {
      if (next.size() + front.size() <= n) {
        for (std::size_t i : front) next.push_back(pool[i]);
        continue;
      }
      std::vector<std::size_t> order(front);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return pool[a].crowd > pool[b].crowd; });
      for (std::size_t k = 0; next.size() < n; ++k) next.push_back(pool[order[k]]);
      break;
    }
    pop = std::move(next);
    rank_and_crowd(pop);
    record(generation);
  }

  std::map<std::vector<int>, bool> seen;
  for (const auto& s : pop) {
    if (s.rank != 0 || !s.feasible()) continue;
    if (seen.emplace(s.decoded.counts, true).second) result.archive.push_back(s);
  }
  std::sort(result.archive.begin(), result.archive.end(),
            [](const auto& a, const auto& b) { return a.objectives < b.objectives; });
  return result;
}

std::string archive_to_csv(const ParetoArchive& archive, const ObjectiveBundle& bundle,
                           const ProblemInstance& inst) {
  std::ostringstream out;
  out.precision(17);
  for (const Job& j : inst.jobs) out << j.code << ',';
  for (std::size_t k = 0; k < bundle.size(); ++k) out << bundle[k].name() << (k + 1 < bundle.size() ? "," : "\n");
  for (const auto& s : archive) {
    for (int c : s.decoded.counts) out << c << ',';
    for (std::size_t k = 0; k < s.raw_objectives.size(); ++k) {
      out << s.raw_objectives[k] << (k + 1 < s.raw_objectives.size() ? "," : "\n");
    }
  }
  return out.str();
}

}  // namespace msched
