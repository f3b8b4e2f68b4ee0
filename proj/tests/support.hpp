#pragma once

// Small-instance generators and brute-force oracles shared by the tests.
// The oracles recompute every quantity from the instance fields directly and
// never call the library's summaries, constraints or objectives.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "msched/domain.hpp"

namespace msched::test {

inline double hours_per_day(const Job& j) {
  double h = 0;
  for (double x : j.shift_hours) h += x;
  return h;
}

inline double wage_per_day(const Job& j) {
  double w = 0;
  for (std::size_t s = 0; s < 4; ++s) {
    if (j.shift_hours[s] > 0) w += j.wage_per_shift[s];
  }
  return w;
}

inline const std::vector<ShiftValues>& shift_patterns() {
  static const std::vector<ShiftValues> p = {
      {4, 4, 0, 0}, {4, 4, 4, 0}, {4, 0, 4, 0}, {4, 4, 4, 8}, {0, 4, 4, 0}, {6, 0, 0, 0}};
  return p;
}

// Nominal-schedule feasibility of k1..k6 for a staffing.
inline bool nominal_ok(const ProblemInstance& inst, const std::vector<int>& n) {
  int total = 0;
  double salary = 0;
  for (std::size_t j = 0; j < n.size(); ++j) {
    if (n[j] < 1) return false;
    const double t = n[j] * hours_per_day(inst.jobs[j]) * inst.horizon_days;
    if (t < inst.work_time_bounds[j].lower || t > inst.work_time_bounds[j].upper) return false;
    salary += n[j] * wage_per_day(inst.jobs[j]) * inst.horizon_days;
    total += n[j];
  }
  return total <= inst.max_total_staff && salary >= inst.salary_bounds.lower &&
         salary <= inst.salary_bounds.upper;
}

inline double nominal_time(const ProblemInstance& inst, const std::vector<int>& n) {
  double t = 0;
  for (std::size_t j = 0; j < n.size(); ++j) t += n[j] * hours_per_day(inst.jobs[j]) * inst.horizon_days;
  return t;
}

inline void for_each_staffing(const ProblemInstance& inst,
                              const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> n(inst.jobs.size());
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == n.size()) {
      fn(n);
      return;
    }
    for (int x = inst.jobs[k].headcount_min; x <= inst.jobs[k].headcount_max; ++x) {
      n[k] = x;
      rec(k + 1);
    }
  };
  rec(0);
}

// Minimum nominal total time under k1..k6, or nullopt when infeasible.
inline std::optional<double> oracle_min_time(const ProblemInstance& inst) {
  std::optional<double> best;
  for_each_staffing(inst, [&](const std::vector<int>& n) {
    if (!nominal_ok(inst, n)) return;
    const double t = nominal_time(inst, n);
    if (!best || t < *best) best = t;
  });
  return best;
}

/// 2 to 4 jobs, headcount ranges at most five values wide, one to three days.
/// Work-time and salary bounds are drawn so that they bind; instances with no
/// feasible staffing are redrawn.
inline ProblemInstance random_micro_instance(std::mt19937_64& rng, int min_jobs = 2, int max_jobs = 4,
                                             int max_days = 3) {
  auto uni = [&](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };
  for (;;) {
    ProblemInstance inst;
    inst.name = "micro";
    inst.horizon_days = uni(1, max_days);
    inst.rest_cap = uni(0, 1);
    const int jobs = uni(min_jobs, max_jobs);
    int upper_sum = 0;
    for (int j = 0; j < jobs; ++j) {
      Job job;
      job.code = std::string(1, static_cast<char>('a' + j));
      job.name = "job" + std::to_string(j);
      job.shift_hours = shift_patterns()[static_cast<std::size_t>(uni(0, 5))];
      for (std::size_t s = 0; s < 4; ++s) {
        job.wage_per_shift[s] = job.shift_hours[s] > 0 ? uni(10, 40) : 0;
      }
      job.headcount_min = uni(1, 3);
      job.headcount_max = job.headcount_min + uni(1, 4);
      upper_sum += job.headcount_max;
      const double unit = hours_per_day(job) * inst.horizon_days;
      // Lower bound between two staffing levels so it binds strictly.
      const int need = uni(job.headcount_min, job.headcount_max);
      const double lower = std::max(0.0, (need - 1) * unit + uni(1, static_cast<int>(unit)));
      inst.work_time_bounds.push_back({lower, job.headcount_max * unit + uni(0, 10)});
      inst.jobs.push_back(job);
    }
    inst.max_total_staff = upper_sum - uni(0, 3);
    int lower_sum = 0;
    for (const auto& j : inst.jobs) lower_sum += j.headcount_min;
    inst.max_total_staff = std::max(inst.max_total_staff, lower_sum);
    inst.salary_bounds = {0.0, 1e9};
    if (uni(0, 1)) {
      // A salary cap somewhere inside the range of achievable payrolls.
      double lo = 0, hi = 0;
      for (const auto& j : inst.jobs) {
        lo += j.headcount_min * wage_per_day(j) * inst.horizon_days;
        hi += j.headcount_max * wage_per_day(j) * inst.horizon_days;
      }
      inst.salary_bounds.upper = lo + (hi - lo) * std::uniform_real_distribution<double>(0.4, 1.0)(rng);
    }
    if (oracle_min_time(inst)) return inst;
  }
}

// Test-side pairwise Pareto dominance for minimization.
inline bool oracle_dominates(const std::vector<double>& u, const std::vector<double>& v) {
  bool strict = false;
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (u[k] > v[k]) return false;
    if (u[k] < v[k]) strict = true;
  }
  return strict;
}

// Front index of every point by repeated peeling of the non-dominated set.
inline std::vector<int> oracle_ranks(const std::vector<std::vector<double>>& pts) {
  std::vector<int> rank(pts.size(), -1);
  int level = 0;
  std::size_t left = pts.size();
  while (left > 0) {
    std::vector<std::size_t> layer;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (rank[i] != -1) continue;
      bool dominated = false;
      for (std::size_t k = 0; k < pts.size() && !dominated; ++k) {
        dominated = rank[k] == -1 && oracle_dominates(pts[k], pts[i]);
      }
      if (!dominated) layer.push_back(i);
    }
    for (std::size_t i : layer) rank[i] = level;
    left -= layer.size();
    ++level;
  }
  return rank;
}

}  // namespace msched::test
