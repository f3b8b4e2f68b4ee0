#include "msched/objectives.hpp"

#include <cmath>

#include "msched/errors.hpp"

namespace msched {

Objective Objective::total_time(Direction d) {
  Objective o;
  o.kind = Kind::TotalTime;
  o.direction = d;
  return o;
}

Objective Objective::total_salary(Direction d) {
  Objective o;
  o.kind = Kind::TotalSalary;
  o.direction = d;
  return o;
}

Objective Objective::multishift_salary(Direction d) {
  Objective o;
  o.kind = Kind::MultiShiftSalary;
  o.direction = d;
  return o;
}

Objective Objective::headcount(std::vector<std::size_t> jobs, Direction d) {
  Objective o;
  o.kind = Kind::HeadcountSubset;
  o.direction = d;
  o.jobs = std::move(jobs);
  return o;
}

Objective Objective::from_function(
    std::string label, std::function<double(const AttendanceSummary&, const ProblemInstance&)> fn,
    Direction d) {
  Objective o;
  o.kind = Kind::Custom;
  o.direction = d;
  o.custom = std::move(fn);
  o.label = std::move(label);
  return o;
}

std::string Objective::name() const {
  std::string base;
  switch (kind) {
    case Kind::TotalTime:
      base = "total_time";
      break;
    case Kind::TotalSalary:
      base = "salary";
      break;
    case Kind::MultiShiftSalary:
      base = "salary_ms";
      break;
    case Kind::HeadcountSubset:
      base = "headcount";
      for (std::size_t k = 0; k < jobs.size(); ++k) {
        base += (k == 0 ? ':' : '+') + std::to_string(jobs[k]);
      }
      break;
    case Kind::Custom:
      base = label.empty() ? "custom" : label;
      break;
  }
  if (!label.empty() && kind != Kind::Custom) base = label;
  return direction == Direction::Maximize ? "max:" + base : base;
}

double Objective::raw(const AttendanceSummary& s, const ProblemInstance& inst) const {
  switch (kind) {
    case Kind::TotalTime:
      return s.total_time;
    case Kind::TotalSalary:
      return s.salary_daily;
    case Kind::MultiShiftSalary:
      return s.salary_shift;
    case Kind::HeadcountSubset:
      return headcount_subset(s.headcounts, jobs);
    case Kind::Custom:
      if (!custom) throw ConfigurationError("custom objective has no function");
      return custom(s, inst);
  }
  return 0.0;
}

double Objective::normalized(const AttendanceSummary& s, const ProblemInstance& inst) const {
  return normalize(raw(s, inst));
}

std::vector<double> Objective::linear_coefficients(const ProblemInstance& inst) const {
  const double days = inst.horizon_days;
  std::vector<double> c(inst.job_count(), 0.0);
  switch (kind) {
    case Kind::TotalTime:
      for (std::size_t j = 0; j < c.size(); ++j) c[j] = daily_work_hours(inst.jobs[j]) * days;
      return c;
    case Kind::TotalSalary:
    case Kind::MultiShiftSalary:
      for (std::size_t j = 0; j < c.size(); ++j) c[j] = daily_wage(inst.jobs[j]) * days;
      return c;
    case Kind::HeadcountSubset:
      for (std::size_t j : jobs) c.at(j) += 1.0;
      return c;
    case Kind::Custom:
      break;
  }
  return {};
}

Objective parse_objective_token(std::string_view token, const ProblemInstance& inst) {
  Direction dir = Direction::Minimize;
  if (token.starts_with("max:")) {
    dir = Direction::Maximize;
    token.remove_prefix(4);
  } else if (token.starts_with("min:")) {
    token.remove_prefix(4);
  }
  if (token == "total_time") return Objective::total_time(dir);
  if (token == "salary") return Objective::total_salary(dir);
  if (token == "salary_ms") return Objective::multishift_salary(dir);
  if (token.starts_with("headcount:")) {
    std::string_view rest = token.substr(10);
    std::vector<std::size_t> jobs;
    std::string label = "headcount:";
    while (!rest.empty()) {
      const auto plus = rest.find('+');
      const std::string_view code = rest.substr(0, plus);
      const auto j = inst.job_index(code);
      if (!j) throw ConfigurationError("objective names unknown job '" + std::string(code) + "'");
      jobs.push_back(*j);
      if (plus == std::string_view::npos) break;
      rest.remove_prefix(plus + 1);
    }
    if (jobs.empty()) throw ConfigurationError("headcount objective needs at least one job");
    for (std::size_t k = 0; k < jobs.size(); ++k) {
      label += (k ? "+" : "") + inst.jobs[jobs[k]].code;
    }
    Objective o = Objective::headcount(std::move(jobs), dir);
    o.label = label;
    return o;
  }
  throw ConfigurationError("unknown objective '" + std::string(token) + "'");
}

double f1_job_time(const AttendanceTensor& tensor, std::size_t job, const ProblemInstance& inst) {
  if (job >= inst.job_count() || tensor.jobs() != inst.job_count()) {
    throw StructuralError("job index does not match the tensor");
  }
  // A full single-shift day contributes MOR+AFT+EVN+MID = T_K.
  double hours = 0.0;
  for (std::size_t i = 0; i < tensor.staff(); ++i) {
    for (std::size_t s = 0; s < tensor.slots(); ++s) {
      if (tensor.at(i, s, job)) hours += inst.jobs[job].shift_hours[s % kShiftsPerDay];
    }
  }
  return hours;
}

double f2_total_salary(const HeadcountVector& hc, const ProblemInstance& inst) {
  if (hc.size() != inst.job_count()) {
    throw StructuralError("headcount vector does not match the instance job count");
  }
  double per_day = 0.0;
  for (std::size_t j = 0; j < hc.size(); ++j) per_day += hc[j] * daily_wage(inst.jobs[j]);
  return inst.horizon_days * per_day;
}

double f3_multishift_salary(const AttendanceTensor& tensor, const ProblemInstance& inst) {
  if (tensor.jobs() != inst.job_count()) throw StructuralError("tensor does not match instance");
  double total = 0.0;
  for (std::size_t i = 0; i < tensor.staff(); ++i) {
    for (std::size_t s = 0; s < tensor.slots(); ++s) {
      for (std::size_t j = 0; j < tensor.jobs(); ++j) {
        if (tensor.at(i, s, j)) total += inst.jobs[j].wage_per_shift[s % kShiftsPerDay];
      }
    }
  }
  return total;
}

int headcount_subset(const HeadcountVector& hc, const std::vector<std::size_t>& jobs) {
  int n = 0;
  for (std::size_t j : jobs) {
    if (j >= hc.size()) throw StructuralError("headcount subset names job " + std::to_string(j));
    n += hc[j];
  }
  return n;
}

std::vector<int> headcount_upper_bounds(const std::vector<int>& lower, int max_total_staff) {
  long long denom = 0;
  for (int n : lower) denom += n;
  if (denom <= 0) {
    throw ConfigurationError("headcount upper bounds need a positive sum of lower bounds");
  }
  std::vector<int> upper;
  upper.reserve(lower.size());
  for (int n : lower) {
    upper.push_back(static_cast<int>(static_cast<long long>(n) * max_total_staff / denom));
  }
  return upper;
}

int headcount_upper_bound(const ProblemInstance& inst, std::size_t job) {
  std::vector<int> lower;
  for (const Job& j : inst.jobs) lower.push_back(j.headcount_min);
  return headcount_upper_bounds(lower, inst.max_total_staff).at(job);
}

}  // namespace msched
