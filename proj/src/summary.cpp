#include "msched/summary.hpp"

#include <algorithm>

#include "msched/errors.hpp"

namespace msched {

AttendanceSummary summarize(const AttendanceTensor& tensor, const HeadcountVector& hc,
                            const ProblemInstance& inst) {
  check_tensor_shape(tensor, hc, inst);
  const std::size_t jobs = inst.job_count();
  const std::size_t days = static_cast<std::size_t>(inst.horizon_days);
  const auto roster = employee_roster(hc);

  AttendanceSummary s;
  s.headcounts = hc;
  s.days = inst.horizon_days;
  s.job_hours.assign(jobs, 0.0);
  s.coverage.assign(jobs * days, 0);
  s.rest_days.assign(roster.size(), 0);

  for (std::size_t i = 0; i < roster.size(); ++i) {
    for (std::size_t d = 0; d < days; ++d) {
      bool worked_any = false;
      for (std::size_t j = 0; j < jobs; ++j) {
        const Job& job = inst.jobs[j];
        int on = 0;
        for (std::size_t k = 0; k < kShiftsPerDay; ++k) {
          if (!tensor.at(i, d * kShiftsPerDay + k, j)) continue;
          ++on;
          s.job_hours[j] += job.shift_hours[k];
          s.salary_shift += job.wage_per_shift[k];
          if (j != roster[i].job) ++s.foreign_entries;
        }
        if (on > 0) {
          worked_any = true;
          ++s.coverage[j * days + d];
          s.salary_daily += daily_wage(job);
          if (on < static_cast<int>(kShiftsPerDay)) ++s.split_days;
        }
      }
      if (!worked_any) ++s.rest_days[i];
    }
  }
  for (double h : s.job_hours) s.total_time += h;
  return s;
}

AttendanceSummary summarize_nominal(const HeadcountVector& hc, const ProblemInstance& inst) {
  if (hc.size() != inst.job_count()) {
    throw StructuralError("headcount vector does not match the instance job count");
  }
  const std::size_t jobs = inst.job_count();
  const std::size_t days = static_cast<std::size_t>(inst.horizon_days);

  AttendanceSummary s;
  s.headcounts = hc;
  s.days = inst.horizon_days;
  s.job_hours.assign(jobs, 0.0);
  s.coverage.assign(jobs * days, 0);
  s.rest_days.assign(static_cast<std::size_t>(std::max(0, hc.total())), 0);
  for (std::size_t j = 0; j < jobs; ++j) {
    const double n = hc[j];
    s.job_hours[j] = n * daily_work_hours(inst.jobs[j]) * static_cast<double>(days);
    s.total_time += s.job_hours[j];
    const double wages = n * daily_wage(inst.jobs[j]) * static_cast<double>(days);
    s.salary_daily += wages;
    s.salary_shift += wages;
    for (std::size_t d = 0; d < days; ++d) s.coverage[j * days + d] = hc[j];
  }
  return s;
}

}  // namespace msched
