#pragma once

#include <cstddef>
#include <vector>

#include "msched/domain.hpp"

namespace msched {

/// Aggregates every constraint and objective reads from a candidate schedule.
///
/// Built either from a concrete attendance tensor or, during headcount
/// optimization, from the nominal schedule in which every hired employee is
/// on duty for the whole horizon.
struct AttendanceSummary {
  HeadcountVector headcounts;
  int days = 0;
  std::vector<double> job_hours;   // f1 per job
  double total_time = 0.0;
  double salary_daily = 0.0;       // day-level wages (single-shift model)
  double salary_shift = 0.0;       // slot-level wages (multi-shift model)
  std::vector<int> coverage;       // [job * days + day] attendees
  std::vector<int> rest_days;      // per employee, days with no slot worked
  int foreign_entries = 0;         // entries outside the employee's own job
  int split_days = 0;              // employee-days with partial slot attendance

  int coverage_at(std::size_t job, std::size_t day) const {
    return coverage[job * static_cast<std::size_t>(days) + day];
  }
};

AttendanceSummary summarize(const AttendanceTensor& tensor, const HeadcountVector& hc,
                            const ProblemInstance& inst);

AttendanceSummary summarize_nominal(const HeadcountVector& hc, const ProblemInstance& inst);

}  // namespace msched
