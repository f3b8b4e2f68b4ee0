#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "msched/domain.hpp"
#include "msched/summary.hpp"

namespace msched {

enum class Direction : std::uint8_t { Minimize, Maximize };

struct Objective {
  enum class Kind : std::uint8_t { TotalTime, TotalSalary, MultiShiftSalary, HeadcountSubset, Custom };

  Kind kind = Kind::TotalTime;
  Direction direction = Direction::Minimize;
  std::vector<std::size_t> jobs;  // HeadcountSubset only
  std::function<double(const AttendanceSummary&, const ProblemInstance&)> custom;
  std::string label;

  static Objective total_time(Direction d = Direction::Minimize);
  static Objective total_salary(Direction d = Direction::Minimize);
  static Objective multishift_salary(Direction d = Direction::Minimize);
  static Objective headcount(std::vector<std::size_t> jobs, Direction d = Direction::Minimize);
  static Objective from_function(
      std::string label, std::function<double(const AttendanceSummary&, const ProblemInstance&)> fn,
      Direction d = Direction::Minimize);

  std::string name() const;

  // Objective value as defined, regardless of direction.
  double raw(const AttendanceSummary& s, const ProblemInstance& inst) const;
  // Direction-normalized: smaller is always better.
  double normalized(const AttendanceSummary& s, const ProblemInstance& inst) const;
  double normalize(double raw_value) const {
    return direction == Direction::Minimize ? raw_value : -raw_value;
  }

  // Per-job coefficients c_j such that the nominal-schedule raw value equals
  // sum_j c_j * N_j. Empty for objectives without that linear form.
  std::vector<double> linear_coefficients(const ProblemInstance& inst) const;
};

using ObjectiveBundle = std::vector<Objective>;

// Tokens: total_time | salary | salary_ms | headcount:a+c+e, optionally
// prefixed with "max:" to maximize.
Objective parse_objective_token(std::string_view token, const ProblemInstance& inst);

double f1_job_time(const AttendanceTensor& tensor, std::size_t job, const ProblemInstance& inst);
double f2_total_salary(const HeadcountVector& hc, const ProblemInstance& inst);
double f3_multishift_salary(const AttendanceTensor& tensor, const ProblemInstance& inst);
int headcount_subset(const HeadcountVector& hc, const std::vector<std::size_t>& jobs);

// floor(N_l^j / sum_i N_l^i * M)
int headcount_upper_bound(const ProblemInstance& inst, std::size_t job);
std::vector<int> headcount_upper_bounds(const std::vector<int>& lower, int max_total_staff);

}  // namespace msched
