#include <doctest.h>

#include <random>

#include "msched/errors.hpp"
#include "msched/objectives.hpp"
#include "msched/reference.hpp"
#include "support.hpp"

using namespace msched;

namespace {

ProblemInstance single_job(ShiftValues hours, ShiftValues wages, int days) {
  ProblemInstance inst;
  Job j;
  j.code = "a";
  j.shift_hours = hours;
  j.wage_per_shift = wages;
  j.headcount_max = 5;
  inst.jobs = {j};
  inst.horizon_days = days;
  inst.max_total_staff = 10;
  inst.work_time_bounds = {{0, 1000}};
  inst.salary_bounds = {0, 1e9};
  return inst;
}

}  // namespace

TEST_CASE("job time sums the hours of attended slots") {
  const ProblemInstance inst = single_job({4, 4, 4, 8}, {1, 1, 1, 1}, 1);
  const AttendanceTensor t = full_attendance({{2}}, inst);
  CHECK(f1_job_time(t, 0, inst) == 40);
}

TEST_CASE("total salary is days times staff times daily wage") {
  const ProblemInstance inst = single_job({8, 0, 0, 0}, {10, 0, 0, 0}, 7);
  CHECK(f2_total_salary({{2}}, inst) == 140);
}

TEST_CASE("multi-shift salary pays each attended slot") {
  ProblemInstance inst = single_job({4, 4, 4, 8}, {1, 1, 1, 3}, 1);
  inst.multi_shift = true;
  AttendanceTensor t(1, 4, 1);
  t.set(0, static_cast<std::size_t>(Shift::Midnight), 0, true);
  CHECK(f3_multishift_salary(t, inst) == 3);
  for (Shift s : kAllShifts) t.set(0, static_cast<std::size_t>(s), 0, true);
  CHECK(f3_multishift_salary(t, inst) == 6);
}

TEST_CASE("headcount subset adds the chosen jobs") {
  CHECK(headcount_subset({{3, 10, 3, 8, 6, 8}}, {1, 2, 4}) == 19);
  const Objective o = parse_objective_token("headcount:b+c+e", reference_instance());
  CHECK(o.jobs == std::vector<std::size_t>{1, 2, 4});
}

TEST_CASE("headcount upper bounds share the cap by lower bounds") {
  CHECK(headcount_upper_bounds({2, 3, 5}, 60) == std::vector<int>{12, 18, 30});
  CHECK(headcount_upper_bounds({4}, 10) == std::vector<int>{10});
  CHECK(headcount_upper_bounds({1, 1, 1}, 10) == std::vector<int>{3, 3, 3});
  CHECK_THROWS_AS(headcount_upper_bounds({0, 0}, 10), ConfigurationError);
}

TEST_CASE("objective tokens parse with direction prefixes") {
  const ProblemInstance inst = reference_instance();
  CHECK(parse_objective_token("total_time", inst).kind == Objective::Kind::TotalTime);
  CHECK(parse_objective_token("salary", inst).kind == Objective::Kind::TotalSalary);
  CHECK(parse_objective_token("salary_ms", inst).kind == Objective::Kind::MultiShiftSalary);
  CHECK(parse_objective_token("max:total_time", inst).direction == Direction::Maximize);
  CHECK_THROWS_AS(parse_objective_token("headcount:z", inst), ConfigurationError);
  CHECK_THROWS_AS(parse_objective_token("speed", inst), ConfigurationError);
}

TEST_CASE("nominal objectives agree with the oracle formulas") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    const ProblemInstance inst = test::random_micro_instance(rng);
    test::for_each_staffing(inst, [&](const std::vector<int>& n) {
      const AttendanceSummary s = summarize_nominal({n}, inst);
      CHECK(Objective::total_time().raw(s, inst) == doctest::Approx(test::nominal_time(inst, n)));
      double pay = 0;
      for (std::size_t j = 0; j < n.size(); ++j) {
        pay += n[j] * test::wage_per_day(inst.jobs[j]) * inst.horizon_days;
      }
      CHECK(Objective::total_salary().raw(s, inst) == doctest::Approx(pay));
    });
  }
}

TEST_CASE("maximizing is minimizing the negation") {
  std::mt19937_64 rng(9);
  for (int rep = 0; rep < 30; ++rep) {
    const ProblemInstance inst = test::random_micro_instance(rng);
    const Objective up = Objective::total_time(Direction::Maximize);
    const Objective down = Objective::total_time();
    std::vector<int> argmax, argmin_neg;
    double best_max = -1, best_neg = 1e300;
    test::for_each_staffing(inst, [&](const std::vector<int>& n) {
      const AttendanceSummary s = summarize_nominal({n}, inst);
      const double raw = down.raw(s, inst);
      if (raw > best_max) {
        best_max = raw;
        argmax = n;
      }
      if (up.normalized(s, inst) < best_neg) {
        best_neg = up.normalized(s, inst);
        argmin_neg = n;
      }
    });
    CHECK(argmax == argmin_neg);
    CHECK(best_neg == -best_max);
  }
}

TEST_CASE("linear coefficients reproduce nominal values") {
  const ProblemInstance inst = reference_instance();
  const HeadcountVector hc{{3, 10, 3, 8, 6, 8}};
  for (const Objective& o : {Objective::total_time(), Objective::total_salary(),
                             Objective::headcount({1, 2, 4})}) {
    const auto coef = o.linear_coefficients(inst);
    REQUIRE(coef.size() == 6);
    double v = 0;
    for (std::size_t j = 0; j < 6; ++j) v += coef[j] * hc[j];
    CHECK(v == doctest::Approx(o.raw(summarize_nominal(hc, inst), inst)));
  }
  CHECK(Objective::total_time().raw(summarize_nominal(hc, inst), inst) == 2884);
}
