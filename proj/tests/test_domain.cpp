#include <doctest.h>

#include <random>

#include "msched/domain.hpp"
#include "msched/errors.hpp"
#include "msched/reference.hpp"

using namespace msched;

namespace {

ProblemInstance one_job_instance(ShiftValues hours) {
  ProblemInstance inst;
  Job j;
  j.code = "a";
  j.shift_hours = hours;
  inst.jobs = {j};
  inst.horizon_days = 1;
  inst.work_time_bounds = {{0, 100}};
  return inst;
}

}  // namespace

TEST_CASE("separating a zero tensor gives zero channels") {
  AttendanceTensor t(5, 28, 3);
  const auto mats = separate_channels(t);
  REQUIRE(mats.size() == 3);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(mats[j].job == j);
    CHECK(mats[j].rows == 5);
    CHECK(mats[j].cols == 28);
    CHECK(std::count(mats[j].cells.begin(), mats[j].cells.end(), 1) == 0);
  }
}

TEST_CASE("a single entry lands in exactly one channel") {
  AttendanceTensor t(5, 28, 3);
  t.set(0, 2, 1, true);
  const auto mats = separate_channels(t);
  CHECK(mats[1].at(0, 2));
  CHECK(std::count(mats[0].cells.begin(), mats[0].cells.end(), 1) == 0);
  CHECK(std::count(mats[1].cells.begin(), mats[1].cells.end(), 1) == 1);
  CHECK(std::count(mats[2].cells.begin(), mats[2].cells.end(), 1) == 0);
}

TEST_CASE("combine inverts separate on random tensors") {
  std::mt19937_64 rng(7);
  std::bernoulli_distribution coin(0.3);
  for (int rep = 0; rep < 100; ++rep) {
    AttendanceTensor t(5, 28, 3);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t s = 0; s < 28; ++s)
        for (std::size_t j = 0; j < 3; ++j) t.set(i, s, j, coin(rng));
    CHECK(combine_channels(separate_channels(t)) == t);
  }
}

TEST_CASE("combine rejects ragged or misordered channels") {
  std::vector<ChannelMatrix> mats = {ChannelMatrix(0, 2, 4), ChannelMatrix(1, 3, 4)};
  CHECK_THROWS_AS(combine_channels(mats), StructuralError);
  mats = {ChannelMatrix(1, 2, 4), ChannelMatrix(0, 2, 4)};
  CHECK_THROWS_AS(combine_channels(mats), StructuralError);
}

TEST_CASE("daily hours and wages sum the used shifts") {
  Job j;
  j.shift_hours = {4, 4, 4, 8};
  CHECK(daily_work_hours(j) == 20);
  j.wage_per_shift = {1, 2, 3, 4};
  CHECK(daily_wage(j) == 10);
}

TEST_CASE("total work time counts attended slots only") {
  const ProblemInstance inst = one_job_instance({4, 4, 4, 8});
  AttendanceTensor t(1, 4, 1);
  t.set(0, static_cast<std::size_t>(Shift::Morning), 0, true);
  t.set(0, static_cast<std::size_t>(Shift::Midnight), 0, true);
  CHECK(total_work_time(t, inst) == 12);
}

TEST_CASE("employees are numbered by job concatenation") {
  const HeadcountVector hc{{2, 0, 3}};
  const auto roster = employee_roster(hc);
  REQUIRE(roster.size() == 5);
  CHECK(roster[0] == EmployeeId{0, 0});
  CHECK(roster[2] == EmployeeId{2, 0});
  CHECK(global_employee_index(hc, {2, 2}) == 4);
  CHECK_THROWS_AS(global_employee_index(hc, {1, 0}), StructuralError);
}

TEST_CASE("tensor shape is checked against the staffing") {
  const ProblemInstance inst = reference_instance();
  const HeadcountVector hc{{3, 10, 3, 8, 6, 8}};
  CHECK_NOTHROW(check_tensor_shape(AttendanceTensor::for_instance(hc, inst), hc, inst));
  CHECK_THROWS_AS(check_tensor_shape(AttendanceTensor(5, 28, 6), hc, inst), StructuralError);
}

TEST_CASE("full attendance fills every own-job slot") {
  const ProblemInstance inst = reference_instance();
  const HeadcountVector hc{{1, 1, 1, 1, 1, 1}};
  const AttendanceTensor t = full_attendance(hc, inst);
  CHECK(t.count_ones() == 6 * 28);
  CHECK(t.at(1, 0, Shift::Morning, 1));
  CHECK_FALSE(t.at(1, 0, Shift::Morning, 0));
}

TEST_CASE("shift names round trip") {
  for (Shift s : kAllShifts) CHECK(parse_shift(shift_name(s)) == s);
  CHECK_FALSE(parse_shift("NIGHT"));
}
