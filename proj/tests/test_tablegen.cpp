#include <doctest.h>

#include <random>
#include <set>

#include "msched/errors.hpp"
#include "msched/reference.hpp"
#include "msched/tablegen.hpp"

using namespace msched;

namespace {

std::vector<EmployeeId> staff(std::size_t job, std::size_t n) {
  std::vector<EmployeeId> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back({job, k});
  return out;
}

}  // namespace

TEST_CASE("one day with two picks from three members") {
  const auto members = staff(0, 3);
  const ScheduleTable t = generate_table(members, 1, 2, cap_policy(7), 5);
  REQUIRE(t.rows.size() == 1);
  REQUIRE(t.rows[0].size() == 2);
  CHECK(t.rows[0][0].employee != t.rows[0][1].employee);
  const auto loads = member_loads(t, members);
  CHECK(loads[0] + loads[1] + loads[2] == 2);
}

TEST_CASE("generated tables replay under their policy") {
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + rng() % 8;
    const int days = 1 + static_cast<int>(rng() % 30);
    const int need = 1 + static_cast<int>(rng() % n);
    const int cap = (need * days + static_cast<int>(n) - 1) / static_cast<int>(n);
    const auto members = staff(0, n);
    const auto policy = balanced_policy(cap);
    const ScheduleTable t = generate_table(members, days, need, policy, rng());
    CHECK(replay_table(t, members, need, policy));
    const auto loads = member_loads(t, members);
    const auto [lo, hi] = std::minmax_element(loads.begin(), loads.end());
    CHECK(*hi - *lo <= 1);
    for (const auto& row : t.rows) {
      std::set<EmployeeId> seen;
      for (const auto& e : row) CHECK(seen.insert(e.employee).second);
    }
  }
}

TEST_CASE("a tampered table no longer replays") {
  const auto members = staff(0, 3);
  const auto policy = cap_policy(1);
  ScheduleTable t = generate_table(members, 3, 1, policy, 9);
  CHECK(replay_table(t, members, 1, policy));
  t.rows[1][0].employee = t.rows[0][0].employee;
  CHECK_FALSE(replay_table(t, members, 1, policy));
}

TEST_CASE("impossible demand fails on the day it runs out") {
  const auto members = staff(0, 2);
  try {
    generate_table(members, 3, 1, cap_policy(1), 1);
    FAIL("expected a generation failure");
  } catch (const TableGenerationError& e) {
    CHECK(e.day() == 2);
  }
  CHECK_THROWS_AS(generate_table({}, 1, 1, cap_policy(1), 1), TableGenerationError);
}

TEST_CASE("same seed, same table") {
  const auto members = staff(2, 6);
  CHECK(generate_table(members, 30, 3, balanced_policy(30), 42) ==
        generate_table(members, 30, 3, balanced_policy(30), 42));
}

TEST_CASE("rotation with one post and one person is constant") {
  const ScheduleTable t = generate_rotation({1, 1, 0, {}}, 5);
  for (const auto& row : t.rows) {
    REQUIRE(row.size() == 1);
    CHECK(row[0].employee == EmployeeId{0, 0});
  }
}

TEST_CASE("rotation spreads load evenly over full cycles") {
  const ScheduleTable two = generate_rotation({2, 4, 0, {}}, 2);
  for (int l : member_loads(two, staff(0, 4))) CHECK(l == 1);
  const ScheduleTable three = generate_rotation({3, 5, 1, {}}, 5);
  for (int l : member_loads(three, staff(1, 5))) CHECK(l == 3);
  CHECK(three.rows[0][2].slot == Shift::Evening);
}

TEST_CASE("rotation follows a custom order and rejects too few people") {
  const ScheduleTable t = generate_rotation({1, 3, 0, [](std::size_t k) { return 2 - k; }}, 3);
  CHECK(t.rows[0][0].employee.ordinal == 2);
  CHECK(t.rows[2][0].employee.ordinal == 0);
  CHECK_THROWS_AS(generate_rotation({3, 2, 0, {}}, 1), ConfigurationError);
}

TEST_CASE("tables convert to attendance tensors") {
  ProblemInstance inst = reference_instance();
  const HeadcountVector hc{{3, 10, 3, 8, 6, 8}};
  ScheduleTable t;
  t.days = 7;
  t.rows.resize(7);
  CHECK(table_to_tensor(t, hc, inst).count_ones() == 0);
  t.rows[2].push_back({2, std::nullopt, {1, 4}});
  const AttendanceTensor one = table_to_tensor(t, hc, inst);
  CHECK(one.count_ones() == 4);
  CHECK(one.at(3 + 4, 2, Shift::Midnight, 1));

  inst.multi_shift = true;
  t.rows[2][0].slot = Shift::Afternoon;
  CHECK(table_to_tensor(t, hc, inst).count_ones() == 1);

  t.rows[2][0].employee = {1, 10};
  CHECK_THROWS_AS(table_to_tensor(t, hc, inst), StructuralError);
}

TEST_CASE("merging keeps every entry by day") {
  const ScheduleTable a = generate_rotation({1, 2, 0, {}}, 3);
  const ScheduleTable b = generate_rotation({2, 3, 1, {}}, 3);
  const ScheduleTable m = merge_tables({a, b});
  CHECK(m.days == 3);
  CHECK(m.slot_count() == a.slot_count() + b.slot_count());
}

TEST_CASE("table csv rows") {
  const ProblemInstance inst = reference_instance();
  ScheduleTable t;
  t.days = 1;
  t.rows = {{{0, std::nullopt, {2, 1}}, {0, Shift::Evening, {5, 0}}}};
  CHECK(table_to_csv(t, inst) == "day,slot,job,employee\n0,ALL,c,1\n0,EVN,f,0\n");
}
