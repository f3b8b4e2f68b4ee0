#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "msched/domain.hpp"

namespace msched {

struct ScheduleEntry {
  int day = 0;
  std::optional<Shift> slot;  // absent: the whole day
  EmployeeId employee;

  bool operator==(const ScheduleEntry&) const = default;
};

struct ScheduleTable {
  int days = 0;
  std::vector<std::vector<ScheduleEntry>> rows;  // one row per day

  std::size_t slot_count() const;
  bool operator==(const ScheduleTable&) const = default;
};

/// Generator state visible to a Suitable() policy. Member positions index
/// `members`; `workable[m]` counts appearances of member m so far.
struct GeneratorState {
  std::vector<EmployeeId> members;
  std::vector<int> workable;
  int day = 0;
  int days = 0;
  int per_day_need = 0;
  std::vector<std::size_t> today;
  std::vector<std::vector<std::size_t>> worktime;

  bool chosen_today(std::size_t member) const;
};

using SuitablePolicy = std::function<bool(std::size_t member, const GeneratorState& state)>;

// Not already chosen today and fewer than `cap` assignments so far.
SuitablePolicy cap_policy(int cap);

// cap_policy plus level filling: only members whose count equals the current
// minimum may be drawn, so final loads differ by at most one.
SuitablePolicy balanced_policy(int cap);

// Balanced policy whose cap is the per-employee share of the job's upper work
// time bound, raised to the attendance the rest cap or the daily need force.
SuitablePolicy instance_policy(const ProblemInstance& inst, std::size_t job, int members,
                               int per_day_need);

class TableGenerationError : public std::runtime_error {
 public:
  TableGenerationError(const std::string& what, int day)
      : std::runtime_error(what), day_(day) {}
  int day() const noexcept { return day_; }

 private:
  int day_;
};

inline constexpr int kDrawsPerSlot = 1000;

/// Randomized roster: each day draws members uniformly until `per_day_need`
/// admissible ones are chosen. Fails after kDrawsPerSlot rejected draws.
ScheduleTable generate_table(const std::vector<EmployeeId>& members, int days, int per_day_need,
                             const SuitablePolicy& policy, std::uint64_t seed);

// True iff replaying the table finds every selection admissible when made.
bool replay_table(const ScheduleTable& table, const std::vector<EmployeeId>& members,
                  int per_day_need, const SuitablePolicy& policy);

// Assignments per member, in `members` order.
std::vector<int> member_loads(const ScheduleTable& table, const std::vector<EmployeeId>& members);

using OrderHook = std::function<std::size_t(std::size_t)>;

struct RotationSpec {
  int positions = 1;
  int people = 1;
  std::size_t job = 0;
  OrderHook order;  // identity when empty
};

/// Cyclic rotation: on day d, position p goes to person
/// order((d * positions + p) mod people). Positions map onto shift slots
/// when there are at most four of them.
ScheduleTable generate_rotation(const RotationSpec& spec, int days);

ScheduleTable merge_tables(const std::vector<ScheduleTable>& tables);

AttendanceTensor table_to_tensor(const ScheduleTable& table, const HeadcountVector& hc,
                                 const ProblemInstance& inst);

// day,slot,job,employee; slot is ALL for whole-day entries.
std::string table_to_csv(const ScheduleTable& table, const ProblemInstance& inst);

}  // namespace msched
