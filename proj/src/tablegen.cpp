#include "msched/tablegen.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "msched/errors.hpp"

namespace msched {

std::size_t ScheduleTable::slot_count() const {
  std::size_t n = 0;
  for (const auto& row : rows) n += row.size();
  return n;
}

bool GeneratorState::chosen_today(std::size_t member) const {
  return std::find(today.begin(), today.end(), member) != today.end();
}

SuitablePolicy cap_policy(int cap) {
  return [cap](std::size_t m, const GeneratorState& st) {
    return !st.chosen_today(m) && st.workable[m] < cap;
  };
}

SuitablePolicy balanced_policy(int cap) {
  return [cap](std::size_t m, const GeneratorState& st) {
    if (st.chosen_today(m) || st.workable[m] >= cap) return false;
    const int lowest = *std::min_element(st.workable.begin(), st.workable.end());
    return st.workable[m] == lowest;
  };
}

SuitablePolicy instance_policy(const ProblemInstance& inst, std::size_t job, int members,
                               int per_day_need) {
  if (job >= inst.job_count()) throw StructuralError("policy names unknown job");
  if (members < 1) throw ConfigurationError("policy needs at least one member");
  const double hours_per_day = daily_work_hours(inst.jobs[job]);
  const int days = inst.horizon_days;
  int cap = days;
  if (hours_per_day > 0.0 && job < inst.work_time_bounds.size()) {
    const double share = inst.work_time_bounds[job].upper / (hours_per_day * members);
    cap = std::min(days, static_cast<int>(std::floor(share)));
  }
  // Never below what the rest cap forces or what the daily need demands.
  const int demanded = (per_day_need * days + members - 1) / members;
  cap = std::min(days, std::max({cap, days - inst.rest_cap, demanded}));
  return balanced_policy(cap);
}

namespace {

GeneratorState initial_state(const std::vector<EmployeeId>& members, int days, int need) {
  GeneratorState st;
  st.members = members;
  st.workable.assign(members.size(), 0);
  st.days = days;
  st.per_day_need = need;
  return st;
}

ScheduleTable table_from_worktime(const GeneratorState& st) {
  ScheduleTable table;
  table.days = st.days;
  table.rows.resize(static_cast<std::size_t>(st.days));
  for (std::size_t d = 0; d < st.worktime.size(); ++d) {
    for (std::size_t m : st.worktime[d]) {
      table.rows[d].push_back({static_cast<int>(d), std::nullopt, st.members[m]});
    }
  }
  return table;
}

}  // namespace

ScheduleTable generate_table(const std::vector<EmployeeId>& members, int days, int per_day_need,
                             const SuitablePolicy& policy, std::uint64_t seed) {
  if (days < 0 || per_day_need < 0) throw ConfigurationError("days and need must be nonnegative");
  if (per_day_need > 0 && members.empty()) {
    throw TableGenerationError("no members to draw from", 0);
  }
  std::mt19937_64 rng(seed);
  GeneratorState st = initial_state(members, days, per_day_need);
  std::uniform_int_distribution<std::size_t> draw(0, members.empty() ? 0 : members.size() - 1);

  for (st.day = 0; st.day < days; ++st.day) {
    st.today.clear();
    while (static_cast<int>(st.today.size()) < per_day_need) {
      bool placed = false;
      for (int attempt = 0; attempt < kDrawsPerSlot; ++attempt) {
        const std::size_t man = draw(rng);
        if (policy(man, st)) {
          st.today.push_back(man);
          ++st.workable[man];
          placed = true;
          break;
        }
      }
      if (!placed) {
        throw TableGenerationError("no admissible member after " + std::to_string(kDrawsPerSlot) +
                                       " draws on day " + std::to_string(st.day),
                                   st.day);
      }
    }
    st.worktime.push_back(st.today);
  }
  return table_from_worktime(st);
}

bool replay_table(const ScheduleTable& table, const std::vector<EmployeeId>& members,
                  int per_day_need, const SuitablePolicy& policy) {
  GeneratorState st = initial_state(members, table.days, per_day_need);
  if (table.rows.size() != static_cast<std::size_t>(table.days)) return false;
  for (st.day = 0; st.day < table.days; ++st.day) {
    st.today.clear();
    const auto& row = table.rows[static_cast<std::size_t>(st.day)];
    if (static_cast<int>(row.size()) != per_day_need) return false;
    for (const auto& entry : row) {
      const auto it = std::find(members.begin(), members.end(), entry.employee);
      if (it == members.end() || entry.day != st.day) return false;
      const auto m = static_cast<std::size_t>(it - members.begin());
      if (!policy(m, st)) return false;
      st.today.push_back(m);
      ++st.workable[m];
    }
    st.worktime.push_back(st.today);
  }
  return true;
}

std::vector<int> member_loads(const ScheduleTable& table, const std::vector<EmployeeId>& members) {
  std::vector<int> loads(members.size(), 0);
  for (const auto& row : table.rows) {
    for (const auto& e : row) {
      const auto it = std::find(members.begin(), members.end(), e.employee);
      if (it != members.end()) ++loads[static_cast<std::size_t>(it - members.begin())];
    }
  }
  return loads;
}

ScheduleTable generate_rotation(const RotationSpec& spec, int days) {
  if (spec.positions < 1 || spec.people < 1) {
    throw ConfigurationError("rotation needs positive positions and people");
  }
  if (spec.people < spec.positions) {
    throw ConfigurationError("rotation needs at least as many people (" +
                             std::to_string(spec.people) + ") as positions (" +
                             std::to_string(spec.positions) + ")");
  }
  const auto people = static_cast<std::size_t>(spec.people);
  const auto positions = static_cast<std::size_t>(spec.positions);
  ScheduleTable table;
  table.days = days;
  table.rows.resize(static_cast<std::size_t>(std::max(0, days)));
  for (std::size_t d = 0; d < table.rows.size(); ++d) {
    for (std::size_t p = 0; p < positions; ++p) {
      const std::size_t cyc = (d * positions + p) % people;
      const std::size_t person = spec.order ? spec.order(cyc) : cyc;
      if (person >= people) throw StructuralError("order hook returned an unknown person");
      ScheduleEntry e;
      e.day = static_cast<int>(d);
      if (positions <= kShiftsPerDay) e.slot = kAllShifts[p];
      e.employee = {spec.job, person};
      table.rows[d].push_back(e);
    }
  }
  return table;
}

ScheduleTable merge_tables(const std::vector<ScheduleTable>& tables) {
  ScheduleTable out;
  for (const auto& t : tables) out.days = std::max(out.days, t.days);
  out.rows.resize(static_cast<std::size_t>(out.days));
  for (const auto& t : tables) {
    for (std::size_t d = 0; d < t.rows.size(); ++d) {
      out.rows[d].insert(out.rows[d].end(), t.rows[d].begin(), t.rows[d].end());
    }
  }
  return out;
}

AttendanceTensor table_to_tensor(const ScheduleTable& table, const HeadcountVector& hc,
                                 const ProblemInstance& inst) {
  if (table.days > inst.horizon_days) {
    throw StructuralError("table spans " + std::to_string(table.days) +
                          " days, instance horizon is " + std::to_string(inst.horizon_days));
  }
  AttendanceTensor t = AttendanceTensor::for_instance(hc, inst);
  for (const auto& row : table.rows) {
    for (const auto& e : row) {
      if (e.day < 0 || e.day >= inst.horizon_days) throw StructuralError("entry day out of range");
      const std::size_t i = global_employee_index(hc, e.employee);
      const auto day = static_cast<std::size_t>(e.day);
      if (e.slot && inst.multi_shift) {
        t.set(i, day * kShiftsPerDay + static_cast<std::size_t>(*e.slot), e.employee.job, true);
      } else {
        t.set_day(i, day, e.employee.job, true);
      }
    }
  }
  return t;
}

std::string table_to_csv(const ScheduleTable& table, const ProblemInstance& inst) {
  std::string out = "day,slot,job,employee\n";
  for (const auto& row : table.rows) {
    for (const auto& e : row) {
      if (e.employee.job >= inst.job_count()) throw StructuralError("entry names unknown job");
      out += std::to_string(e.day) + ',' +
             (e.slot ? std::string(shift_name(*e.slot)) : std::string("ALL")) + ',' +
             inst.jobs[e.employee.job].code + ',' + std::to_string(e.employee.ordinal) + '\n';
    }
  }
  return out;
}

}  // namespace msched
