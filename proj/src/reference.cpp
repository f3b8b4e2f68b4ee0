#include "msched/reference.hpp"

namespace msched {

namespace {

Job make_job(const char* code, const char* name, ShiftValues hours, ShiftValues wages, int lo,
             int hi) {
  Job j;
  j.code = code;
  j.name = name;
  j.shift_hours = hours;
  j.wage_per_shift = wages;
  j.headcount_min = lo;
  j.headcount_max = hi;
  return j;
}

}  // namespace

ProblemInstance reference_instance() {
  ProblemInstance inst;
  inst.name = "reference-store";
  inst.horizon_days = 7;
  inst.max_total_staff = 60;
  inst.rest_cap = 2;
  inst.salary_bounds = {10000.0, 40000.0};
  // Unused shifts carry zero hours and zero wage.
  inst.jobs = {
      make_job("a", "manager", {4, 4, 0, 0}, {60, 60, 0, 0}, 1, 3),
      make_job("b", "clerk", {4, 4, 4, 0}, {30, 30, 36, 0}, 4, 13),
      make_job("c", "guard", {4, 4, 4, 8}, {30, 30, 36, 80}, 2, 6),
      make_job("d", "salesclerk", {4, 4, 4, 0}, {32, 32, 36, 0}, 4, 13),
      make_job("e", "tallyclerk", {4, 4, 0, 0}, {30, 30, 0, 0}, 3, 10),
      make_job("f", "cleaner", {4, 0, 4, 0}, {24, 0, 28, 0}, 4, 13),
  };
  inst.work_time_bounds = {{120, 400}, {760, 1200}, {300, 900},
                           {600, 1100}, {300, 700}, {400, 700}};
  EmergencySpec em;
  em.alpha = 2;
  em.time_cost = 16.0;
  em.bonus = 50.0;
  em.punishment = 20.0;
  em.daily_probability = 0.1;
  em.jobs = {3, 4};
  inst.emergency = em;
  inst.cooperation = CooperationSpec{3, {1, 3}};
  return inst;
}

ProblemInstance reference_multishift_instance() {
  ProblemInstance inst = reference_instance();
  inst.name = "reference-store-multishift";
  inst.multi_shift = true;
  return inst;
}

}  // namespace msched
