#include "msched/domain.hpp"

#include <algorithm>
#include <numeric>

#include "msched/errors.hpp"

namespace msched {

std::string_view shift_name(Shift s) {
  switch (s) {
    case Shift::Morning:
      return "MOR";
    case Shift::Afternoon:
      return "AFT";
    case Shift::Evening:
      return "EVN";
    case Shift::Midnight:
      return "MID";
  }
  return "?";
}

std::optional<Shift> parse_shift(std::string_view name) {
  for (Shift s : kAllShifts) {
    if (shift_name(s) == name) return s;
  }
  return std::nullopt;
}

std::optional<std::size_t> ProblemInstance::job_index(std::string_view code) const {
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    if (jobs[j].code == code) return j;
  }
  return std::nullopt;
}

int HeadcountVector::total() const { return std::accumulate(counts.begin(), counts.end(), 0); }

std::vector<EmployeeId> employee_roster(const HeadcountVector& hc) {
  std::vector<EmployeeId> roster;
  roster.reserve(static_cast<std::size_t>(std::max(0, hc.total())));
  for (std::size_t j = 0; j < hc.size(); ++j) {
    for (int k = 0; k < hc[j]; ++k) roster.push_back({j, static_cast<std::size_t>(k)});
  }
  return roster;
}

std::size_t global_employee_index(const HeadcountVector& hc, EmployeeId id) {
  if (id.job >= hc.size() || id.ordinal >= static_cast<std::size_t>(hc[id.job])) {
    throw StructuralError("employee (" + std::to_string(id.job) + ", " +
                          std::to_string(id.ordinal) + ") is not part of the staffing");
  }
  std::size_t offset = 0;
  for (std::size_t j = 0; j < id.job; ++j) offset += static_cast<std::size_t>(hc[j]);
  return offset + id.ordinal;
}

AttendanceTensor::AttendanceTensor(std::size_t staff, std::size_t slots, std::size_t jobs)
    : staff_(staff), slots_(slots), jobs_(jobs), data_(staff * slots * jobs, 0) {
  if (slots % kShiftsPerDay != 0) {
    throw StructuralError("slot count " + std::to_string(slots) +
                          " is not a whole number of days");
  }
}

AttendanceTensor AttendanceTensor::for_instance(const HeadcountVector& hc,
                                                const ProblemInstance& inst) {
  if (hc.size() != inst.job_count()) {
    throw StructuralError("headcount vector has " + std::to_string(hc.size()) +
                          " entries, instance has " + std::to_string(inst.job_count()) +
                          " jobs");
  }
  return AttendanceTensor(static_cast<std::size_t>(hc.total()), inst.slot_count(),
                          inst.job_count());
}

std::size_t AttendanceTensor::index(std::size_t employee, std::size_t slot,
                                    std::size_t job) const {
  return (employee * slots_ + slot) * jobs_ + job;
}

void AttendanceTensor::set(std::size_t employee, std::size_t slot, std::size_t job,
                           bool value) {
  if (employee >= staff_ || slot >= slots_ || job >= jobs_) {
    throw StructuralError("tensor index out of range");
  }
  data_[index(employee, slot, job)] = value ? 1 : 0;
}

void AttendanceTensor::set_day(std::size_t employee, std::size_t day, std::size_t job,
                               bool value) {
  for (std::size_t s = 0; s < kShiftsPerDay; ++s) {
    set(employee, day * kShiftsPerDay + s, job, value);
  }
}

std::size_t AttendanceTensor::count_ones() const {
  return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), std::uint8_t{1}));
}

std::vector<ChannelMatrix> separate_channels(const AttendanceTensor& tensor) {
  if (tensor.jobs() == 0) throw StructuralError("tensor has no job channels");
  std::vector<ChannelMatrix> mats;
  mats.reserve(tensor.jobs());
  for (std::size_t j = 0; j < tensor.jobs(); ++j) {
    ChannelMatrix m(j, tensor.staff(), tensor.slots());
    for (std::size_t i = 0; i < tensor.staff(); ++i) {
      for (std::size_t s = 0; s < tensor.slots(); ++s) m.set(i, s, tensor.at(i, s, j));
    }
    mats.push_back(std::move(m));
  }
  return mats;
}

AttendanceTensor combine_channels(const std::vector<ChannelMatrix>& mats) {
  if (mats.empty()) throw StructuralError("no channel matrices to combine");
  const std::size_t rows = mats.front().rows;
  const std::size_t cols = mats.front().cols;
  for (std::size_t k = 0; k < mats.size(); ++k) {
    const auto& m = mats[k];
    if (m.rows != rows || m.cols != cols || m.cells.size() != rows * cols) {
      throw StructuralError("channel matrix " + std::to_string(k) + " is " +
                            std::to_string(m.rows) + "x" + std::to_string(m.cols) +
                            ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
    }
    if (m.job != k) {
      throw StructuralError("channel matrices must be ordered by job index");
    }
  }
  AttendanceTensor t(rows, cols, mats.size());
  for (const auto& m : mats) {
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t s = 0; s < cols; ++s) {
        if (m.at(i, s)) t.set(i, s, m.job, true);
      }
    }
  }
  return t;
}

double daily_work_hours(const Job& job) {
  return std::accumulate(job.shift_hours.begin(), job.shift_hours.end(), 0.0);
}

double daily_wage(const Job& job) {
  return std::accumulate(job.wage_per_shift.begin(), job.wage_per_shift.end(), 0.0);
}

double total_work_time(const AttendanceTensor& tensor, const ProblemInstance& inst) {
  if (tensor.jobs() != inst.job_count()) {
    throw StructuralError("tensor job channels do not match the instance");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < tensor.staff(); ++i) {
    for (std::size_t s = 0; s < tensor.slots(); ++s) {
      for (std::size_t j = 0; j < tensor.jobs(); ++j) {
        if (tensor.at(i, s, j)) total += inst.jobs[j].shift_hours[s % kShiftsPerDay];
      }
    }
  }
  return total;
}

void check_tensor_shape(const AttendanceTensor& tensor, const HeadcountVector& hc,
                        const ProblemInstance& inst) {
  if (hc.size() != inst.job_count()) {
    throw StructuralError("headcount vector does not match the instance job count");
  }
  if (tensor.jobs() != inst.job_count() || tensor.slots() != inst.slot_count() ||
      tensor.staff() != static_cast<std::size_t>(hc.total())) {
    throw StructuralError("tensor is " + std::to_string(tensor.staff()) + "x" +
                          std::to_string(tensor.slots()) + "x" + std::to_string(tensor.jobs()) +
                          ", expected " + std::to_string(hc.total()) + "x" +
                          std::to_string(inst.slot_count()) + "x" +
                          std::to_string(inst.job_count()));
  }
}

AttendanceTensor full_attendance(const HeadcountVector& hc, const ProblemInstance& inst) {
  AttendanceTensor t = AttendanceTensor::for_instance(hc, inst);
  const auto roster = employee_roster(hc);
  for (std::size_t i = 0; i < roster.size(); ++i) {
    for (std::size_t s = 0; s < t.slots(); ++s) t.set(i, s, roster[i].job, true);
  }
  return t;
}

}  // namespace msched
