#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace msched {

// Shift slots in the fixed per-day order used by every tensor and file format.
enum class Shift : std::uint8_t { Morning = 0, Afternoon = 1, Evening = 2, Midnight = 3 };

inline constexpr std::size_t kShiftsPerDay = 4;
inline constexpr std::array<Shift, kShiftsPerDay> kAllShifts = {
    Shift::Morning, Shift::Afternoon, Shift::Evening, Shift::Midnight};

std::string_view shift_name(Shift s);
std::optional<Shift> parse_shift(std::string_view name);

using ShiftValues = std::array<double, kShiftsPerDay>;

inline constexpr ShiftValues kDefaultShiftHours = {4.0, 4.0, 4.0, 8.0};

struct Job {
  std::string code;
  std::string name;
  ShiftValues wage_per_shift{};
  ShiftValues shift_hours = kDefaultShiftHours;
  int headcount_min = 0;
  int headcount_max = 1;

  bool operator==(const Job&) const = default;
};

struct Bounds {
  double lower = 0.0;
  double upper = 0.0;

  bool contains(double v) const { return lower <= v && v <= upper; }
  double distance(double v) const {
    if (v < lower) return lower - v;
    if (v > upper) return v - upper;
    return 0.0;
  }
  bool operator==(const Bounds&) const = default;
};

struct EmergencySpec {
  int alpha = 1;
  double time_cost = 0.0;
  double bonus = 0.0;
  double punishment = 0.0;
  double daily_probability = 0.0;
  // Job indices the withdrawn staff are drawn from; empty means every job.
  std::vector<std::size_t> jobs;

  bool operator==(const EmergencySpec&) const = default;
};

// Joint withdrawal of `staff` employees from a job subset (cooperative task).
struct CooperationSpec {
  int staff = 1;
  std::vector<std::size_t> jobs;

  bool operator==(const CooperationSpec&) const = default;
};

struct ProblemInstance {
  std::string name;
  std::vector<Job> jobs;
  int horizon_days = 7;
  int max_total_staff = 1;
  std::vector<Bounds> work_time_bounds;  // per job, hours over the horizon
  Bounds salary_bounds;
  int rest_cap = 0;
  std::optional<EmergencySpec> emergency;
  std::optional<CooperationSpec> cooperation;
  bool multi_shift = false;

  std::size_t job_count() const { return jobs.size(); }
  std::size_t slot_count() const {
    return kShiftsPerDay * static_cast<std::size_t>(horizon_days);
  }
  std::optional<std::size_t> job_index(std::string_view code) const;

  bool operator==(const ProblemInstance&) const = default;
};

struct HeadcountVector {
  std::vector<int> counts;

  int total() const;
  std::size_t size() const { return counts.size(); }
  int operator[](std::size_t j) const { return counts[j]; }

  bool operator==(const HeadcountVector&) const = default;
  auto operator<=>(const HeadcountVector&) const = default;
};

// Employee identity: job index plus ordinal within that job.
struct EmployeeId {
  std::size_t job = 0;
  std::size_t ordinal = 0;

  bool operator==(const EmployeeId&) const = default;
  auto operator<=>(const EmployeeId&) const = default;
};

// Global employee numbering concatenates jobs in instance order.
std::vector<EmployeeId> employee_roster(const HeadcountVector& hc);
std::size_t global_employee_index(const HeadcountVector& hc, EmployeeId id);

/// Binary attendance over employee x (day, shift) slot x job.
class AttendanceTensor {
 public:
  AttendanceTensor() = default;
  AttendanceTensor(std::size_t staff, std::size_t slots, std::size_t jobs);

  static AttendanceTensor for_instance(const HeadcountVector& hc, const ProblemInstance& inst);

  std::size_t staff() const { return staff_; }
  std::size_t slots() const { return slots_; }
  std::size_t jobs() const { return jobs_; }
  std::size_t days() const { return slots_ / kShiftsPerDay; }

  bool at(std::size_t employee, std::size_t slot, std::size_t job) const {
    return data_[index(employee, slot, job)] != 0;
  }
  bool at(std::size_t employee, std::size_t day, Shift s, std::size_t job) const {
    return at(employee, day * kShiftsPerDay + static_cast<std::size_t>(s), job);
  }
  void set(std::size_t employee, std::size_t slot, std::size_t job, bool value);
  // Sets all four slots of a day, the single-shift attendance unit.
  void set_day(std::size_t employee, std::size_t day, std::size_t job, bool value);

  std::size_t count_ones() const;
  bool empty_attendance() const { return count_ones() == 0; }

  bool operator==(const AttendanceTensor&) const = default;

 private:
  std::size_t index(std::size_t employee, std::size_t slot, std::size_t job) const;

  std::size_t staff_ = 0;
  std::size_t slots_ = 0;
  std::size_t jobs_ = 0;
  std::vector<std::uint8_t> data_;
};

/// One job's slice of the tensor: rows are staff, columns are time slots.
struct ChannelMatrix {
  std::size_t job = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint8_t> cells;

  ChannelMatrix() = default;
  ChannelMatrix(std::size_t job_index, std::size_t r, std::size_t c)
      : job(job_index), rows(r), cols(c), cells(r * c, 0) {}

  bool at(std::size_t r, std::size_t c) const { return cells[r * cols + c] != 0; }
  void set(std::size_t r, std::size_t c, bool v) { cells[r * cols + c] = v ? 1 : 0; }

  bool operator==(const ChannelMatrix&) const = default;
};

std::vector<ChannelMatrix> separate_channels(const AttendanceTensor& tensor);
AttendanceTensor combine_channels(const std::vector<ChannelMatrix>& mats);

double daily_work_hours(const Job& job);
double daily_wage(const Job& job);
double total_work_time(const AttendanceTensor& tensor, const ProblemInstance& inst);

// Throws StructuralError when the tensor cannot belong to (hc, inst).
void check_tensor_shape(const AttendanceTensor& tensor, const HeadcountVector& hc,
                        const ProblemInstance& inst);

// Every hired employee on duty for every slot of every day, in their own job.
AttendanceTensor full_attendance(const HeadcountVector& hc, const ProblemInstance& inst);

}  // namespace msched
