#include "msched/instance_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "msched/errors.hpp"
#include "msched/objectives.hpp"

namespace msched {

namespace {

using nlohmann::json;

ShiftValues read_shift_values(const json& j, const char* field) {
  if (!j.is_array() || j.size() != kShiftsPerDay) {
    throw ConfigurationError(std::string(field) + " must list 4 values (MOR, AFT, EVN, MID)");
  }
  ShiftValues v{};
  for (std::size_t k = 0; k < kShiftsPerDay; ++k) v[k] = j[k].get<double>();
  return v;
}

Bounds read_bounds(const json& j, const char* field) {
  if (!j.is_array() || j.size() != 2) {
    throw ConfigurationError(std::string(field) + " must be a [lower, upper] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<std::size_t> read_job_refs(const json& j, const std::vector<Job>& jobs,
                                       const char* section) {
  std::vector<std::size_t> out;
  for (const auto& item : j) {
    const auto code = item.get<std::string>();
    bool found = false;
    for (std::size_t k = 0; k < jobs.size(); ++k) {
      if (jobs[k].code == code) {
        out.push_back(k);
        found = true;
      }
    }
    if (!found) {
      throw ConfigurationError(std::string(section) + " references unknown job '" + code + "'");
    }
  }
  return out;
}

json job_refs_to_json(const std::vector<std::size_t>& refs, const std::vector<Job>& jobs) {
  json arr = json::array();
  for (std::size_t j : refs) arr.push_back(jobs.at(j).code);
  return arr;
}

}  // namespace

ProblemInstance parse_instance(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigurationError(std::string("instance is not valid JSON: ") + e.what());
  }
  try {
    if (!doc.contains("format_version")) {
      throw ConfigurationError("instance lacks format_version");
    }
    const int version = doc.at("format_version").get<int>();
    if (version != kInstanceFormatVersion) {
      throw ConfigurationError("unsupported format_version " + std::to_string(version));
    }
    ProblemInstance inst;
    inst.name = doc.value("name", "");
    inst.horizon_days = doc.at("horizon_days").get<int>();
    inst.max_total_staff = doc.at("max_total_staff").get<int>();
    inst.rest_cap = doc.value("rest_cap", 0);
    inst.multi_shift = doc.value("multi_shift", false);
    inst.salary_bounds = read_bounds(doc.at("salary_bounds"), "salary_bounds");

    bool derive_upper = false;
    for (const auto& jj : doc.at("jobs")) {
      Job job;
      job.code = jj.at("code").get<std::string>();
      job.name = jj.value("name", job.code);
      job.wage_per_shift = read_shift_values(jj.at("wage_per_shift"), "wage_per_shift");
      if (jj.contains("shift_hours")) {
        job.shift_hours = read_shift_values(jj.at("shift_hours"), "shift_hours");
      }
      job.headcount_min = jj.at("headcount_min").get<int>();
      if (jj.contains("headcount_max")) {
        job.headcount_max = jj.at("headcount_max").get<int>();
      } else {
        derive_upper = true;
        job.headcount_max = -1;
      }
      inst.jobs.push_back(std::move(job));
      inst.work_time_bounds.push_back(read_bounds(jj.at("work_time_bounds"), "work_time_bounds"));
    }
    if (derive_upper) {
      std::vector<int> lower;
      for (const Job& j : inst.jobs) lower.push_back(j.headcount_min);
      const auto upper = headcount_upper_bounds(lower, inst.max_total_staff);
      for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
        if (inst.jobs[j].headcount_max < 0) inst.jobs[j].headcount_max = upper[j];
      }
    }

    if (doc.contains("emergency")) {
      const auto& e = doc.at("emergency");
      EmergencySpec spec;
      spec.alpha = e.at("alpha").get<int>();
      spec.time_cost = e.value("time_cost", 0.0);
      spec.bonus = e.value("bonus", 0.0);
      spec.punishment = e.value("punishment", 0.0);
      spec.daily_probability = e.value("daily_probability", 0.0);
      if (e.contains("jobs")) spec.jobs = read_job_refs(e.at("jobs"), inst.jobs, "emergency");
      inst.emergency = spec;
    }
    if (doc.contains("cooperation")) {
      const auto& c = doc.at("cooperation");
      CooperationSpec spec;
      spec.staff = c.at("staff").get<int>();
      spec.jobs = read_job_refs(c.at("jobs"), inst.jobs, "cooperation");
      inst.cooperation = spec;
    }
    return inst;
  } catch (const json::exception& e) {
    throw ConfigurationError(std::string("malformed instance: ") + e.what());
  }
}

std::string instance_to_json(const ProblemInstance& inst) {
  json doc;
  doc["format_version"] = kInstanceFormatVersion;
  doc["name"] = inst.name;
  doc["horizon_days"] = inst.horizon_days;
  doc["max_total_staff"] = inst.max_total_staff;
  doc["rest_cap"] = inst.rest_cap;
  doc["multi_shift"] = inst.multi_shift;
  doc["salary_bounds"] = {inst.salary_bounds.lower, inst.salary_bounds.upper};
  json jobs = json::array();
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
    const Job& job = inst.jobs[j];
    json jj;
    jj["code"] = job.code;
    jj["name"] = job.name;
    jj["wage_per_shift"] = job.wage_per_shift;
    jj["shift_hours"] = job.shift_hours;
    jj["headcount_min"] = job.headcount_min;
    jj["headcount_max"] = job.headcount_max;
    const Bounds b = j < inst.work_time_bounds.size() ? inst.work_time_bounds[j] : Bounds{};
    jj["work_time_bounds"] = {b.lower, b.upper};
    jobs.push_back(std::move(jj));
  }
  doc["jobs"] = std::move(jobs);
  if (inst.emergency) {
    const auto& e = *inst.emergency;
    doc["emergency"] = {{"alpha", e.alpha},
                        {"time_cost", e.time_cost},
                        {"bonus", e.bonus},
                        {"punishment", e.punishment},
                        {"daily_probability", e.daily_probability},
                        {"jobs", job_refs_to_json(e.jobs, inst.jobs)}};
  }
  if (inst.cooperation) {
    doc["cooperation"] = {{"staff", inst.cooperation->staff},
                          {"jobs", job_refs_to_json(inst.cooperation->jobs, inst.jobs)}};
  }
  return doc.dump(2) + "\n";
}

std::vector<std::string> validate_instance(const ProblemInstance& inst) {
  std::vector<std::string> diags;
  auto add = [&diags](std::string msg) { diags.push_back(std::move(msg)); };

  if (inst.horizon_days < 1) add("horizon_days must be positive");
  if (inst.max_total_staff < 1) add("max_total_staff must be positive");
  if (inst.rest_cap < 0) add("rest_cap must be nonnegative");
  if (inst.jobs.empty()) add("instance has no jobs");
  if (inst.work_time_bounds.size() != inst.jobs.size()) {
    add("work_time_bounds must have one entry per job");
  }

  std::set<std::string> codes;
  long long min_sum = 0;
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
    const Job& job = inst.jobs[j];
    const std::string who = "job " + (job.code.empty() ? std::to_string(j) : job.code);
    if (job.code.empty()) add(who + ": empty code");
    if (!codes.insert(job.code).second) add(who + ": duplicate code");
    if (job.headcount_min < 0) add(who + ": headcount_min is negative");
    if (job.headcount_max < 1) add(who + ": headcount_max must be positive");
    if (job.headcount_min > job.headcount_max) {
      add(who + ": headcount_min " + std::to_string(job.headcount_min) +
          " exceeds headcount_max " + std::to_string(job.headcount_max));
    }
    bool any_hours = false;
    for (double h : job.shift_hours) {
      if (h < 0) add(who + ": negative shift hours");
      any_hours = any_hours || h > 0;
    }
    if (!any_hours) add(who + ": no shift has positive hours");
    for (double w : job.wage_per_shift) {
      if (w < 0) add(who + ": negative wage");
    }
    if (j < inst.work_time_bounds.size()) {
      const Bounds& b = inst.work_time_bounds[j];
      if (b.lower > b.upper) add(who + ": work time lower bound exceeds upper bound");
      if (b.lower < 0) add(who + ": negative work time bound");
    }
    min_sum += job.headcount_min;
  }
  if (min_sum > inst.max_total_staff) {
    add("sum of headcount_min (" + std::to_string(min_sum) + ") exceeds max_total_staff (" +
        std::to_string(inst.max_total_staff) + ")");
  }
  if (inst.salary_bounds.lower > inst.salary_bounds.upper) {
    add("salary lower bound exceeds upper bound");
  }
  if (inst.emergency) {
    const auto& e = *inst.emergency;
    if (e.alpha < 1) add("emergency: alpha must be positive");
    if (e.alpha > inst.max_total_staff) add("emergency: alpha exceeds max_total_staff");
    if (e.time_cost < 0 || e.bonus < 0 || e.punishment < 0) {
      add("emergency: time_cost, bonus and punishment must be nonnegative");
    }
    if (!(e.daily_probability >= 0.0 && e.daily_probability <= 1.0)) {
      add("emergency: daily_probability must lie in [0, 1]");
    }
    for (std::size_t j : e.jobs) {
      if (j >= inst.jobs.size()) add("emergency: unknown job index " + std::to_string(j));
    }
  }
  if (inst.cooperation) {
    if (inst.cooperation->staff < 1) add("cooperation: staff must be positive");
    if (inst.cooperation->jobs.empty()) add("cooperation: needs at least one job");
    for (std::size_t j : inst.cooperation->jobs) {
      if (j >= inst.jobs.size()) add("cooperation: unknown job index " + std::to_string(j));
    }
  }
  return diags;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigurationError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ProblemInstance load_instance(const std::filesystem::path& path) {
  ProblemInstance inst = parse_instance(read_file(path));
  const auto diags = validate_instance(inst);
  if (!diags.empty()) {
    std::string msg = path.string() + " is invalid:";
    for (const auto& d : diags) msg += "\n  " + d;
    throw ConfigurationError(msg);
  }
  return inst;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string tensor_to_csv(const AttendanceTensor& tensor, const ProblemInstance& inst) {
  if (tensor.jobs() != inst.job_count()) throw StructuralError("tensor does not match instance");
  std::string out = "employee,day,shift,job,attend\n";
  for (std::size_t i = 0; i < tensor.staff(); ++i) {
    for (std::size_t d = 0; d < tensor.days(); ++d) {
      for (Shift s : kAllShifts) {
        for (std::size_t j = 0; j < tensor.jobs(); ++j) {
          out += std::to_string(i) + ',' + std::to_string(d) + ',' + std::string(shift_name(s)) +
                 ',' + inst.jobs[j].code + ',' + (tensor.at(i, d, s, j) ? '1' : '0') + '\n';
        }
      }
    }
  }
  return out;
}

std::string headcounts_to_csv(const HeadcountVector& hc, const ProblemInstance& inst) {
  if (hc.size() != inst.job_count()) throw StructuralError("headcounts do not match instance");
  std::string out = "job,name,count\n";
  for (std::size_t j = 0; j < hc.size(); ++j) {
    out += inst.jobs[j].code + ',' + inst.jobs[j].name + ',' + std::to_string(hc[j]) + '\n';
  }
  return out;
}

}  // namespace msched
