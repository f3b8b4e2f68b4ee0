#include <doctest.h>

#include <filesystem>

#include <json.hpp>

#include "msched/errors.hpp"
#include "msched/instance_io.hpp"
#include "msched/reference.hpp"

using namespace msched;

TEST_CASE("the shipped reference file matches the built-in instance") {
  const ProblemInstance file = load_instance(std::filesystem::path(MSCHED_DATA_DIR) / "reference_instance.json");
  CHECK(file == reference_instance());
}

TEST_CASE("instances survive a json round trip") {
  const ProblemInstance inst = reference_multishift_instance();
  CHECK(parse_instance(instance_to_json(inst)) == inst);
}

TEST_CASE("the reference instance validates clean") {
  CHECK(validate_instance(reference_instance()).empty());
}

TEST_CASE("inverted headcount bounds give one diagnostic naming the job") {
  ProblemInstance inst = reference_instance();
  inst.jobs[2].headcount_min = 7;
  const auto d = validate_instance(inst);
  REQUIRE(d.size() == 1);
  CHECK(d[0].find("job c") != std::string::npos);
}

TEST_CASE("minimum staffing above the cap is reported") {
  ProblemInstance inst = reference_instance();
  inst.max_total_staff = 10;
  const auto d = validate_instance(inst);
  REQUIRE(d.size() == 1);
  CHECK(d[0].find("max_total_staff") != std::string::npos);
}

TEST_CASE("malformed instance text is a configuration error") {
  CHECK_THROWS_AS(parse_instance("{"), ConfigurationError);
  CHECK_THROWS_AS(parse_instance("{}"), ConfigurationError);
  CHECK_THROWS_AS(load_instance("/nonexistent/instance.json"), ConfigurationError);
}

TEST_CASE("missing upper headcount bounds are derived from the cap") {
  auto doc = nlohmann::json::parse(instance_to_json(reference_instance()));
  for (auto& job : doc["jobs"]) job.erase("headcount_max");
  const ProblemInstance inst = parse_instance(doc.dump());
  // floor(N_l / sum N_l * M) with lower bounds (1, 4, 2, 4, 3, 4) and M = 60.
  std::vector<int> upper;
  for (const auto& j : inst.jobs) upper.push_back(j.headcount_max);
  CHECK(upper == std::vector<int>{3, 13, 6, 13, 10, 13});
}

TEST_CASE("csv exports") {
  const ProblemInstance inst = reference_instance();
  const HeadcountVector hc{{1, 1, 1, 1, 1, 1}};
  CHECK(headcounts_to_csv(hc, inst).rfind("job,name,count\na,manager,1\n", 0) == 0);
  const std::string t = tensor_to_csv(full_attendance(hc, inst), inst);
  CHECK(t.rfind("employee,day,shift,job,attend\n0,0,MOR,a,1\n", 0) == 0);
}

TEST_CASE("atomic writes replace the file") {
  const auto p = std::filesystem::temp_directory_path() / "msched_atomic_test.txt";
  write_file_atomic(p, "one");
  write_file_atomic(p, "two");
  CHECK(read_file(p) == "two");
  std::filesystem::remove(p);
}
