#include <doctest.h>

#include <filesystem>
#include <random>
#include <stdexcept>

#include "msched/bench.hpp"
#include "msched/errors.hpp"
#include "msched/instance_io.hpp"
#include "msched/reference.hpp"

using namespace msched;

namespace {

TrialRecord trial(const std::string& solver, double value, bool feasible = true) {
  TrialRecord t;
  t.solver = solver;
  t.value = value;
  t.feasible = feasible;
  return t;
}

BenchConfig quick(int trials) {
  BenchConfig cfg;
  cfg.trials = trials;
  cfg.seed_base = 77;
  return cfg;
}

}  // namespace

TEST_CASE("accuracy is the rounded ratio") {
  CHECK(accuracy(3850, 5500) == 70.0);
  CHECK(accuracy(4942, 5250) == 94.1);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> pos(1e-3, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double x = pos(rng);
    CHECK(accuracy(x, x) == 100.0);
  }
  CHECK_THROWS_AS(accuracy(0, 5), std::domain_error);
  CHECK_THROWS_AS(accuracy(5, -1), std::domain_error);
}

TEST_CASE("convergence ranks share the smaller rank on ties") {
  CHECK(convergence_rank({1.0, 1.0, 0.8, 0.5}) == std::vector<int>{1, 1, 3, 4});
  CHECK(convergence_rank({0.3}) == std::vector<int>{1});
  CHECK(convergence_rank({0.2, 0.9, 0.2}) == std::vector<int>{2, 1, 2});
}

TEST_CASE("stability counts values near the mode") {
  CHECK(stability({10, 10, 10, 12}) == 0.75);
  CHECK(stability({1000, 1000.5, 1003}) == doctest::Approx(2.0 / 3));
  CHECK(median({3, 1, 2}) == 2);
  CHECK(median({4, 1, 2, 3}) == 2.5);
}

TEST_CASE("comparison rows follow a hand-computed ranking") {
  const std::vector<TrialRecord> trials = {
      trial("x", 100), trial("x", 100), trial("x", 100), trial("x", 100),
      trial("y", 100), trial("y", 110), trial("y", 110), trial("y", 120),
      trial("z", 125), trial("z", 100), trial("z", 130), trial("z", 0, false)};
  const auto rows = compare(trials, 100.0, Direction::Minimize);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].accuracy == 100.0);
  CHECK(rows[1].median_value == 110);
  CHECK(rows[1].accuracy == 90.9);
  CHECK(rows[2].feasible_trials == 3);
  CHECK(rows[2].median_value == 125);
  CHECK(rows[0].convergence_rank == 1);
  CHECK(rows[1].convergence_rank == 2);
  CHECK(rows[2].convergence_rank == 3);
}

TEST_CASE("experiment names parse") {
  CHECK(parse_experiment("exp4") == ExperimentId::Exp4);
  CHECK(parse_experiment("tablegen") == ExperimentId::TablegenTiming);
  CHECK_FALSE(parse_experiment("exp9"));
}

TEST_CASE("unknown solver names are rejected") {
  BenchConfig cfg = quick(1);
  cfg.solvers = {"ea-ri", "ga"};
  CHECK_THROWS_AS(run_trials(reference_instance(), {Objective::total_time()}, basic_constraints(), cfg),
                  ConfigurationError);
}

TEST_CASE("exp1 runs the whole pipeline and validates every stage") {
  const ExperimentReport r = run_experiment(ExperimentId::Exp1, reference_instance(), quick(3));
  auto fact = [&](const std::string& k) {
    for (const auto& [key, v] : r.facts) {
      if (key == k) return v;
    }
    return std::string("missing");
  };
  CHECK(fact("exact_optimum") == "2884");
  CHECK(fact("pipeline_staffing") == "valid");
  CHECK(fact("pipeline_assignment") == "valid");
  CHECK(fact("pipeline_table") == "valid");
  CHECK(r.trials.size() == 15);
  for (const auto& t : r.trials) {
    if (!t.feasible) continue;
    CHECK(eval_expr(basic_constraints(), summarize_nominal(t.best, reference_instance()),
                    reference_instance()));
  }
}

TEST_CASE("reports are reproducible apart from timing") {
  for (ExperimentId id : {ExperimentId::Exp1, ExperimentId::Exp2, ExperimentId::Exp4,
                          ExperimentId::Exp5, ExperimentId::TablegenTiming}) {
    const ExperimentReport a = run_experiment(id, reference_instance(), quick(2));
    const ExperimentReport b = run_experiment(id, reference_instance(), quick(2));
    CHECK(render_report(a, false) == render_report(b, false));
    CHECK(a.files == b.files);
  }
}

TEST_CASE("exp4 staffs ahead of the emergency") {
  const ExperimentReport r = run_experiment(ExperimentId::Exp4, reference_instance(), quick(1));
  const std::string text = render_report(r, false);
  CHECK(text.find("ready_headcounts: 3 10 3 10 6 8") != std::string::npos);
  CHECK(text.find("baseline_after_emergency_staffing: INVALID") != std::string::npos);
  CHECK(text.find("ready_after_emergency_staffing: valid") != std::string::npos);
}

TEST_CASE("reports land under the output directory") {
  const auto dir = std::filesystem::temp_directory_path() / "msched_bench_test";
  std::filesystem::remove_all(dir);
  write_report(run_experiment(ExperimentId::Exp3, reference_instance(), quick(1)), dir);
  CHECK(std::filesystem::exists(dir / "report.txt"));
  CHECK(std::filesystem::exists(dir / "comparison.csv"));
  CHECK(std::filesystem::exists(dir / "trials.csv"));
  CHECK(std::filesystem::exists(dir / "traces" / "ea-ri-0.csv"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("minimal daily need covers hours and rest") {
  const ProblemInstance inst = reference_instance();
  const HeadcountVector hc{{3, 10, 3, 8, 6, 8}};
  const auto need = minimal_daily_need(inst, hc);
  for (std::size_t j = 0; j < hc.size(); ++j) {
    CHECK(need[j] >= 1);
    CHECK(need[j] <= hc[j]);
    CHECK(need[j] * daily_work_hours(inst.jobs[j]) * 7 >= inst.work_time_bounds[j].lower);
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ScheduleTable t = staffing_table(inst, hc, need, seed);
    CHECK(eval_expr(basic_constraints(), table_to_tensor(t, hc, inst), hc, inst));
  }
}
