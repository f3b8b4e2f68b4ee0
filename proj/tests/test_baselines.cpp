#include <doctest.h>

#include <random>

#include "msched/baselines.hpp"
#include "msched/errors.hpp"
#include "msched/reference.hpp"
#include "support.hpp"

using namespace msched;

namespace {

const ObjectiveBundle kTime{Objective::total_time()};

std::vector<double> big(std::size_t n) { return std::vector<double>(n, 1e9); }

}  // namespace

TEST_CASE("ip matches brute-force enumeration on micro instances") {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 60; ++rep) {
    const ProblemInstance inst = test::random_micro_instance(rng);
    const SolveResult r = ip_solve(inst, kTime, basic_constraints());
    CHECK(r.feasible);
    CHECK(r.value == doctest::Approx(*test::oracle_min_time(inst)));
    CHECK(test::nominal_ok(inst, r.best.counts));
  }
}

TEST_CASE("ip on a collapsed box returns that point") {
  ProblemInstance inst = reference_instance();
  const std::vector<int> at{3, 10, 3, 8, 6, 8};
  for (std::size_t j = 0; j < at.size(); ++j) {
    inst.jobs[j].headcount_min = at[j];
    inst.jobs[j].headcount_max = at[j];
  }
  const SolveResult r = ip_solve(inst, kTime, basic_constraints());
  CHECK(r.best.counts == at);
  CHECK(r.evaluations == 1);
}

TEST_CASE("ip finds the reference optimum and reports infeasibility") {
  const SolveResult r = ip_solve(reference_instance(), kTime, basic_constraints());
  CHECK(r.best == HeadcountVector{{3, 10, 3, 8, 6, 8}});
  CHECK(r.value == 2884);
  ProblemInstance tight = reference_instance();
  tight.max_total_staff = 25;
  CHECK_THROWS_AS(ip_solve(tight, kTime, basic_constraints()), InfeasibilityError);
  ProblemInstance huge = reference_instance();
  for (auto& j : huge.jobs) j.headcount_max = 100;
  CHECK_THROWS_AS(ip_solve(huge, kTime, basic_constraints()), ConfigurationError);
}

TEST_CASE("ip without a linear bound still searches exhaustively") {
  const ProblemInstance inst = reference_instance();
  const Objective custom = Objective::from_function(
      "squares", [](const AttendanceSummary& s, const ProblemInstance&) {
        double v = 0;
        for (int n : s.headcounts.counts) v += (n - 5.0) * (n - 5.0);
        return v;
      });
  const SolveResult r = ip_solve(inst, {custom}, basic_constraints());
  double best = 1e300;
  test::for_each_staffing(inst, [&](const std::vector<int>& n) {
    if (!test::nominal_ok(inst, n)) return;
    double v = 0;
    for (int x : n) v += (x - 5.0) * (x - 5.0);
    best = std::min(best, v);
  });
  CHECK(r.value == best);
}

TEST_CASE("pso step: inertia only") {
  const Particle p{{3.0}, {2.0}};
  const Particle next = pso_step(p, {7.0}, {9.0}, 0.5, 0.0, 0.0, big(1), [] { return 0.5; });
  CHECK(next.velocity[0] == 1.0);
  CHECK(next.position[0] == 4.0);
}

TEST_CASE("pso step: a particle at both bests with no velocity stays put") {
  const Particle p{{1.5, -2.0}, {0.0, 0.0}};
  const Particle next = pso_step(p, p.position, p.position, 0.9, 2.0, 2.0, big(2), [] { return 0.7; });
  CHECK(next.position == p.position);
  CHECK(next.velocity == p.velocity);
}

TEST_CASE("pso step: unit random draws") {
  const Particle p{{0.0}, {1.25}};
  const Particle next = pso_step(p, {2.0}, {4.0}, 1.0, 1.0, 1.0, big(1), [] { return 1.0; });
  CHECK(next.velocity[0] == 1.25 + 6.0);
  CHECK(next.position[0] == 7.25);
}

TEST_CASE("pso step clamps velocity") {
  const Particle p{{0.0}, {0.0}};
  const Particle next = pso_step(p, {10.0}, {10.0}, 1.0, 1.0, 1.0, {2.0}, [] { return 1.0; });
  CHECK(next.velocity[0] == 2.0);
  CHECK_THROWS_AS(pso_step(p, {1.0, 2.0}, {1.0}, 1, 1, 1, {1.0}, [] { return 1.0; }),
                  StructuralError);
}

TEST_CASE("pso minimizes a sphere") {
  PSOConfig cfg;
  cfg.iterations = 200;
  const auto sphere = [](const std::vector<double>& x) {
    double v = 0;
    for (double c : x) v += c * c;
    return v;
  };
  const ContinuousResult r = pso_minimize(sphere, {-5, -5, -5}, {5, 5, 5}, cfg);
  CHECK(r.value < 1e-3);
  for (std::size_t i = 1; i < r.trace.rows.size(); ++i) {
    CHECK(r.trace.rows[i].best <= r.trace.rows[i - 1].best);
  }
}

TEST_CASE("pso reaches the ip optimum on most micro instances") {
  std::mt19937_64 rng(31);
  int hits = 0;
  for (int seed = 1; seed <= 20; ++seed) {
    const ProblemInstance inst = test::random_micro_instance(rng);
    PSOConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(seed);
    const SolveResult r = pso_solve(inst, kTime, basic_constraints(), cfg);
    hits += r.feasible && r.value == ip_solve(inst, kTime, basic_constraints()).value;
  }
  CHECK(hits >= 16);
}

TEST_CASE("sa accepts equal energy always") {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) CHECK(sa_accept(5.0, 5.0, 0.3, rng));
  CHECK(sa_accept(5.0, 4.0, 1e-9, rng));
  CHECK_THROWS_AS(sa_accept(1, 2, 0.0, rng), ConfigurationError);
}

TEST_CASE("sa walks a monotone line to its low end") {
  SAConfig cfg;
  cfg.initial_temperature = 5;
  const IntegerResult r =
      sa_minimize([](const std::vector<int>& x) { return static_cast<double>(x[0]); }, {{0, 10}}, cfg);
  CHECK(r.best == std::vector<int>{0});
}

TEST_CASE("sa reaches the ip optimum on most micro instances") {
  std::mt19937_64 rng(41);
  int hits = 0;
  for (int seed = 1; seed <= 20; ++seed) {
    const ProblemInstance inst = test::random_micro_instance(rng);
    SAConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(seed);
    const SolveResult r = sa_solve(inst, kTime, basic_constraints(), cfg);
    hits += r.feasible && r.value == ip_solve(inst, kTime, basic_constraints()).value;
  }
  CHECK(hits >= 14);
}

TEST_CASE("solver settings are validated") {
  SAConfig sa;
  sa.cooling_rate = 1.0;
  CHECK_THROWS_AS(validate(sa), ConfigurationError);
  PSOConfig pso;
  pso.swarm_size = 0;
  CHECK_THROWS_AS(validate(pso), ConfigurationError);
  CHECK_THROWS_AS(pso_solve(reference_instance(), {}, basic_constraints(), PSOConfig{}),
                  ConfigurationError);
}
