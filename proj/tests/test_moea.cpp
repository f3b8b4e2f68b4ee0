#include <doctest.h>

#include <cmath>
#include <random>

#include "msched/errors.hpp"
#include "msched/moea.hpp"
#include "msched/reference.hpp"
#include "support.hpp"

using namespace msched;

namespace {

ScoredIndividual point(std::vector<double> f, double violation = 0.0) {
  ScoredIndividual s;
  s.objectives = std::move(f);
  s.violation = violation;
  return s;
}

std::vector<ScoredIndividual> points(const std::vector<std::vector<double>>& fs) {
  std::vector<ScoredIndividual> out;
  for (const auto& f : fs) out.push_back(point(f));
  return out;
}

// Unit cells of the integer grid dominated by some point, below `ref`.
double grid_volume(const std::vector<std::vector<double>>& pts, const std::vector<int>& ref) {
  const std::size_t d = ref.size();
  std::vector<int> cell(d, 0);
  double count = 0;
  std::function<void(std::size_t)> walk = [&](std::size_t k) {
    if (k == d) {
      for (const auto& p : pts) {
        bool inside = true;
        for (std::size_t i = 0; i < d && inside; ++i) inside = p[i] <= cell[i];
        if (inside) {
          ++count;
          return;
        }
      }
      return;
    }
    for (int x = 0; x < ref[k]; ++x) {
      cell[k] = x;
      walk(k + 1);
    }
  };
  walk(0);
  return count;
}

}  // namespace

TEST_CASE("pareto dominance on small examples") {
  CHECK(dominates(std::vector<double>{1, 1}, std::vector<double>{2, 2}));
  CHECK_FALSE(dominates(std::vector<double>{2, 2}, std::vector<double>{1, 1}));
  CHECK_FALSE(dominates(std::vector<double>{1, 2}, std::vector<double>{2, 1}));
  CHECK_FALSE(dominates(std::vector<double>{2, 1}, std::vector<double>{1, 2}));
  CHECK_FALSE(dominates(std::vector<double>{1, 1}, std::vector<double>{1, 1}));
  CHECK_THROWS_AS(dominates(std::vector<double>{1}, std::vector<double>{1, 2}), StructuralError);
}

TEST_CASE("feasible points beat infeasible ones, violations compare among the infeasible") {
  CHECK(dominates(point({9, 9}), point({1, 1}, 2.0)));
  CHECK(dominates(point({9, 9}, 1.0), point({1, 1}, 2.0)));
  CHECK_FALSE(dominates(point({1, 1}, 2.0), point({9, 9})));
}

TEST_CASE("non-dominated sort splits the example into two fronts") {
  auto pop = points({{1, 1}, {1.5, 0.5}, {2, 2}});
  const auto fronts = non_dominated_sort(pop);
  REQUIRE(fronts.size() == 2);
  CHECK(fronts[0] == std::vector<std::size_t>{0, 1});
  CHECK(fronts[1] == std::vector<std::size_t>{2});
  CHECK(pop[2].rank == 1);
}

TEST_CASE("crowding distance on tiny fronts") {
  auto two = points({{1, 2}, {2, 1}});
  crowding(two, {0, 1});
  CHECK(std::isinf(two[0].crowd));
  CHECK(std::isinf(two[1].crowd));

  auto three = points({{0, 2}, {1, 1}, {2, 0}});
  crowding(three, {0, 1, 2});
  CHECK(std::isinf(three[0].crowd));
  CHECK(std::isinf(three[2].crowd));
  CHECK(three[1].crowd == doctest::Approx(2.0));
}

TEST_CASE("hypervolume matches grid counting") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> coord(0, 7);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t d = 2 + static_cast<std::size_t>(rep % 2);
    std::vector<std::vector<double>> pts(static_cast<std::size_t>(1 + rep % 9));
    for (auto& p : pts) {
      for (std::size_t k = 0; k < d; ++k) p.push_back(coord(rng));
    }
    const std::vector<int> ref(d, 8);
    CHECK(hypervolume(pts, std::vector<double>(d, 8.0)) == doctest::Approx(grid_volume(pts, ref)));
  }
  CHECK(hypervolume({}, {1.0, 1.0}) == 0.0);
}

TEST_CASE("the reference archive is feasible and mutually non-dominated") {
  const ProblemInstance inst = reference_instance();
  const ObjectiveBundle bundle{parse_objective_token("max:headcount:b+c+e", inst),
                               Objective::total_time()};
  MoeaConfig cfg;
  const MoeaResult r = run_moea(inst, bundle, basic_constraints(), cfg);
  REQUIRE_FALSE(r.archive.empty());
  for (const auto& u : r.archive) {
    CHECK(u.feasible());
    CHECK(eval_expr(basic_constraints(), summarize_nominal(u.decoded, inst), inst));
    for (const auto& v : r.archive) CHECK_FALSE(test::oracle_dominates(u.objectives, v.objectives));
  }
  CHECK(r.hypervolume.size() == static_cast<std::size_t>(cfg.ea.generations) + 1);
  const std::string csv = archive_to_csv(r.archive, bundle, inst);
  CHECK(csv.rfind("a,b,c,d,e,f,max:headcount:b+c+e,total_time\n", 0) == 0);
}

TEST_CASE("run_moea needs at least two objectives") {
  CHECK_THROWS_AS(run_moea(reference_instance(), {Objective::total_time()}, basic_constraints(),
                           MoeaConfig{}),
                  ConfigurationError);
}
