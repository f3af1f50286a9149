#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "core/solver.hpp"
#include "doctest.h"
#include "enum_oracle.hpp"

using namespace cwsched;

namespace {

AssignmentInstance make(int jobs, int regions, std::vector<double> cost,
                        std::vector<int> caps,
                        std::vector<std::uint8_t> allowed = {}) {
  AssignmentInstance in;
  in.num_jobs = jobs;
  in.num_regions = regions;
  in.cost = std::move(cost);
  in.capacity = std::move(caps);
  in.allowed = allowed.empty()
                   ? std::vector<std::uint8_t>(in.cost.size(), 1)
                   : std::move(allowed);
  return in;
}

}  // namespace

TEST_CASE("picks the cheapest complete assignment") {
  auto in = make(2, 2, {0.5, 0.3, 0.4, 0.6}, {1, 1});
  auto res = solve_assignment(in);
  REQUIRE(res);
  CHECK(res->region_of == std::vector<int>{1, 0});
  CHECK(res->objective == doctest::Approx(0.7));
}

TEST_CASE("equal costs resolve to the lowest region, then job order") {
  auto both_fit = make(2, 2, {1, 1, 1, 1}, {2, 2});
  auto res = solve_assignment(both_fit);
  REQUIRE(res);
  CHECK(res->region_of == std::vector<int>{0, 0});
  CHECK(res->objective == doctest::Approx(2.0));

  auto one_each = make(2, 2, {1, 1, 1, 1}, {1, 1});
  auto res2 = solve_assignment(one_each);
  REQUIRE(res2);
  CHECK(res2->region_of == std::vector<int>{0, 1});
}

TEST_CASE("infeasible when capacity or allowed pairs run out") {
  CHECK_FALSE(solve_assignment(make(3, 2, std::vector<double>(6, 1.0), {1, 1})));
  CHECK_FALSE(solve_assignment(
      make(1, 2, {1.0, 1.0}, {1, 1}, {0, 0})));
  // One job can only go where another must also go.
  CHECK_FALSE(solve_assignment(
      make(2, 2, {1, 1, 1, 1}, {1, 0}, {1, 0, 1, 0})));
}

TEST_CASE("capacity limits spread the load") {
  // Everyone prefers region 0 but only one fits.
  auto in = make(3, 2, {0.1, 5.0, 0.1, 5.0, 0.1, 5.0}, {1, 2});
  auto res = solve_assignment(in);
  REQUIRE(res);
  int in_r0 = 0;
  for (int r : res->region_of) in_r0 += r == 0;
  CHECK(in_r0 == 1);
  CHECK(res->objective == doctest::Approx(10.1));
}

TEST_CASE("empty batch solves to an empty assignment") {
  auto res = solve_assignment(make(0, 3, {}, {1, 1, 1}));
  REQUIRE(res);
  CHECK(res->region_of.empty());
  CHECK(res->objective == 0.0);
}

TEST_CASE("single-job placement is invariant to positive cost scaling") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (double k : {1e-3, 0.5, 1.0, 7.0, 1e3}) {
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> cost{u(rng), u(rng), u(rng), u(rng)};
      auto base = solve_assignment(make(1, 4, cost, {1, 1, 1, 1}));
      std::vector<double> scaled = cost;
      for (double& c : scaled) c *= k;
      auto res = solve_assignment(make(1, 4, scaled, {1, 1, 1, 1}));
      REQUIRE(base);
      REQUIRE(res);
      CHECK(base->region_of == res->region_of);
    }
  }
}

TEST_CASE("matches brute force on random instances") {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 80; ++trial) {
    AssignmentInstance in;
    in.num_jobs = 1 + static_cast<int>(rng() % 6);
    in.num_regions = 1 + static_cast<int>(rng() % 4);
    in.cost.resize(static_cast<std::size_t>(in.num_jobs) * in.num_regions);
    in.allowed.resize(in.cost.size());
    for (std::size_t i = 0; i < in.cost.size(); ++i) {
      in.cost[i] = u(rng);
      in.allowed[i] = u(rng) < 0.85 ? 1 : 0;
    }
    in.capacity.resize(in.num_regions);
    for (int& c : in.capacity) c = static_cast<int>(rng() % 4);

    auto fast = solve_assignment(in);
    auto slow = testutil::enumerate_best(in);
    REQUIRE(fast.has_value() == slow.has_value());
    if (fast) {
      CHECK(fast->objective == doctest::Approx(slow->objective).epsilon(1e-9));
      std::vector<int> used(in.num_regions, 0);
      double recomputed = 0.0;
      for (int j = 0; j < in.num_jobs; ++j) {
        int r = fast->region_of[j];
        REQUIRE(r >= 0);
        REQUIRE(in.allowed_at(j, r));
        used[r] += 1;
        recomputed += in.cost_at(j, r);
      }
      for (int r = 0; r < in.num_regions; ++r) CHECK(used[r] <= in.capacity[r]);
      CHECK(recomputed == doctest::Approx(fast->objective));
    }
  }
}

TEST_CASE("identical inputs give identical assignments") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  AssignmentInstance in;
  in.num_jobs = 5;
  in.num_regions = 3;
  in.cost.resize(15);
  for (double& c : in.cost) c = u(rng);
  in.allowed.assign(15, 1);
  in.capacity = {2, 2, 2};
  auto a = solve_assignment(in);
  auto b = solve_assignment(in);
  REQUIRE(a);
  REQUIRE(b);
  CHECK(a->region_of == b->region_of);
  CHECK(a->objective == b->objective);
}
