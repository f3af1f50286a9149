#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "core/error.hpp"
#include "core/sim.hpp"
#include "doctest.h"

using namespace cwsched;

namespace {

RegionEnvPoint pt(const std::string& region, std::int64_t ts, double ci,
                  double ewif, double wue, double wsf, double pue = 1.0) {
  RegionEnvPoint p;
  p.region = region;
  p.timestamp = ts;
  p.carbon_intensity = ci;
  p.ewif = ewif;
  p.wue = wue;
  p.wsf = wsf;
  p.pue = pue;
  return p;
}

// Two-region world with constant, clean environments and no embodied share.
struct Fixture {
  std::vector<TraceEntry> trace;
  EnvMap env;
  LatencyMatrix latency{{"east", "west"}, {0.0, 60.0, 60.0, 0.0}};
  WorkloadProfileDB profiles;
  RunInputs in;

  Fixture() {
    env["east"] = {"east", {pt("east", 0, 100.0, 2.0, 1.0, 0.0)}};
    env["west"] = {"west", {pt("west", 0, 100.0, 2.0, 1.0, 0.0)}};
    profiles.by_benchmark["spin"] = {1.0, 1200.0};
    in.trace = &trace;
    in.env = &env;
    in.latency = &latency;
    in.profiles = &profiles;
    in.server = {0.0, 1.0, 0.0, 0.0, 0.0};
    in.slots = {2, 2};
    in.sched.tolerance = 0.5;
    in.sched.round_interval = 300.0;
  }
};

}  // namespace

TEST_CASE("policy names round-trip") {
  for (Policy p : all_policies()) {
    auto back = policy_from_name(policy_name(p));
    REQUIRE(back);
    CHECK(*back == p);
  }
  CHECK_FALSE(policy_from_name("nonsense"));
  CHECK(all_policies().size() == 6);
}

TEST_CASE("a home-region job runs immediately with exact accounting") {
  Fixture f;
  f.trace.push_back({"j1", 0.0, "east", "spin"});
  auto out = run(f.in, Policy::home);
  REQUIRE(out.outcomes.size() == 1);
  const JobOutcome& o = out.outcomes[0];
  CHECK(o.job_id == "j1");
  CHECK(o.region == "east");
  CHECK(o.start_exec == 0.0);
  CHECK(o.transfer == 0.0);
  CHECK(o.finish == doctest::Approx(1200.0));
  CHECK(o.service_time == doctest::Approx(1200.0));
  CHECK_FALSE(o.violated);
  CHECK(o.carbon == doctest::Approx(100.0));  // 1 kWh at 100 g/kWh
  CHECK(o.water == doctest::Approx(3.0));     // 1*(2 offsite + 1 onsite)
  CHECK(out.metrics.jobs == 1);
  CHECK(out.metrics.rounds == 1);
  CHECK(out.metrics.total_carbon == doctest::Approx(100.0));
  CHECK(out.metrics.total_water == doctest::Approx(3.0));
  CHECK(out.metrics.mean_norm_service == doctest::Approx(1.0));
  CHECK(out.metrics.violation_fraction == 0.0);
  CHECK(out.metrics.region_jobs.at("east") == 1);
}

TEST_CASE("arrivals between rounds wait for the next round") {
  Fixture f;
  f.trace.push_back({"j1", 100.0, "east", "spin"});
  auto out = run(f.in, Policy::home);
  const JobOutcome& o = out.outcomes[0];
  CHECK(o.start_exec == doctest::Approx(300.0));
  CHECK(o.service_time == doctest::Approx(1400.0));  // 200 queued + 1200 exec
  CHECK_FALSE(o.violated);  // 1400 <= 1.5 * 1200
}

TEST_CASE("a full home region queues the second job until a slot frees") {
  Fixture f;
  f.in.slots = {1, 0};
  f.in.sched.tolerance = 1.0;
  f.profiles.by_benchmark["spin"] = {1.0, 300.0};
  f.trace.push_back({"j1", 0.0, "east", "spin"});
  f.trace.push_back({"j2", 0.0, "east", "spin"});
  auto out = run(f.in, Policy::home);
  CHECK(out.outcomes[0].start_exec == 0.0);
  CHECK(out.outcomes[1].start_exec == doctest::Approx(300.0));
  CHECK(out.outcomes[1].service_time == doctest::Approx(600.0));
  CHECK_FALSE(out.outcomes[1].violated);  // exactly (1+1)*300, not beyond
  CHECK(out.metrics.rounds == 2);
}

TEST_CASE("with no feasible region the round relaxes and records the penalty") {
  Fixture f;
  f.in.slots = {0, 1};
  f.in.sched.tolerance = 0.25;
  f.profiles.by_benchmark["spin"] = {1.0, 1000.0};
  f.latency = LatencyMatrix({"east", "west"}, {0.0, 300.0, 300.0, 0.0});
  f.trace.push_back({"j1", 0.0, "east", "spin"});
  auto out = run(f.in, Policy::coopt);
  const JobOutcome& o = out.outcomes[0];
  CHECK(o.region == "west");
  CHECK(o.transfer == doctest::Approx(300.0));
  CHECK(o.violated);  // 1300 > 1.25 * 1000
  CHECK(out.metrics.relaxed_rounds == 1);
  CHECK(out.metrics.total_penalty == doctest::Approx(0.05));  // 0.3 - 0.25
  CHECK(out.metrics.hard_penalty == 0.0);
  CHECK(out.metrics.violation_fraction == doctest::Approx(1.0));
}

TEST_CASE("planned carbon policy waits for the cleaner round") {
  Fixture f;
  f.env["east"] = {"east",
                   {pt("east", 0, 100.0, 2.0, 1.0, 0.0),
                    pt("east", 300, 50.0, 2.0, 1.0, 0.0)}};
  f.env["west"] = {"west",
                   {pt("west", 0, 100.0, 2.0, 1.0, 0.0),
                    pt("west", 300, 100.0, 2.0, 1.0, 0.0)}};
  f.trace.push_back({"j1", 0.0, "east", "spin"});
  auto out = run(f.in, Policy::carbon_greedy);
  const JobOutcome& o = out.outcomes[0];
  CHECK(o.region == "east");
  CHECK(o.start_exec == doctest::Approx(300.0));
  CHECK(o.carbon == doctest::Approx(50.0));  // accounted at the 300s intensity
  CHECK_FALSE(o.violated);
  CHECK(out.metrics.rounds == 2);  // one deferral round, one placement round
}

TEST_CASE("accounting noise moves footprints but not placements") {
  Fixture f;
  f.trace.push_back({"j1", 0.0, "east", "spin"});
  f.trace.push_back({"j2", 300.0, "west", "spin"});
  auto clean = run(f.in, Policy::home);

  f.in.energy_noise = 0.1;
  f.in.seed = 1;
  auto noisy = run(f.in, Policy::home);
  auto noisy_again = run(f.in, Policy::home);

  for (std::size_t i = 0; i < clean.outcomes.size(); ++i) {
    CHECK(noisy.outcomes[i].region == clean.outcomes[i].region);
    CHECK(noisy.outcomes[i].start_exec == clean.outcomes[i].start_exec);
    CHECK(noisy.outcomes[i].carbon !=
          doctest::Approx(clean.outcomes[i].carbon).epsilon(1e-12));
    CHECK(noisy.outcomes[i].carbon >= clean.outcomes[i].carbon * 0.9 - 1e-9);
    CHECK(noisy.outcomes[i].carbon <= clean.outcomes[i].carbon * 1.1 + 1e-9);
    CHECK(noisy_again.outcomes[i].carbon == noisy.outcomes[i].carbon);
  }

  f.in.seed = 2;
  auto other_seed = run(f.in, Policy::home);
  CHECK(other_seed.metrics.total_carbon != noisy.metrics.total_carbon);
}

TEST_CASE("identical runs produce identical outcomes") {
  Fixture f;
  for (int i = 0; i < 6; ++i)
    f.trace.push_back({"j" + std::to_string(i), i * 150.0,
                       i % 2 ? "west" : "east", "spin"});
  auto a = run(f.in, Policy::coopt);
  auto b = run(f.in, Policy::coopt);
  REQUIRE(a.outcomes.size() == b.outcomes.size());
  for (std::size_t i = 0; i < a.outcomes.size(); ++i) {
    CHECK(a.outcomes[i].region == b.outcomes[i].region);
    CHECK(a.outcomes[i].start_exec == b.outcomes[i].start_exec);
    CHECK(a.outcomes[i].carbon == b.outcomes[i].carbon);
    CHECK(a.outcomes[i].water == b.outcomes[i].water);
  }
  CHECK(a.metrics.total_carbon == b.metrics.total_carbon);
}

TEST_CASE("every policy places every job exactly once") {
  Fixture f;
  f.in.slots = {2, 1};
  for (int i = 0; i < 10; ++i)
    f.trace.push_back({"j" + std::to_string(i), i * 120.0,
                       i % 3 ? "west" : "east", "spin"});
  for (Policy p : all_policies()) {
    CAPTURE(policy_name(p));
    auto out = run(f.in, p);
    CHECK(out.outcomes.size() == 10);
    int placed = 0;
    for (const auto& [region, count] : out.metrics.region_jobs) placed += count;
    CHECK(placed == 10);
    for (const JobOutcome& o : out.outcomes) {
      CHECK_FALSE(o.region.empty());
      CHECK(o.start_exec >= o.received_at);
      CHECK(o.finish > o.start_exec);
    }
  }
}

TEST_CASE("a job that can never be placed raises an error") {
  Fixture f;
  f.in.slots = {0, 2};
  f.trace.push_back({"j1", 0.0, "east", "spin"});
  CHECK_THROWS_AS(run(f.in, Policy::home), RunError);
}

TEST_CASE("run validates regions, benchmarks and knobs") {
  Fixture f;
  f.trace.push_back({"j1", 0.0, "nowhere", "spin"});
  CHECK_THROWS_AS(run(f.in, Policy::home), InputError);

  Fixture f2;
  f2.trace.push_back({"j1", 0.0, "east", "mystery"});
  CHECK_THROWS_AS(run(f2.in, Policy::home), InputError);

  Fixture f3;
  f3.trace.push_back({"j1", 0.0, "east", "spin"});
  f3.env.erase("west");
  CHECK_THROWS_AS(run(f3.in, Policy::home), InputError);

  Fixture f4;
  f4.trace.push_back({"j1", 0.0, "east", "spin"});
  f4.env["south"] = {"south", {pt("south", 0, 100.0, 2.0, 1.0, 0.0)}};
  CHECK_THROWS_AS(run(f4.in, Policy::home), InputError);

  Fixture f5;
  f5.trace.push_back({"j1", 0.0, "east", "spin"});
  f5.in.slots = {0, 0};
  CHECK_THROWS_AS(run(f5.in, Policy::home), InputError);

  Fixture f6;
  f6.trace.push_back({"j1", 0.0, "east", "spin"});
  f6.in.energy_noise = 1.0;
  CHECK_THROWS_AS(run(f6.in, Policy::home), InputError);
}

TEST_CASE("savings are computed against the named baseline") {
  std::map<std::string, RunMetrics> by_policy;
  by_policy["home"].total_carbon = 100.0;
  by_policy["home"].total_water = 50.0;
  by_policy["coopt"].total_carbon = 80.0;
  by_policy["coopt"].total_water = 40.0;
  compare(by_policy, "home");
  REQUIRE(by_policy["coopt"].carbon_savings_pct);
  CHECK(*by_policy["coopt"].carbon_savings_pct == doctest::Approx(20.0));
  CHECK(*by_policy["coopt"].water_savings_pct == doctest::Approx(20.0));
  CHECK(*by_policy["home"].carbon_savings_pct == doctest::Approx(0.0));

  std::map<std::string, RunMetrics> no_base;
  no_base["coopt"].total_carbon = 80.0;
  compare(no_base, "home");
  CHECK_FALSE(no_base["coopt"].carbon_savings_pct);

  std::map<std::string, RunMetrics> zero_base;
  zero_base["home"].total_carbon = 0.0;
  zero_base["coopt"].total_carbon = 80.0;
  compare(zero_base, "home");
  CHECK_FALSE(zero_base["coopt"].carbon_savings_pct);
}
