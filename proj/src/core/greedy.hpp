#pragma once

#include <cstdint>
#include <vector>

#include "core/ingest.hpp"
#include "core/sched.hpp"

namespace cwsched {

enum class GreedyMetric { carbon, water };

struct GreedyJob {
  int job_index = -1;
  double arrival = 0.0;
  int home_region = -1;
  JobEnergyRecord record;
};

struct PlannedPlacement {
  int job_index = -1;
  std::int64_t tick = 0;  // decision round index; time = tick * round_interval
  int region = -1;
};

// Plans a whole run with full knowledge of the environment series. Jobs are
// taken in arrival order; each is placed at the (round, region) pair that
// minimizes its own footprint among pairs fitting the tolerance budget and
// current reservations. Ties prefer earlier execution start, then the lower
// region index. With no budget-feasible pair left, the earliest free slot is
// taken regardless of budget.
std::vector<PlannedPlacement> plan_greedy_schedule(
    GreedyMetric metric, const std::vector<GreedyJob>& jobs,
    const std::vector<const RegionEnvSeries*>& env_by_region,
    const LatencyMatrix& latency, const std::vector<int>& slots,
    const SchedulerConfig& cfg, const ServerSpec& server);

}  // namespace cwsched
