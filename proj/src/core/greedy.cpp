#include "core/greedy.hpp"

#include <cmath>
#include <limits>

#include "core/error.hpp"
#include "core/footprint.hpp"

namespace cwsched {

namespace {

constexpr double kBudgetEps = 1e-9;
constexpr std::int64_t kMaxPlanTicks = 1u << 22;  // hard stop for broken setups

// Per-region reservation counts indexed by round.
class SlotLedger {
 public:
  SlotLedger(int regions) : used_(regions) {}

  bool fits(int region, std::int64_t from, std::int64_t to, int limit) const {
    const auto& v = used_[region];
    for (std::int64_t k = from; k < to; ++k) {
      if (k >= static_cast<std::int64_t>(v.size())) break;
      if (v[k] >= limit) return false;
    }
    return true;
  }

  void take(int region, std::int64_t from, std::int64_t to) {
    auto& v = used_[region];
    if (to > static_cast<std::int64_t>(v.size())) v.resize(to, 0);
    for (std::int64_t k = from; k < to; ++k) v[k] += 1;
  }

 private:
  std::vector<std::vector<int>> used_;
};

}  // namespace

std::vector<PlannedPlacement> plan_greedy_schedule(
    GreedyMetric metric, const std::vector<GreedyJob>& jobs,
    const std::vector<const RegionEnvSeries*>& env_by_region,
    const LatencyMatrix& latency, const std::vector<int>& slots,
    const SchedulerConfig& cfg, const ServerSpec& server) {
  cfg.validate();
  int n = latency.num_regions();
  if (static_cast<int>(env_by_region.size()) != n ||
      static_cast<int>(slots.size()) != n)
    throw InputError("region count mismatch in greedy planner");

  const double interval = cfg.round_interval;
  SlotLedger ledger(n);
  std::vector<PlannedPlacement> plan;
  plan.reserve(jobs.size());

  for (const GreedyJob& job : jobs) {
    if (job.home_region < 0 || job.home_region >= n)
      throw InputError("greedy job has no valid home region");
    const double exec = job.record.exec_time;
    std::int64_t first_tick =
        static_cast<std::int64_t>(std::ceil(job.arrival / interval - 1e-9));
    if (first_tick < 0) first_tick = 0;
    double budget = cfg.tolerance * exec;

    double best_value = std::numeric_limits<double>::infinity();
    double best_start = 0.0;
    std::int64_t best_tick = -1;
    int best_region = -1;

    for (std::int64_t k = first_tick;; ++k) {
      double decision = static_cast<double>(k) * interval;
      double wait = decision - job.arrival;
      if (wait > budget + kBudgetEps) break;  // no region can fit from here on
      for (int r = 0; r < n; ++r) {
        if (slots[r] <= 0) continue;
        double transfer = latency.seconds(job.home_region, r);
        if (wait + transfer > budget + kBudgetEps) continue;
        double start = decision + transfer;
        std::int64_t release = static_cast<std::int64_t>(
            std::ceil((start + exec) / interval - 1e-9));
        if (!ledger.fits(r, k, release, slots[r])) continue;
        const RegionEnvPoint& env = env_by_region[r]->at(start);
        double value = metric == GreedyMetric::carbon
                           ? total_carbon(job.record, env.carbon_intensity, server)
                           : total_water(job.record, env, server);
        if (value < best_value ||
            (value == best_value &&
             (start < best_start || (start == best_start && r < best_region)))) {
          best_value = value;
          best_start = start;
          best_tick = k;
          best_region = r;
        }
      }
    }

    if (best_tick < 0) {
      // Budget cannot be met; take the earliest slot that frees up.
      for (std::int64_t k = first_tick; best_tick < 0; ++k) {
        if (k - first_tick > kMaxPlanTicks)
          throw RunError("greedy planner found no free slot");
        double decision = static_cast<double>(k) * interval;
        for (int r = 0; r < n; ++r) {
          if (slots[r] <= 0) continue;
          double start = decision + latency.seconds(job.home_region, r);
          std::int64_t release = static_cast<std::int64_t>(
              std::ceil((start + exec) / interval - 1e-9));
          if (ledger.fits(r, k, release, slots[r])) {
            best_tick = k;
            best_region = r;
            best_start = start;
            break;
          }
        }
      }
    }

    std::int64_t release = static_cast<std::int64_t>(
        std::ceil((best_start + exec) / interval - 1e-9));
    ledger.take(best_region, best_tick, release);
    plan.push_back({job.job_index, best_tick, best_region});
  }
  return plan;
}

}  // namespace cwsched
