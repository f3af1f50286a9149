#pragma once

#include <deque>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core/ingest.hpp"
#include "core/solver.hpp"
#include "core/types.hpp"

namespace cwsched {

// effective: transfer plus already-waited time must fit the tolerance budget.
// literal: only transfer counts (kept for comparison experiments).
enum class ToleranceMode { effective, literal };

struct SchedulerConfig {
  double carbon_weight = 0.5;    // weight of the carbon term; pairs with water_weight
  double water_weight = 0.5;
  double history_weight = 0.1;   // weight of the per-region history reference
  int history_window = 10;       // rounds kept by RegionHistory
  double tolerance = 0.5;        // allowed service-time stretch fraction
  double penalty_weight = 10.0;  // cost per unit of budget overshoot in relaxed solves
  double round_interval = 300.0; // seconds between scheduling rounds
  ToleranceMode tolerance_mode = ToleranceMode::effective;

  void validate() const;  // throws InputError
};

// A job waiting for placement.
struct PendingJob {
  int job_index = -1;  // stable identity within one run
  std::string job_id;
  int home_region = -1;
  double received_at = 0.0;  // submission time, seconds
  JobEnergyRecord record;    // profiled mean energy / exec time
};

// Costs and constraints of one scheduling round.
struct AssignmentProblem {
  std::vector<PendingJob> jobs;
  int num_regions = 0;
  std::vector<double> cost;           // jobs x regions, objective terms
  std::vector<double> overshoot;      // tolerance budget overshoot per pair
  std::vector<std::uint8_t> feasible; // overshoot == 0
  std::vector<int> capacity;
  double penalty_weight = 0.0;

  double cost_at(int j, int r) const {
    return cost[static_cast<std::size_t>(j) * num_regions + r];
  }
  double overshoot_at(int j, int r) const {
    return overshoot[static_cast<std::size_t>(j) * num_regions + r];
  }
  bool feasible_at(int j, int r) const {
    return feasible[static_cast<std::size_t>(j) * num_regions + r] != 0;
  }
};

struct AssignmentSolution {
  std::vector<int> placement;     // per job, region index
  std::vector<double> penalties;  // per job, 0 unless relaxed
  bool relaxed = false;
  double objective = 0.0;         // base cost + penalty_weight * sum(penalties)
};

// Sliding window of per-region footprints, each round normalized by that
// round's max region so references stay in [0,1].
class RegionHistory {
 public:
  RegionHistory() = default;
  RegionHistory(int window, int num_regions);

  // Raw per-region totals of one round; normalization happens here.
  void push(std::span<const double> carbon, std::span<const double> water);
  double carbon_ref(int region) const;
  double water_ref(int region) const;
  int rounds_recorded() const { return static_cast<int>(carbon_.size()); }

 private:
  double mean(const std::deque<std::vector<double>>& rounds, int region) const;
  int window_ = 1;
  int num_regions_ = 0;
  std::deque<std::vector<double>> carbon_, water_;
};

// Worst-case footprints of one job across the given region environments,
// used as per-job normalization denominators.
std::pair<double, double> job_max_footprints(const JobEnergyRecord& rec,
                                             std::span<const RegionEnvPoint> envs,
                                             const ServerSpec& server);

// Assembles the round's costs: normalized carbon + water terms weighted by
// carbon_weight/water_weight, plus history_weight times the region's windowed
// references. Also marks which pairs fit the tolerance budget.
AssignmentProblem build_problem(std::vector<PendingJob> batch,
                                std::span<const RegionEnvPoint> envs,
                                const LatencyMatrix& latency,
                                const std::vector<int>& capacity,
                                const SchedulerConfig& cfg,
                                const RegionHistory& history,
                                const ServerSpec& server, double now);

// Exact optimum over tolerance-feasible pairs; nullopt when none exists.
std::optional<AssignmentSolution> solve_hard(const AssignmentProblem& p);

// All pairs allowed; budget overshoot is charged penalty_weight per unit.
// Needs total capacity >= batch size.
AssignmentSolution solve_soft(const AssignmentProblem& p);

// Remaining slack of a job: tolerance budget minus mean transfer latency
// minus time already waited. Smaller is more urgent.
double urgency_score(const PendingJob& job, const LatencyMatrix& latency,
                     const SchedulerConfig& cfg, double now);

// The k most urgent jobs (kept) and the rest (deferred). Ties resolve by
// earlier received_at, then job_id.
std::pair<std::vector<PendingJob>, std::vector<PendingJob>> select_priority(
    const std::vector<PendingJob>& jobs, int k, const LatencyMatrix& latency,
    const SchedulerConfig& cfg, double now);

struct RoundDecision {
  std::vector<PendingJob> scheduled;  // parallel to solution.placement
  AssignmentSolution solution;
  std::vector<PendingJob> deferred;
};

// One control round: merge carryover and new jobs, shed load by urgency when
// the batch exceeds total capacity, solve hard then fall back to the relaxed
// solve, and record the round's per-region footprints in the history.
RoundDecision schedule_round(const std::vector<PendingJob>& new_jobs,
                             const std::vector<PendingJob>& carryover,
                             std::span<const RegionEnvPoint> envs,
                             const LatencyMatrix& latency,
                             const std::vector<int>& capacity,
                             const SchedulerConfig& cfg, RegionHistory& history,
                             const ServerSpec& server, double now);

enum class BaselinePolicy { home, round_robin, least_load };

struct BaselineState {
  int cursor = 0;  // round_robin position, persistent across rounds
};

struct BaselineDecision {
  std::vector<PendingJob> scheduled;
  std::vector<int> placement;  // parallel to scheduled
  std::vector<PendingJob> deferred;
};

// home: the job's home region, deferred when full. round_robin: next region
// with a free slot from a persistent cursor. least_load: most remaining
// capacity, ties to the lowest region index.
BaselineDecision baseline_assign(BaselinePolicy policy,
                                 const std::vector<PendingJob>& batch,
                                 const std::vector<int>& capacity,
                                 BaselineState& state);

}  // namespace cwsched
