#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/greedy.hpp"
#include "core/ingest.hpp"
#include "core/sched.hpp"

namespace cwsched {

enum class Policy { home, round_robin, least_load, coopt, carbon_greedy, water_greedy };

std::optional<Policy> policy_from_name(std::string_view name);
std::string policy_name(Policy p);
const std::vector<Policy>& all_policies();

struct JobOutcome {
  std::string job_id;
  std::string region;        // where the job ran
  double received_at = 0.0;
  double start_exec = 0.0;   // decision time + transfer
  double finish = 0.0;
  double service_time = 0.0; // finish - received_at
  double exec_time = 0.0;
  double transfer = 0.0;
  double carbon = 0.0;       // gCO2, at the environment when execution started
  double water = 0.0;        // L
  bool violated = false;     // service_time > (1 + tolerance) * exec_time
};

struct RunMetrics {
  int jobs = 0;
  int rounds = 0;
  double total_carbon = 0.0;
  double total_water = 0.0;
  std::map<std::string, int> region_jobs;
  double mean_norm_service = 0.0;   // mean of service_time / exec_time
  double violation_fraction = 0.0;
  int relaxed_rounds = 0;
  double total_penalty = 0.0;  // budget overshoot accepted by relaxed solves
  double hard_penalty = 0.0;   // penalty seen on non-relaxed rounds; stays 0
  std::vector<double> round_decision_ms;  // wall time per decision round
  std::optional<double> carbon_savings_pct;  // set by compare()
  std::optional<double> water_savings_pct;
};

struct RunInputs {
  const std::vector<TraceEntry>* trace = nullptr;
  const EnvMap* env = nullptr;
  const LatencyMatrix* latency = nullptr;
  const WorkloadProfileDB* profiles = nullptr;
  ServerSpec server;
  SchedulerConfig sched;
  std::vector<int> slots;      // per region, aligned with latency.regions()
  double energy_noise = 0.0;   // accounting-side multiplicative half-width
  unsigned seed = 0;
};

struct RunOutput {
  RunMetrics metrics;
  std::vector<JobOutcome> outcomes;  // trace order
};

// Replays the trace against one policy in rounds of sched.round_interval
// seconds. Scheduling decisions see the environment of the current round;
// accounting samples it when execution starts.
RunOutput run(const RunInputs& in, Policy policy);

// Fills carbon/water savings of every run relative to the named baseline:
// 100 * (1 - total / baseline_total). Left unset when the baseline is absent
// or its total is zero.
void compare(std::map<std::string, RunMetrics>& by_policy,
             const std::string& baseline);

}  // namespace cwsched
