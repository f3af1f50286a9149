#include "core/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "core/error.hpp"
#include "core/footprint.hpp"

namespace cwsched {

namespace {

struct SimJob {
  int index = -1;
  std::string id;
  int home = -1;
  double arrival = 0.0;
  JobEnergyRecord mean;    // what the scheduler sees
  JobEnergyRecord actual;  // what accounting charges
};

struct Running {
  double finish = 0.0;
  int region = -1;
};

struct Placement {
  int job_index = -1;
  int region = -1;
};

PendingJob to_pending(const SimJob& j) {
  return {j.index, j.id, j.home, j.arrival, j.mean};
}

}  // namespace

std::optional<Policy> policy_from_name(std::string_view name) {
  if (name == "home") return Policy::home;
  if (name == "round_robin") return Policy::round_robin;
  if (name == "least_load") return Policy::least_load;
  if (name == "coopt") return Policy::coopt;
  if (name == "carbon_greedy") return Policy::carbon_greedy;
  if (name == "water_greedy") return Policy::water_greedy;
  return std::nullopt;
}

std::string policy_name(Policy p) {
  switch (p) {
    case Policy::home: return "home";
    case Policy::round_robin: return "round_robin";
    case Policy::least_load: return "least_load";
    case Policy::coopt: return "coopt";
    case Policy::carbon_greedy: return "carbon_greedy";
    case Policy::water_greedy: return "water_greedy";
  }
  return "?";
}

const std::vector<Policy>& all_policies() {
  static const std::vector<Policy> v{Policy::home,   Policy::round_robin,
                                     Policy::least_load, Policy::coopt,
                                     Policy::carbon_greedy, Policy::water_greedy};
  return v;
}

RunOutput run(const RunInputs& in, Policy policy) {
  if (!in.trace || !in.env || !in.latency || !in.profiles)
    throw InputError("run inputs are incomplete");
  in.sched.validate();
  const LatencyMatrix& latency = *in.latency;
  int n = latency.num_regions();
  if (static_cast<int>(in.slots.size()) != n)
    throw InputError("slot vector does not match the region set");
  long long total_slots = 0;
  for (int s : in.slots) {
    if (s < 0) throw InputError("negative slot count");
    total_slots += s;
  }
  if (total_slots <= 0) throw InputError("cluster has no slots");
  if (in.energy_noise < 0.0 || in.energy_noise >= 1.0)
    throw InputError("energy_noise must be in [0,1)");

  std::vector<const RegionEnvSeries*> env_by_region(n, nullptr);
  for (const auto& [name, series] : *in.env) {
    int r = latency.index_of(name);
    if (r < 0)
      throw InputError("env region '" + name + "' missing from latency matrix");
    env_by_region[r] = &series;
  }
  for (int r = 0; r < n; ++r)
    if (!env_by_region[r])
      throw InputError("latency region '" + latency.regions()[r] +
                       "' missing from env data");

  std::vector<SimJob> jobs;
  jobs.reserve(in.trace->size());
  std::mt19937 rng(in.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (const TraceEntry& e : *in.trace) {
    SimJob j;
    j.index = static_cast<int>(jobs.size());
    j.id = e.job_id;
    j.home = latency.index_of(e.home_region);
    if (j.home < 0)
      throw InputError("job '" + e.job_id + "' has unknown home region '" +
                       e.home_region + "'");
    const JobEnergyRecord* rec = in.profiles->find(e.benchmark);
    if (!rec)
      throw InputError("job '" + e.job_id + "' has unknown benchmark '" +
                       e.benchmark + "'");
    j.arrival = e.arrival;
    j.mean = *rec;
    j.actual = *rec;
    if (in.energy_noise > 0.0)
      j.actual.energy *= 1.0 + in.energy_noise * unit(rng);
    jobs.push_back(std::move(j));
  }

  // Greedy policies plan the whole run upfront; plans are keyed by job index.
  const bool planned_policy =
      policy == Policy::carbon_greedy || policy == Policy::water_greedy;
  std::vector<std::int64_t> planned_tick;
  std::vector<int> planned_region;
  std::int64_t last_planned_tick = 0;
  if (planned_policy) {
    std::vector<GreedyJob> gjobs;
    gjobs.reserve(jobs.size());
    for (const SimJob& j : jobs)
      gjobs.push_back({j.index, j.arrival, j.home, j.mean});
    auto plan = plan_greedy_schedule(
        policy == Policy::carbon_greedy ? GreedyMetric::carbon
                                        : GreedyMetric::water,
        gjobs, env_by_region, latency, in.slots, in.sched, in.server);
    planned_tick.assign(jobs.size(), -1);
    planned_region.assign(jobs.size(), -1);
    for (const PlannedPlacement& p : plan) {
      planned_tick[p.job_index] = p.tick;
      planned_region[p.job_index] = p.region;
      last_planned_tick = std::max(last_planned_tick, p.tick);
    }
  }

  const double interval = in.sched.round_interval;
  RegionHistory history(in.sched.history_window, n);
  BaselineState baseline_state;
  std::vector<int> remaining = in.slots;
  std::vector<Running> running;
  std::vector<PendingJob> carryover;
  std::vector<JobOutcome> outcomes(jobs.size());
  std::vector<bool> done(jobs.size(), false);

  RunMetrics metrics;
  metrics.jobs = static_cast<int>(jobs.size());

  std::size_t next_arrival = 0;
  std::size_t placed_total = 0;
  std::int64_t tick = 0;
  int idle_rounds = 0;

  while (placed_total < jobs.size() || !running.empty()) {
    double now = static_cast<double>(tick) * interval;

    // Free the slots of jobs that finished by this round.
    for (std::size_t i = 0; i < running.size();) {
      if (running[i].finish <= now) {
        remaining[running[i].region] += 1;
        running[i] = running.back();
        running.pop_back();
      } else {
        ++i;
      }
    }

    std::vector<PendingJob> fresh;
    while (next_arrival < jobs.size() && jobs[next_arrival].arrival <= now) {
      fresh.push_back(to_pending(jobs[next_arrival]));
      ++next_arrival;
    }

    std::vector<Placement> placements;
    std::vector<PendingJob> deferred;
    if (!fresh.empty() || !carryover.empty()) {
      std::vector<RegionEnvPoint> envs_now;
      envs_now.reserve(n);
      for (int r = 0; r < n; ++r) envs_now.push_back(env_by_region[r]->at(now));

      auto t0 = std::chrono::steady_clock::now();
      switch (policy) {
        case Policy::home:
        case Policy::round_robin:
        case Policy::least_load: {
          std::vector<PendingJob> batch = carryover;
          batch.insert(batch.end(), fresh.begin(), fresh.end());
          BaselinePolicy bp = policy == Policy::home ? BaselinePolicy::home
                              : policy == Policy::round_robin
                                  ? BaselinePolicy::round_robin
                                  : BaselinePolicy::least_load;
          auto d = baseline_assign(bp, batch, remaining, baseline_state);
          for (std::size_t i = 0; i < d.scheduled.size(); ++i)
            placements.push_back({d.scheduled[i].job_index, d.placement[i]});
          deferred = std::move(d.deferred);
          break;
        }
        case Policy::coopt: {
          auto d = schedule_round(fresh, carryover, envs_now, latency,
                                  remaining, in.sched, history, in.server, now);
          for (std::size_t i = 0; i < d.scheduled.size(); ++i)
            placements.push_back(
                {d.scheduled[i].job_index, d.solution.placement[i]});
          deferred = std::move(d.deferred);
          if (!d.scheduled.empty()) {
            double round_penalty = 0.0;
            for (double p : d.solution.penalties) round_penalty += p;
            if (d.solution.relaxed) {
              metrics.relaxed_rounds += 1;
              metrics.total_penalty += round_penalty;
            } else {
              metrics.hard_penalty += round_penalty;
            }
          }
          break;
        }
        case Policy::carbon_greedy:
        case Policy::water_greedy: {
          std::vector<PendingJob> batch = carryover;
          batch.insert(batch.end(), fresh.begin(), fresh.end());
          for (PendingJob& job : batch) {
            if (planned_tick[job.job_index] <= tick)
              placements.push_back({job.job_index, planned_region[job.job_index]});
            else
              deferred.push_back(std::move(job));
          }
          break;
        }
      }
      auto t1 = std::chrono::steady_clock::now();
      metrics.round_decision_ms.push_back(
          std::chrono::duration<double, std::milli>(t1 - t0).count());
      metrics.rounds += 1;
    }

    for (const Placement& p : placements) {
      const SimJob& job = jobs[p.job_index];
      if (done[p.job_index])
        throw RunError("policy placed job '" + job.id + "' twice");
      if (p.region < 0 || p.region >= n)
        throw RunError("policy placed job '" + job.id + "' out of range");
      if (remaining[p.region] <= 0)
        throw RunError("policy overbooked region '" + latency.regions()[p.region] +
                       "' at t=" + std::to_string(now));
      remaining[p.region] -= 1;
      double transfer = latency.seconds(job.home, p.region);
      double start = now + transfer;
      double finish = start + job.mean.exec_time;
      running.push_back({finish, p.region});

      const RegionEnvPoint& env = env_by_region[p.region]->at(start);
      JobOutcome& o = outcomes[p.job_index];
      o.job_id = job.id;
      o.region = latency.regions()[p.region];
      o.received_at = job.arrival;
      o.start_exec = start;
      o.finish = finish;
      o.exec_time = job.mean.exec_time;
      o.transfer = transfer;
      o.service_time = finish - job.arrival;
      o.carbon = total_carbon(job.actual, env.carbon_intensity, in.server);
      o.water = total_water(job.actual, env, in.server);
      o.violated =
          o.service_time > (1.0 + in.sched.tolerance) * o.exec_time + 1e-9;
      done[p.job_index] = true;
      placed_total += 1;
    }

    // A policy that keeps deferring with nothing running and nothing still to
    // arrive will never make progress; greedy plans idle legitimately until
    // their last planned round.
    if (placements.empty() && running.empty() && !deferred.empty() &&
        next_arrival >= jobs.size() &&
        (!planned_policy || tick > last_planned_tick)) {
      if (++idle_rounds > 2)
        throw RunError("jobs stuck with no capacity to place them");
    } else {
      idle_rounds = 0;
    }

    carryover = std::move(deferred);
    tick += 1;
  }

  for (std::size_t i = 0; i < jobs.size(); ++i)
    if (!done[i]) throw RunError("job '" + jobs[i].id + "' was never placed");

  double norm_sum = 0.0;
  int violations = 0;
  for (const JobOutcome& o : outcomes) {
    metrics.total_carbon += o.carbon;
    metrics.total_water += o.water;
    metrics.region_jobs[o.region] += 1;
    norm_sum += o.service_time / o.exec_time;
    if (o.violated) violations += 1;
  }
  if (!outcomes.empty()) {
    metrics.mean_norm_service = norm_sum / static_cast<double>(outcomes.size());
    metrics.violation_fraction =
        static_cast<double>(violations) / static_cast<double>(outcomes.size());
  }
  return {std::move(metrics), std::move(outcomes)};
}

void compare(std::map<std::string, RunMetrics>& by_policy,
             const std::string& baseline) {
  auto it = by_policy.find(baseline);
  if (it == by_policy.end()) return;
  double base_c = it->second.total_carbon;
  double base_w = it->second.total_water;
  for (auto& [name, m] : by_policy) {
    if (base_c != 0.0) m.carbon_savings_pct = 100.0 * (1.0 - m.total_carbon / base_c);
    if (base_w != 0.0) m.water_savings_pct = 100.0 * (1.0 - m.total_water / base_w);
  }
}

}  // namespace cwsched
