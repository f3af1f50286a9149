#include "core/sched.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/footprint.hpp"

namespace cwsched {

namespace {
constexpr double kFeasEps = 1e-9;  // slack on tolerance budget comparisons
}

void SchedulerConfig::validate() const {
  if (carbon_weight < 0.0 || carbon_weight > 1.0 || water_weight < 0.0 ||
      water_weight > 1.0)
    throw InputError("carbon_weight and water_weight must be in [0,1]");
  if (std::abs(carbon_weight + water_weight - 1.0) > 1e-9)
    throw InputError("carbon_weight + water_weight must equal 1");
  if (history_weight < 0.0) throw InputError("history_weight must be >= 0");
  if (history_window < 1) throw InputError("history_window must be >= 1");
  if (tolerance < 0.0) throw InputError("tolerance must be >= 0");
  if (penalty_weight < 0.0) throw InputError("penalty_weight must be >= 0");
  if (round_interval <= 0.0) throw InputError("round_interval must be > 0");
}

RegionHistory::RegionHistory(int window, int num_regions)
    : window_(window), num_regions_(num_regions) {
  if (window < 1) throw InputError("history window must be >= 1");
  if (num_regions < 0) throw InputError("negative region count");
}

void RegionHistory::push(std::span<const double> carbon,
                         std::span<const double> water) {
  if (carbon.size() != static_cast<std::size_t>(num_regions_) ||
      water.size() != carbon.size())
    throw InputError("history push size mismatch");
  auto normalized = [](std::span<const double> v) {
    double mx = 0.0;
    for (double x : v) mx = std::max(mx, x);
    std::vector<double> out(v.begin(), v.end());
    if (mx > 0.0)
      for (double& x : out) x /= mx;
    return out;
  };
  carbon_.push_back(normalized(carbon));
  water_.push_back(normalized(water));
  while (static_cast<int>(carbon_.size()) > window_) {
    carbon_.pop_front();
    water_.pop_front();
  }
}

double RegionHistory::mean(const std::deque<std::vector<double>>& rounds,
                           int region) const {
  if (rounds.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& round : rounds) sum += round[region];
  return sum / static_cast<double>(rounds.size());
}

double RegionHistory::carbon_ref(int region) const {
  return mean(carbon_, region);
}

double RegionHistory::water_ref(int region) const { return mean(water_, region); }

std::pair<double, double> job_max_footprints(const JobEnergyRecord& rec,
                                             std::span<const RegionEnvPoint> envs,
                                             const ServerSpec& server) {
  double max_c = 0.0, max_w = 0.0;
  for (const auto& env : envs) {
    max_c = std::max(max_c, total_carbon(rec, env.carbon_intensity, server));
    max_w = std::max(max_w, total_water(rec, env, server));
  }
  return {max_c, max_w};
}

AssignmentProblem build_problem(std::vector<PendingJob> batch,
                                std::span<const RegionEnvPoint> envs,
                                const LatencyMatrix& latency,
                                const std::vector<int>& capacity,
                                const SchedulerConfig& cfg,
                                const RegionHistory& history,
                                const ServerSpec& server, double now) {
  cfg.validate();
  int n = static_cast<int>(envs.size());
  if (latency.num_regions() != n || static_cast<int>(capacity.size()) != n)
    throw InputError("region count mismatch between env, latency and capacity");

  AssignmentProblem p;
  p.num_regions = n;
  p.capacity = capacity;
  p.penalty_weight = cfg.penalty_weight;
  std::size_t cells = batch.size() * static_cast<std::size_t>(n);
  p.cost.resize(cells);
  p.overshoot.resize(cells);
  p.feasible.resize(cells);

  for (std::size_t j = 0; j < batch.size(); ++j) {
    const PendingJob& job = batch[j];
    if (job.home_region < 0 || job.home_region >= n)
      throw InputError("job '" + job.job_id + "' has no valid home region");
    if (job.record.exec_time <= 0.0)
      throw InputError("job '" + job.job_id + "' has nonpositive exec time");
    double waited = now - job.received_at;
    auto [max_c, max_w] = job_max_footprints(job.record, envs, server);
    for (int r = 0; r < n; ++r) {
      double carbon = total_carbon(job.record, envs[r].carbon_intensity, server);
      double water = total_water(job.record, envs[r], server);
      double c = 0.0;
      if (max_c > 0.0) c += cfg.carbon_weight * carbon / max_c;
      if (max_w > 0.0) c += cfg.water_weight * water / max_w;
      c += cfg.history_weight * (cfg.carbon_weight * history.carbon_ref(r) +
                                 cfg.water_weight * history.water_ref(r));
      double delay = latency.seconds(job.home_region, r);
      if (cfg.tolerance_mode == ToleranceMode::effective) delay += waited;
      double ratio = delay / job.record.exec_time;
      double over = std::max(0.0, ratio - cfg.tolerance);
      bool ok = over <= kFeasEps;
      std::size_t idx = j * static_cast<std::size_t>(n) + r;
      p.cost[idx] = c;
      p.overshoot[idx] = ok ? 0.0 : over;
      p.feasible[idx] = ok ? 1 : 0;
    }
  }
  p.jobs = std::move(batch);
  return p;
}

static AssignmentInstance to_instance(const AssignmentProblem& p, bool soft) {
  AssignmentInstance in;
  in.num_jobs = static_cast<int>(p.jobs.size());
  in.num_regions = p.num_regions;
  in.capacity = p.capacity;
  in.cost.resize(p.cost.size());
  in.allowed.resize(p.cost.size());
  for (std::size_t i = 0; i < p.cost.size(); ++i) {
    in.cost[i] = soft ? p.cost[i] + p.penalty_weight * p.overshoot[i] : p.cost[i];
    in.allowed[i] = soft ? 1 : p.feasible[i];
  }
  return in;
}

std::optional<AssignmentSolution> solve_hard(const AssignmentProblem& p) {
  auto res = solve_assignment(to_instance(p, false));
  if (!res) return std::nullopt;
  AssignmentSolution s;
  s.placement = std::move(res->region_of);
  s.penalties.assign(p.jobs.size(), 0.0);
  s.relaxed = false;
  s.objective = res->objective;
  return s;
}

AssignmentSolution solve_soft(const AssignmentProblem& p) {
  long long total_cap = 0;
  for (int c : p.capacity) total_cap += c;
  if (total_cap < static_cast<long long>(p.jobs.size()))
    throw InputError("relaxed solve needs total capacity >= batch size");
  auto res = solve_assignment(to_instance(p, true));
  if (!res) throw RunError("relaxed solve found no assignment");
  AssignmentSolution s;
  s.placement = std::move(res->region_of);
  s.relaxed = true;
  s.penalties.resize(p.jobs.size());
  for (std::size_t j = 0; j < p.jobs.size(); ++j)
    s.penalties[j] = p.overshoot_at(static_cast<int>(j), s.placement[j]);
  s.objective = res->objective;
  return s;
}

double urgency_score(const PendingJob& job, const LatencyMatrix& latency,
                     const SchedulerConfig& cfg, double now) {
  int n = latency.num_regions();
  if (n == 0) throw InputError("urgency needs at least one region");
  double sum = 0.0;
  for (int r = 0; r < n; ++r) sum += latency.seconds(job.home_region, r);
  double avg = sum / static_cast<double>(n);
  double waited = now - job.received_at;
  return cfg.tolerance * job.record.exec_time - avg - waited;
}

std::pair<std::vector<PendingJob>, std::vector<PendingJob>> select_priority(
    const std::vector<PendingJob>& jobs, int k, const LatencyMatrix& latency,
    const SchedulerConfig& cfg, double now) {
  if (k < 0) throw InputError("selection count must be >= 0");
  std::vector<std::size_t> order(jobs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<double> score(jobs.size());
  for (std::size_t i = 0; i < jobs.size(); ++i)
    score[i] = urgency_score(jobs[i], latency, cfg, now);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (score[a] != score[b]) return score[a] < score[b];
    if (jobs[a].received_at != jobs[b].received_at)
      return jobs[a].received_at < jobs[b].received_at;
    return jobs[a].job_id < jobs[b].job_id;
  });
  std::pair<std::vector<PendingJob>, std::vector<PendingJob>> out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (static_cast<int>(i) < k)
      out.first.push_back(jobs[order[i]]);
    else
      out.second.push_back(jobs[order[i]]);
  }
  return out;
}

RoundDecision schedule_round(const std::vector<PendingJob>& new_jobs,
                             const std::vector<PendingJob>& carryover,
                             std::span<const RegionEnvPoint> envs,
                             const LatencyMatrix& latency,
                             const std::vector<int>& capacity,
                             const SchedulerConfig& cfg, RegionHistory& history,
                             const ServerSpec& server, double now) {
  std::vector<PendingJob> all;
  all.reserve(new_jobs.size() + carryover.size());
  all.insert(all.end(), carryover.begin(), carryover.end());
  all.insert(all.end(), new_jobs.begin(), new_jobs.end());

  RoundDecision out;
  if (all.empty()) return out;

  long long total_cap = 0;
  for (int c : capacity) total_cap += c;

  if (static_cast<long long>(all.size()) > total_cap) {
    auto [kept, shed] = select_priority(all, static_cast<int>(total_cap),
                                        latency, cfg, now);
    out.deferred = std::move(shed);
    if (kept.empty()) return out;
    auto p = build_problem(std::move(kept), envs, latency, capacity, cfg,
                           history, server, now);
    out.solution = solve_soft(p);
    out.scheduled = std::move(p.jobs);
  } else {
    auto p = build_problem(std::move(all), envs, latency, capacity, cfg,
                           history, server, now);
    auto hard = solve_hard(p);
    out.solution = hard ? std::move(*hard) : solve_soft(p);
    out.scheduled = std::move(p.jobs);
  }

  std::vector<double> carbon(envs.size(), 0.0), water(envs.size(), 0.0);
  for (std::size_t j = 0; j < out.scheduled.size(); ++j) {
    int r = out.solution.placement[j];
    carbon[r] += total_carbon(out.scheduled[j].record,
                              envs[r].carbon_intensity, server);
    water[r] += total_water(out.scheduled[j].record, envs[r], server);
  }
  history.push(carbon, water);
  return out;
}

BaselineDecision baseline_assign(BaselinePolicy policy,
                                 const std::vector<PendingJob>& batch,
                                 const std::vector<int>& capacity,
                                 BaselineState& state) {
  int n = static_cast<int>(capacity.size());
  std::vector<int> remaining = capacity;
  BaselineDecision out;
  for (const PendingJob& job : batch) {
    int pick = -1;
    switch (policy) {
      case BaselinePolicy::home:
        if (job.home_region < 0 || job.home_region >= n)
          throw InputError("job '" + job.job_id + "' has no valid home region");
        if (remaining[job.home_region] > 0) pick = job.home_region;
        break;
      case BaselinePolicy::round_robin:
        for (int step = 0; step < n; ++step) {
          int r = (state.cursor + step) % n;
          if (remaining[r] > 0) {
            pick = r;
            state.cursor = (r + 1) % n;
            break;
          }
        }
        break;
      case BaselinePolicy::least_load: {
        int best = -1;
        for (int r = 0; r < n; ++r)
          if (remaining[r] > 0 && (best < 0 || remaining[r] > remaining[best]))
            best = r;
        pick = best;
        break;
      }
    }
    if (pick < 0) {
      out.deferred.push_back(job);
    } else {
      remaining[pick] -= 1;
      out.scheduled.push_back(job);
      out.placement.push_back(pick);
    }
  }
  return out;
}

}  // namespace cwsched
