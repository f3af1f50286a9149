#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "core/footprint.hpp"
#include "core/types.hpp"

namespace cwsched {

// Time series of one region's environment, step-sampled: a point holds from
// its timestamp until the next one; the last point holds forever.
struct RegionEnvSeries {
  std::string region;
  std::vector<RegionEnvPoint> points;  // strictly increasing timestamps

  // Latest point with timestamp <= t. Throws RunError before the first point.
  const RegionEnvPoint& at(double t) const;

  bool operator==(const RegionEnvSeries&) const = default;
};

using EnvMap = std::map<std::string, RegionEnvSeries>;

struct TraceEntry {
  std::string job_id;
  double arrival = 0.0;  // seconds
  std::string home_region;
  std::string benchmark;

  bool operator==(const TraceEntry&) const = default;
};

struct WorkloadProfileDB {
  std::map<std::string, JobEnergyRecord> by_benchmark;
  const JobEnergyRecord* find(const std::string& benchmark) const;
};

// Dense region-to-region transfer latency, seconds. Complete over its region
// set, zero diagonal, nonnegative.
class LatencyMatrix {
 public:
  LatencyMatrix() = default;
  // regions must be sorted and unique; seconds is row-major regions x regions.
  LatencyMatrix(std::vector<std::string> regions, std::vector<double> seconds);

  const std::vector<std::string>& regions() const { return regions_; }
  int num_regions() const { return static_cast<int>(regions_.size()); }
  int index_of(const std::string& region) const;  // -1 when unknown
  double seconds(int from, int to) const;
  double seconds(const std::string& from, const std::string& to) const;

 private:
  std::vector<std::string> regions_;
  std::vector<double> seconds_;
};

// Per-(region, timestamp) generation mixes plus the source table they cite.
struct MixTable {
  SourceTable sources;
  std::map<std::pair<std::string, std::int64_t>, EnergyMix> mixes;
};

// env.csv: region,timestamp,carbon_intensity[,ewif],wue,wsf,pue. When the
// ewif column is absent, it is derived from the mix table instead.
EnvMap load_env_series(const std::string& path, const MixTable* mix = nullptr);

MixTable load_mix(const std::string& mix_path, const std::string& sources_path);

// trace.csv: job_id,arrival,home_region,benchmark. Sorted by arrival, stable.
std::vector<TraceEntry> load_trace(const std::string& path);

// profiles.csv: benchmark,energy_kwh,exec_seconds.
WorkloadProfileDB load_profiles(const std::string& path);

// latency.csv: from_region,to_region,seconds.
LatencyMatrix load_latency(const std::string& path);

// Inverse of load_env_series for the direct-ewif layout; loading the output
// reproduces the same EnvMap.
void write_env_series(const EnvMap& env, std::ostream& out);

}  // namespace cwsched
