#pragma once

#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/sim.hpp"

namespace cwsched {

struct LoadedData {
  EnvMap env;
  std::vector<TraceEntry> trace;
  WorkloadProfileDB profiles;
  LatencyMatrix latency;
};

LoadedData load_data(const RunConfig& cfg);

// Per-region slot counts under one capacity scale, in latency region order.
std::vector<int> scaled_slots(const RunConfig& cfg, const LatencyMatrix& latency,
                              double scale);

// One experiment cell and its results.
struct CellResult {
  std::string policy;
  double tolerance = 0.0;
  double capacity_scale = 1.0;
  RunOutput output;
};

RunOutput run_cell(const LoadedData& data, const RunConfig& cfg,
                   const std::string& policy, double tolerance, double scale);

// Runs every configured policy at the configured tolerance and scale 1,
// then writes outcomes_<policy>.csv, metrics.csv, overhead.csv and
// config.resolved.ini into out_dir.
void cmd_run(const RunConfig& cfg, const std::string& out_dir);

// Runs the full policy x tolerance x capacity_scale grid (cells in parallel,
// files written by the collector); outcome files carry the cell in the name.
void cmd_sweep(const RunConfig& cfg, const std::string& out_dir);

// Pivots one or more metrics.csv files into series.csv: rows sorted by
// (policy, tolerance, capacity_scale), savings columns only, rows without
// defined savings dropped.
void cmd_plotdata(const std::vector<std::string>& metrics_paths,
                  const std::string& out_path);

// Formatting helpers shared with tests.
void write_outcomes_csv(const std::vector<JobOutcome>& outcomes,
                        const std::string& path);
void write_metrics_csv(const std::vector<CellResult>& cells,
                       const std::string& baseline, const std::string& path);
void write_overhead_csv(const std::vector<CellResult>& cells,
                        const std::string& path);

}  // namespace cwsched
