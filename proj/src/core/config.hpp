#pragma once

#include <istream>
#include <map>
#include <string>
#include <vector>

#include "core/sched.hpp"
#include "core/types.hpp"

namespace cwsched {

// Everything one invocation needs: input paths, model parameters, the
// experiment grid and output settings.
struct RunConfig {
  // [paths] - resolved against the config file's directory at load time
  std::string env_path;
  std::string mix_path;      // optional, replaces the env ewif column
  std::string sources_path;  // required with mix_path
  std::string trace_path;
  std::string profiles_path;
  std::string latency_path;

  // [scheduler]
  SchedulerConfig sched;

  // [server]
  ServerSpec server;

  // [cluster]
  int slots_per_region = 10;
  std::map<std::string, int> slots_override;  // per-region exceptions
  std::vector<double> capacity_scales{1.0};   // sweep axis, scales slot counts

  // [run]
  std::vector<std::string> policies{"home", "coopt"};
  std::vector<double> tolerances{0.25, 0.5, 0.75, 1.0};  // sweep axis
  std::string baseline = "home";
  std::string out_dir = "out";
  unsigned seed = 0;
  double energy_noise = 0.0;

  void validate() const;  // throws InputError
};

RunConfig config_load(const std::string& path);
RunConfig config_parse(std::istream& in, const std::string& origin,
                       const std::string& base_dir);

// Applies "section.key=value", same keys as the file format.
void config_set(RunConfig& cfg, const std::string& dotted_key,
                const std::string& value);

// Canonical text form; config_parse(config_dump(c)) == c.
std::string config_dump(const RunConfig& cfg);

}  // namespace cwsched
