#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace cwsched {

// One generation source: carbon intensity in gCO2/kWh, water intensity in L/kWh.
struct EnergySourceProfile {
  std::string name;
  double carbon_intensity = 0.0;
  double ewif = 0.0;
};

// Fractional shares of a grid's generation mix; shares sum to 1.
struct EnergyMix {
  std::map<std::string, double> shares;
};

// One sample of a region's environment signals.
struct RegionEnvPoint {
  std::string region;
  std::int64_t timestamp = 0;     // seconds
  double carbon_intensity = 0.0;  // gCO2/kWh
  double ewif = 0.0;              // L/kWh drawn by generation (offsite)
  double wue = 0.0;               // L/kWh drawn by cooling (onsite)
  double wsf = 0.0;               // water scarcity weight, >= 0
  double pue = 1.0;               // >= 1

  bool operator==(const RegionEnvPoint&) const = default;
};

// Embodied footprint of the server fleet, amortized per job by exec_time/lifetime.
struct ServerSpec {
  double embodied_carbon_total = 0.0;  // gCO2 for the whole server
  double lifetime = 1.0;               // seconds, > 0
  double mfg_carbon_intensity = 0.0;   // gCO2/kWh at the manufacturing site
  double mfg_ewif = 0.0;               // L/kWh at the manufacturing site
  double wsf_server = 0.0;             // scarcity weight of the manufacturing region
};

// Profiled mean energy and execution time of one workload.
struct JobEnergyRecord {
  double energy = 0.0;     // kWh
  double exec_time = 1.0;  // seconds, > 0
};

}  // namespace cwsched
