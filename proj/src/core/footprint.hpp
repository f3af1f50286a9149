#pragma once

#include <map>

#include "core/types.hpp"

namespace cwsched {

using SourceTable = std::map<std::string, EnergySourceProfile>;

// Operational carbon at the given grid intensity plus the amortized embodied
// share, in gCO2.
double total_carbon(const JobEnergyRecord& rec, double carbon_intensity,
                    const ServerSpec& server);

// Water drawn by generating the job's electricity, scarcity-weighted, in L.
double offsite_water(const JobEnergyRecord& rec, const RegionEnvPoint& env);

// Water evaporated by cooling while the job runs, scarcity-weighted, in L.
double onsite_water(const JobEnergyRecord& rec, const RegionEnvPoint& env);

// Lifetime water cost of manufacturing the server, in L. Zero embodied carbon
// means zero embodied water; otherwise mfg_carbon_intensity must be > 0.
double embodied_water_total(const ServerSpec& server);

// Offsite + onsite + amortized embodied water, in L.
double total_water(const JobEnergyRecord& rec, const RegionEnvPoint& env,
                   const ServerSpec& server);

// Water drawn per unit of IT energy in this region, in L/kWh.
double water_intensity(const RegionEnvPoint& env);

// Share-weighted mean EWIF of a generation mix, in L/kWh.
double mix_ewif(const EnergyMix& mix, const SourceTable& table);

}  // namespace cwsched
