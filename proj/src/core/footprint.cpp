#include "core/footprint.hpp"

#include <cmath>

#include "core/error.hpp"

namespace cwsched {

static void check_server(const ServerSpec& s) {
  if (s.lifetime <= 0.0) throw InputError("server lifetime must be > 0");
}

double total_carbon(const JobEnergyRecord& rec, double carbon_intensity,
                    const ServerSpec& server) {
  check_server(server);
  return rec.energy * carbon_intensity +
         rec.exec_time / server.lifetime * server.embodied_carbon_total;
}

double offsite_water(const JobEnergyRecord& rec, const RegionEnvPoint& env) {
  return env.pue * rec.energy * env.ewif * (1.0 + env.wsf);
}

double onsite_water(const JobEnergyRecord& rec, const RegionEnvPoint& env) {
  return rec.energy * env.wue * (1.0 + env.wsf);
}

double embodied_water_total(const ServerSpec& server) {
  if (server.embodied_carbon_total == 0.0) return 0.0;
  if (server.mfg_carbon_intensity <= 0.0)
    throw InputError(
        "embodied water needs mfg_carbon_intensity > 0 when embodied carbon "
        "is nonzero");
  double mfg_energy = server.embodied_carbon_total / server.mfg_carbon_intensity;
  return mfg_energy * server.mfg_ewif * (1.0 + server.wsf_server);
}

double total_water(const JobEnergyRecord& rec, const RegionEnvPoint& env,
                   const ServerSpec& server) {
  check_server(server);
  return offsite_water(rec, env) + onsite_water(rec, env) +
         rec.exec_time / server.lifetime * embodied_water_total(server);
}

double water_intensity(const RegionEnvPoint& env) {
  return (env.wue + env.pue * env.ewif) * (1.0 + env.wsf);
}

double mix_ewif(const EnergyMix& mix, const SourceTable& table) {
  double sum = 0.0;
  double total_share = 0.0;
  for (const auto& [source, share] : mix.shares) {
    if (share < 0.0 || share > 1.0)
      throw InputError("mix share out of [0,1] for source '" + source + "'");
    auto it = table.find(source);
    if (it == table.end())
      throw InputError("mix references unknown source '" + source + "'");
    sum += share * it->second.ewif;
    total_share += share;
  }
  if (std::abs(total_share - 1.0) > 1e-9)
    throw InputError("mix shares must sum to 1");
  return sum;
}

}  // namespace cwsched
