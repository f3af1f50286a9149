#include "core/ingest.hpp"

#include <algorithm>
#include <set>

#include "core/csv.hpp"
#include "core/error.hpp"

namespace cwsched {

const RegionEnvPoint& RegionEnvSeries::at(double t) const {
  if (points.empty()) throw RunError("region '" + region + "' has no env data");
  if (t < static_cast<double>(points.front().timestamp))
    throw RunError("env data for region '" + region + "' starts at " +
                   std::to_string(points.front().timestamp) +
                   ", sampled at " + std::to_string(t));
  auto it = std::upper_bound(
      points.begin(), points.end(), t,
      [](double v, const RegionEnvPoint& p) { return v < static_cast<double>(p.timestamp); });
  return *std::prev(it);
}

const JobEnergyRecord* WorkloadProfileDB::find(const std::string& benchmark) const {
  auto it = by_benchmark.find(benchmark);
  return it == by_benchmark.end() ? nullptr : &it->second;
}

LatencyMatrix::LatencyMatrix(std::vector<std::string> regions,
                             std::vector<double> seconds)
    : regions_(std::move(regions)), seconds_(std::move(seconds)) {
  std::size_t n = regions_.size();
  if (!std::is_sorted(regions_.begin(), regions_.end()) ||
      std::adjacent_find(regions_.begin(), regions_.end()) != regions_.end())
    throw InputError("latency regions must be sorted and unique");
  if (seconds_.size() != n * n)
    throw InputError("latency matrix must cover all region pairs");
  for (std::size_t i = 0; i < n; ++i) {
    if (seconds_[i * n + i] != 0.0)
      throw InputError("latency diagonal must be zero for region '" +
                       regions_[i] + "'");
    for (std::size_t j = 0; j < n; ++j)
      if (seconds_[i * n + j] < 0.0)
        throw InputError("negative latency between '" + regions_[i] +
                         "' and '" + regions_[j] + "'");
  }
}

int LatencyMatrix::index_of(const std::string& region) const {
  auto it = std::lower_bound(regions_.begin(), regions_.end(), region);
  if (it == regions_.end() || *it != region) return -1;
  return static_cast<int>(it - regions_.begin());
}

double LatencyMatrix::seconds(int from, int to) const {
  return seconds_[static_cast<std::size_t>(from) * regions_.size() +
                  static_cast<std::size_t>(to)];
}

double LatencyMatrix::seconds(const std::string& from, const std::string& to) const {
  int f = index_of(from), t = index_of(to);
  if (f < 0) throw InputError("unknown region '" + from + "'");
  if (t < 0) throw InputError("unknown region '" + to + "'");
  return seconds(f, t);
}

EnvMap load_env_series(const std::string& path, const MixTable* mix) {
  auto t = csv::read_file(path);
  int c_region = t.require_column("region");
  int c_ts = t.require_column("timestamp");
  int c_ci = t.require_column("carbon_intensity");
  int c_ewif = t.column("ewif");
  int c_wue = t.require_column("wue");
  int c_wsf = t.require_column("wsf");
  int c_pue = t.require_column("pue");
  if (c_ewif < 0 && mix == nullptr)
    throw InputError(path + ": no ewif column and no mix data given");

  EnvMap env;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    RegionEnvPoint p;
    p.region = t.cell(i, c_region);
    p.timestamp = csv::parse_int(t, i, c_ts);
    p.carbon_intensity = csv::parse_double(t, i, c_ci);
    p.wue = csv::parse_double(t, i, c_wue);
    p.wsf = csv::parse_double(t, i, c_wsf);
    p.pue = csv::parse_double(t, i, c_pue);
    if (c_ewif >= 0) {
      p.ewif = csv::parse_double(t, i, c_ewif);
    } else {
      auto it = mix->mixes.find({p.region, p.timestamp});
      if (it == mix->mixes.end())
        throw InputError(t.where(i) + ": no mix entry for region '" +
                         p.region + "' at " + std::to_string(p.timestamp));
      p.ewif = mix_ewif(it->second, mix->sources);
    }
    if (p.carbon_intensity < 0 || p.ewif < 0 || p.wue < 0 || p.wsf < 0)
      throw InputError(t.where(i) + ": negative environment value");
    if (p.pue < 1.0)
      throw InputError(t.where(i) + ": pue must be >= 1");
    auto& series = env[p.region];
    if (series.points.empty()) series.region = p.region;
    if (!series.points.empty() && p.timestamp <= series.points.back().timestamp)
      throw InputError(t.where(i) + ": timestamps for region '" + p.region +
                       "' must be strictly increasing");
    series.points.push_back(std::move(p));
  }
  if (env.empty()) throw InputError(path + ": no environment rows");
  return env;
}

MixTable load_mix(const std::string& mix_path, const std::string& sources_path) {
  MixTable out;
  auto st = csv::read_file(sources_path);
  int c_src = st.require_column("source");
  int c_ci = st.require_column("carbon_intensity");
  int c_ewif = st.require_column("ewif");
  for (std::size_t i = 0; i < st.rows.size(); ++i) {
    EnergySourceProfile p;
    p.name = st.cell(i, c_src);
    p.carbon_intensity = csv::parse_double(st, i, c_ci);
    p.ewif = csv::parse_double(st, i, c_ewif);
    if (p.carbon_intensity < 0 || p.ewif < 0)
      throw InputError(st.where(i) + ": negative source value");
    if (!out.sources.emplace(p.name, p).second)
      throw InputError(st.where(i) + ": duplicate source '" + p.name + "'");
  }

  auto mt = csv::read_file(mix_path);
  int c_region = mt.require_column("region");
  int c_ts = mt.require_column("timestamp");
  int c_source = mt.require_column("source");
  int c_share = mt.require_column("share");
  for (std::size_t i = 0; i < mt.rows.size(); ++i) {
    std::string region = mt.cell(i, c_region);
    std::int64_t ts = csv::parse_int(mt, i, c_ts);
    std::string source = mt.cell(i, c_source);
    double share = csv::parse_double(mt, i, c_share);
    if (share < 0.0 || share > 1.0)
      throw InputError(mt.where(i) + ": share out of [0,1]");
    if (!out.sources.count(source))
      throw InputError(mt.where(i) + ": unknown source '" + source + "'");
    auto& mix = out.mixes[{region, ts}];
    if (!mix.shares.emplace(source, share).second)
      throw InputError(mt.where(i) + ": duplicate share for source '" +
                       source + "'");
  }
  return out;
}

std::vector<TraceEntry> load_trace(const std::string& path) {
  auto t = csv::read_file(path);
  int c_id = t.require_column("job_id");
  int c_arrival = t.require_column("arrival");
  int c_home = t.require_column("home_region");
  int c_bench = t.require_column("benchmark");
  std::vector<TraceEntry> out;
  std::set<std::string> ids;
  out.reserve(t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    TraceEntry e;
    e.job_id = t.cell(i, c_id);
    e.arrival = csv::parse_double(t, i, c_arrival);
    e.home_region = t.cell(i, c_home);
    e.benchmark = t.cell(i, c_bench);
    if (e.arrival < 0.0)
      throw InputError(t.where(i) + ": arrival must be >= 0");
    if (!ids.insert(e.job_id).second)
      throw InputError(t.where(i) + ": duplicate job_id '" + e.job_id + "'");
    out.push_back(std::move(e));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const TraceEntry& a, const TraceEntry& b) {
                     return a.arrival < b.arrival;
                   });
  return out;
}

WorkloadProfileDB load_profiles(const std::string& path) {
  auto t = csv::read_file(path);
  int c_bench = t.require_column("benchmark");
  int c_energy = t.require_column("energy_kwh");
  int c_exec = t.require_column("exec_seconds");
  WorkloadProfileDB db;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    std::string bench = t.cell(i, c_bench);
    JobEnergyRecord rec;
    rec.energy = csv::parse_double(t, i, c_energy);
    rec.exec_time = csv::parse_double(t, i, c_exec);
    if (rec.energy < 0.0)
      throw InputError(t.where(i) + ": energy must be >= 0");
    if (rec.exec_time <= 0.0)
      throw InputError(t.where(i) + ": exec time must be > 0");
    if (!db.by_benchmark.emplace(bench, rec).second)
      throw InputError(t.where(i) + ": duplicate benchmark '" + bench + "'");
  }
  return db;
}

LatencyMatrix load_latency(const std::string& path) {
  auto t = csv::read_file(path);
  int c_from = t.require_column("from_region");
  int c_to = t.require_column("to_region");
  int c_sec = t.require_column("seconds");

  std::set<std::string> names;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    names.insert(t.cell(i, c_from));
    names.insert(t.cell(i, c_to));
  }
  std::vector<std::string> regions(names.begin(), names.end());
  std::size_t n = regions.size();
  auto index = [&](const std::string& r) {
    return static_cast<std::size_t>(
        std::lower_bound(regions.begin(), regions.end(), r) - regions.begin());
  };

  std::vector<double> seconds(n * n, -1.0);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    std::size_t f = index(t.cell(i, c_from));
    std::size_t to = index(t.cell(i, c_to));
    double v = csv::parse_double(t, i, c_sec);
    if (v < 0.0) throw InputError(t.where(i) + ": latency must be >= 0");
    if (f == to && v != 0.0)
      throw InputError(t.where(i) + ": same-region latency must be 0");
    if (seconds[f * n + to] >= 0.0)
      throw InputError(t.where(i) + ": duplicate pair " + t.cell(i, c_from) +
                       " -> " + t.cell(i, c_to));
    seconds[f * n + to] = v;
  }
  for (std::size_t f = 0; f < n; ++f)
    for (std::size_t to = 0; to < n; ++to)
      if (seconds[f * n + to] < 0.0)
        throw InputError(path + ": missing pair " + regions[f] + " -> " +
                         regions[to]);
  return LatencyMatrix(std::move(regions), std::move(seconds));
}

void write_env_series(const EnvMap& env, std::ostream& out) {
  out << "region,timestamp,carbon_intensity,ewif,wue,wsf,pue\n";
  for (const auto& [region, series] : env) {
    for (const auto& p : series.points) {
      out << region << ',' << p.timestamp << ','
          << csv::format_double(p.carbon_intensity) << ','
          << csv::format_double(p.ewif) << ',' << csv::format_double(p.wue)
          << ',' << csv::format_double(p.wsf) << ','
          << csv::format_double(p.pue) << '\n';
    }
  }
}

}  // namespace cwsched
