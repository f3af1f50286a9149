#include "core/config.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "core/csv.hpp"
#include "core/error.hpp"
#include "core/sim.hpp"

namespace cwsched {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw InputError("config value for '" + key + "' is not a number: '" + v + "'");
  return out;
}

long to_long(const std::string& key, const std::string& v) {
  long out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw InputError("config value for '" + key + "' is not an integer: '" + v + "'");
  return out;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> split_doubles(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& item : split_list(v)) out.push_back(to_double(key, item));
  return out;
}

std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += csv::format_double(v[i]);
  }
  return out;
}

std::string join_strings(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i];
  }
  return out;
}

std::string resolve_path(const std::string& base_dir, const std::string& p) {
  if (p.empty()) return p;
  std::filesystem::path fp(p);
  if (fp.is_absolute() || base_dir.empty()) return fp.lexically_normal().string();
  return (std::filesystem::path(base_dir) / fp).lexically_normal().string();
}

void apply(RunConfig& cfg, const std::string& key, const std::string& value,
           const std::string& base_dir) {
  if (key == "paths.env") cfg.env_path = resolve_path(base_dir, value);
  else if (key == "paths.mix") cfg.mix_path = resolve_path(base_dir, value);
  else if (key == "paths.sources") cfg.sources_path = resolve_path(base_dir, value);
  else if (key == "paths.trace") cfg.trace_path = resolve_path(base_dir, value);
  else if (key == "paths.profiles") cfg.profiles_path = resolve_path(base_dir, value);
  else if (key == "paths.latency") cfg.latency_path = resolve_path(base_dir, value);
  else if (key == "scheduler.carbon_weight") cfg.sched.carbon_weight = to_double(key, value);
  else if (key == "scheduler.water_weight") cfg.sched.water_weight = to_double(key, value);
  else if (key == "scheduler.history_weight") cfg.sched.history_weight = to_double(key, value);
  else if (key == "scheduler.history_window") cfg.sched.history_window = static_cast<int>(to_long(key, value));
  else if (key == "scheduler.tolerance") cfg.sched.tolerance = to_double(key, value);
  else if (key == "scheduler.penalty_weight") cfg.sched.penalty_weight = to_double(key, value);
  else if (key == "scheduler.round_interval") cfg.sched.round_interval = to_double(key, value);
  else if (key == "scheduler.tolerance_mode") {
    if (value == "effective") cfg.sched.tolerance_mode = ToleranceMode::effective;
    else if (value == "literal") cfg.sched.tolerance_mode = ToleranceMode::literal;
    else throw InputError("tolerance_mode must be 'effective' or 'literal'");
  }
  else if (key == "server.embodied_carbon_total") cfg.server.embodied_carbon_total = to_double(key, value);
  else if (key == "server.lifetime") cfg.server.lifetime = to_double(key, value);
  else if (key == "server.mfg_carbon_intensity") cfg.server.mfg_carbon_intensity = to_double(key, value);
  else if (key == "server.mfg_ewif") cfg.server.mfg_ewif = to_double(key, value);
  else if (key == "server.wsf_server") cfg.server.wsf_server = to_double(key, value);
  else if (key == "cluster.slots_per_region") cfg.slots_per_region = static_cast<int>(to_long(key, value));
  else if (key.rfind("cluster.slots.", 0) == 0) {
    std::string region = key.substr(std::string("cluster.slots.").size());
    if (region.empty()) throw InputError("empty region in '" + key + "'");
    cfg.slots_override[region] = static_cast<int>(to_long(key, value));
  }
  else if (key == "cluster.capacity_scales") cfg.capacity_scales = split_doubles(key, value);
  else if (key == "run.policies") cfg.policies = split_list(value);
  else if (key == "run.tolerances") cfg.tolerances = split_doubles(key, value);
  else if (key == "run.baseline") cfg.baseline = value;
  else if (key == "run.out_dir") cfg.out_dir = value;
  else if (key == "run.seed") cfg.seed = static_cast<unsigned>(to_long(key, value));
  else if (key == "run.energy_noise") cfg.energy_noise = to_double(key, value);
  else throw InputError("unknown config key '" + key + "'");
}

}  // namespace

void RunConfig::validate() const {
  sched.validate();
  if (env_path.empty()) throw InputError("config is missing paths.env");
  if (trace_path.empty()) throw InputError("config is missing paths.trace");
  if (profiles_path.empty()) throw InputError("config is missing paths.profiles");
  if (latency_path.empty()) throw InputError("config is missing paths.latency");
  if (!mix_path.empty() && sources_path.empty())
    throw InputError("paths.mix needs paths.sources");
  if (slots_per_region < 0) throw InputError("slots_per_region must be >= 0");
  for (const auto& [region, s] : slots_override)
    if (s < 0) throw InputError("slots for '" + region + "' must be >= 0");
  if (capacity_scales.empty()) throw InputError("capacity_scales is empty");
  for (double s : capacity_scales)
    if (s <= 0.0) throw InputError("capacity scales must be > 0");
  if (policies.empty()) throw InputError("policy list is empty");
  for (const auto& p : policies)
    if (!policy_from_name(p)) throw InputError("unknown policy '" + p + "'");
  if (tolerances.empty()) throw InputError("tolerance list is empty");
  for (double t : tolerances)
    if (t < 0.0) throw InputError("tolerances must be >= 0");
  if (server.lifetime <= 0.0) throw InputError("server lifetime must be > 0");
  if (energy_noise < 0.0 || energy_noise >= 1.0)
    throw InputError("energy_noise must be in [0,1)");
}

RunConfig config_parse(std::istream& in, const std::string& origin,
                       const std::string& base_dir) {
  RunConfig cfg;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw InputError(origin + ":" + std::to_string(lineno) +
                         ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError(origin + ":" + std::to_string(lineno) +
                       ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      throw InputError(origin + ":" + std::to_string(lineno) +
                       ": key outside any [section]");
    try {
      apply(cfg, section + "." + key, value, base_dir);
    } catch (const InputError& e) {
      throw InputError(origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

RunConfig config_load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file: " + path);
  std::string base_dir = std::filesystem::path(path).parent_path().string();
  return config_parse(in, path, base_dir);
}

void config_set(RunConfig& cfg, const std::string& dotted_key,
                const std::string& value) {
  apply(cfg, dotted_key, value, "");
}

std::string config_dump(const RunConfig& cfg) {
  std::ostringstream out;
  out << "[paths]\n";
  out << "env = " << cfg.env_path << "\n";
  if (!cfg.mix_path.empty()) out << "mix = " << cfg.mix_path << "\n";
  if (!cfg.sources_path.empty()) out << "sources = " << cfg.sources_path << "\n";
  out << "trace = " << cfg.trace_path << "\n";
  out << "profiles = " << cfg.profiles_path << "\n";
  out << "latency = " << cfg.latency_path << "\n";
  out << "\n[scheduler]\n";
  out << "carbon_weight = " << csv::format_double(cfg.sched.carbon_weight) << "\n";
  out << "water_weight = " << csv::format_double(cfg.sched.water_weight) << "\n";
  out << "history_weight = " << csv::format_double(cfg.sched.history_weight) << "\n";
  out << "history_window = " << cfg.sched.history_window << "\n";
  out << "tolerance = " << csv::format_double(cfg.sched.tolerance) << "\n";
  out << "penalty_weight = " << csv::format_double(cfg.sched.penalty_weight) << "\n";
  out << "round_interval = " << csv::format_double(cfg.sched.round_interval) << "\n";
  out << "tolerance_mode = "
      << (cfg.sched.tolerance_mode == ToleranceMode::effective ? "effective"
                                                               : "literal")
      << "\n";
  out << "\n[server]\n";
  out << "embodied_carbon_total = "
      << csv::format_double(cfg.server.embodied_carbon_total) << "\n";
  out << "lifetime = " << csv::format_double(cfg.server.lifetime) << "\n";
  out << "mfg_carbon_intensity = "
      << csv::format_double(cfg.server.mfg_carbon_intensity) << "\n";
  out << "mfg_ewif = " << csv::format_double(cfg.server.mfg_ewif) << "\n";
  out << "wsf_server = " << csv::format_double(cfg.server.wsf_server) << "\n";
  out << "\n[cluster]\n";
  out << "slots_per_region = " << cfg.slots_per_region << "\n";
  for (const auto& [region, s] : cfg.slots_override)
    out << "slots." << region << " = " << s << "\n";
  out << "capacity_scales = " << join_doubles(cfg.capacity_scales) << "\n";
  out << "\n[run]\n";
  out << "policies = " << join_strings(cfg.policies) << "\n";
  out << "tolerances = " << join_doubles(cfg.tolerances) << "\n";
  out << "baseline = " << cfg.baseline << "\n";
  out << "out_dir = " << cfg.out_dir << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "energy_noise = " << csv::format_double(cfg.energy_noise) << "\n";
  return out.str();
}

}  // namespace cwsched
