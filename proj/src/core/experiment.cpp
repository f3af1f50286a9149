#include "core/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <thread>

#include "core/csv.hpp"
#include "core/error.hpp"

namespace cwsched {

namespace {

std::string opt_pct(const std::optional<double>& v) {
  return v ? csv::format_double(*v) : "na";
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write file: " + path);
  return out;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace

LoadedData load_data(const RunConfig& cfg) {
  LoadedData d;
  if (!cfg.mix_path.empty()) {
    MixTable mix = load_mix(cfg.mix_path, cfg.sources_path);
    d.env = load_env_series(cfg.env_path, &mix);
  } else {
    d.env = load_env_series(cfg.env_path);
  }
  d.trace = load_trace(cfg.trace_path);
  d.profiles = load_profiles(cfg.profiles_path);
  d.latency = load_latency(cfg.latency_path);
  return d;
}

std::vector<int> scaled_slots(const RunConfig& cfg, const LatencyMatrix& latency,
                              double scale) {
  std::vector<int> slots;
  slots.reserve(latency.regions().size());
  for (const std::string& region : latency.regions()) {
    auto it = cfg.slots_override.find(region);
    int base = it != cfg.slots_override.end() ? it->second : cfg.slots_per_region;
    slots.push_back(static_cast<int>(std::llround(base * scale)));
  }
  return slots;
}

RunOutput run_cell(const LoadedData& data, const RunConfig& cfg,
                   const std::string& policy, double tolerance, double scale) {
  auto p = policy_from_name(policy);
  if (!p) throw InputError("unknown policy '" + policy + "'");
  RunInputs in;
  in.trace = &data.trace;
  in.env = &data.env;
  in.latency = &data.latency;
  in.profiles = &data.profiles;
  in.server = cfg.server;
  in.sched = cfg.sched;
  in.sched.tolerance = tolerance;
  in.slots = scaled_slots(cfg, data.latency, scale);
  in.energy_noise = cfg.energy_noise;
  in.seed = cfg.seed;
  return run(in, *p);
}

void write_outcomes_csv(const std::vector<JobOutcome>& outcomes,
                        const std::string& path) {
  auto out = open_out(path);
  out << "job_id,region,received_at,start_exec,finish,service_time,exec_time,"
         "transfer,carbon_g,water_l,violated\n";
  for (const JobOutcome& o : outcomes) {
    out << o.job_id << ',' << o.region << ','
        << csv::format_double(o.received_at) << ','
        << csv::format_double(o.start_exec) << ','
        << csv::format_double(o.finish) << ','
        << csv::format_double(o.service_time) << ','
        << csv::format_double(o.exec_time) << ','
        << csv::format_double(o.transfer) << ','
        << csv::format_double(o.carbon) << ',' << csv::format_double(o.water)
        << ',' << (o.violated ? 1 : 0) << '\n';
  }
}

void write_metrics_csv(const std::vector<CellResult>& cells,
                       const std::string& baseline, const std::string& path) {
  // Savings are relative to the baseline policy of the same
  // (tolerance, capacity_scale) group.
  std::vector<RunMetrics> rows;
  rows.reserve(cells.size());
  for (const CellResult& c : cells) rows.push_back(c.output.metrics);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].policy != baseline) continue;
    double base_c = rows[i].total_carbon, base_w = rows[i].total_water;
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (cells[j].tolerance != cells[i].tolerance ||
          cells[j].capacity_scale != cells[i].capacity_scale)
        continue;
      if (base_c != 0.0)
        rows[j].carbon_savings_pct = 100.0 * (1.0 - rows[j].total_carbon / base_c);
      if (base_w != 0.0)
        rows[j].water_savings_pct = 100.0 * (1.0 - rows[j].total_water / base_w);
    }
  }

  auto out = open_out(path);
  out << "policy,tolerance,capacity_scale,jobs,rounds,total_carbon_g,"
         "total_water_l,mean_norm_service_time,violation_fraction,"
         "relaxed_rounds,total_penalty,hard_penalty,carbon_savings_pct,"
         "water_savings_pct\n";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const CellResult& c = cells[i];
    const RunMetrics& m = rows[i];
    out << c.policy << ',' << csv::format_double(c.tolerance) << ','
        << csv::format_double(c.capacity_scale) << ',' << m.jobs << ','
        << m.rounds << ',' << csv::format_double(m.total_carbon) << ','
        << csv::format_double(m.total_water) << ','
        << csv::format_double(m.mean_norm_service) << ','
        << csv::format_double(m.violation_fraction) << ',' << m.relaxed_rounds
        << ',' << csv::format_double(m.total_penalty) << ','
        << csv::format_double(m.hard_penalty) << ',' << opt_pct(m.carbon_savings_pct)
        << ',' << opt_pct(m.water_savings_pct) << '\n';
  }
}

void write_overhead_csv(const std::vector<CellResult>& cells,
                        const std::string& path) {
  // Wall-clock decision times live here and only here; the outcome and
  // metrics files stay bit-reproducible.
  auto out = open_out(path);
  out << "policy,tolerance,capacity_scale,rounds_timed,decision_ms_median,"
         "decision_ms_mean,decision_ms_max\n";
  for (const CellResult& c : cells) {
    const auto& t = c.output.metrics.round_decision_ms;
    double mean = 0.0, mx = 0.0;
    for (double v : t) {
      mean += v;
      mx = std::max(mx, v);
    }
    if (!t.empty()) mean /= static_cast<double>(t.size());
    out << c.policy << ',' << csv::format_double(c.tolerance) << ','
        << csv::format_double(c.capacity_scale) << ',' << t.size() << ','
        << csv::format_double(median(t)) << ',' << csv::format_double(mean)
        << ',' << csv::format_double(mx) << '\n';
  }
}

namespace {

struct CellSpec {
  std::string policy;
  double tolerance;
  double scale;
  std::string outcomes_name;
};

std::vector<CellResult> run_cells(const RunConfig& cfg,
                                  const std::vector<CellSpec>& specs,
                                  const std::string& out_dir) {
  LoadedData data = load_data(cfg);
  std::vector<CellResult> results(specs.size());
  std::vector<std::exception_ptr> errors(specs.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= specs.size()) break;
      try {
        results[i].policy = specs[i].policy;
        results[i].tolerance = specs[i].tolerance;
        results[i].capacity_scale = specs[i].scale;
        results[i].output = run_cell(data, cfg, specs[i].policy,
                                     specs[i].tolerance, specs[i].scale);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  std::size_t workers = std::min<std::size_t>(hw, specs.size());
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::filesystem::create_directories(out_dir);
  for (std::size_t i = 0; i < specs.size(); ++i)
    write_outcomes_csv(results[i].output.outcomes,
                       out_dir + "/" + specs[i].outcomes_name);
  return results;
}

void write_common(const RunConfig& cfg, const std::vector<CellResult>& cells,
                  const std::string& out_dir) {
  write_metrics_csv(cells, cfg.baseline, out_dir + "/metrics.csv");
  write_overhead_csv(cells, out_dir + "/overhead.csv");
  auto out = open_out(out_dir + "/config.resolved.ini");
  out << config_dump(cfg);
}

}  // namespace

void cmd_run(const RunConfig& cfg, const std::string& out_dir) {
  cfg.validate();
  std::vector<CellSpec> specs;
  for (const std::string& p : cfg.policies)
    specs.push_back({p, cfg.sched.tolerance, 1.0, "outcomes_" + p + ".csv"});
  auto cells = run_cells(cfg, specs, out_dir);
  write_common(cfg, cells, out_dir);
}

void cmd_sweep(const RunConfig& cfg, const std::string& out_dir) {
  cfg.validate();
  std::vector<CellSpec> specs;
  for (double tol : cfg.tolerances)
    for (double scale : cfg.capacity_scales)
      for (const std::string& p : cfg.policies)
        specs.push_back({p, tol, scale,
                         "outcomes_" + p + "_tol" + csv::format_double(tol) +
                             "_cap" + csv::format_double(scale) + ".csv"});
  auto cells = run_cells(cfg, specs, out_dir);
  write_common(cfg, cells, out_dir);
}

void cmd_plotdata(const std::vector<std::string>& metrics_paths,
                  const std::string& out_path) {
  struct Row {
    std::string policy;
    double tolerance;
    double scale;
    std::string carbon, water;
  };
  std::vector<Row> rows;
  for (const std::string& path : metrics_paths) {
    auto t = csv::read_file(path);
    int c_policy = t.require_column("policy");
    int c_tol = t.require_column("tolerance");
    int c_scale = t.require_column("capacity_scale");
    int c_cs = t.require_column("carbon_savings_pct");
    int c_ws = t.require_column("water_savings_pct");
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      Row r;
      r.policy = t.cell(i, c_policy);
      r.tolerance = csv::parse_double(t, i, c_tol);
      r.scale = csv::parse_double(t, i, c_scale);
      r.carbon = t.cell(i, c_cs);
      r.water = t.cell(i, c_ws);
      if (r.carbon == "na" || r.water == "na") continue;
      // Verify the savings cells are numeric before emitting them.
      csv::parse_double(t, i, c_cs);
      csv::parse_double(t, i, c_ws);
      rows.push_back(std::move(r));
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.policy != b.policy) return a.policy < b.policy;
    if (a.tolerance != b.tolerance) return a.tolerance < b.tolerance;
    return a.scale < b.scale;
  });
  std::filesystem::path parent = std::filesystem::path(out_path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  auto out = open_out(out_path);
  out << "policy,tolerance,capacity_scale,carbon_savings_pct,water_savings_pct\n";
  for (const Row& r : rows)
    out << r.policy << ',' << csv::format_double(r.tolerance) << ','
        << csv::format_double(r.scale) << ',' << r.carbon << ',' << r.water
        << '\n';
}

}  // namespace cwsched
