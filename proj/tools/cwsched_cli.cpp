// Command-line driver for the carbon/water-aware scheduling simulator.
// Talks to the library exclusively through the C interface.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cwsched/cwsched.h"

namespace {

constexpr size_t kErrCap = 1024;

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i];
  }
  return out;
}

std::string join(const std::vector<double>& v) {
  std::ostringstream out;
  out.precision(17);
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out << ",";
    out << v[i];
  }
  return out.str();
}

struct ConfigHandle {
  cws_config* ptr = nullptr;
  ~ConfigHandle() { cws_config_free(ptr); }
};

int fail(const char* err) {
  std::cerr << "error: " << err << "\n";
  return CWS_ERR_INPUT;
}

// Applies shared flag overrides onto a loaded config.
int apply_overrides(cws_config* cfg, const std::vector<std::string>& policies,
                    const std::vector<double>& tolerances, bool seed_set,
                    unsigned seed) {
  char err[kErrCap];
  if (!policies.empty() &&
      cws_config_set(cfg, "run.policies", join(policies).c_str(), err, kErrCap))
    return fail(err);
  if (!tolerances.empty()) {
    if (cws_config_set(cfg, "run.tolerances", join(tolerances).c_str(), err,
                       kErrCap))
      return fail(err);
    // A single tolerance also pins the non-sweep runs.
    std::ostringstream first;
    first.precision(17);
    first << tolerances.front();
    if (cws_config_set(cfg, "scheduler.tolerance", first.str().c_str(), err,
                       kErrCap))
      return fail(err);
  }
  if (seed_set &&
      cws_config_set(cfg, "run.seed", std::to_string(seed).c_str(), err, kErrCap))
    return fail(err);
  return CWS_OK;
}

// Prints the interesting metrics.csv columns as an aligned table.
void print_metrics_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) return;
  const std::vector<std::string> want = {
      "policy",          "tolerance",          "capacity_scale",
      "total_carbon_g",  "total_water_l",      "violation_fraction",
      "carbon_savings_pct", "water_savings_pct"};
  std::vector<std::vector<std::string>> table;
  std::string line;
  std::vector<int> pick;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (pick.empty()) {
      for (const auto& name : want)
        for (size_t i = 0; i < cells.size(); ++i)
          if (cells[i] == name) pick.push_back(static_cast<int>(i));
      table.push_back(want);
      continue;
    }
    std::vector<std::string> row;
    for (int i : pick) row.push_back(i < static_cast<int>(cells.size()) ? cells[i] : "");
    table.push_back(std::move(row));
  }
  if (table.size() < 2) return;
  std::vector<size_t> width(table[0].size(), 0);
  for (const auto& row : table)
    for (size_t i = 0; i < row.size(); ++i)
      width[i] = std::max(width[i], row[i].size());
  for (const auto& row : table) {
    std::string out;
    for (size_t i = 0; i < row.size(); ++i) {
      out += row[i];
      out.append(width[i] - row[i].size() + 2, ' ');
    }
    std::cout << out << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trace-driven scheduling simulator that places batch jobs "
               "across regions to cut carbon and water footprint"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::vector<std::string> policies;
  std::vector<double> tolerances;
  unsigned seed = 0;
  bool seed_set = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "Config file (.ini)")
        ->required();
    cmd->add_option("--out", out_dir, "Output directory (default: config's run.out_dir)");
    cmd->add_option("--policy", policies, "Policies to run (overrides config)");
    cmd->add_option("--tolerance", tolerances, "Tolerances to run (overrides config)");
    cmd->add_option("--seed", seed, "Noise seed (overrides config)")
        ->each([&](const std::string&) { seed_set = true; });
  };

  CLI::App* cmd_run = app.add_subcommand(
      "run", "Run each policy once at the configured tolerance");
  add_common(cmd_run);
  CLI::App* cmd_sweep = app.add_subcommand(
      "sweep", "Run the policy x tolerance x capacity grid");
  add_common(cmd_sweep);

  CLI::App* cmd_plot = app.add_subcommand(
      "plotdata", "Pivot metrics.csv files into plot-ready series.csv");
  std::vector<std::string> metrics_files;
  std::string plot_out = "out";
  cmd_plot->add_option("metrics", metrics_files, "metrics.csv files to pivot")
      ->required();
  cmd_plot->add_option("--out", plot_out, "Output directory for series.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : CWS_ERR_INPUT;
  }

  char err[kErrCap];

  if (cmd_plot->parsed()) {
    std::vector<const char*> paths;
    paths.reserve(metrics_files.size());
    for (const auto& p : metrics_files) paths.push_back(p.c_str());
    std::string out_path = plot_out + "/series.csv";
    int rc = cws_plotdata(paths.data(), paths.size(), out_path.c_str(), err,
                          kErrCap);
    if (rc != CWS_OK) return fail(err);
    std::cout << "wrote " << out_path << "\n";
    return CWS_OK;
  }

  ConfigHandle cfg;
  cfg.ptr = cws_config_load(config_path.c_str(), err, kErrCap);
  if (!cfg.ptr) return fail(err);
  if (int rc = apply_overrides(cfg.ptr, policies, tolerances, seed_set, seed))
    return rc;

  const char* out_arg = out_dir.empty() ? nullptr : out_dir.c_str();
  int rc = cmd_run->parsed() ? cws_run(cfg.ptr, out_arg, err, kErrCap)
                             : cws_sweep(cfg.ptr, out_arg, err, kErrCap);
  if (rc != CWS_OK) {
    std::cerr << "error: " << err << "\n";
    return rc;
  }

  std::string effective_out = out_dir;
  if (effective_out.empty()) {
    // Mirror the library's fallback for the status message.
    char* dump = cws_config_dump(cfg.ptr);
    if (dump) {
      std::istringstream ss(dump);
      std::string line;
      while (std::getline(ss, line))
        if (line.rfind("out_dir = ", 0) == 0) effective_out = line.substr(10);
      cws_free(dump);
    }
  }
  std::cout << "wrote " << effective_out << "/metrics.csv\n";
  print_metrics_table(effective_out + "/metrics.csv");
  return CWS_OK;
}
