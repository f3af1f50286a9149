// Generates the bundled sample dataset: five regions with daily carbon and
// water cycles (water lagging carbon by a quarter day), a Poisson job trace,
// benchmark profiles and a latency matrix. Deterministic; rerunning
// reproduces the committed files byte for byte.
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

namespace {

constexpr double kDay = 86400.0;
constexpr std::int64_t kEnvStepS = 3600;
constexpr int kEnvDays = 12;
constexpr double kTraceDays = 10.0;
constexpr double kMeanInterarrivalS = 450.0;
constexpr unsigned kTraceSeed = 7;
constexpr unsigned kJitterSeed = 11;
constexpr double kJitter = 0.02;  // relative wiggle on env samples

struct Region {
  const char* name;
  double ci_base, ci_amp;      // gCO2/kWh
  double ewif_base, ewif_amp;  // L/kWh
  double wue_base, wue_amp;    // L/kWh
  double wsf;
  double trace_weight;         // share of jobs homed here
};

// Cross-region averages are deliberately in tension: the cleanest grids pair
// with scarce water and vice versa, while the daily swings rotate which
// region currently looks best.
const Region kRegions[] = {
    {"madrid", 330, 180, 3.4, 1.7, 2.2, 1.1, 0.50, 0.26},
    {"milan",  290, 150, 4.0, 2.1, 1.7, 0.8, 0.25, 0.18},
    {"mumbai", 380, 200, 2.4, 1.2, 2.5, 1.3, 0.45, 0.22},
    {"oregon", 260, 130, 2.9, 1.5, 1.4, 0.7, 0.35, 0.20},
    {"zurich", 200, 110, 5.0, 2.6, 1.1, 0.5, 0.15, 0.14},
};
constexpr int kNumRegions = 5;

// Symmetric transfer latencies, seconds.
const double kLatency[kNumRegions][kNumRegions] = {
    {0, 25, 140, 130, 30},
    {25, 0, 120, 140, 20},
    {140, 120, 0, 190, 110},
    {130, 140, 190, 0, 135},
    {30, 20, 110, 135, 0},
};

struct Benchmark {
  const char* name;
  double energy_kwh;
  double exec_s;
};

const Benchmark kBenchmarks[] = {
    {"dedup", 0.28, 2100},          {"netdedup", 0.35, 2400},
    {"swaptions", 0.36, 2700},      {"blackscholes", 0.42, 3300},
    {"datacaching", 0.50, 3600},    {"webserving", 0.55, 3900},
    {"canneal", 0.60, 4500},        {"mediastreaming", 0.65, 4800},
    {"memoryanalytics", 0.80, 5400},{"graphanalytics", 0.95, 6300},
};

std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

void write_env(const std::string& dir) {
  std::ofstream out(dir + "/env.csv");
  out << "region,timestamp,carbon_intensity,ewif,wue,wsf,pue\n";
  std::mt19937 rng(kJitterSeed);
  std::uniform_real_distribution<double> wiggle(-kJitter, kJitter);
  for (int r = 0; r < kNumRegions; ++r) {
    const Region& reg = kRegions[r];
    double phase = 2.0 * M_PI * r / kNumRegions;
    for (std::int64_t ts = 0; ts < kEnvDays * 86400; ts += kEnvStepS) {
      double theta = 2.0 * M_PI * static_cast<double>(ts) / kDay - phase;
      // Carbon dips mid-cycle; the water signals dip a quarter day later.
      double s1 = 0.85 * std::sin(theta) + 0.15 * std::sin(2.0 * theta - 1.3 * phase);
      double s2 = 0.85 * std::sin(theta - M_PI / 2.0) +
                  0.15 * std::sin(2.0 * theta - 0.7 * phase);
      double ci = reg.ci_base - reg.ci_amp * s1;
      double ewif = reg.ewif_base - reg.ewif_amp * s2;
      double wue = reg.wue_base - reg.wue_amp * s2;
      ci *= 1.0 + wiggle(rng);
      ewif *= 1.0 + wiggle(rng);
      wue *= 1.0 + wiggle(rng);
      ci = std::max(20.0, round3(ci));
      ewif = std::max(0.3, round3(ewif));
      wue = std::max(0.1, round3(wue));
      out << reg.name << ',' << ts << ',' << fmt(ci) << ',' << fmt(ewif) << ','
          << fmt(wue) << ',' << fmt(reg.wsf) << ",1.2\n";
    }
  }
}

void write_latency(const std::string& dir) {
  std::ofstream out(dir + "/latency.csv");
  out << "from_region,to_region,seconds\n";
  for (int f = 0; f < kNumRegions; ++f)
    for (int t = 0; t < kNumRegions; ++t)
      out << kRegions[f].name << ',' << kRegions[t].name << ','
          << fmt(kLatency[f][t]) << '\n';
}

void write_profiles(const std::string& dir) {
  std::ofstream out(dir + "/profiles.csv");
  out << "benchmark,energy_kwh,exec_seconds\n";
  for (const Benchmark& b : kBenchmarks)
    out << b.name << ',' << fmt(b.energy_kwh) << ',' << fmt(b.exec_s) << '\n';
}

void write_trace(const std::string& dir) {
  std::ofstream out(dir + "/trace.csv");
  out << "job_id,arrival,home_region,benchmark\n";
  std::mt19937 rng(kTraceSeed);
  std::exponential_distribution<double> gap(1.0 / kMeanInterarrivalS);
  std::discrete_distribution<int> home({kRegions[0].trace_weight,
                                        kRegions[1].trace_weight,
                                        kRegions[2].trace_weight,
                                        kRegions[3].trace_weight,
                                        kRegions[4].trace_weight});
  std::uniform_int_distribution<int> bench(
      0, static_cast<int>(std::size(kBenchmarks)) - 1);
  double t = 0.0;
  int id = 0;
  while (true) {
    t += gap(rng);
    if (t >= kTraceDays * kDay) break;
    ++id;
    char name[16];
    std::snprintf(name, sizeof name, "j%05d", id);
    out << name << ',' << fmt(std::round(t)) << ',' << kRegions[home(rng)].name
        << ',' << kBenchmarks[bench(rng)].name << '\n';
  }
  std::cout << "trace jobs: " << id << "\n";
}

void write_config(const std::string& dir) {
  std::ofstream out(dir + "/config.ini");
  out << "# Sample experiment: five regions, ten days of jobs.\n"
         "[paths]\n"
         "env = env.csv\n"
         "trace = trace.csv\n"
         "profiles = profiles.csv\n"
         "latency = latency.csv\n"
         "\n"
         "[scheduler]\n"
         "carbon_weight = 0.5\n"
         "water_weight = 0.5\n"
         "history_weight = 0.1\n"
         "history_window = 10\n"
         "tolerance = 0.5\n"
         "penalty_weight = 10\n"
         "round_interval = 300\n"
         "tolerance_mode = effective\n"
         "\n"
         "[server]\n"
         "embodied_carbon_total = 11000000\n"
         "lifetime = 126144000\n"
         "mfg_carbon_intensity = 600\n"
         "mfg_ewif = 7.5\n"
         "wsf_server = 0.4\n"
         "\n"
         "[cluster]\n"
         "slots_per_region = 12\n"
         "# capacity scales emulate roughly 5%, 15% and 25% cluster load\n"
         "capacity_scales = 3,1,0.6\n"
         "\n"
         "[run]\n"
         "policies = home,round_robin,least_load,coopt,carbon_greedy,water_greedy\n"
         "tolerances = 0.25,0.5,0.75,1\n"
         "baseline = home\n"
         "out_dir = out\n"
         "seed = 0\n"
         "energy_noise = 0\n";
}

}  // namespace

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : "data";
  std::filesystem::create_directories(dir);
  write_env(dir);
  write_latency(dir);
  write_profiles(dir);
  write_trace(dir);
  write_config(dir);
  std::cout << "dataset written to " << dir << "\n";
  return 0;
}
