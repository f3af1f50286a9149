#pragma once

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <string>

namespace testutil {

// Unique scratch directory, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& hint = "case") {
    static std::atomic<int> counter{0};
    auto base = std::filesystem::temp_directory_path() / "cwsched_tests";
    path_ = base / (hint + "_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

// Two constant regions, one benchmark, three jobs; enough to drive the
// whole pipeline end to end.
inline void write_tiny_dataset(const TempDir& dir) {
  write_file(dir.file("env.csv"),
             "region,timestamp,carbon_intensity,ewif,wue,wsf,pue\n"
             "east,0,100,2,1,0.2,1.2\n"
             "east,3600,90,2,1,0.2,1.2\n"
             "west,0,200,1,2,0.4,1.2\n"
             "west,3600,180,1,2,0.4,1.2\n");
  write_file(dir.file("latency.csv"),
             "from_region,to_region,seconds\n"
             "east,east,0\n"
             "east,west,60\n"
             "west,east,60\n"
             "west,west,0\n");
  write_file(dir.file("profiles.csv"),
             "benchmark,energy_kwh,exec_seconds\n"
             "spin,0.5,1200\n");
  write_file(dir.file("trace.csv"),
             "job_id,arrival,home_region,benchmark\n"
             "a,0,east,spin\n"
             "b,300,west,spin\n"
             "c,600,east,spin\n");
  write_file(dir.file("config.ini"),
             "[paths]\n"
             "env = env.csv\n"
             "trace = trace.csv\n"
             "profiles = profiles.csv\n"
             "latency = latency.csv\n"
             "[scheduler]\n"
             "tolerance = 0.5\n"
             "[cluster]\n"
             "slots_per_region = 2\n"
             "capacity_scales = 1\n"
             "[run]\n"
             "policies = home,coopt\n"
             "tolerances = 0.25,0.5\n"
             "baseline = home\n"
             "out_dir = out\n");
}

}  // namespace testutil
