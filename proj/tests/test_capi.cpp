#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>
#include <filesystem>
#include <string>

#include "cwsched/cwsched.h"
#include "doctest.h"
#include "test_util.hpp"

namespace fs = std::filesystem;

namespace {

struct ConfigHandle {
  cws_config* p = nullptr;
  ~ConfigHandle() { cws_config_free(p); }
};

std::string dump(const cws_config* cfg) {
  char* s = cws_config_dump(cfg);
  REQUIRE(s != nullptr);
  std::string out(s);
  cws_free(s);
  return out;
}

}  // namespace

TEST_CASE("version string is present") {
  const char* v = cws_version();
  REQUIRE(v != nullptr);
  CHECK(std::strlen(v) > 0);
}

TEST_CASE("a fresh config dumps its defaults") {
  ConfigHandle h{cws_config_new()};
  REQUIRE(h.p != nullptr);
  std::string text = dump(h.p);
  CHECK(text.find("tolerance = 0.5") != std::string::npos);
  CHECK(text.find("baseline = home") != std::string::npos);
  CHECK(text.find("[scheduler]") != std::string::npos);
}

TEST_CASE("loading a missing config reports an input error") {
  char err[256] = {0};
  cws_config* cfg = cws_config_load("/no/such/file.ini", err, sizeof err);
  CHECK(cfg == nullptr);
  CHECK(std::strlen(err) > 0);
}

TEST_CASE("set accepts known keys and rejects unknown ones") {
  ConfigHandle h{cws_config_new()};
  char err[256] = {0};
  CHECK(cws_config_set(h.p, "scheduler.tolerance", "0.75", err, sizeof err) ==
        CWS_OK);
  CHECK(dump(h.p).find("tolerance = 0.75") != std::string::npos);
  CHECK(cws_config_set(h.p, "bogus.key", "1", err, sizeof err) ==
        CWS_ERR_INPUT);
  CHECK(std::strlen(err) > 0);
  CHECK(cws_config_set(nullptr, "a", "b", err, sizeof err) == CWS_ERR_INPUT);
}

TEST_CASE("error messages are truncated safely into small buffers") {
  ConfigHandle h{cws_config_new()};
  char err[8];
  std::memset(err, 'x', sizeof err);
  CHECK(cws_config_set(h.p, "bogus.key", "1", err, sizeof err) ==
        CWS_ERR_INPUT);
  CHECK(err[7] == '\0');
  CHECK(std::strlen(err) <= 7);
}

TEST_CASE("run produces the expected files in the output directory") {
  testutil::TempDir dir("capi_run");
  testutil::write_tiny_dataset(dir);
  char err[512] = {0};
  ConfigHandle h{cws_config_load(dir.file("config.ini").c_str(), err, sizeof err)};
  REQUIRE_MESSAGE(h.p != nullptr, err);

  std::string out_dir = dir.file("results");
  REQUIRE_MESSAGE(cws_run(h.p, out_dir.c_str(), err, sizeof err) == CWS_OK, err);
  CHECK(fs::exists(fs::path(out_dir) / "metrics.csv"));
  CHECK(fs::exists(fs::path(out_dir) / "outcomes_home.csv"));
  CHECK(fs::exists(fs::path(out_dir) / "outcomes_coopt.csv"));
  CHECK(fs::exists(fs::path(out_dir) / "overhead.csv"));
  CHECK(fs::exists(fs::path(out_dir) / "config.resolved.ini"));

  std::string metrics =
      testutil::read_file((fs::path(out_dir) / "metrics.csv").string());
  CHECK(metrics.find("policy,tolerance,capacity_scale") != std::string::npos);
  CHECK(metrics.find("home") != std::string::npos);
  CHECK(metrics.find("coopt") != std::string::npos);
}

TEST_CASE("a null out_dir falls back to the configured one") {
  testutil::TempDir dir("capi_nullout");
  testutil::write_tiny_dataset(dir);
  char err[512] = {0};
  ConfigHandle h{cws_config_load(dir.file("config.ini").c_str(), err, sizeof err)};
  REQUIRE_MESSAGE(h.p != nullptr, err);
  std::string out_dir = dir.file("from_config");
  REQUIRE(cws_config_set(h.p, "run.out_dir", out_dir.c_str(), err, sizeof err) ==
          CWS_OK);
  REQUIRE_MESSAGE(cws_run(h.p, nullptr, err, sizeof err) == CWS_OK, err);
  CHECK(fs::exists(fs::path(out_dir) / "metrics.csv"));
}

TEST_CASE("running with a broken input path is an input error") {
  testutil::TempDir dir("capi_broken");
  testutil::write_tiny_dataset(dir);
  char err[512] = {0};
  ConfigHandle h{cws_config_load(dir.file("config.ini").c_str(), err, sizeof err)};
  REQUIRE(h.p != nullptr);
  REQUIRE(cws_config_set(h.p, "paths.env", dir.file("gone.csv").c_str(), err,
                         sizeof err) == CWS_OK);
  CHECK(cws_run(h.p, dir.file("o").c_str(), err, sizeof err) == CWS_ERR_INPUT);
  CHECK(std::strlen(err) > 0);
}

TEST_CASE("sweep covers the tolerance grid") {
  testutil::TempDir dir("capi_sweep");
  testutil::write_tiny_dataset(dir);
  char err[512] = {0};
  ConfigHandle h{cws_config_load(dir.file("config.ini").c_str(), err, sizeof err)};
  REQUIRE(h.p != nullptr);
  std::string out_dir = dir.file("sweep");
  REQUIRE_MESSAGE(cws_sweep(h.p, out_dir.c_str(), err, sizeof err) == CWS_OK, err);
  CHECK(fs::exists(fs::path(out_dir) / "metrics.csv"));
  // Two tolerances x one scale x two policies.
  CHECK(fs::exists(fs::path(out_dir) / "outcomes_home_tol0.25_cap1.csv"));
  CHECK(fs::exists(fs::path(out_dir) / "outcomes_coopt_tol0.5_cap1.csv"));
}

TEST_CASE("plotdata pivots metrics into a series file") {
  testutil::TempDir dir("capi_plot");
  testutil::write_tiny_dataset(dir);
  char err[512] = {0};
  ConfigHandle h{cws_config_load(dir.file("config.ini").c_str(), err, sizeof err)};
  REQUIRE(h.p != nullptr);
  std::string out_dir = dir.file("results");
  REQUIRE(cws_run(h.p, out_dir.c_str(), err, sizeof err) == CWS_OK);

  std::string metrics = (fs::path(out_dir) / "metrics.csv").string();
  std::string series = (fs::path(out_dir) / "series.csv").string();
  const char* paths[] = {metrics.c_str()};
  REQUIRE_MESSAGE(cws_plotdata(paths, 1, series.c_str(), err, sizeof err) ==
                      CWS_OK,
                  err);
  std::string text = testutil::read_file(series);
  CHECK(text.find("policy,tolerance,capacity_scale,carbon_savings_pct,"
                  "water_savings_pct") != std::string::npos);
  CHECK(text.find("coopt") != std::string::npos);

  CHECK(cws_plotdata(paths, 1, nullptr, err, sizeof err) == CWS_ERR_INPUT);
  const char* bad[] = {"/no/such/metrics.csv"};
  CHECK(cws_plotdata(bad, 1, series.c_str(), err, sizeof err) == CWS_ERR_INPUT);
}
