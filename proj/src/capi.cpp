#include "cwsched/cwsched.h"

#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/error.hpp"
#include "core/experiment.hpp"

using cwsched::InputError;
using cwsched::RunConfig;
using cwsched::RunError;

struct cws_config {
  RunConfig cfg;
};

namespace {

void set_err(char* err, size_t cap, const char* msg) {
  if (!err || cap == 0) return;
  std::strncpy(err, msg, cap - 1);
  err[cap - 1] = '\0';
}

template <typename Fn>
int guarded(char* err, size_t cap, Fn&& fn) {
  try {
    fn();
    return CWS_OK;
  } catch (const InputError& e) {
    set_err(err, cap, e.what());
    return CWS_ERR_INPUT;
  } catch (const std::exception& e) {
    set_err(err, cap, e.what());
    return CWS_ERR_RUN;
  }
}

}  // namespace

extern "C" {

const char* cws_version(void) { return "0.1.0"; }

cws_config* cws_config_new(void) { return new (std::nothrow) cws_config{}; }

cws_config* cws_config_load(const char* path, char* err, size_t err_cap) {
  if (!path) {
    set_err(err, err_cap, "config path is null");
    return nullptr;
  }
  cws_config* out = nullptr;
  int rc = guarded(err, err_cap, [&] {
    auto cfg = cwsched::config_load(path);
    out = new cws_config{std::move(cfg)};
  });
  return rc == CWS_OK ? out : nullptr;
}

int cws_config_set(cws_config* cfg, const char* key, const char* value,
                   char* err, size_t err_cap) {
  if (!cfg || !key || !value) {
    set_err(err, err_cap, "null argument");
    return CWS_ERR_INPUT;
  }
  return guarded(err, err_cap, [&] { cwsched::config_set(cfg->cfg, key, value); });
}

char* cws_config_dump(const cws_config* cfg) {
  if (!cfg) return nullptr;
  std::string s = cwsched::config_dump(cfg->cfg);
  char* out = new (std::nothrow) char[s.size() + 1];
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void cws_config_free(cws_config* cfg) { delete cfg; }

void cws_free(char* s) { delete[] s; }

int cws_run(const cws_config* cfg, const char* out_dir, char* err,
            size_t err_cap) {
  if (!cfg) {
    set_err(err, err_cap, "null argument");
    return CWS_ERR_INPUT;
  }
  return guarded(err, err_cap, [&] {
    cwsched::cmd_run(cfg->cfg, out_dir ? out_dir : cfg->cfg.out_dir.c_str());
  });
}

int cws_sweep(const cws_config* cfg, const char* out_dir, char* err,
              size_t err_cap) {
  if (!cfg) {
    set_err(err, err_cap, "null argument");
    return CWS_ERR_INPUT;
  }
  return guarded(err, err_cap, [&] {
    cwsched::cmd_sweep(cfg->cfg, out_dir ? out_dir : cfg->cfg.out_dir.c_str());
  });
}

int cws_plotdata(const char* const* metrics_paths, size_t count,
                 const char* out_path, char* err, size_t err_cap) {
  if ((count > 0 && !metrics_paths) || !out_path) {
    set_err(err, err_cap, "null argument");
    return CWS_ERR_INPUT;
  }
  return guarded(err, err_cap, [&] {
    std::vector<std::string> paths;
    paths.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      if (!metrics_paths[i]) throw InputError("null metrics path");
      paths.emplace_back(metrics_paths[i]);
    }
    cwsched::cmd_plotdata(paths, out_path);
  });
}

}  // extern "C"
