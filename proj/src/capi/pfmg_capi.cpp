#include "pfmg/pfmg.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "json.hpp"

#include "core/config.hpp"
#include "core/errors.hpp"
#include "core/pipelines.hpp"
#include "core/registry.hpp"
#include "core/version.hpp"

struct pfmg_config {
  pfmg::RunConfig cfg;
};

namespace {

thread_local std::string t_last_error;
thread_local int t_last_code = PFMG_OK;

template <typename F>
int guarded(F&& fn) {
  try {
    fn();
    t_last_error.clear();
    t_last_code = PFMG_OK;
    return PFMG_OK;
  } catch (const pfmg::Error& e) {
    t_last_error = e.what();
    t_last_code = static_cast<int>(e.code());
  } catch (const std::exception& e) {
    t_last_error = e.what();
    t_last_code = PFMG_ERR_INTERNAL;
  } catch (...) {
    t_last_error = "unknown failure";
    t_last_code = PFMG_ERR_INTERNAL;
  }
  return t_last_code;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

pfmg_config* pfmg_config_load_file(const char* path) {
  if (!path) {
    t_last_error = "config path is null";
    t_last_code = PFMG_ERR_INVALID_ARGUMENT;
    return nullptr;
  }
  pfmg_config* out = nullptr;
  guarded([&] { out = new pfmg_config{pfmg::load_config_file(path)}; });
  return out;
}

pfmg_config* pfmg_config_load_string(const char* text) {
  if (!text) {
    t_last_error = "config text is null";
    t_last_code = PFMG_ERR_INVALID_ARGUMENT;
    return nullptr;
  }
  pfmg_config* out = nullptr;
  guarded([&] { out = new pfmg_config{pfmg::load_config_string(text)}; });
  return out;
}

void pfmg_config_free(pfmg_config* cfg) { delete cfg; }

int pfmg_config_set_seed(pfmg_config* cfg, unsigned long seed) {
  if (!cfg) {
    t_last_error = "config handle is null";
    t_last_code = PFMG_ERR_INVALID_ARGUMENT;
    return PFMG_ERR_INVALID_ARGUMENT;
  }
  cfg->cfg.seed = seed;
  cfg->cfg.echo["seed"] = seed;
  t_last_error.clear();
  t_last_code = PFMG_OK;
  return PFMG_OK;
}

int pfmg_config_set_threads(pfmg_config* cfg, int threads) {
  if (!cfg) {
    t_last_error = "config handle is null";
    t_last_code = PFMG_ERR_INVALID_ARGUMENT;
    return PFMG_ERR_INVALID_ARGUMENT;
  }
  if (threads < 0) {
    t_last_error = "threads must be nonnegative";
    t_last_code = PFMG_ERR_INVALID_ARGUMENT;
    return PFMG_ERR_INVALID_ARGUMENT;
  }
  cfg->cfg.threads = threads;
  cfg->cfg.echo["threads"] = threads;
  t_last_error.clear();
  t_last_code = PFMG_OK;
  return PFMG_OK;
}

int pfmg_run(pfmg_config* cfg, const char* pipeline, const char* out_dir) {
  if (!cfg || !pipeline) {
    t_last_error = "config handle and pipeline name are required";
    t_last_code = PFMG_ERR_INVALID_ARGUMENT;
    return PFMG_ERR_INVALID_ARGUMENT;
  }
  const std::string out = out_dir ? out_dir : ".";
  const std::string name = pipeline;
  std::string witness;
  const int rc = guarded([&] {
    try {
      pfmg::run_pipeline(name, cfg->cfg, out);
    } catch (const pfmg::InfeasibleProblem& e) {
      witness = e.witness;
      throw;
    }
  });
  if (rc != PFMG_OK)
    pfmg::write_error_json(out, rc, pfmg_error_name(rc), t_last_error, witness);
  return rc;
}

const char* pfmg_last_error(void) { return t_last_error.c_str(); }

int pfmg_last_error_code(void) { return t_last_code; }

const char* pfmg_error_name(int code) {
  return pfmg::error_name(static_cast<pfmg::ErrorCode>(code));
}

int pfmg_list_builtins(int as_json, char** out) {
  if (!out) {
    t_last_error = "output pointer is null";
    t_last_code = PFMG_ERR_INVALID_ARGUMENT;
    return PFMG_ERR_INVALID_ARGUMENT;
  }
  *out = nullptr;
  const int rc = guarded([&] {
    std::string text;
    if (as_json) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& b : pfmg::list_builtins())
        arr.push_back({{"name", b.name}, {"description", b.description}});
      text = arr.dump(2);
    } else {
      for (const auto& b : pfmg::list_builtins())
        text += b.name + ": " + b.description + "\n";
    }
    *out = dup_string(text);
    if (!*out) throw std::bad_alloc();
  });
  return rc;
}

void pfmg_string_free(char* s) { std::free(s); }

const char* pfmg_version(void) { return pfmg::kVersion; }

}  // extern "C"
