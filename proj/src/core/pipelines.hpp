#pragma once

#include <string>

#include "core/config.hpp"

namespace pfmg {

// Pipelines write their artifacts under `out_dir` (created if missing) and
// finish with a manifest.json naming everything they produced.  They throw
// typed errors; callers map those to exit codes.
void run_validate(const RunConfig& cfg, const std::string& out_dir);
void run_solve(const RunConfig& cfg, const std::string& out_dir);
void run_lp(const RunConfig& cfg, const std::string& out_dir);
void run_duality(const RunConfig& cfg, const std::string& out_dir);
void run_commutation(const RunConfig& cfg, const std::string& out_dir);
void run_sweep(const RunConfig& cfg, const std::string& out_dir);

// Dispatch by name: validate | solve | lp | duality | commutation | sweep.
void run_pipeline(const std::string& name, const RunConfig& cfg, const std::string& out_dir);

// Best-effort error artifact for failed runs. witness_json, when nonempty,
// is embedded verbatim as the "witness" member (infeasibility certificates).
void write_error_json(const std::string& out_dir, int code, const std::string& name,
                      const std::string& message, const std::string& witness_json = "");

}  // namespace pfmg
