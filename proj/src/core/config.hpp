#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "core/duality.hpp"
#include "core/measure_grid.hpp"
#include "core/mfg.hpp"
#include "core/pdhg.hpp"
#include "core/registry.hpp"

namespace pfmg {

// Fully resolved run description.  Built either from a builtin name, from
// explicit blocks, or from a builtin with block overrides; `echo` holds the
// resolved document that goes into the run manifest.
struct RunConfig {
  nlohmann::json echo;
  std::string builtin;

  ProblemSpec problem;
  HamiltonianSpec H;

  int nt = 64, nx = 64;
  // measure-grid shape; kept separate from the field grid so the LP stays
  // desk-sized regardless of how fine the PDE solve is
  int mg_nt = 16, mg_nx = 16;
  int nv = 16;
  double vmax = 2.5;
  double zeta1 = 1.0, zeta2 = 1.5;

  double eps = 0.1;
  SolverOptions solver;
  std::vector<double> eps_list;  // viscosity ladder for sweeps

  PdhgOptions lp;
  bool lp_free_nu = true;

  DualityOptions duality;
  std::vector<double> commutation_alphas;

  unsigned long seed = 0;
  int threads = 1;

  ProblemData make_problem(int nt_, int nx_) const;
  ProblemData make_problem() const { return make_problem(nt, nx); }
  MeasureGrid make_measure_grid(int nt_, int nx_) const;
  MeasureGrid make_measure_grid() const { return make_measure_grid(mg_nt, mg_nx); }
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config_file(const std::string& path);
RunConfig load_config_string(const std::string& text);

}  // namespace pfmg
