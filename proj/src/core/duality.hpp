#pragma once

#include <functional>
#include <vector>

#include "core/grid.hpp"
#include "core/hamiltonian.hpp"
#include "core/mather.hpp"
#include "core/mfg.hpp"

namespace pfmg {

// Initial-cost functional of the PDE solution:
//   sum_x (u(0,x) - u_T(x)) m0(x) dx  -  trapezoid_t Q(t) varpi(t)
double dual_value(const ProblemData& prob, const MFGSolution& sol);

struct DualityLevel {
  int level = 0;
  double h = 0.0, dt = 0.0, dx = 0.0, dv = 0.0;
  double eps = 0.0;
  double primal = 0.0, dual = 0.0, gap = 0.0;
  long lp_iterations = 0;
  bool lp_converged = false;
  double lp_primal_res = 0.0, lp_gap = 0.0;
  int mfg_iterations = 0;
  double mfg_residual = 0.0;
};

struct DualityReport {
  std::vector<DualityLevel> levels;
  double rate = 0.0;  // geometric-mean halving order of |gap|
  bool gaps_decreasing = false;
  double final_gap = 0.0;
};

struct DualityOptions {
  int levels = 3;
  int nt0 = 16, nx0 = 16, nv0 = 8;
  double eps0 = 0.1, eps_factor = 0.5;
  double Vmax = 2.5;
  double lp_tol_scale = 3e-3;  // per-level lp tolerance max(pdhg.tol, scale * h)
  SolverOptions mfg;
  PdhgOptions pdhg;
};

using ProblemFactory = std::function<ProblemData(int nt, int nx)>;

// Carries a solved measure program up one dyadic refinement as a warm start:
// parent cell weights spread evenly onto their 2x2x2 children, holonomy
// multipliers interpolate on the node lattice, balance and slice multipliers
// replicate per half-slice. fine must double coarse in nt, nx and nv.
void prolong_measure_warm_start(const MeasureGrid& coarse, const LpSolution& sol,
                                const MeasureGrid& fine, bool free_nu,
                                std::vector<double>& x0, std::vector<double>& y0);

// Mesh ladder: level L doubles nt, nx, nv and halves the viscosity. The
// measure program value (primal) is compared against the PDE initial cost
// (dual) on the same nt,nx lattice.
DualityReport gap_report(const HamiltonianSpec& H, const ProblemFactory& make,
                         const DualityOptions& opt);

}  // namespace pfmg
