#pragma once

#include <vector>

#include "core/field.hpp"
#include "core/fokker_planck.hpp"
#include "core/grid.hpp"
#include "core/hamiltonian.hpp"
#include "core/hjb.hpp"

namespace pfmg {

struct MFGSolution {
  GridSpec grid;
  double eps = 0.0;
  Field u;                    // value, node lattice
  Field m;                    // density, node lattice
  std::vector<double> varpi;  // price path, nt+1
  int iterations = 0;
  double residual_sup = 0.0;
  bool converged = false;
};

struct SolverOptions {
  double tol = 1e-6;       // sup norm of the balance residual
  int max_iter = 80;
  double theta = 0.5;      // price damping; halved when the residual grows
  FluxKind flux = FluxKind::engquist_osher;
};

// Centered interior gradient, one-sided at the ends.
std::vector<double> centered_gradient(const GridSpec& g, const double* row);

// Per-time-node residual of the market-clearing balance
//   -integral H_p(x, varpi + u_x) m dx - Q(t).
std::vector<double> balance_residual(const HamiltonianSpec& H, const ProblemData& prob,
                                     const Field& u, const Field& m,
                                     const std::vector<double>& varpi);

// Root of w -> -integral H_p(x, w + ux) dens dx - Qi; strictly decreasing
// by uniform convexity, so bracket-and-bisect cannot miss.
double balance_root(const HamiltonianSpec& H, const GridSpec& g, double Qi,
                    const std::vector<double>& ux, const double* dens);

// Balance root at t=0 against the initial density.
double initial_price_root(const HamiltonianSpec& H, const ProblemData& prob,
                          const std::vector<double>& ux0);

// Undamped new price path: enforces the market-clearing balance exactly at
// every time node by a scalar root solve against the current (u, m) pair.
std::vector<double> price_update(const HamiltonianSpec& H, const ProblemData& prob,
                                 const Field& u, const Field& m,
                                 const std::vector<double>& varpi);

// Damped price fixed point around the backward value solve and the forward
// density solve.  Throws NonConvergence when max_iter is exhausted.
MFGSolution fixed_point_solve(const HamiltonianSpec& H, const ProblemData& prob,
                              double eps, const SolverOptions& opt,
                              const std::vector<double>* warm_varpi = nullptr);

struct SweepResult {
  std::vector<double> eps_list;
  std::vector<MFGSolution> levels;
  std::vector<double> varpi_extrap;  // Richardson limit from the two smallest eps
  MFGSolution limit;                 // zero-viscosity evaluation driven by varpi_extrap
};

// eps_list strictly decreasing and positive; each level warm-starts the next.
SweepResult vanishing_viscosity_sweep(const HamiltonianSpec& H, const ProblemData& prob,
                                      const std::vector<double>& eps_list,
                                      const SolverOptions& opt);

}  // namespace pfmg
