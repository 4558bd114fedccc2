#pragma once

#include "core/field.hpp"
#include "core/grid.hpp"
#include "core/hamiltonian.hpp"
#include "core/mfg.hpp"

namespace pfmg {

// Smooth bump (1-s^2)^3 on [-1,1], zero outside.
double bump_kernel(double s);

struct Mollified {
  Field w;        // averaged values; rows beyond imax are unusable
  int imax = 0;   // largest time index with a full forward stencil
  int rx = 0, rt = 0;
  double alpha = 0.0;
};

// Space: symmetric window with linear extension past the ends.
// Time: forward window [t, t + alpha] only, so no samples are invented
// beyond the horizon; both discrete kernels are renormalized to unit mass.
Mollified mollify_solution(const GridSpec& g, const Field& u, double alpha);

// Positive part, in the sup norm over valid interior nodes, of
//   -D_t w + H(x, varpi + D_x w) - eps D_xx w .
// Smoothing and the nonlinearity do not commute; this measures the defect.
double commutation_residual(const HamiltonianSpec& H, const ProblemData& prob,
                            const MFGSolution& sol, double alpha);

}  // namespace pfmg
