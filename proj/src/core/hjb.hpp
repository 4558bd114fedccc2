#pragma once

#include <vector>

#include "core/field.hpp"
#include "core/grid.hpp"
#include "core/hamiltonian.hpp"

namespace pfmg {

enum class FluxKind { engquist_osher, lax_friedrichs };

struct SchemeOptions {
  FluxKind flux = FluxKind::engquist_osher;
  double eps = 0.0;  // viscosity; diffusion is solved implicitly
};

// Numerical Hamiltonian values and the linearization coefficients of one
// explicit advection step, evaluated on a single u row.  A[j] multiplies the
// backward slope, C[j] the forward slope; both are >= 0 for the monotone
// fluxes, and they are exactly what the adjoint density step reuses.
struct FluxRow {
  std::vector<double> Hhat;  // numerical Hamiltonian per node
  std::vector<double> A;     // dHhat/dp-  (nonnegative)
  std::vector<double> C;     // -dHhat/dp+ (nonnegative)
  double max_speed = 0.0;    // max over nodes of A+C
};

// w is the price value the step sees (midpoint of the two node prices).
// Ghost convention at both ends: one-sided slope copied (linear extension).
void compute_flux_row(const HamiltonianSpec& H, const GridSpec& g, double w,
                      const double* u, FluxKind kind, FluxRow& out);

// Backward value solve: terminal data prob.uT, price path varpi (nt+1).
// Throws CflError when a step breaks the monotonicity bound and
// NumericalFailure on non-finite values.
Field solve_hjb_backward(const HamiltonianSpec& H, const ProblemData& prob,
                         const std::vector<double>& varpi, const SchemeOptions& opt);

}  // namespace pfmg
