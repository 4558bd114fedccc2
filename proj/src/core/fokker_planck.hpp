#pragma once

#include <vector>

#include "core/field.hpp"
#include "core/grid.hpp"
#include "core/hamiltonian.hpp"
#include "core/hjb.hpp"

namespace pfmg {

// Forward density solve driven by the value field u and price path varpi.
// Each step is the exact transpose of the linearized value step (same flux
// coefficients, same implicit diffusion matrix), which conserves
// dx * sum_j m[i][j] to round-off and keeps m nonnegative under the CFL
// bound the value solver already enforced.
// Throws NumericalFailure if a density entry drops below -1e-12.
Field solve_fp_forward(const HamiltonianSpec& H, const ProblemData& prob,
                       const std::vector<double>& varpi, const Field& u,
                       const SchemeOptions& opt);

}  // namespace pfmg
