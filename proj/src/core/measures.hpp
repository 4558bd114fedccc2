#pragma once

#include "core/measure_grid.hpp"
#include "core/mfg.hpp"

namespace pfmg {

// Transport of m0 along the supply: slice i carries m0 translated by the
// cumulative displacement at velocity Q(t_i); nu is m0 translated by the
// full displacement sum_i Q(t_i^c) dt.  Feasible for the holonomy rows up to
// O(dt+dx) and exact for balance, slice-mass and the displacement identity.
DiscreteMeasure reference_measure(const ProblemData& prob, const MeasureGrid& g);

// Flow measure of a solved system: per slice, the time-averaged density
// cells deposited at the scheme's own drift -H_p(x, varpi + u_x); nu is the
// terminal density.  Errors if a drift value leaves the velocity hull.
DiscreteMeasure induced_measure(const HamiltonianSpec& H, const ProblemData& prob,
                                const MFGSolution& sol, const MeasureGrid& g);

}  // namespace pfmg
