#pragma once

#include <string>
#include <vector>

#include "core/constraints.hpp"
#include "core/measure_grid.hpp"
#include "core/pdhg.hpp"

namespace pfmg {

struct MatherOptions {
  PdhgOptions pdhg;
  bool free_nu = true;
  std::vector<double> nu_cells;  // terminal weights per x-cell when !free_nu
  double cert_tol = 1e-10;
};

struct MatherResult {
  ConstraintSystem cs;
  LpSolution lp;
  DisplacementCertificate cert;
  bool infeasible = false;
  double value = 0.0;
  std::string note;
};

// Assemble the measure program and run the first-order solver. In fixed
// terminal mode the displacement certificate is evaluated first; a nonzero
// certificate settles infeasibility without touching the solver.
MatherResult solve_mather(const HamiltonianSpec& H, const ProblemData& prob,
                          const MeasureGrid& g, const MatherOptions& opt);

struct HValueResult {
  bool feasible = false;
  double value = 0.0;
  DisplacementCertificate cert;
  LpSolution lp;
};

// Value of the transport program against a pinned terminal measure.
HValueResult h_value(const HamiltonianSpec& H, const ProblemData& prob, const MeasureGrid& g,
                     const std::vector<double>& nu_cells, const MatherOptions& opt);

struct ConjugateBound {
  double bound = 0.0;        // sum over slices of the per-slice conjugate value
  double margin = 0.0;       // lp_value - bound, must not be materially negative
  std::vector<double> slice_bound;
};

// Per-slice lower bound: for any slope p, cost >= p*v - max_cells(p*v - c),
// so slice value >= dt * sup_p [p Q_i - conj_i(p)]. Concave 1-d maximization
// by ternary search; every probe yields a valid bound.
ConjugateBound verify_conjugate_bound(const ConstraintSystem& cs, double lp_value);

}  // namespace pfmg
