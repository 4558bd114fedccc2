#pragma once

#include <vector>

#include "core/grid.hpp"
#include "core/hamiltonian.hpp"
#include "core/measure_grid.hpp"
#include "core/mfg.hpp"

namespace pfmg {

// Positive part, sup over interior nodes, of the raw scheme residual
//   -D_t u + H(x, varpi + D_x u) - eps D_xx u
// with centered differences on the unsmoothed solution.
double subsolution_residual(const HamiltonianSpec& H, const ProblemData& prob,
                            const MFGSolution& sol);

struct ResidualProfile {
  std::vector<double> alpha;
  std::vector<double> residual;
  double slope = 0.0;   // log-log least squares over entries above the floor
  bool at_floor = false;  // every residual below 1e-9: nothing to fit
};

ResidualProfile commutation_order_fit(const HamiltonianSpec& H, const ProblemData& prob,
                                      const MFGSolution& sol,
                                      const std::vector<double>& alphas);

// Largest one-step price slope |varpi_{i+1} - varpi_i| / dt.
double lipschitz_estimate(const MFGSolution& sol);

struct MomentTrace {
  double gamma = 0.0;
  std::vector<double> t;
  std::vector<double> value;  // sum |x|^gamma m(t,x) dx per time node
  double initial = 0.0;
  double sup = 0.0;
};

MomentTrace moment_trace(const ProblemData& prob, const MFGSolution& sol, double gamma);

struct WeakConvergenceReport {
  std::vector<double> label;        // one tag per compared measure (e.g. its eps)
  std::vector<double> discrepancy;  // sup over the test family vs the reference
  std::vector<double> zeta_moment;  // |x|^zeta1 + |v|^zeta2 mass of each measure
  double reference_zeta_moment = 0.0;
  bool decreasing = false;
};

// Tests every measure against a fixed polynomial/trigonometric family whose
// growth stays below the (zeta1, zeta2) moment envelope, so the pairings are
// stable exactly when the moment bounds hold.
WeakConvergenceReport weak_convergence_diagnostic(const std::vector<DiscreteMeasure>& levels,
                                                  const std::vector<double>& labels,
                                                  const DiscreteMeasure& reference,
                                                  double zeta1, double zeta2);

}  // namespace pfmg
