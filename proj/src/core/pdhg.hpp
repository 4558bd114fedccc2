#pragma once

#include <string>
#include <vector>

#include "core/constraints.hpp"

namespace pfmg {

struct PdhgOptions {
  double tol = 2e-5;         // on scaled primal/dual residuals and gap
  long max_iter = 400000;
  int check_every = 100;
  double relax = 1.8;        // over-relaxation factor in (0, 2)
  double balance = 1.0;      // scales primal steps by balance, dual by 1/balance
  // when one scaled residual exceeds 10x the other at a check, shift the
  // balance toward the lagging side (halve or double), at most this many times
  int balance_adapt = 60;
  // optional warm start; sizes must match the constraint system
  const std::vector<double>* x0 = nullptr;
  const std::vector<double>* y0 = nullptr;
  // infeasibility monitor: multiplier blow-up with a stalled primal residual
  double infeas_y_norm = 1e8;
  double infeas_primal_floor = 1e-6;
  long infeas_min_iters = 10000;
};

struct LpSolution {
  std::vector<double> x;  // nonnegative measure weights (cells, then terminal in free mode)
  std::vector<double> y;  // one multiplier per constraint row
  double primal_value = 0.0;
  double dual_value = 0.0;
  double primal_res = 0.0, dual_res = 0.0, gap = 0.0;
  long iterations = 0;
  bool converged = false;
  bool infeasible_flag = false;
  std::string note;
};

// First-order primal-dual solve of  min c.x  s.t.  A x = b, x >= 0,
// with per-row/per-column diagonal step sizes. Deterministic: fixed
// iteration order, no randomness, no threading.
LpSolution solve_lp_pdhg(const ConstraintSystem& cs, const PdhgOptions& opt);

}  // namespace pfmg
