#pragma once

#include <vector>

#include "core/constraints.hpp"

namespace pfmg {

struct SimplexResult {
  bool feasible = false;
  bool bounded = true;
  double value = 0.0;
  std::vector<double> x;
  std::vector<double> y;  // row duals, original row orientation
};

// Dense two-phase tableau simplex with Bland's rule. Exact-arithmetic-style
// reference for small instances; refuses anything large.
SimplexResult solve_lp_simplex(std::vector<std::vector<double>> A, std::vector<double> b,
                               std::vector<double> c);

SimplexResult solve_lp_simplex(const ConstraintSystem& cs);

}  // namespace pfmg
