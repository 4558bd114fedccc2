#pragma once

#include <string>
#include <vector>

#include "core/grid.hpp"
#include "core/hamiltonian.hpp"

namespace pfmg {

struct SampleBox {
  double xmin = -5.0, xmax = 5.0;
  double pmin = -10.0, pmax = 10.0;
  int nx = 201, np = 201;
};

struct AssumptionCheck {
  std::string id;
  std::string status;  // "pass" | "fail" | "not_checked"
  double margin = 0.0; // smallest slack seen; negative means violated
  double witness_x = 0.0, witness_p = 0.0;
  std::string note;
};

struct AssumptionReport {
  std::vector<AssumptionCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (c.status == "fail") return false;
    return true;
  }
};

// Samples the declared structural inequalities on the box and the problem
// data arrays; every failure carries the witnessing sample point.
AssumptionReport validate_assumptions(const HamiltonianSpec& spec,
                                      const ProblemData& prob,
                                      const SampleBox& box);

}  // namespace pfmg
