#pragma once

#include <functional>
#include <string>
#include <vector>

#include "core/grid.hpp"
#include "core/hamiltonian.hpp"

namespace pfmg {

// const: q0 ; cos: q0 cos(2 pi q1 t) ; ramp: q0 + q1 t
struct SupplySpec {
  std::string kind = "const";
  double q0 = 1.0;
  double q1 = 1.0;
};

// zero ; linear: a x ; quadratic: a x^2 ; smooth_abs: a (sqrt(x^2+d^2) - d)
struct TerminalSpec {
  std::string kind = "zero";
  double a = 1.0;
  double delta = 0.1;
};

// gauss / hat / uniform / cauchy around `center` with scale `width`;
// samples are normalized to unit plain-sum mass on the grid
struct DensitySpec {
  std::string kind = "gauss";
  double center = 0.0;
  double width = 0.7;
};

std::function<double(double)> make_supply_fn(const SupplySpec& s);
std::function<double(double)> make_terminal_fn(const TerminalSpec& s);
std::function<double(double)> make_terminal_grad_fn(const TerminalSpec& s);
std::function<double(double)> make_density_fn(const DensitySpec& s);

struct ProblemSpec {
  std::string hamiltonian_family = "quadratic";
  double gamma2 = 2.0;
  PotentialParams potential;
  SupplySpec supply;
  TerminalSpec terminal;
  DensitySpec density;
  double T = 1.0, R = 4.0;
  double moment_gamma = 0.0;  // 0 resolves to gamma1 + 1
  double vmax_hint = 2.5;     // velocity hull suggestion for measure grids
};

// Hamiltonian instance whose shared constant C also covers the terminal
// cost slope/curvature and the initial density curvature, so the declared
// bounds validate for the whole problem, not just the kinetic part.
HamiltonianSpec build_hamiltonian(const ProblemSpec& spec);

// Samples the closed forms onto an nt x nx grid, normalizes the density,
// and validates the result against the Hamiltonian's declared constants.
ProblemData build_problem(const ProblemSpec& spec, const HamiltonianSpec& H, int nt, int nx);

struct BuiltinInfo {
  std::string name;
  std::string description;
};

const std::vector<BuiltinInfo>& list_builtins();
ProblemSpec builtin_problem_spec(const std::string& name);

}  // namespace pfmg
