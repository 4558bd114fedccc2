#pragma once

#include <functional>
#include <vector>

#include "core/hamiltonian.hpp"

namespace pfmg {

// Space-time grid: nt time cells on [0,T], nx space cells on [-R,R].
// Field arrays live on the (nt+1) x (nx+1) node lattice.
struct GridSpec {
  double T = 1.0;
  double R = 4.0;
  int nt = 64;
  int nx = 64;

  double dt() const { return T / nt; }
  double dx() const { return 2.0 * R / nx; }
  double tnode(int i) const { return T * i / nt; }
  double xnode(int j) const { return -R + 2.0 * R * j / nx; }
  double tcell(int i) const { return (i + 0.5) * dt(); }
  double xcell(int j) const { return -R + (j + 0.5) * dx(); }

  void validate() const;

  // dt <= dx / (max|H_p| + 2 eps/dx); the diffusion term drops out when the
  // stepper treats it implicitly.
  bool cfl_ok(double max_speed, double eps, bool implicit_diffusion) const {
    const double denom = max_speed + (implicit_diffusion ? 0.0 : 2.0 * eps / dx());
    if (denom <= 0.0) return true;
    return dt() <= dx() / denom + 1e-14;
  }
};

// Problem instance on a grid: supply samples, terminal cost, initial density.
struct ProblemData {
  GridSpec grid;
  std::vector<double> Q;    // nt+1 node samples of the supply
  std::vector<double> Qc;   // nt cell-center samples
  std::vector<double> uT;   // nx+1 terminal cost samples
  std::vector<double> uTp;  // nx+1 derivative samples
  std::vector<double> m0;   // nx+1 initial density, plain-sum mass 1
  double gamma = 2.0;       // moment order carried by m0

  // closed forms when the instance was built from formulas; may be null
  std::function<double(double)> Q_fn, m0_fn, uT_fn, uTp_fn;

  // Plain Riemann sum dx * sum_j density[j]: this is the functional the
  // density scheme conserves exactly, so normalization uses it too.
  double density_mass(const std::vector<double>& density) const;
  void normalize_m0();
  // Throws ConfigError on violated invariants (mass, uT' consistency,
  // gamma > gamma1, sizes).
  void validate(const HamiltonianSpec& H) const;
};

}  // namespace pfmg
