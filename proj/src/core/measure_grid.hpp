#pragma once

#include <cstddef>
#include <vector>

#include "core/field.hpp"
#include "core/grid.hpp"
#include "core/hamiltonian.hpp"

namespace pfmg {

// Cell-centered (t,x,v) lattice for space-time-velocity measures.  Test
// functions live on the (nt+1) x (nx+1) node lattice; keeping the cells
// staggered against the nodes means node hats are never differentiated at
// their own kink.
struct MeasureGrid {
  double T = 1.0, R = 4.0, Vmax = 2.5;
  int nt = 16, nx = 16, nv = 16;
  double zeta1 = 1.0, zeta2 = 1.5;  // weight exponents for the test family

  double dt() const { return T / nt; }
  double dx() const { return 2.0 * R / nx; }
  double dv() const { return 2.0 * Vmax / nv; }
  double tcell(int i) const { return (i + 0.5) * dt(); }
  double xcell(int j) const { return -R + (j + 0.5) * dx(); }
  double vcell(int k) const { return -Vmax + (k + 0.5) * dv(); }
  double tnode(int a) const { return a * dt(); }
  double xnode(int b) const { return -R + b * dx(); }

  std::size_t cells() const {
    return static_cast<std::size_t>(nt) * nx * nv;
  }
  std::size_t idx(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * nx + j) * nv + k;
  }
  void validate() const;
};

// Measure weights per cell plus terminal weights per x-cell.  mu entries are
// masses (cell volume already folded in).
struct DiscreteMeasure {
  MeasureGrid grid;
  std::vector<double> mu;  // nt*nx*nv
  std::vector<double> nu;  // nx

  explicit DiscreteMeasure(const MeasureGrid& g)
      : grid(g), mu(g.cells(), 0.0), nu(g.nx, 0.0) {}

  double total_mass() const;
  double slice_mass(int i) const;
  double nu_mass() const;
  double nu_mean() const;
  // time-sliced x-marginal gamma-moment, sum_jk |x_j|^gamma mu[i,j,k] / dt
  double slice_moment(int i, double gamma) const;

  // Splits mass linearly over the two x-cells and two v-cells around (x,v);
  // preserves total mass and both first moments.  Throws ConfigError when
  // (x,v) falls outside the cell-center hull.
  void deposit(int i, double x, double v, double mass);
  void deposit_nu(double x, double mass);
};

// Resample FD node densities to cell masses ((d[j]+d[j+1])/2 * dx), then
// rescale so the total is exactly the requested mass.
std::vector<double> cells_from_density(const GridSpec& g, const std::vector<double>& density,
                                       double target_mass);

// Exact 1-D earth-mover distance between two cell-weight vectors on the same
// x-cells (equal masses assumed; difference of CDFs integrated).
double w1_distance(const MeasureGrid& g, const std::vector<double>& wa,
                   const std::vector<double>& wb);

// Running cost of a measure: sum mu [ L(x,v) + v uT'(x) ] with uT'
// interpolated at cell centers.  The LP objective uses the same values.
double measure_cost(const DiscreteMeasure& meas, const HamiltonianSpec& H,
                    const ProblemData& prob);
std::vector<double> build_cost_vector(const MeasureGrid& g, const HamiltonianSpec& H,
                                      const ProblemData& prob, bool free_nu);

// Supply at measure cell centers (closed form when available, else linear
// interpolation of the node samples).
std::vector<double> supply_at_cells(const MeasureGrid& g, const ProblemData& prob);

}  // namespace pfmg
