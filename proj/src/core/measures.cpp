#include "core/measures.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace pfmg {

DiscreteMeasure reference_measure(const ProblemData& prob, const MeasureGrid& g) {
  if (g.nt != prob.grid.nt || g.nx != prob.grid.nx)
    throw InvalidArgument("measure grid must match the field grid");
  DiscreteMeasure out(g);
  const std::vector<double> m0c = cells_from_density(prob.grid, prob.m0, 1.0);
  const std::vector<double>& Qc = prob.Qc;
  const double dt = g.dt();

  // cumulative midpoint displacement evaluated at cell centers; transported
  // tail mass that would leave the box piles up on the wall cell, matching
  // the truncated-domain convention of the field solver
  const double xlo = g.xcell(0), xhi = g.xcell(g.nx - 1);
  auto clamp_x = [&](double x) { return std::min(std::max(x, xlo), xhi); };
  double running = 0.0;
  for (int i = 0; i < g.nt; ++i) {
    const double shift = running + 0.5 * dt * Qc[i];
    for (int j = 0; j < g.nx; ++j)
      out.deposit(i, clamp_x(g.xcell(j) + shift), Qc[i], m0c[j] * dt);
    running += dt * Qc[i];
  }
  for (int j = 0; j < g.nx; ++j) out.deposit_nu(clamp_x(g.xcell(j) + running), m0c[j]);
  return out;
}

DiscreteMeasure induced_measure(const HamiltonianSpec& H, const ProblemData& prob,
                                const MFGSolution& sol, const MeasureGrid& g) {
  if (g.nt != prob.grid.nt || g.nx != prob.grid.nx)
    throw InvalidArgument("measure grid must match the field grid");
  const GridSpec& fg = prob.grid;
  DiscreteMeasure out(g);
  const double dt = g.dt(), dx = g.dx();

  for (int i = 0; i < g.nt; ++i) {
    const double w = 0.5 * (sol.varpi[i] + sol.varpi[i + 1]);
    // time-averaged cell masses, rescaled to exact slice mass dt
    std::vector<double> cell(g.nx);
    double total = 0.0;
    for (int j = 0; j < g.nx; ++j) {
      cell[j] = 0.25 * (sol.m.at(i, j) + sol.m.at(i, j + 1) +
                        sol.m.at(i + 1, j) + sol.m.at(i + 1, j + 1)) * dx;
      total += cell[j];
    }
    if (!(total > 0.0)) throw NumericalFailure("induced measure: empty slice");
    const double scale = dt / total;
    for (int j = 0; j < g.nx; ++j) {
      // cell-centered gradient of u, averaged over the two time levels
      const double ux = 0.5 * ((sol.u.at(i, j + 1) - sol.u.at(i, j)) / dx +
                               (sol.u.at(i + 1, j + 1) - sol.u.at(i + 1, j)) / dx);
      const double drift = -H.Hp(g.xcell(j), w + ux);
      if (std::abs(drift) > g.Vmax - 0.5 * g.dv() + 1e-12)
        throw ConfigError("induced drift " + std::to_string(drift) +
                          " leaves the velocity grid; increase Vmax");
      out.deposit(i, g.xcell(j), drift, cell[j] * scale);
    }
  }

  std::vector<double> mT(fg.nx + 1);
  for (int j = 0; j <= fg.nx; ++j) mT[j] = sol.m.at(fg.nt, j);
  const std::vector<double> nuc = cells_from_density(fg, mT, 1.0);
  for (int j = 0; j < g.nx; ++j) out.nu[j] = nuc[j];
  return out;
}

}  // namespace pfmg
