#include "core/fokker_planck.hpp"

#include <cmath>
#include <string>

#include "core/errors.hpp"
#include "core/tridiag.hpp"

namespace pfmg {

Field solve_fp_forward(const HamiltonianSpec& H, const ProblemData& prob,
                       const std::vector<double>& varpi, const Field& u,
                       const SchemeOptions& opt) {
  const GridSpec& g = prob.grid;
  const int nt = g.nt, nx = g.nx;
  const double dt = g.dt(), dx = g.dx();

  Field m(nt + 1, nx + 1);
  for (int j = 0; j <= nx; ++j) m.at(0, j) = prob.m0[j];

  FluxRow flux;
  std::vector<double> mt(nx + 1), lower(nx + 1), diag(nx + 1), upper(nx + 1), rhs(nx + 1);
  const double r = opt.eps * dt / (dx * dx);
  const double lam = dt / dx;

  for (int i = 0; i < nt; ++i) {
    // linearize around the same state the value step differenced
    const double w = 0.5 * (varpi[i] + varpi[i + 1]);
    compute_flux_row(H, g, w, u.row(i + 1), opt.flux, flux);

    // transposed implicit diffusion first: D^T mt = m[i]
    if (opt.eps > 0.0) {
      for (int j = 0; j <= nx; ++j) rhs[j] = m.at(i, j);
      // D has identity rows at the boundary, so D^T couples the boundary
      // columns into their neighbors
      lower[0] = 0.0; diag[0] = 1.0; upper[0] = -r;
      for (int j = 1; j < nx; ++j) {
        lower[j] = (j == 1) ? 0.0 : -r;
        diag[j] = 1.0 + 2.0 * r;
        upper[j] = (j == nx - 1) ? 0.0 : -r;
      }
      lower[nx] = -r; diag[nx] = 1.0; upper[nx] = 0.0;
      solve_tridiagonal(lower, diag, upper, rhs, mt);
    } else {
      for (int j = 0; j <= nx; ++j) mt[j] = m.at(i, j);
    }

    // transposed advection: m[i+1] = (I - dt B^T) mt with B the transport
    // stencil exported by the flux row.  A[0] = C[nx] = 0 there, so every
    // column of the update sums to one and every coefficient is nonnegative
    // under the CFL bound.
    const std::vector<double>& A = flux.A;
    const std::vector<double>& C = flux.C;
    for (int j = 0; j <= nx; ++j) {
      double v = (1.0 - lam * (A[j] + C[j])) * mt[j];
      if (j > 0) v += lam * C[j - 1] * mt[j - 1];
      if (j < nx) v += lam * A[j + 1] * mt[j + 1];
      m.at(i + 1, j) = v;
    }

    for (int j = 0; j <= nx; ++j) {
      const double v = m.at(i + 1, j);
      if (!std::isfinite(v))
        throw NumericalFailure("density solve produced a non-finite entry at t-index " +
                               std::to_string(i + 1));
      if (v < -1e-12)
        throw NumericalFailure("density dropped below -1e-12 at t-index " +
                               std::to_string(i + 1) + ", x-index " + std::to_string(j));
    }
  }
  return m;
}

}  // namespace pfmg
