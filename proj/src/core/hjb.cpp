#include "core/hjb.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"
#include "core/tridiag.hpp"

namespace pfmg {

void compute_flux_row(const HamiltonianSpec& H, const GridSpec& g, double w,
                      const double* u, FluxKind kind, FluxRow& out) {
  const int nx = g.nx;
  const double dx = g.dx();
  out.Hhat.resize(nx + 1);
  out.A.resize(nx + 1);
  out.C.resize(nx + 1);
  out.max_speed = 0.0;

  // Both built-in kinetic parts are minimized at momentum 0, so the
  // stationary slope of p -> H(x, w+p) sits at pstar = -w.
  const double pstar = -w;

  for (int j = 0; j <= nx; ++j) {
    const double x = g.xnode(j);
    // linear extension beyond the walls: the ghost slope copies the interior
    // one, which keeps the flux exact for affine value profiles
    const double pm = (j > 0) ? (u[j] - u[j - 1]) / dx : (u[1] - u[0]) / dx;
    const double pp = (j < nx) ? (u[j + 1] - u[j]) / dx : (u[nx] - u[nx - 1]) / dx;

    if (kind == FluxKind::engquist_osher) {
      const double qm = std::max(pm, pstar);
      const double qp = std::min(pp, pstar);
      out.Hhat[j] = H.H(x, w + qm) + H.H(x, w + qp) - H.H(x, w + pstar);
      out.A[j] = std::max(H.Hp(x, w + pm), 0.0);
      out.C[j] = std::max(-H.Hp(x, w + pp), 0.0);
    } else {
      const double pc = 0.5 * (pm + pp);
      const double speed = std::max(std::abs(H.Hp(x, w + pm)), std::abs(H.Hp(x, w + pp)));
      out.Hhat[j] = H.H(x, w + pc) - 0.5 * speed * (pp - pm);
      const double gc = H.Hp(x, w + pc);
      out.A[j] = 0.5 * (speed + gc);
      out.C[j] = 0.5 * (speed - gc);
    }
    // the CFL bound must see the untruncated wall coefficients: the value
    // update's wall rows still move at this speed
    out.max_speed = std::max(out.max_speed, out.A[j] + out.C[j]);
    // a ghost slope holds no unknown, so the transport stencil drops the
    // matching coupling; this also keeps the transposed density step
    // nonnegative at outflow walls
    if (j == 0) out.A[j] = 0.0;
    if (j == nx) out.C[j] = 0.0;
  }
}

Field solve_hjb_backward(const HamiltonianSpec& H, const ProblemData& prob,
                         const std::vector<double>& varpi, const SchemeOptions& opt) {
  const GridSpec& g = prob.grid;
  const int nt = g.nt, nx = g.nx;
  const double dt = g.dt(), dx = g.dx();
  if (varpi.size() != static_cast<std::size_t>(nt) + 1)
    throw InvalidArgument("price path sample count mismatch");

  Field u(nt + 1, nx + 1);
  for (int j = 0; j <= nx; ++j) u.at(nt, j) = prob.uT[j];

  FluxRow flux;
  std::vector<double> rhs(nx + 1), lower(nx + 1), diag(nx + 1), upper(nx + 1), sol(nx + 1);
  const double r = opt.eps * dt / (dx * dx);

  for (int i = nt - 1; i >= 0; --i) {
    const double w = 0.5 * (varpi[i] + varpi[i + 1]);
    compute_flux_row(H, g, w, u.row(i + 1), opt.flux, flux);
    if (dt * flux.max_speed > dx * (1.0 + 1e-12))
      throw CflError(dt, dx, flux.max_speed);

    for (int j = 0; j <= nx; ++j) rhs[j] = u.at(i + 1, j) - dt * flux.Hhat[j];

    if (opt.eps > 0.0) {
      // implicit diffusion; boundary rows are identities (no diffusive
      // update tracked at the walls)
      for (int j = 0; j <= nx; ++j) {
        if (j == 0 || j == nx) {
          lower[j] = 0.0;
          diag[j] = 1.0;
          upper[j] = 0.0;
        } else {
          lower[j] = -r;
          diag[j] = 1.0 + 2.0 * r;
          upper[j] = -r;
        }
      }
      solve_tridiagonal(lower, diag, upper, rhs, sol);
      for (int j = 0; j <= nx; ++j) u.at(i, j) = sol[j];
    } else {
      for (int j = 0; j <= nx; ++j) u.at(i, j) = rhs[j];
    }

    for (int j = 0; j <= nx; ++j)
      if (!std::isfinite(u.at(i, j)))
        throw NumericalFailure("value solve produced a non-finite entry at t-index " +
                               std::to_string(i));
  }
  return u;
}

}  // namespace pfmg
