#include "core/mfg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "core/errors.hpp"

namespace pfmg {

std::vector<double> centered_gradient(const GridSpec& g, const double* row) {
  const int nx = g.nx;
  const double dx = g.dx();
  std::vector<double> ux(nx + 1);
  ux[0] = (row[1] - row[0]) / dx;
  for (int j = 1; j < nx; ++j) ux[j] = (row[j + 1] - row[j - 1]) / (2.0 * dx);
  ux[nx] = (row[nx] - row[nx - 1]) / dx;
  return ux;
}

std::vector<double> balance_residual(const HamiltonianSpec& H, const ProblemData& prob,
                                     const Field& u, const Field& m,
                                     const std::vector<double>& varpi) {
  const GridSpec& g = prob.grid;
  std::vector<double> res(g.nt + 1);
  for (int i = 0; i <= g.nt; ++i) {
    const std::vector<double> ux = centered_gradient(g, u.row(i));
    double flow = 0.0;
    for (int j = 0; j <= g.nx; ++j)
      flow += H.Hp(g.xnode(j), varpi[i] + ux[j]) * m.at(i, j);
    res[i] = -flow * g.dx() - prob.Q[i];
  }
  return res;
}

double balance_root(const HamiltonianSpec& H, const GridSpec& g, double Qi,
                    const std::vector<double>& ux, const double* dens) {
  auto F = [&](double w) {
    double flow = 0.0;
    for (int j = 0; j <= g.nx; ++j)
      flow += H.Hp(g.xnode(j), w + ux[j]) * dens[j];
    return -flow * g.dx() - Qi;
  };

  // F is strictly decreasing; expand until the bracket straddles the root.
  double a = -1.0, b = 1.0;
  for (int grow = 0; F(a) < 0.0; ++grow) {
    a = 2.0 * a - 1.0;
    if (grow > 200) throw NumericalFailure("price bracket failed (left)");
  }
  for (int grow = 0; F(b) > 0.0; ++grow) {
    b = 2.0 * b + 1.0;
    if (grow > 200) throw NumericalFailure("price bracket failed (right)");
  }
  for (int it = 0; it < 200 && b - a > 1e-14 * std::max(1.0, std::abs(a) + std::abs(b)); ++it) {
    const double mid = 0.5 * (a + b);
    if (F(mid) >= 0.0)
      a = mid;
    else
      b = mid;
  }
  return 0.5 * (a + b);
}

double initial_price_root(const HamiltonianSpec& H, const ProblemData& prob,
                          const std::vector<double>& ux0) {
  return balance_root(H, prob.grid, prob.Q[0], ux0, prob.m0.data());
}

std::vector<double> price_update(const HamiltonianSpec& H, const ProblemData& prob,
                                 const Field& u, const Field& m,
                                 const std::vector<double>& varpi) {
  const GridSpec& g = prob.grid;
  const int nt = g.nt, nx = g.nx;
  const double dx = g.dx();

  std::vector<double> out(nt + 1);
  for (int i = 0; i <= nt; ++i) {
    const std::vector<double> ux = centered_gradient(g, u.row(i));
    // uniform convexity makes the demand map strictly decreasing as long as
    // the H_pp mass integral stays away from zero; a collapse signals mass
    // loss rather than a root-finding problem
    double den = 0.0;
    for (int j = 0; j <= nx; ++j)
      den += H.Hpp(g.xnode(j), varpi[i] + ux[j]) * m.at(i, j);
    den *= dx;
    if (!(den >= 0.5 * H.kappa))
      throw NumericalFailure("balance slope degenerate at t-index " + std::to_string(i));
    out[i] = balance_root(H, g, prob.Q[i], ux, m.row(i));
  }
  return out;
}

MFGSolution fixed_point_solve(const HamiltonianSpec& H, const ProblemData& prob,
                              double eps, const SolverOptions& opt,
                              const std::vector<double>* warm_varpi) {
  const GridSpec& g = prob.grid;
  SchemeOptions sch{opt.flux, eps};

  std::vector<double> varpi;
  if (warm_varpi) {
    varpi = *warm_varpi;
  } else {
    const double w0 = initial_price_root(H, prob, prob.uTp);
    varpi.assign(g.nt + 1, w0);
  }

  MFGSolution sol;
  sol.grid = g;
  sol.eps = eps;
  double theta = opt.theta;
  double prev = std::numeric_limits<double>::infinity();

  for (int it = 1; it <= opt.max_iter; ++it) {
    Field u = solve_hjb_backward(H, prob, varpi, sch);
    Field m = solve_fp_forward(H, prob, varpi, u, sch);
    const std::vector<double> res = balance_residual(H, prob, u, m, varpi);
    double sup = 0.0;
    for (double v : res) sup = std::max(sup, std::abs(v));

    sol.u = std::move(u);
    sol.m = std::move(m);
    sol.varpi = varpi;
    sol.iterations = it;
    sol.residual_sup = sup;

    if (sup <= opt.tol) {
      sol.converged = true;
      return sol;
    }
    if (sup > prev) theta = std::max(theta * 0.5, 1.0 / 64.0);
    prev = sup;

    const std::vector<double> pnew = price_update(H, prob, sol.u, sol.m, varpi);
    for (int i = 0; i <= g.nt; ++i) varpi[i] = theta * pnew[i] + (1.0 - theta) * varpi[i];
  }
  throw NonConvergence("price fixed point did not reach tol " + std::to_string(opt.tol),
                       opt.max_iter, sol.residual_sup);
}

SweepResult vanishing_viscosity_sweep(const HamiltonianSpec& H, const ProblemData& prob,
                                      const std::vector<double>& eps_list,
                                      const SolverOptions& opt) {
  if (eps_list.empty()) throw ConfigError("eps_list must not be empty");
  for (std::size_t k = 0; k < eps_list.size(); ++k) {
    if (!(eps_list[k] > 0.0)) throw ConfigError("eps_list entries must be positive");
    if (k > 0 && !(eps_list[k] < eps_list[k - 1]))
      throw ConfigError("eps_list must be strictly decreasing");
  }

  SweepResult out;
  out.eps_list = eps_list;
  const std::vector<double>* warm = nullptr;
  for (double eps : eps_list) {
    out.levels.push_back(fixed_point_solve(H, prob, eps, opt, warm));
    warm = &out.levels.back().varpi;
  }

  const int nt = prob.grid.nt;
  out.varpi_extrap.resize(nt + 1);
  if (out.levels.size() >= 2) {
    const auto& last = out.levels[out.levels.size() - 1].varpi;
    const auto& prev = out.levels[out.levels.size() - 2].varpi;
    for (int i = 0; i <= nt; ++i) out.varpi_extrap[i] = 2.0 * last[i] - prev[i];
  } else {
    out.varpi_extrap = out.levels.back().varpi;
  }

  // zero-viscosity evaluation along the extrapolated price
  SchemeOptions sch{opt.flux, 0.0};
  out.limit.grid = prob.grid;
  out.limit.eps = 0.0;
  out.limit.varpi = out.varpi_extrap;
  out.limit.u = solve_hjb_backward(H, prob, out.varpi_extrap, sch);
  out.limit.m = solve_fp_forward(H, prob, out.varpi_extrap, out.limit.u, sch);
  const std::vector<double> res =
      balance_residual(H, prob, out.limit.u, out.limit.m, out.varpi_extrap);
  for (double v : res) out.limit.residual_sup = std::max(out.limit.residual_sup, std::abs(v));
  out.limit.converged = true;
  out.limit.iterations = 0;
  return out;
}

}  // namespace pfmg
