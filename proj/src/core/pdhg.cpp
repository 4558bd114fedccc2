#include "core/pdhg.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace pfmg {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double sup_norm(const std::vector<double>& a) {
  double s = 0.0;
  for (double v : a) s = std::max(s, std::fabs(v));
  return s;
}

}  // namespace

LpSolution solve_lp_pdhg(const ConstraintSystem& cs, const PdhgOptions& opt) {
  const int n = cs.ncols, m = cs.nrows;
  if (!(opt.relax > 0.0 && opt.relax < 2.0))
    throw InvalidArgument("lp relaxation factor must lie in (0, 2)");
  if (!(opt.balance > 0.0))
    throw InvalidArgument("lp balance factor must be positive");
  LpSolution sol;

  // diagonal step sizes from absolute row/column sums
  std::vector<double> tau(n, 0.0), sigma(m, 0.0);
  for (int r = 0; r < m; ++r) {
    double rs = 0.0;
    for (int p = cs.row_ptr[r]; p < cs.row_ptr[r + 1]; ++p) {
      const double a = std::fabs(cs.val[p]);
      rs += a;
      tau[cs.col_idx[p]] += a;
    }
    sigma[r] = (rs > 0.0 ? 1.0 / rs : 1.0) / opt.balance;
  }
  for (int j = 0; j < n; ++j) tau[j] = (tau[j] > 0.0 ? 1.0 / tau[j] : 1.0) * opt.balance;

  const double bsup = sup_norm(cs.rhs), csup = sup_norm(cs.cost);
  const double rho = opt.relax;

  // relaxed iterate (x, y) and the proximal trial pair (xt, yt); residuals
  // and values are always reported at the trial pair, which is the one that
  // lives in the positive orthant
  std::vector<double> x(n, 0.0), y(m, 0.0), ax(m, 0.0);
  std::vector<double> xt(n), yt(m), axt(m), aty(n);
  if (opt.x0) {
    if ((int)opt.x0->size() != n) throw InvalidArgument("warm start x size mismatch");
    for (int j = 0; j < n; ++j) x[j] = std::max(0.0, (*opt.x0)[j]);
    cs.multiply(x.data(), ax.data());
  }
  if (opt.y0) {
    if ((int)opt.y0->size() != m) throw InvalidArgument("warm start y size mismatch");
    y = *opt.y0;
  }

  double best_primal_res = -1.0;
  long best_iter = 0;
  int adapt_left = opt.balance_adapt;
  double adapt_factor = 2.0;

  for (long it = 1; it <= opt.max_iter; ++it) {
    cs.multiply_T(y.data(), aty.data());
    for (int j = 0; j < n; ++j) {
      const double v = x[j] - tau[j] * (cs.cost[j] - aty[j]);
      xt[j] = v > 0.0 ? v : 0.0;
    }
    cs.multiply(xt.data(), axt.data());
    for (int r = 0; r < m; ++r)
      yt[r] = y[r] + sigma[r] * (cs.rhs[r] - (2.0 * axt[r] - ax[r]));
    for (int j = 0; j < n; ++j) x[j] += rho * (xt[j] - x[j]);
    for (int r = 0; r < m; ++r) {
      y[r] += rho * (yt[r] - y[r]);
      ax[r] += rho * (axt[r] - ax[r]);
    }
    sol.iterations = it;

    if (it % opt.check_every != 0 && it != opt.max_iter) continue;

    double pres = 0.0;
    for (int r = 0; r < m; ++r) pres = std::max(pres, std::fabs(axt[r] - cs.rhs[r]));
    pres /= 1.0 + bsup;
    cs.multiply_T(yt.data(), aty.data());
    double dres = 0.0;
    for (int j = 0; j < n; ++j) dres = std::max(dres, aty[j] - cs.cost[j]);
    dres = std::max(dres, 0.0) / (1.0 + csup);
    const double pv = dot(cs.cost, xt), dv = dot(cs.rhs, yt);
    const double gap = std::fabs(pv - dv) / (1.0 + std::fabs(pv) + std::fabs(dv));

    sol.primal_value = pv;
    sol.dual_value = dv;
    sol.primal_res = pres;
    sol.dual_res = dres;
    sol.gap = gap;

    if (pres <= opt.tol && dres <= opt.tol && gap <= opt.tol) {
      sol.converged = true;
      sol.x = xt;
      sol.y = yt;
      return sol;
    }

    if (adapt_left > 0) {
      double scale = 1.0;
      if (pres > 10.0 * dres)
        scale = 1.0 / adapt_factor;  // primal residual lags: larger dual steps
      else if (dres > 10.0 * pres)
        scale = adapt_factor;
      if (scale != 1.0) {
        for (int j = 0; j < n; ++j) tau[j] *= scale;
        for (int r = 0; r < m; ++r) sigma[r] /= scale;
        --adapt_left;
        // each use decays the factor toward 1 so the balance settles instead
        // of oscillating around the crossover ratio
        adapt_factor = std::pow(adapt_factor, 0.9);
      }
    }

    if (best_primal_res < 0.0 || pres < 0.5 * best_primal_res) {
      best_primal_res = pres;
      best_iter = it;
    }
    const double ynorm = sup_norm(yt);
    if (it >= opt.infeas_min_iters && ynorm > opt.infeas_y_norm * (1.0 + bsup) &&
        pres > opt.infeas_primal_floor && it - best_iter >= opt.infeas_min_iters) {
      sol.infeasible_flag = true;
      sol.note = "multiplier norm diverged while the primal residual stalled";
      sol.x = xt;
      sol.y = yt;
      return sol;
    }
    if (!std::isfinite(pres) || !std::isfinite(ynorm))
      throw NumericalFailure("lp iteration produced non-finite values");
  }
  sol.note = "iteration cap reached";
  sol.x = xt;
  sol.y = yt;
  return sol;
}

}  // namespace pfmg
