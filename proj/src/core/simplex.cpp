#include "core/simplex.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace pfmg {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kRatioTie = 1e-10;

struct Tableau {
  int m, n;       // constraint rows, original columns
  int width;      // n + m artificials + 1 rhs
  std::vector<std::vector<double>> t;
  std::vector<int> basis;
  std::vector<double> z;  // maintained reduced-cost row; z[rhs] = -objective

  double& at(int i, int j) { return t[i][j]; }
  int rhs_col() const { return width - 1; }

  void init_objective(const std::vector<double>& cost) {
    z.assign(width, 0.0);
    for (int j = 0; j + 1 < width; ++j) z[j] = cost[j];
    for (int i = 0; i < m; ++i) {
      const double cb = cost[basis[i]];
      if (cb == 0.0) continue;
      for (int j = 0; j < width; ++j) z[j] -= cb * t[i][j];
    }
  }

  double objective() const { return -z[rhs_col()]; }

  void pivot(int pr, int pc) {
    const double piv = t[pr][pc];
    for (int j = 0; j < width; ++j) t[pr][j] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == pr) continue;
      const double f = t[i][pc];
      if (f == 0.0) continue;
      for (int j = 0; j < width; ++j) t[i][j] -= f * t[pr][j];
    }
    const double fz = z[pc];
    if (fz != 0.0)
      for (int j = 0; j < width; ++j) z[j] -= fz * t[pr][j];
    basis[pr] = pc;
  }

  int pick_entering(int max_col, bool bland) const {
    if (bland) {
      for (int j = 0; j < max_col; ++j)
        if (z[j] < -kCostTol) return j;
      return -1;
    }
    int enter = -1;
    double best = -kCostTol;
    for (int j = 0; j < max_col; ++j)
      if (z[j] < best) {
        best = z[j];
        enter = j;
      }
    return enter;
  }

  // Dantzig entering rule with a permanent switch to Bland's lowest-index
  // rule once the objective stalls, which restores guaranteed termination on
  // degenerate vertices.  The maintained z row accumulates roundoff across
  // pivots (degenerate ties can force small pivot elements), so it is rebuilt
  // from the tableau every kRefreshEvery pivots and again before accepting an
  // optimality claim.
  bool optimize(const std::vector<double>& cost, int max_col, bool* unbounded) {
    const long cap = 200000;
    const long kRefreshEvery = 64;
    bool bland = false;
    long stall = 0, since_refresh = 0;
    double last_obj = objective();
    for (long step = 0; step < cap; ++step) {
      int enter = pick_entering(max_col, bland);
      if (enter < 0) {
        init_objective(cost);
        since_refresh = 0;
        enter = pick_entering(max_col, bland);
        if (enter < 0) return true;
      }
      int leave = -1;
      double best = 0.0;
      for (int i = 0; i < m; ++i) {
        const double a = t[i][enter];
        if (a <= kPivotTol) continue;
        const double ratio = t[i][rhs_col()] / a;
        if (leave < 0 || ratio < best - kRatioTie) {
          leave = i;
          best = ratio;
        } else if (ratio <= best + kRatioTie) {
          // tie: Bland needs the lowest basis index for anti-cycling, the
          // Dantzig phase takes the largest pivot element for stability
          const bool better = bland ? basis[i] < basis[leave] : a > t[leave][enter];
          if (better) {
            leave = i;
            if (ratio < best) best = ratio;
          }
        }
      }
      if (leave < 0) {
        if (unbounded) *unbounded = true;
        return false;
      }
      pivot(leave, enter);
      if (++since_refresh >= kRefreshEvery) {
        init_objective(cost);
        since_refresh = 0;
      }
      if (!bland) {
        const double obj = objective();
        if (obj < last_obj - 1e-13 * (1.0 + std::fabs(last_obj))) {
          last_obj = obj;
          stall = 0;
        } else if (++stall > 2000) {
          bland = true;
        }
      }
    }
    throw NumericalFailure("simplex did not terminate");
  }
};

}  // namespace

SimplexResult solve_lp_simplex(std::vector<std::vector<double>> A, std::vector<double> b,
                               std::vector<double> c) {
  const int m = (int)A.size();
  const int n = m ? (int)A[0].size() : 0;
  if ((int)b.size() != m || (int)c.size() != n)
    throw InvalidArgument("simplex: shape mismatch");
  if (n > 4000 || m > 1200)
    throw InvalidArgument("simplex reference is restricted to small instances");

  std::vector<double> sign(m, 1.0);
  Tableau tb;
  tb.m = m;
  tb.n = n;
  tb.width = n + m + 1;
  tb.t.assign(m, std::vector<double>(tb.width, 0.0));
  tb.basis.resize(m);
  for (int i = 0; i < m; ++i) {
    if (b[i] < 0.0) sign[i] = -1.0;
    for (int j = 0; j < n; ++j) tb.t[i][j] = sign[i] * A[i][j];
    tb.t[i][n + i] = 1.0;
    tb.t[i][tb.rhs_col()] = sign[i] * b[i];
    tb.basis[i] = n + i;
  }

  SimplexResult res;

  // phase 1: minimize the artificial mass
  std::vector<double> phase1(n + m, 0.0);
  for (int i = 0; i < m; ++i) phase1[n + i] = 1.0;
  tb.init_objective(phase1);
  bool unbounded = false;
  tb.optimize(phase1, n + m, &unbounded);
  if (tb.objective() > 1e-7) {
    res.feasible = false;
    return res;
  }
  res.feasible = true;

  // clear leftover degenerate artificials where a real pivot exists
  for (int i = 0; i < m; ++i) {
    if (tb.basis[i] < n) continue;
    for (int j = 0; j < n; ++j)
      if (std::fabs(tb.t[i][j]) > kPivotTol) {
        tb.pivot(i, j);
        break;
      }
  }

  // phase 2 over the original columns only
  std::vector<double> phase2(n + m, 0.0);
  for (int j = 0; j < n; ++j) phase2[j] = c[j];
  tb.init_objective(phase2);
  unbounded = false;
  if (!tb.optimize(phase2, n, &unbounded)) {
    res.bounded = false;
    return res;
  }

  res.x.assign(n, 0.0);
  for (int i = 0; i < m; ++i)
    if (tb.basis[i] < n) res.x[tb.basis[i]] = tb.t[i][tb.rhs_col()];
  res.value = 0.0;
  for (int j = 0; j < n; ++j) res.value += c[j] * res.x[j];
  res.y.assign(m, 0.0);
  for (int i = 0; i < m; ++i) res.y[i] = sign[i] * (-tb.z[n + i]);
  return res;
}

SimplexResult solve_lp_simplex(const ConstraintSystem& cs) {
  std::vector<std::vector<double>> A(cs.nrows, std::vector<double>(cs.ncols, 0.0));
  for (int r = 0; r < cs.nrows; ++r)
    for (int p = cs.row_ptr[r]; p < cs.row_ptr[r + 1]; ++p)
      A[r][cs.col_idx[p]] = cs.val[p];
  return solve_lp_simplex(std::move(A), cs.rhs, cs.cost);
}

}  // namespace pfmg
