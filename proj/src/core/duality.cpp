#include "core/duality.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace pfmg {

double dual_value(const ProblemData& prob, const MFGSolution& sol) {
  const GridSpec& g = prob.grid;
  double init = 0.0;
  for (int j = 0; j <= g.nx; ++j)
    init += (sol.u.at(0, j) - prob.uT[j]) * prob.m0[j];
  init *= g.dx();
  double qv = 0.0;
  for (int i = 0; i < g.nt; ++i)
    qv += 0.5 * g.dt() * (prob.Q[i] * sol.varpi[i] + prob.Q[i + 1] * sol.varpi[i + 1]);
  return init - qv;
}

void prolong_measure_warm_start(const MeasureGrid& pg, const LpSolution& p,
                                const MeasureGrid& cg, bool free_nu,
                                std::vector<double>& x0, std::vector<double>& y0) {
  if (cg.nt != 2 * pg.nt || cg.nx != 2 * pg.nx || cg.nv != 2 * pg.nv)
    throw InvalidArgument("prolong_measure_warm_start: fine grid must double the coarse one");
  const long pcells = pg.cells(), ccells = cg.cells();
  x0.assign(ccells + (free_nu ? cg.nx : 0), 0.0);
  for (int i = 0; i < pg.nt; ++i)
    for (int j = 0; j < pg.nx; ++j)
      for (int k = 0; k < pg.nv; ++k) {
        const double w = p.x[pg.idx(i, j, k)] / 8.0;
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
              x0[cg.idx(2 * i + a, 2 * j + b, 2 * k + c)] = w;
      }
  if (free_nu) {
    for (int j = 0; j < pg.nx; ++j) {
      const double w = p.x[pcells + j] / 2.0;
      x0[ccells + 2 * j] = w;
      x0[ccells + 2 * j + 1] = w;
    }
  }

  y0.assign((long)(cg.nt + 1) * (cg.nx + 1) + 2 * cg.nt + (free_nu ? 1 : 0), 0.0);
  const int pw = pg.nx + 1, cw = cg.nx + 1;
  auto pnode = [&](int a, int b) { return p.y[a * pw + b]; };
  for (int a = 0; a <= cg.nt; ++a)
    for (int b = 0; b <= cg.nx; ++b) {
      const int ia = a / 2, jb = b / 2;
      double v;
      if (a % 2 == 0 && b % 2 == 0)
        v = pnode(ia, jb);
      else if (a % 2 == 0)
        v = 0.5 * (pnode(ia, jb) + pnode(ia, jb + 1));
      else if (b % 2 == 0)
        v = 0.5 * (pnode(ia, jb) + pnode(ia + 1, jb));
      else
        v = 0.25 * (pnode(ia, jb) + pnode(ia, jb + 1) + pnode(ia + 1, jb) +
                    pnode(ia + 1, jb + 1));
      y0[(long)a * cw + b] = v;
    }
  const long pbal = (long)(pg.nt + 1) * pw, cbal = (long)(cg.nt + 1) * cw;
  for (int i = 0; i < cg.nt; ++i) {
    y0[cbal + i] = p.y[pbal + i / 2];
    y0[cbal + cg.nt + i] = p.y[pbal + pg.nt + i / 2];
  }
  if (free_nu) y0[cbal + 2 * cg.nt] = p.y[pbal + 2 * pg.nt];
}

DualityReport gap_report(const HamiltonianSpec& H, const ProblemFactory& make,
                         const DualityOptions& opt) {
  if (opt.levels < 1) throw InvalidArgument("gap_report: need at least one level");
  DualityReport rep;
  MeasureGrid prev_mg;
  LpSolution prev_lp;
  bool have_prev = false;
  for (int L = 0; L < opt.levels; ++L) {
    const int nt = opt.nt0 << L, nx = opt.nx0 << L, nv = opt.nv0 << L;
    ProblemData prob = make(nt, nx);

    const double eps = opt.eps0 * std::pow(opt.eps_factor, L);
    MFGSolution sol = fixed_point_solve(H, prob, eps, opt.mfg);

    MeasureGrid mg;
    mg.T = prob.grid.T;
    mg.R = prob.grid.R;
    mg.Vmax = opt.Vmax;
    mg.nt = nt;
    mg.nx = nx;
    mg.nv = nv;
    MatherOptions mopt;
    mopt.pdhg = opt.pdhg;
    // the program value only has to resolve gaps of the order of the
    // discretization error, so the stopping tolerance follows the mesh
    const double h = std::max(prob.grid.dt(), std::max(prob.grid.dx(), mg.dv()));
    mopt.pdhg.tol = std::max(opt.pdhg.tol, opt.lp_tol_scale * h);
    std::vector<double> x0, y0;
    if (have_prev) {
      prolong_measure_warm_start(prev_mg, prev_lp, mg, true, x0, y0);
      mopt.pdhg.x0 = &x0;
      mopt.pdhg.y0 = &y0;
    }
    MatherResult mr = solve_mather(H, prob, mg, mopt);
    if (mr.infeasible) throw InfeasibleProblem("measure program infeasible inside gap ladder", "{}");
    prev_mg = mg;
    prev_lp = mr.lp;
    have_prev = true;

    DualityLevel lv;
    lv.level = L;
    lv.dt = prob.grid.dt();
    lv.dx = prob.grid.dx();
    lv.dv = mg.dv();
    lv.h = std::max(lv.dt, std::max(lv.dx, lv.dv));
    lv.eps = eps;
    lv.dual = dual_value(prob, sol);
    lv.primal = mr.value;
    lv.gap = lv.primal - lv.dual;
    lv.lp_iterations = mr.lp.iterations;
    lv.lp_converged = mr.lp.converged;
    lv.lp_primal_res = mr.lp.primal_res;
    lv.lp_gap = mr.lp.gap;
    lv.mfg_iterations = sol.iterations;
    lv.mfg_residual = sol.residual_sup;
    rep.levels.push_back(lv);
  }
  rep.final_gap = rep.levels.back().gap;
  rep.gaps_decreasing = true;
  for (size_t i = 1; i < rep.levels.size(); ++i)
    if (std::fabs(rep.levels[i].gap) > std::fabs(rep.levels[i - 1].gap) + 1e-12)
      rep.gaps_decreasing = false;
  if (rep.levels.size() >= 2) {
    double acc = 0.0;
    int cnt = 0;
    for (size_t i = 1; i < rep.levels.size(); ++i) {
      const double a = std::fabs(rep.levels[i - 1].gap), b = std::fabs(rep.levels[i].gap);
      if (a > 1e-14 && b > 1e-14) {
        acc += std::log2(a / b);
        ++cnt;
      }
    }
    rep.rate = cnt ? acc / cnt : 0.0;
  }
  return rep;
}

}  // namespace pfmg
