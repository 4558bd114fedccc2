#include "core/diagnostics.hpp"

#include <cmath>
#include <functional>

#include "core/errors.hpp"
#include "core/mollifier.hpp"

namespace pfmg {

double subsolution_residual(const HamiltonianSpec& H, const ProblemData& prob,
                            const MFGSolution& sol) {
  const GridSpec& g = prob.grid;
  const double dt = g.dt(), dx = g.dx();
  double sup = 0.0;
  for (int i = 1; i < g.nt; ++i)
    for (int j = 1; j < g.nx; ++j) {
      const double ut = (sol.u.at(i + 1, j) - sol.u.at(i - 1, j)) / (2.0 * dt);
      const double ux = (sol.u.at(i, j + 1) - sol.u.at(i, j - 1)) / (2.0 * dx);
      const double uxx =
          (sol.u.at(i, j + 1) - 2.0 * sol.u.at(i, j) + sol.u.at(i, j - 1)) / (dx * dx);
      const double res = -ut + H.H(g.xnode(j), sol.varpi[i] + ux) - sol.eps * uxx;
      if (res > sup) sup = res;
    }
  return sup;
}

ResidualProfile commutation_order_fit(const HamiltonianSpec& H, const ProblemData& prob,
                                      const MFGSolution& sol,
                                      const std::vector<double>& alphas) {
  ResidualProfile out;
  out.alpha = alphas;
  out.residual.reserve(alphas.size());
  for (double a : alphas) out.residual.push_back(commutation_residual(H, prob, sol, a));

  bool any_live = false;
  for (double r : out.residual)
    if (r >= 1e-9) any_live = true;
  out.at_floor = !any_live;
  if (out.at_floor) return out;

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (size_t i = 0; i < alphas.size(); ++i) {
    if (out.residual[i] < 1e-12) continue;
    const double lx = std::log(alphas[i]), ly = std::log(out.residual[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n >= 2) {
    const double den = n * sxx - sx * sx;
    if (std::fabs(den) > 1e-30) out.slope = (n * sxy - sx * sy) / den;
  }
  return out;
}

double lipschitz_estimate(const MFGSolution& sol) {
  double best = 0.0;
  const double dt = sol.grid.dt();
  for (size_t i = 0; i + 1 < sol.varpi.size(); ++i)
    best = std::max(best, std::fabs(sol.varpi[i + 1] - sol.varpi[i]) / dt);
  return best;
}

MomentTrace moment_trace(const ProblemData& prob, const MFGSolution& sol, double gamma) {
  const GridSpec& g = prob.grid;
  MomentTrace out;
  out.gamma = gamma;
  out.t.resize(g.nt + 1);
  out.value.resize(g.nt + 1);
  for (int i = 0; i <= g.nt; ++i) {
    out.t[i] = g.tnode(i);
    double s = 0.0;
    for (int j = 0; j <= g.nx; ++j)
      s += std::pow(std::fabs(g.xnode(j)), gamma) * sol.m.at(i, j);
    out.value[i] = s * g.dx();
  }
  out.initial = out.value.front();
  out.sup = 0.0;
  for (double v : out.value) out.sup = std::max(out.sup, v);
  return out;
}

WeakConvergenceReport weak_convergence_diagnostic(const std::vector<DiscreteMeasure>& levels,
                                                  const std::vector<double>& labels,
                                                  const DiscreteMeasure& reference,
                                                  double zeta1, double zeta2) {
  if (levels.size() != labels.size())
    throw InvalidArgument("weak_convergence_diagnostic: labels must match levels");
  const MeasureGrid& g = reference.grid;
  const double R = g.R, V = g.Vmax, T = g.T;

  using Fn = std::function<double(double, double, double)>;
  std::vector<Fn> fam = {
      [](double, double, double) { return 1.0; },
      [T](double t, double, double) { return t / T; },
      [R](double, double x, double) { return x / R; },
      [V](double, double, double v) { return v / V; },
      [R](double, double x, double) { return (x / R) * (x / R); },
      [V](double, double, double v) { return (v / V) * (v / V); },
      [R, V](double, double x, double v) { return (x / R) * (v / V); },
      [T, V](double t, double, double v) { return (t / T) * (v / V); },
      [R](double, double x, double) { return std::sin(M_PI * x / R); },
      [R](double, double x, double) { return std::cos(M_PI * x / R); },
      [V](double, double, double v) { return std::sin(M_PI * v / V); },
      [R, V](double, double x, double v) { return std::sin(M_PI * x / R) * (v / V); },
  };

  auto pair_all = [&](const DiscreteMeasure& mu, std::vector<double>& out) {
    out.assign(fam.size(), 0.0);
    for (int i = 0; i < g.nt; ++i)
      for (int j = 0; j < g.nx; ++j)
        for (int k = 0; k < g.nv; ++k) {
          const double w = mu.mu[g.idx(i, j, k)];
          if (w == 0.0) continue;
          for (size_t f = 0; f < fam.size(); ++f)
            out[f] += fam[f](g.tcell(i), g.xcell(j), g.vcell(k)) * w;
        }
  };
  auto zmoment = [&](const DiscreteMeasure& mu) {
    double s = 0.0;
    for (int i = 0; i < g.nt; ++i)
      for (int j = 0; j < g.nx; ++j)
        for (int k = 0; k < g.nv; ++k)
          s += (std::pow(std::fabs(g.xcell(j)), zeta1) +
                std::pow(std::fabs(g.vcell(k)), zeta2)) *
               mu.mu[g.idx(i, j, k)];
    return s;
  };

  std::vector<double> ref_pair;
  pair_all(reference, ref_pair);

  WeakConvergenceReport rep;
  rep.label = labels;
  rep.reference_zeta_moment = zmoment(reference);
  for (const DiscreteMeasure& mu : levels) {
    if (mu.grid.nt != g.nt || mu.grid.nx != g.nx || mu.grid.nv != g.nv)
      throw InvalidArgument("weak_convergence_diagnostic: measures must share the grid");
    std::vector<double> p;
    pair_all(mu, p);
    double d = 0.0;
    for (size_t f = 0; f < fam.size(); ++f) d = std::max(d, std::fabs(p[f] - ref_pair[f]));
    rep.discrepancy.push_back(d);
    rep.zeta_moment.push_back(zmoment(mu));
  }
  rep.decreasing = true;
  for (size_t i = 1; i < rep.discrepancy.size(); ++i)
    if (rep.discrepancy[i] > rep.discrepancy[i - 1] + 1e-12) rep.decreasing = false;
  return rep;
}

}  // namespace pfmg
