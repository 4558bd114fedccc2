#include "core/mather.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace pfmg {

MatherResult solve_mather(const HamiltonianSpec& H, const ProblemData& prob,
                          const MeasureGrid& g, const MatherOptions& opt) {
  MatherResult out;
  out.cs = assemble_constraints(H, prob, g, opt.free_nu,
                                opt.free_nu ? nullptr : &opt.nu_cells);
  out.cert = displacement_certificate(out.cs);
  if (out.cert.applicable &&
      std::fabs(out.cert.delta) > opt.cert_tol * (1.0 + std::fabs(out.cert.supply_sum))) {
    out.infeasible = true;
    out.note = "terminal measure is not reachable: mean displacement misses the supply integral";
    return out;
  }
  out.lp = solve_lp_pdhg(out.cs, opt.pdhg);
  if (out.lp.infeasible_flag) {
    out.infeasible = true;
    out.note = out.lp.note;
    return out;
  }
  out.value = out.lp.primal_value;
  out.note = out.lp.converged ? "converged" : out.lp.note;
  return out;
}

HValueResult h_value(const HamiltonianSpec& H, const ProblemData& prob, const MeasureGrid& g,
                     const std::vector<double>& nu_cells, const MatherOptions& opt) {
  MatherOptions o = opt;
  o.free_nu = false;
  o.nu_cells = nu_cells;
  MatherResult r = solve_mather(H, prob, g, o);
  HValueResult out;
  out.cert = r.cert;
  out.lp = r.lp;
  out.feasible = !r.infeasible;
  out.value = r.value;
  return out;
}

namespace {

// conj_i(p) = max over the slice's cells of (p v - cost); valid for every p
double slice_conjugate(const ConstraintSystem& cs, int i, double p) {
  const MeasureGrid& g = cs.grid;
  double best = -1e300;
  for (int j = 0; j < g.nx; ++j)
    for (int k = 0; k < g.nv; ++k) {
      const double c = cs.cost[g.idx(i, j, k)];
      const double v = p * g.vcell(k) - c;
      if (v > best) best = v;
    }
  return best;
}

}  // namespace

ConjugateBound verify_conjugate_bound(const ConstraintSystem& cs, double lp_value) {
  const MeasureGrid& g = cs.grid;
  ConjugateBound out;
  out.slice_bound.resize(g.nt);
  for (int i = 0; i < g.nt; ++i) {
    const double q = cs.Qc[i];
    auto psi = [&](double p) { return p * q - slice_conjugate(cs, i, p); };
    double a = -1e4, b = 1e4;
    for (int it = 0; it < 140; ++it) {
      const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
      if (psi(m1) < psi(m2))
        a = m1;
      else
        b = m2;
    }
    const double pm = 0.5 * (a + b);
    double best = psi(pm);
    best = std::max(best, psi(0.0));  // never worse than the trivial probe
    out.slice_bound[i] = g.dt() * best;
    out.bound += g.dt() * best;
  }
  out.margin = lp_value - out.bound;
  return out;
}

}  // namespace pfmg
