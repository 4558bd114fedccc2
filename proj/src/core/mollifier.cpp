#include "core/mollifier.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace pfmg {

double bump_kernel(double s) {
  const double q = 1.0 - s * s;
  return q > 0.0 ? q * q * q : 0.0;
}

namespace {

// sample u on the node lattice with linear extension in x
double sample_x(const Field& u, int i, int j, int nx) {
  if (j < 0) return 2.0 * u.at(i, 0) - u.at(i, -j);
  if (j > nx) return 2.0 * u.at(i, nx) - u.at(i, 2 * nx - j);
  return u.at(i, j);
}

}  // namespace

Mollified mollify_solution(const GridSpec& g, const Field& u, double alpha) {
  if (!(alpha > 0.0)) throw InvalidArgument("mollify: alpha must be positive");
  Mollified out;
  out.alpha = alpha;
  out.rx = (int)std::ceil(alpha / g.dx()) - 1;
  out.rt = (int)std::ceil(alpha / g.dt()) - 1;
  if (out.rx < 0) out.rx = 0;
  if (out.rt < 0) out.rt = 0;
  if (out.rx > g.nx || out.rt >= g.nt)
    throw InvalidArgument("mollify: alpha too large for the grid");

  std::vector<double> wt(out.rt + 1), wx(2 * out.rx + 1);
  double st = 0.0, sx = 0.0;
  for (int l = 0; l <= out.rt; ++l) {
    wt[l] = bump_kernel(l * g.dt() / alpha);
    st += wt[l];
  }
  for (int l = -out.rx; l <= out.rx; ++l) {
    wx[l + out.rx] = bump_kernel(l * g.dx() / alpha);
    sx += wx[l + out.rx];
  }
  for (double& v : wt) v /= st;
  for (double& v : wx) v /= sx;

  out.imax = g.nt - out.rt;
  out.w = Field(g.nt + 1, g.nx + 1);
  for (int i = 0; i <= out.imax; ++i)
    for (int j = 0; j <= g.nx; ++j) {
      double acc = 0.0;
      for (int l = 0; l <= out.rt; ++l) {
        double inner = 0.0;
        for (int q = -out.rx; q <= out.rx; ++q)
          inner += wx[q + out.rx] * sample_x(u, i + l, j + q, g.nx);
        acc += wt[l] * inner;
      }
      out.w.at(i, j) = acc;
    }
  return out;
}

double commutation_residual(const HamiltonianSpec& H, const ProblemData& prob,
                            const MFGSolution& sol, double alpha) {
  const GridSpec& g = prob.grid;
  Mollified mo = mollify_solution(g, sol.u, alpha);
  const double dt = g.dt(), dx = g.dx();
  double sup = 0.0;
  for (int i = 1; i + 1 <= mo.imax; ++i)
    for (int j = 1; j < g.nx; ++j) {
      const double wt = (mo.w.at(i + 1, j) - mo.w.at(i - 1, j)) / (2.0 * dt);
      const double wx = (mo.w.at(i, j + 1) - mo.w.at(i, j - 1)) / (2.0 * dx);
      const double wxx = (mo.w.at(i, j + 1) - 2.0 * mo.w.at(i, j) + mo.w.at(i, j - 1)) / (dx * dx);
      const double res = -wt + H.H(g.xnode(j), sol.varpi[i] + wx) - sol.eps * wxx;
      if (res > sup) sup = res;
    }
  return sup;
}

}  // namespace pfmg
