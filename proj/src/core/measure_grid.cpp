#include "core/measure_grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/errors.hpp"

namespace pfmg {

void MeasureGrid::validate() const {
  if (!(T > 0.0) || !(R > 0.0) || !(Vmax > 0.0))
    throw ConfigError("measure grid: T, R, Vmax must be positive");
  if (nt < 1 || nx < 2 || nv < 2)
    throw ConfigError("measure grid: need nt >= 1, nx >= 2, nv >= 2");
}

double DiscreteMeasure::total_mass() const {
  double s = 0.0;
  for (double w : mu) s += w;
  return s;
}

double DiscreteMeasure::slice_mass(int i) const {
  double s = 0.0;
  const std::size_t base = grid.idx(i, 0, 0);
  const std::size_t n = static_cast<std::size_t>(grid.nx) * grid.nv;
  for (std::size_t q = 0; q < n; ++q) s += mu[base + q];
  return s;
}

double DiscreteMeasure::nu_mass() const {
  double s = 0.0;
  for (double w : nu) s += w;
  return s;
}

double DiscreteMeasure::nu_mean() const {
  double s = 0.0;
  for (int j = 0; j < grid.nx; ++j) s += grid.xcell(j) * nu[j];
  return s;
}

double DiscreteMeasure::slice_moment(int i, double gamma) const {
  double s = 0.0;
  for (int j = 0; j < grid.nx; ++j) {
    const double wx = std::pow(std::abs(grid.xcell(j)), gamma);
    for (int k = 0; k < grid.nv; ++k) s += wx * mu[grid.idx(i, j, k)];
  }
  return s / grid.dt();
}

namespace {

// index + fraction of a linear two-cell split along one axis; a position up
// to one cell beyond the hull collapses onto the edge cell, farther out is a
// configuration error
void split_axis(double pos, double origin, double h, int ncells, const char* axis,
                int& i0, double& frac) {
  const double rel = (pos - origin) / h;
  i0 = static_cast<int>(std::floor(rel));
  if (i0 > ncells - 2) i0 = ncells - 2;
  if (i0 < 0) i0 = 0;
  frac = rel - i0;
  if (frac < -1.0 - 1e-9 || frac > 2.0 + 1e-9)
    throw ConfigError(std::string("deposit outside the ") + axis +
                      " cell hull (position " + std::to_string(pos) + ")");
  frac = std::clamp(frac, 0.0, 1.0);
}

}  // namespace

void DiscreteMeasure::deposit(int i, double x, double v, double mass) {
  if (mass == 0.0) return;
  int j0, k0;
  double fx, fv;
  split_axis(x, grid.xcell(0), grid.dx(), grid.nx, "x", j0, fx);
  split_axis(v, grid.vcell(0), grid.dv(), grid.nv, "v", k0, fv);
  mu[grid.idx(i, j0, k0)] += mass * (1.0 - fx) * (1.0 - fv);
  mu[grid.idx(i, j0 + 1, k0)] += mass * fx * (1.0 - fv);
  mu[grid.idx(i, j0, k0 + 1)] += mass * (1.0 - fx) * fv;
  mu[grid.idx(i, j0 + 1, k0 + 1)] += mass * fx * fv;
}

void DiscreteMeasure::deposit_nu(double x, double mass) {
  if (mass == 0.0) return;
  int j0;
  double fx;
  split_axis(x, grid.xcell(0), grid.dx(), grid.nx, "x", j0, fx);
  nu[j0] += mass * (1.0 - fx);
  nu[j0 + 1] += mass * fx;
}

std::vector<double> cells_from_density(const GridSpec& g, const std::vector<double>& density,
                                       double target_mass) {
  if (density.size() != static_cast<std::size_t>(g.nx) + 1)
    throw InvalidArgument("density sample count mismatch");
  std::vector<double> cells(g.nx);
  double total = 0.0;
  for (int j = 0; j < g.nx; ++j) {
    cells[j] = 0.5 * (density[j] + density[j + 1]) * g.dx();
    total += cells[j];
  }
  if (!(total > 0.0)) throw NumericalFailure("cell resampling lost all mass");
  const double scale = target_mass / total;
  for (double& c : cells) c *= scale;
  return cells;
}

double w1_distance(const MeasureGrid& g, const std::vector<double>& wa,
                   const std::vector<double>& wb) {
  const double ma = [&] { double s = 0; for (double v : wa) s += v; return s; }();
  const double mb = [&] { double s = 0; for (double v : wb) s += v; return s; }();
  if (!(ma > 0.0) || !(mb > 0.0)) return 0.0;
  double cda = 0.0, cdb = 0.0, dist = 0.0;
  for (int j = 0; j < g.nx; ++j) {
    cda += wa[j] / ma;
    cdb += wb[j] / mb;
    dist += std::abs(cda - cdb) * g.dx();
  }
  return dist;
}

std::vector<double> build_cost_vector(const MeasureGrid& g, const HamiltonianSpec& H,
                                      const ProblemData& prob, bool free_nu) {
  if (g.nx != prob.grid.nx)
    throw InvalidArgument("measure grid x-resolution must match the field grid");
  std::vector<double> c(g.cells() + (free_nu ? g.nx : 0), 0.0);
  for (int j = 0; j < g.nx; ++j) {
    const double x = g.xcell(j);
    const double uTp_c = 0.5 * (prob.uTp[j] + prob.uTp[j + 1]);
    for (int k = 0; k < g.nv; ++k) {
      const double v = g.vcell(k);
      const double Lxv = legendre_transform(H, x, v);
      c[g.idx(0, j, k)] = Lxv + v * uTp_c;
    }
  }
  // cost is time-independent: copy the first slice across
  const std::size_t per = static_cast<std::size_t>(g.nx) * g.nv;
  for (int i = 1; i < g.nt; ++i)
    std::copy(c.begin(), c.begin() + per, c.begin() + i * per);
  return c;
}

double measure_cost(const DiscreteMeasure& meas, const HamiltonianSpec& H,
                    const ProblemData& prob) {
  const std::vector<double> c = build_cost_vector(meas.grid, H, prob, false);
  double s = 0.0;
  for (std::size_t q = 0; q < meas.mu.size(); ++q) s += c[q] * meas.mu[q];
  return s;
}

std::vector<double> supply_at_cells(const MeasureGrid& g, const ProblemData& prob) {
  if (g.nt != prob.grid.nt)
    throw InvalidArgument("measure grid t-resolution must match the field grid");
  return prob.Qc;
}

}  // namespace pfmg
