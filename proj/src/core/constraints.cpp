#include "core/constraints.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "core/errors.hpp"

namespace pfmg {

void ConstraintSystem::multiply(const double* x, double* y) const {
  for (int r = 0; r < nrows; ++r) {
    double s = 0.0;
    for (int p = row_ptr[r]; p < row_ptr[r + 1]; ++p) s += val[p] * x[col_idx[p]];
    y[r] = s;
  }
}

void ConstraintSystem::multiply_T(const double* y, double* out) const {
  for (int c = 0; c < ncols; ++c) out[c] = 0.0;
  for (int r = 0; r < nrows; ++r) {
    const double yr = y[r];
    if (yr == 0.0) continue;
    for (int p = row_ptr[r]; p < row_ptr[r + 1]; ++p) out[col_idx[p]] += val[p] * yr;
  }
}

std::vector<double> ConstraintSystem::residual(const std::vector<double>& z) const {
  if ((int)z.size() != ncols) throw InvalidArgument("residual: size mismatch");
  std::vector<double> r(nrows);
  multiply(z.data(), r.data());
  for (int i = 0; i < nrows; ++i) r[i] -= rhs[i];
  return r;
}

double ConstraintSystem::residual_sup(const std::vector<double>& z) const {
  auto r = residual(z);
  double s = 0.0;
  for (double v : r) s = std::max(s, std::fabs(v));
  return s;
}

ConstraintSystem assemble_constraints(const HamiltonianSpec& H, const ProblemData& prob,
                                      const MeasureGrid& g, bool free_nu,
                                      const std::vector<double>* nu_fixed) {
  g.validate();
  if (g.nt != prob.grid.nt || g.nx != prob.grid.nx)
    throw InvalidArgument("assemble_constraints: measure grid must share nt,nx with the problem grid");
  if (!free_nu && (nu_fixed == nullptr || (int)nu_fixed->size() != g.nx))
    throw InvalidArgument("assemble_constraints: fixed mode needs nu weights per x-cell");

  ConstraintSystem cs;
  cs.grid = g;
  cs.free_nu = free_nu;
  const int nt = g.nt, nx = g.nx, nv = g.nv;
  const int ncells = (int)g.cells();
  cs.ncols = ncells + (free_nu ? nx : 0);
  cs.nrows = (nt + 1) * (nx + 1) + nt + nt + (free_nu ? 1 : 0);

  cs.m0_cells = cells_from_density(prob.grid, prob.m0, prob.density_mass(prob.m0));
  if (!free_nu) cs.nu_cells = *nu_fixed;
  cs.Qc = supply_at_cells(g, prob);

  cs.cost = build_cost_vector(g, H, prob, free_nu);

  cs.row_ptr.reserve(cs.nrows + 1);
  cs.row_ptr.push_back(0);
  cs.rhs.reserve(cs.nrows);
  cs.row_kind.reserve(cs.nrows);
  const double ht = 0.5 / g.dt(), hx = 0.5 / g.dx();

  // holonomy block: one row per node-lattice hat (a,b)
  for (int a = 0; a <= nt; ++a) {
    for (int b = 0; b <= nx; ++b) {
      double r = 0.0;
      for (int di = -1; di <= 0; ++di) {
        const int i = a + di;
        if (i < 0 || i >= nt) continue;
        const double st = (di == -1) ? ht : -ht;  // hat'_a * hat_b at the cell center
        for (int dj = -1; dj <= 0; ++dj) {
          const int j = b + dj;
          if (j < 0 || j >= nx) continue;
          const double sx = (dj == -1) ? hx : -hx;  // hat_a * hat'_b at the cell center
          for (int k = 0; k < nv; ++k) {
            cs.col_idx.push_back((int)g.idx(i, j, k));
            cs.val.push_back(st + g.vcell(k) * sx);
          }
        }
      }
      if (a == 0) {
        if (b - 1 >= 0) r -= 0.5 * cs.m0_cells[b - 1];
        if (b < nx) r -= 0.5 * cs.m0_cells[b];
      }
      if (a == nt) {
        if (free_nu) {
          if (b - 1 >= 0) {
            cs.col_idx.push_back(ncells + b - 1);
            cs.val.push_back(-0.5);
          }
          if (b < nx) {
            cs.col_idx.push_back(ncells + b);
            cs.val.push_back(-0.5);
          }
        } else {
          if (b - 1 >= 0) r += 0.5 * cs.nu_cells[b - 1];
          if (b < nx) r += 0.5 * cs.nu_cells[b];
        }
      }
      cs.row_ptr.push_back((int)cs.col_idx.size());
      cs.rhs.push_back(r);
      cs.row_kind.push_back(RowKind::holonomy);
    }
  }

  // balance block: mean velocity matches supply on every time slice
  for (int i = 0; i < nt; ++i) {
    for (int j = 0; j < nx; ++j)
      for (int k = 0; k < nv; ++k) {
        cs.col_idx.push_back((int)g.idx(i, j, k));
        cs.val.push_back(g.vcell(k) - cs.Qc[i]);
      }
    cs.row_ptr.push_back((int)cs.col_idx.size());
    cs.rhs.push_back(0.0);
    cs.row_kind.push_back(RowKind::balance);
  }

  // slice mass block: each time slab carries mass dt
  for (int i = 0; i < nt; ++i) {
    for (int j = 0; j < nx; ++j)
      for (int k = 0; k < nv; ++k) {
        cs.col_idx.push_back((int)g.idx(i, j, k));
        cs.val.push_back(1.0);
      }
    cs.row_ptr.push_back((int)cs.col_idx.size());
    cs.rhs.push_back(g.dt());
    cs.row_kind.push_back(RowKind::slice_mass);
  }

  if (free_nu) {
    for (int j = 0; j < nx; ++j) {
      cs.col_idx.push_back(ncells + j);
      cs.val.push_back(1.0);
    }
    cs.row_ptr.push_back((int)cs.col_idx.size());
    cs.rhs.push_back(1.0);
    cs.row_kind.push_back(RowKind::terminal_mass);
  }

  return cs;
}

DisplacementCertificate displacement_certificate(const ConstraintSystem& cs) {
  DisplacementCertificate out;
  if (cs.free_nu) return out;
  out.applicable = true;
  const MeasureGrid& g = cs.grid;
  double disp = 0.0;
  for (int j = 0; j < g.nx; ++j) disp += g.xcell(j) * (cs.nu_cells[j] - cs.m0_cells[j]);
  double qs = 0.0;
  for (int i = 0; i < g.nt; ++i) qs += cs.Qc[i] * g.dt();
  out.displacement = disp;
  out.supply_sum = qs;
  out.delta = disp - qs;
  return out;
}

void write_constraints_text(const ConstraintSystem& cs, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open " + path);
  char buf[128];
  f << "# rows " << cs.nrows << " cols " << cs.ncols << " nnz " << cs.val.size() << "\n";
  f << "# row kinds: 0=holonomy 1=balance 2=slice_mass 3=terminal_mass\n";
  f << "# triplets: row col value\n";
  for (int r = 0; r < cs.nrows; ++r)
    for (int p = cs.row_ptr[r]; p < cs.row_ptr[r + 1]; ++p) {
      std::snprintf(buf, sizeof buf, "%d %d %.17g\n", r, cs.col_idx[p], cs.val[p]);
      f << buf;
    }
  f << "# rhs: row value\n";
  for (int r = 0; r < cs.nrows; ++r) {
    std::snprintf(buf, sizeof buf, "%d %.17g\n", r, cs.rhs[r]);
    f << buf;
  }
  f << "# cost: col value\n";
  for (int c = 0; c < cs.ncols; ++c) {
    std::snprintf(buf, sizeof buf, "%d %.17g\n", c, cs.cost[c]);
    f << buf;
  }
  f << "# row_kind: row kind\n";
  for (int r = 0; r < cs.nrows; ++r) f << r << " " << (int)cs.row_kind[r] << "\n";
  if (!f) throw IoError("write failed: " + path);
}

}  // namespace pfmg
