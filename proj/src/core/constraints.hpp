#pragma once

#include <string>
#include <vector>

#include "core/grid.hpp"
#include "core/hamiltonian.hpp"
#include "core/measure_grid.hpp"

namespace pfmg {

enum class RowKind : int { holonomy = 0, balance = 1, slice_mass = 2, terminal_mass = 3 };

// Equality system A z = b, z >= 0 over measure cells (plus terminal weights
// in free mode), with the running cost as objective.
//
// Row blocks, in order:
//   holonomy       (nt+1)*(nx+1): tensor hats on the node lattice; the a=0
//                  family carries m0 on the right-hand side, the a=nt family
//                  carries nu (as columns when free, as data when fixed)
//   balance        nt: sum (v - Q(t_i)) mu[i,.,.] = 0
//   slice_mass     nt: sum mu[i,.,.] = dt
//   terminal_mass  1 (free mode): sum nu = 1
struct ConstraintSystem {
  MeasureGrid grid;
  bool free_nu = true;
  int nrows = 0, ncols = 0;

  std::vector<int> row_ptr, col_idx;
  std::vector<double> val;
  std::vector<double> rhs;
  std::vector<double> cost;
  std::vector<RowKind> row_kind;

  // assembly data kept for certificates and reports
  std::vector<double> m0_cells;  // nx
  std::vector<double> nu_cells;  // nx, empty in free mode
  std::vector<double> Qc;        // nt

  void multiply(const double* x, double* y) const;
  void multiply_T(const double* y, double* out) const;
  std::vector<double> residual(const std::vector<double>& z) const;  // A z - b
  double residual_sup(const std::vector<double>& z) const;
};

ConstraintSystem assemble_constraints(const HamiltonianSpec& H, const ProblemData& prob,
                                      const MeasureGrid& g, bool free_nu,
                                      const std::vector<double>* nu_fixed);

// In fixed-nu mode the hat combination sum_b x_b (holonomy rows) minus the
// balance rows minus Q-weighted slice rows annihilates every column, so
//   delta = [mean(nu) - mean(m0)] - sum_i Q(t_i) dt
// is a certificate value: |delta| > 0 means no admissible measure exists.
struct DisplacementCertificate {
  bool applicable = false;  // false in free-nu mode
  double displacement = 0.0;
  double supply_sum = 0.0;
  double delta = 0.0;
};
DisplacementCertificate displacement_certificate(const ConstraintSystem& cs);

// Plain-text triplet export: header comments, "i j value" per entry, then
// rhs / cost / row-kind blocks.
void write_constraints_text(const ConstraintSystem& cs, const std::string& path);

}  // namespace pfmg
