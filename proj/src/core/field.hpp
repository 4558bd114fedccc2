#pragma once

#include <cstddef>
#include <vector>

namespace pfmg {

// Dense (nt+1) x (nx+1) node array, row = time level.
struct Field {
  int rows = 0, cols = 0;
  std::vector<double> a;

  Field() = default;
  Field(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
  double* row(int i) { return a.data() + static_cast<std::size_t>(i) * cols; }
  const double* row(int i) const { return a.data() + static_cast<std::size_t>(i) * cols; }
};

}  // namespace pfmg
