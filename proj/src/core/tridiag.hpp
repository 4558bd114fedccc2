#pragma once

#include <cstddef>
#include <vector>

#include "core/errors.hpp"

namespace pfmg {

// Thomas algorithm for a tridiagonal system.  lower[0] and upper[n-1] are
// ignored.  Destroys nothing; keeps scratch internal so callers can reuse
// the same vectors across steps.
inline void solve_tridiagonal(const std::vector<double>& lower,
                              const std::vector<double>& diag,
                              const std::vector<double>& upper,
                              const std::vector<double>& rhs,
                              std::vector<double>& out) {
  const std::size_t n = diag.size();
  static thread_local std::vector<double> cp, dp;
  cp.assign(n, 0.0);
  dp.assign(n, 0.0);
  if (diag[0] == 0.0) throw NumericalFailure("tridiagonal solve: zero pivot at row 0");
  cp[0] = upper[0] / diag[0];
  dp[0] = rhs[0] / diag[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double denom = diag[i] - lower[i] * cp[i - 1];
    if (denom == 0.0) throw NumericalFailure("tridiagonal solve: zero pivot");
    cp[i] = upper[i] / denom;
    dp[i] = (rhs[i] - lower[i] * dp[i - 1]) / denom;
  }
  out.resize(n);
  out[n - 1] = dp[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) out[i] = dp[i] - cp[i] * out[i + 1];
}

}  // namespace pfmg
