#include "core/grid.hpp"

#include <cmath>
#include <cstddef>

#include "core/errors.hpp"

namespace pfmg {

void GridSpec::validate() const {
  if (!(T > 0.0)) throw ConfigError("grid: T must be positive");
  if (!(R > 0.0)) throw ConfigError("grid: R must be positive");
  if (nt < 4) throw ConfigError("grid: nt must be at least 4");
  if (nx < 4) throw ConfigError("grid: nx must be at least 4");
}

double ProblemData::density_mass(const std::vector<double>& density) const {
  double s = 0.0;
  for (double v : density) s += v;
  return s * grid.dx();
}

void ProblemData::normalize_m0() {
  const double mass = density_mass(m0);
  if (!(mass > 0.0)) throw ConfigError("m0 has nonpositive mass on the grid");
  for (double& v : m0) v /= mass;
}

void ProblemData::validate(const HamiltonianSpec& H) const {
  grid.validate();
  const std::size_t nxp = static_cast<std::size_t>(grid.nx) + 1;
  const std::size_t ntp = static_cast<std::size_t>(grid.nt) + 1;
  if (Q.size() != ntp) throw ConfigError("Q sample count mismatch");
  if (Qc.size() != static_cast<std::size_t>(grid.nt)) throw ConfigError("Qc sample count mismatch");
  if (uT.size() != nxp || uTp.size() != nxp || m0.size() != nxp)
    throw ConfigError("spatial sample count mismatch");

  const double mass = density_mass(m0);
  if (std::abs(mass - 1.0) > 1e-12)
    throw ConfigError("m0 mass " + std::to_string(mass) + " deviates from 1 beyond 1e-12");
  for (double v : m0)
    if (v < 0.0) throw ConfigError("m0 has a negative sample");

  // uTp must match centered differences of uT at interior nodes; the
  // tolerance follows the Taylor remainder h^2 |uT'''| / 6 measured from the
  // samples themselves, so curvy-but-smooth terminal costs stay admissible.
  const double h = grid.dx();
  double worst = 0.0, m3 = 0.0;
  for (int j = 1; j < grid.nx; ++j) {
    const double fd = (uT[j + 1] - uT[j - 1]) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - uTp[j]));
    if (j + 2 <= grid.nx) {
      const double d3 = (uT[j + 2] - 3.0 * uT[j + 1] + 3.0 * uT[j] - uT[j - 1]) / (h * h * h);
      m3 = std::max(m3, std::abs(d3));
    }
  }
  if (worst > 1e-8 + 0.5 * h * h * m3)
    throw ConfigError("uT' inconsistent with uT samples (max dev " + std::to_string(worst) + ")");

  if (!(gamma > H.gamma1))
    throw ConfigError("moment order gamma must exceed gamma1");
}

}  // namespace pfmg
