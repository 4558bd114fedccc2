#include "core/registry.hpp"

#include <cctype>
#include <cmath>

#include "core/errors.hpp"

namespace pfmg {

std::function<double(double)> make_supply_fn(const SupplySpec& s) {
  const double q0 = s.q0, q1 = s.q1;
  if (s.kind == "const") return [q0](double) { return q0; };
  if (s.kind == "cos")
    return [q0, q1](double t) { return q0 * std::cos(2.0 * M_PI * q1 * t); };
  if (s.kind == "ramp") return [q0, q1](double t) { return q0 + q1 * t; };
  throw ConfigError("unknown supply kind: " + s.kind);
}

std::function<double(double)> make_terminal_fn(const TerminalSpec& s) {
  const double a = s.a, d = s.delta;
  if (s.kind == "zero") return [](double) { return 0.0; };
  if (s.kind == "linear") return [a](double x) { return a * x; };
  if (s.kind == "quadratic") return [a](double x) { return a * x * x; };
  if (s.kind == "smooth_abs")
    return [a, d](double x) { return a * (std::sqrt(x * x + d * d) - d); };
  throw ConfigError("unknown terminal kind: " + s.kind);
}

std::function<double(double)> make_terminal_grad_fn(const TerminalSpec& s) {
  const double a = s.a, d = s.delta;
  if (s.kind == "zero") return [](double) { return 0.0; };
  if (s.kind == "linear") return [a](double) { return a; };
  if (s.kind == "quadratic") return [a](double x) { return 2.0 * a * x; };
  if (s.kind == "smooth_abs")
    return [a, d](double x) { return a * x / std::sqrt(x * x + d * d); };
  throw ConfigError("unknown terminal kind: " + s.kind);
}

std::function<double(double)> make_density_fn(const DensitySpec& s) {
  const double c = s.center, w = s.width;
  if (!(w > 0.0)) throw ConfigError("density width must be positive");
  if (s.kind == "gauss")
    return [c, w](double x) { return std::exp(-0.5 * (x - c) * (x - c) / (w * w)); };
  if (s.kind == "hat")
    return [c, w](double x) { return std::max(0.0, 1.0 - std::abs(x - c) / w); };
  if (s.kind == "uniform")
    return [c, w](double x) { return std::abs(x - c) <= w ? 1.0 : 0.0; };
  if (s.kind == "cauchy")
    return [c, w](double x) {
      const double r = (x - c) / w;
      return 1.0 / (1.0 + r * r);
    };
  throw ConfigError("unknown density kind: " + s.kind);
}

HamiltonianSpec build_hamiltonian(const ProblemSpec& spec) {
  HamiltonianSpec H = make_builtin(spec.hamiltonian_family, spec.gamma2, spec.potential);

  // widen C so the terminal slope/curvature and density curvature checks
  // have an honest constant to compare against
  auto uTp = make_terminal_grad_fn(spec.terminal);
  double slope = 0.0, curv_t = 0.0;
  const int N = 1000;
  const double hb = 10.0 / N;
  for (int i = 0; i <= N; ++i) {
    const double x = -5.0 + i * hb;
    slope = std::max(slope, std::abs(uTp(x)));
    if (i > 0 && i < N)
      curv_t = std::max(curv_t, std::abs(uTp(x + hb) - uTp(x - hb)) / (2.0 * hb));
  }

  auto rho = make_density_fn(spec.density);
  const int M = 1024;
  const double hx = 2.0 * spec.R / M;
  std::vector<double> d(M + 1);
  double mass = 0.0;
  for (int j = 0; j <= M; ++j) {
    d[j] = rho(-spec.R + j * hx);
    mass += d[j] * hx;
  }
  double curv_m = 0.0;
  if (mass > 0.0)
    for (int j = 1; j < M; ++j)
      curv_m = std::max(curv_m, std::abs(d[j + 1] - 2.0 * d[j] + d[j - 1]) / (hx * hx * mass));

  H.C = std::max({H.C, 1.25 * slope, 1.25 * curv_t, 1.25 * curv_m});
  return H;
}

ProblemData build_problem(const ProblemSpec& spec, const HamiltonianSpec& H, int nt, int nx) {
  ProblemData prob;
  prob.grid.T = spec.T;
  prob.grid.R = spec.R;
  prob.grid.nt = nt;
  prob.grid.nx = nx;
  prob.grid.validate();

  prob.Q_fn = make_supply_fn(spec.supply);
  prob.uT_fn = make_terminal_fn(spec.terminal);
  prob.uTp_fn = make_terminal_grad_fn(spec.terminal);
  prob.m0_fn = make_density_fn(spec.density);

  prob.Q.resize(nt + 1);
  prob.Qc.resize(nt);
  for (int i = 0; i <= nt; ++i) prob.Q[i] = prob.Q_fn(prob.grid.tnode(i));
  for (int i = 0; i < nt; ++i) prob.Qc[i] = prob.Q_fn(prob.grid.tcell(i));
  prob.uT.resize(nx + 1);
  prob.uTp.resize(nx + 1);
  prob.m0.resize(nx + 1);
  for (int j = 0; j <= nx; ++j) {
    const double x = prob.grid.xnode(j);
    prob.uT[j] = prob.uT_fn(x);
    prob.uTp[j] = prob.uTp_fn(x);
    prob.m0[j] = prob.m0_fn(x);
  }
  prob.normalize_m0();
  prob.gamma = spec.moment_gamma > 0.0 ? spec.moment_gamma : H.gamma1 + 1.0;
  prob.validate(H);
  return prob;
}

const std::vector<BuiltinInfo>& list_builtins() {
  static const std::vector<BuiltinInfo> table = {
      {"lq0", "uniform supply, quadratic kinetics, no potential, flat terminal cost"},
      {"lqlin", "uniform supply, quadratic kinetics, linear terminal cost"},
      {"cosQ", "cosine supply, quadratic kinetics, flat terminal cost"},
      {"vquad", "uniform supply, quadratic kinetics over a quadratic potential"},
  };
  return table;
}

ProblemSpec builtin_problem_spec(const std::string& name) {
  // lookup is case-insensitive; the table spelling is canonical
  std::string key(name.size(), '\0');
  for (std::size_t i = 0; i < name.size(); ++i)
    key[i] = static_cast<char>(std::tolower(static_cast<unsigned char>(name[i])));
  ProblemSpec s;  // defaults already describe lq0
  if (key == "lq0") return s;
  if (key == "lqlin") {
    s.terminal.kind = "linear";
    s.terminal.a = 1.0;
    return s;
  }
  if (key == "cosq") {
    s.supply.kind = "cos";
    return s;
  }
  if (key == "vquad") {
    s.potential.family = "quadratic";
    s.potential.a = 0.25;
    s.vmax_hint = 4.5;
    return s;
  }
  throw ConfigError("unknown builtin: " + name);
}

}  // namespace pfmg
