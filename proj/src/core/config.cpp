#include "core/config.hpp"

#include <fstream>
#include <initializer_list>

#include "core/errors.hpp"

namespace pfmg {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok) throw ConfigError("unknown key \"" + it.key() + "\" in " + where);
  }
}

double num(const json& j, const std::string& where, const char* key, double def) {
  if (!j.contains(key)) return def;
  if (!j.at(key).is_number()) throw ConfigError(where + "." + key + " must be a number");
  return j.at(key).get<double>();
}

long inum(const json& j, const std::string& where, const char* key, long def) {
  if (!j.contains(key)) return def;
  if (!j.at(key).is_number_integer())
    throw ConfigError(where + "." + key + " must be an integer");
  return j.at(key).get<long>();
}

bool boolean(const json& j, const std::string& where, const char* key, bool def) {
  if (!j.contains(key)) return def;
  if (!j.at(key).is_boolean()) throw ConfigError(where + "." + key + " must be a boolean");
  return j.at(key).get<bool>();
}

std::string str(const json& j, const std::string& where, const char* key,
                const std::string& def) {
  if (!j.contains(key)) return def;
  if (!j.at(key).is_string()) throw ConfigError(where + "." + key + " must be a string");
  return j.at(key).get<std::string>();
}

std::vector<double> numlist(const json& j, const std::string& where, const char* key,
                            std::vector<double> def) {
  if (!j.contains(key)) return def;
  if (!j.at(key).is_array()) throw ConfigError(where + "." + key + " must be an array");
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) throw ConfigError(where + "." + key + " must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

void parse_problem_block(const json& p, ProblemSpec& s) {
  check_keys(p, "problem",
             {"hamiltonian", "supply", "terminal", "density", "T", "R", "moment_gamma",
              "vmax_hint"});
  if (p.contains("hamiltonian")) {
    const json& h = p.at("hamiltonian");
    check_keys(h, "problem.hamiltonian", {"family", "gamma2", "potential"});
    s.hamiltonian_family = str(h, "problem.hamiltonian", "family", s.hamiltonian_family);
    s.gamma2 = num(h, "problem.hamiltonian", "gamma2", s.gamma2);
    if (h.contains("potential")) {
      const json& v = h.at("potential");
      check_keys(v, "problem.hamiltonian.potential", {"kind", "a", "b", "delta"});
      s.potential.family = str(v, "potential", "kind", s.potential.family);
      s.potential.a = num(v, "potential", "a", s.potential.a);
      s.potential.b = num(v, "potential", "b", s.potential.b);
      s.potential.delta = num(v, "potential", "delta", s.potential.delta);
    }
  }
  if (p.contains("supply")) {
    const json& q = p.at("supply");
    check_keys(q, "problem.supply", {"kind", "q0", "q1"});
    s.supply.kind = str(q, "supply", "kind", s.supply.kind);
    s.supply.q0 = num(q, "supply", "q0", s.supply.q0);
    s.supply.q1 = num(q, "supply", "q1", s.supply.q1);
  }
  if (p.contains("terminal")) {
    const json& t = p.at("terminal");
    check_keys(t, "problem.terminal", {"kind", "a", "delta"});
    s.terminal.kind = str(t, "terminal", "kind", s.terminal.kind);
    s.terminal.a = num(t, "terminal", "a", s.terminal.a);
    s.terminal.delta = num(t, "terminal", "delta", s.terminal.delta);
  }
  if (p.contains("density")) {
    const json& d = p.at("density");
    check_keys(d, "problem.density", {"kind", "center", "width"});
    s.density.kind = str(d, "density", "kind", s.density.kind);
    s.density.center = num(d, "density", "center", s.density.center);
    s.density.width = num(d, "density", "width", s.density.width);
  }
  s.T = num(p, "problem", "T", s.T);
  s.R = num(p, "problem", "R", s.R);
  s.moment_gamma = num(p, "problem", "moment_gamma", s.moment_gamma);
  s.vmax_hint = num(p, "problem", "vmax_hint", s.vmax_hint);
}

}  // namespace

ProblemData RunConfig::make_problem(int nt_, int nx_) const {
  return build_problem(problem, H, nt_, nx_);
}

MeasureGrid RunConfig::make_measure_grid(int nt_, int nx_) const {
  MeasureGrid g;
  g.T = problem.T;
  g.R = problem.R;
  g.Vmax = vmax;
  g.nt = nt_;
  g.nx = nx_;
  g.nv = nv;
  g.zeta1 = zeta1;
  g.zeta2 = zeta2;
  g.validate();
  return g;
}

RunConfig parse_config(const nlohmann::json& doc) {
  check_keys(doc, "config",
             {"builtin", "problem", "grid", "measure_grid", "solver", "sweep", "lp",
              "duality", "commutation", "seed", "threads"});
  RunConfig c;

  if (doc.contains("builtin")) {
    c.builtin = str(doc, "config", "builtin", "");
    c.problem = builtin_problem_spec(c.builtin);
    c.vmax = c.problem.vmax_hint;
  }
  if (doc.contains("problem")) parse_problem_block(doc.at("problem"), c.problem);
  c.vmax = c.problem.vmax_hint;

  if (doc.contains("grid")) {
    const json& g = doc.at("grid");
    check_keys(g, "grid", {"nt", "nx"});
    c.nt = (int)inum(g, "grid", "nt", c.nt);
    c.nx = (int)inum(g, "grid", "nx", c.nx);
  }
  if (doc.contains("measure_grid")) {
    const json& g = doc.at("measure_grid");
    check_keys(g, "measure_grid", {"nt", "nx", "nv", "vmax", "zeta1", "zeta2"});
    c.mg_nt = (int)inum(g, "measure_grid", "nt", c.mg_nt);
    c.mg_nx = (int)inum(g, "measure_grid", "nx", c.mg_nx);
    c.nv = (int)inum(g, "measure_grid", "nv", c.nv);
    c.vmax = num(g, "measure_grid", "vmax", c.vmax);
    c.zeta1 = num(g, "measure_grid", "zeta1", -1.0);
    c.zeta2 = num(g, "measure_grid", "zeta2", -1.0);
  } else {
    c.zeta1 = -1.0;
    c.zeta2 = -1.0;
  }

  if (doc.contains("solver")) {
    const json& s = doc.at("solver");
    check_keys(s, "solver", {"eps", "tol", "max_iter", "theta", "flux"});
    c.eps = num(s, "solver", "eps", c.eps);
    c.solver.tol = num(s, "solver", "tol", c.solver.tol);
    c.solver.max_iter = (int)inum(s, "solver", "max_iter", c.solver.max_iter);
    c.solver.theta = num(s, "solver", "theta", c.solver.theta);
    const std::string flux = str(s, "solver", "flux", "engquist_osher");
    if (flux == "engquist_osher")
      c.solver.flux = FluxKind::engquist_osher;
    else if (flux == "lax_friedrichs")
      c.solver.flux = FluxKind::lax_friedrichs;
    else
      throw ConfigError("solver.flux must be engquist_osher or lax_friedrichs");
  }

  c.eps_list = {0.1, 0.05, 0.025};
  if (doc.contains("sweep")) {
    const json& s = doc.at("sweep");
    check_keys(s, "sweep", {"eps_list"});
    c.eps_list = numlist(s, "sweep", "eps_list", c.eps_list);
  }

  if (doc.contains("lp")) {
    const json& l = doc.at("lp");
    check_keys(l, "lp", {"tol", "max_iter", "check_every", "relax", "balance", "free_nu"});
    c.lp.tol = num(l, "lp", "tol", c.lp.tol);
    c.lp.max_iter = inum(l, "lp", "max_iter", c.lp.max_iter);
    c.lp.check_every = (int)inum(l, "lp", "check_every", c.lp.check_every);
    c.lp.relax = num(l, "lp", "relax", c.lp.relax);
    c.lp.balance = num(l, "lp", "balance", c.lp.balance);
    c.lp_free_nu = boolean(l, "lp", "free_nu", c.lp_free_nu);
  }

  if (doc.contains("duality")) {
    const json& d = doc.at("duality");
    check_keys(d, "duality",
               {"levels", "nt0", "nx0", "nv0", "eps0", "eps_factor", "lp_tol_scale"});
    c.duality.levels = (int)inum(d, "duality", "levels", c.duality.levels);
    c.duality.nt0 = (int)inum(d, "duality", "nt0", c.duality.nt0);
    c.duality.nx0 = (int)inum(d, "duality", "nx0", c.duality.nx0);
    c.duality.nv0 = (int)inum(d, "duality", "nv0", c.duality.nv0);
    c.duality.eps0 = num(d, "duality", "eps0", c.duality.eps0);
    c.duality.eps_factor = num(d, "duality", "eps_factor", c.duality.eps_factor);
    c.duality.lp_tol_scale = num(d, "duality", "lp_tol_scale", c.duality.lp_tol_scale);
  }

  c.commutation_alphas = {0.4, 0.3, 0.22, 0.16, 0.12, 0.09};
  if (doc.contains("commutation")) {
    const json& m = doc.at("commutation");
    check_keys(m, "commutation", {"alphas"});
    c.commutation_alphas = numlist(m, "commutation", "alphas", c.commutation_alphas);
  }

  c.seed = (unsigned long)inum(doc, "config", "seed", 0);
  c.threads = (int)inum(doc, "config", "threads", 1);

  // range validation
  if (c.nt < 4 || c.nx < 4) throw ConfigError("grid.nt and grid.nx must be at least 4");
  if (c.mg_nt < 4 || c.mg_nx < 4)
    throw ConfigError("measure_grid.nt and measure_grid.nx must be at least 4");
  if (c.nv < 2) throw ConfigError("measure_grid.nv must be at least 2");
  if (!(c.vmax > 0.0)) throw ConfigError("measure_grid.vmax must be positive");
  if (!(c.eps >= 0.0)) throw ConfigError("solver.eps must be nonnegative");
  if (!(c.solver.tol > 0.0)) throw ConfigError("solver.tol must be positive");
  if (c.solver.max_iter < 1) throw ConfigError("solver.max_iter must be at least 1");
  if (!(c.solver.theta > 0.0 && c.solver.theta <= 1.0))
    throw ConfigError("solver.theta must lie in (0, 1]");
  if (c.eps_list.empty()) throw ConfigError("sweep.eps_list must not be empty");
  for (size_t i = 0; i < c.eps_list.size(); ++i) {
    if (!(c.eps_list[i] > 0.0)) throw ConfigError("sweep.eps_list entries must be positive");
    if (i > 0 && !(c.eps_list[i] < c.eps_list[i - 1]))
      throw ConfigError("sweep.eps_list must be strictly decreasing");
  }
  if (!(c.lp.tol > 0.0)) throw ConfigError("lp.tol must be positive");
  if (c.lp.max_iter < 1) throw ConfigError("lp.max_iter must be at least 1");
  if (c.lp.check_every < 1) throw ConfigError("lp.check_every must be at least 1");
  if (!(c.lp.relax > 0.0 && c.lp.relax < 2.0))
    throw ConfigError("lp.relax must lie in (0, 2)");
  if (!(c.lp.balance > 0.0)) throw ConfigError("lp.balance must be positive");
  if (!(c.duality.lp_tol_scale >= 0.0))
    throw ConfigError("duality.lp_tol_scale must be nonnegative");
  if (c.duality.levels < 1 || c.duality.levels > 8)
    throw ConfigError("duality.levels must lie in [1, 8]");
  if (c.duality.nt0 < 4 || c.duality.nx0 < 4 || c.duality.nv0 < 2)
    throw ConfigError("duality base resolutions are too small");
  if (!(c.duality.eps0 > 0.0) || !(c.duality.eps_factor > 0.0) ||
      !(c.duality.eps_factor < 1.0))
    throw ConfigError("duality viscosity ladder needs eps0 > 0 and eps_factor in (0,1)");
  if (c.commutation_alphas.empty())
    throw ConfigError("commutation.alphas must not be empty");
  for (double a : c.commutation_alphas)
    if (!(a > 0.0)) throw ConfigError("commutation.alphas entries must be positive");
  if (c.threads < 0) throw ConfigError("threads must be nonnegative");

  c.H = build_hamiltonian(c.problem);
  if (c.zeta1 <= 0.0) c.zeta1 = c.H.gamma1;
  if (c.zeta2 <= 0.0) c.zeta2 = 0.5 * (1.0 + c.H.gamma2_conj());
  c.duality.Vmax = c.vmax;
  c.duality.mfg = c.solver;
  c.duality.pdhg = c.lp;

  // resolved echo for manifests
  json e;
  if (!c.builtin.empty()) e["builtin"] = c.builtin;
  e["problem"] = {
      {"hamiltonian",
       {{"family", c.problem.hamiltonian_family},
        {"gamma2", c.problem.gamma2},
        {"potential",
         {{"kind", c.problem.potential.family},
          {"a", c.problem.potential.a},
          {"b", c.problem.potential.b},
          {"delta", c.problem.potential.delta}}}}},
      {"supply",
       {{"kind", c.problem.supply.kind}, {"q0", c.problem.supply.q0}, {"q1", c.problem.supply.q1}}},
      {"terminal",
       {{"kind", c.problem.terminal.kind},
        {"a", c.problem.terminal.a},
        {"delta", c.problem.terminal.delta}}},
      {"density",
       {{"kind", c.problem.density.kind},
        {"center", c.problem.density.center},
        {"width", c.problem.density.width}}},
      {"T", c.problem.T},
      {"R", c.problem.R},
      {"moment_gamma", c.problem.moment_gamma},
      {"vmax_hint", c.problem.vmax_hint}};
  e["grid"] = {{"nt", c.nt}, {"nx", c.nx}};
  e["measure_grid"] = {{"nt", c.mg_nt}, {"nx", c.mg_nx},     {"nv", c.nv},
                       {"vmax", c.vmax}, {"zeta1", c.zeta1}, {"zeta2", c.zeta2}};
  e["solver"] = {{"eps", c.eps},
                 {"tol", c.solver.tol},
                 {"max_iter", c.solver.max_iter},
                 {"theta", c.solver.theta},
                 {"flux", c.solver.flux == FluxKind::engquist_osher ? "engquist_osher"
                                                                    : "lax_friedrichs"}};
  e["sweep"] = {{"eps_list", c.eps_list}};
  e["lp"] = {{"tol", c.lp.tol},
             {"max_iter", c.lp.max_iter},
             {"check_every", c.lp.check_every},
             {"relax", c.lp.relax},
             {"balance", c.lp.balance},
             {"free_nu", c.lp_free_nu}};
  e["duality"] = {{"levels", c.duality.levels}, {"nt0", c.duality.nt0},
                  {"nx0", c.duality.nx0},       {"nv0", c.duality.nv0},
                  {"eps0", c.duality.eps0},     {"eps_factor", c.duality.eps_factor},
                  {"lp_tol_scale", c.duality.lp_tol_scale}};
  e["commutation"] = {{"alphas", c.commutation_alphas}};
  e["seed"] = c.seed;
  e["threads"] = c.threads;
  c.echo = e;
  return c;
}

RunConfig load_config_string(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw ConfigError(std::string("config is not valid JSON: ") + ex.what());
  }
  return parse_config(doc);
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open config file: " + path);
  std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return load_config_string(text);
}

}  // namespace pfmg
