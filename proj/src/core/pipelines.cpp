#include "core/pipelines.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include "json.hpp"

#include "core/assumptions.hpp"
#include "core/diagnostics.hpp"
#include "core/duality.hpp"
#include "core/errors.hpp"
#include "core/mather.hpp"
#include "core/measures.hpp"
#include "core/mollifier.hpp"
#include "core/version.hpp"

namespace pfmg {

namespace {

using nlohmann::json;

std::filesystem::path ensure_out(const std::string& out_dir) {
  std::filesystem::path p(out_dir.empty() ? "." : out_dir);
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec) throw IoError("cannot create output directory " + p.string());
  // a failed earlier run may have left its marker in the same directory
  std::filesystem::remove(p / "error.json", ec);
  return p;
}

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Csv {
  std::ofstream f;
  explicit Csv(const std::filesystem::path& p) : f(p) {
    if (!f) throw IoError("cannot open " + p.string());
  }
  void header(const std::string& h) { f << h << "\n"; }
  void row(std::initializer_list<double> vals) {
    bool first = true;
    for (double v : vals) {
      if (!first) f << ",";
      f << g17(v);
      first = false;
    }
    f << "\n";
  }
  void close(const std::filesystem::path& p) {
    f.flush();
    if (!f) throw IoError("write failed: " + p.string());
  }
};

void write_json(const std::filesystem::path& p, const json& doc) {
  std::ofstream f(p);
  if (!f) throw IoError("cannot open " + p.string());
  f << doc.dump(2) << "\n";
  if (!f) throw IoError("write failed: " + p.string());
}

void write_manifest(const std::filesystem::path& out, const std::string& pipeline,
                    const RunConfig& cfg, const std::vector<std::string>& artifacts) {
  json m;
  m["version"] = kVersion;
  m["pipeline"] = pipeline;
  m["status"] = "ok";
  m["seed"] = cfg.seed;
  m["threads"] = cfg.threads;
  m["config"] = cfg.echo;
  m["artifacts"] = artifacts;
  write_json(out / "manifest.json", m);
}

void write_field_csv(const std::filesystem::path& p, const GridSpec& g, const Field& F,
                     const std::string& name) {
  Csv c(p);
  c.header("t,x," + name);
  for (int i = 0; i <= g.nt; ++i)
    for (int j = 0; j <= g.nx; ++j) c.row({g.tnode(i), g.xnode(j), F.at(i, j)});
  c.close(p);
}

void write_price_csv(const std::filesystem::path& p, const GridSpec& g,
                     const std::vector<double>& varpi) {
  Csv c(p);
  c.header("t,varpi");
  for (int i = 0; i <= g.nt; ++i) c.row({g.tnode(i), varpi[i]});
  c.close(p);
}

json solution_stats(const HamiltonianSpec& H, const ProblemData& prob,
                    const MFGSolution& sol) {
  const GridSpec& g = prob.grid;
  double mass_drift = 0.0;
  for (int i = 0; i <= g.nt; ++i) {
    double s = 0.0;
    for (int j = 0; j <= g.nx; ++j) s += sol.m.at(i, j);
    mass_drift = std::max(mass_drift, std::fabs(s * g.dx() - 1.0));
  }
  MomentTrace mom = moment_trace(prob, sol, prob.gamma);
  json s;
  s["eps"] = sol.eps;
  s["iterations"] = sol.iterations;
  s["converged"] = sol.converged;
  s["balance_residual_sup"] = sol.residual_sup;
  s["mass_drift_sup"] = mass_drift;
  s["price_lipschitz"] = lipschitz_estimate(sol);
  s["moment_gamma"] = prob.gamma;
  s["moment_initial"] = mom.initial;
  s["moment_sup"] = mom.sup;
  s["subsolution_residual"] = subsolution_residual(H, prob, sol);
  return s;
}

}  // namespace

void write_error_json(const std::string& out_dir, int code, const std::string& name,
                      const std::string& message, const std::string& witness_json) {
  try {
    const auto out = ensure_out(out_dir);
    json e;
    e["status"] = "error";
    e["code"] = code;
    e["error"] = name;
    e["message"] = message;
    if (!witness_json.empty()) {
      json w = json::parse(witness_json, nullptr, false);
      e["witness"] = w.is_discarded() ? json(witness_json) : w;
    }
    write_json(out / "error.json", e);
  } catch (...) {
    // never mask the original failure with an io problem here
  }
}

void run_validate(const RunConfig& cfg, const std::string& out_dir) {
  const auto out = ensure_out(out_dir);
  ProblemData prob = cfg.make_problem();
  AssumptionReport rep = validate_assumptions(cfg.H, prob, SampleBox{});

  // conjugate machinery self-checks on a coarse sample set
  std::vector<double> xs, ps;
  for (int i = 0; i <= 8; ++i) xs.push_back(-4.0 + i);
  for (int i = 0; i <= 10; ++i) ps.push_back(-5.0 + i);
  const double invo = legendre_involution_check(cfg.H, xs, ps);
  const double pair = dual_pairing_check(cfg.H, xs, ps);

  json doc;
  doc["all_pass"] = rep.all_pass();
  doc["legendre_involution_sup"] = invo;
  doc["legendre_pairing_sup"] = pair;
  json checks = json::array();
  for (const auto& c : rep.checks) {
    json jc;
    jc["id"] = c.id;
    jc["status"] = c.status;
    jc["margin"] = c.margin;
    jc["witness_x"] = c.witness_x;
    jc["witness_p"] = c.witness_p;
    if (!c.note.empty()) jc["note"] = c.note;
    checks.push_back(jc);
  }
  doc["checks"] = checks;
  write_json(out / "assumptions.json", doc);
  write_manifest(out, "validate", cfg, {"assumptions.json"});

  if (!rep.all_pass()) {
    std::string bad;
    for (const auto& c : rep.checks)
      if (c.status == "fail") bad += (bad.empty() ? "" : ", ") + c.id;
    throw ConfigError("assumption checks failed: " + bad);
  }
  if (invo > 1e-6 || pair > 1e-6)
    throw NumericalFailure("conjugate self-checks exceeded 1e-6");
}

void run_solve(const RunConfig& cfg, const std::string& out_dir) {
  const auto out = ensure_out(out_dir);
  ProblemData prob = cfg.make_problem();
  MFGSolution sol = fixed_point_solve(cfg.H, prob, cfg.eps, cfg.solver);

  write_field_csv(out / "u.csv", prob.grid, sol.u, "u");
  write_field_csv(out / "m.csv", prob.grid, sol.m, "m");
  write_price_csv(out / "price.csv", prob.grid, sol.varpi);
  json doc = solution_stats(cfg.H, prob, sol);
  doc["dual_value"] = dual_value(prob, sol);
  write_json(out / "solve.json", doc);
  write_manifest(out, "solve", cfg,
                 {"u.csv", "m.csv", "price.csv", "solve.json"});
}

void run_lp(const RunConfig& cfg, const std::string& out_dir) {
  const auto out = ensure_out(out_dir);
  // constraint assembly samples the problem data at measure resolution
  MeasureGrid mg = cfg.make_measure_grid();
  ProblemData prob = cfg.make_problem(mg.nt, mg.nx);

  MatherOptions mo;
  mo.pdhg = cfg.lp;
  mo.free_nu = cfg.lp_free_nu;
  if (!mo.free_nu) mo.nu_cells = reference_measure(prob, mg).nu;

  MatherResult mr = solve_mather(cfg.H, prob, mg, mo);
  write_constraints_text(mr.cs, (out / "constraints.txt").string());

  json doc;
  doc["free_nu"] = mo.free_nu;
  doc["rows"] = mr.cs.nrows;
  doc["cols"] = mr.cs.ncols;
  doc["infeasible"] = mr.infeasible;
  doc["note"] = mr.note;
  if (mr.cert.applicable) {
    doc["certificate"] = {{"displacement", mr.cert.displacement},
                          {"supply_sum", mr.cert.supply_sum},
                          {"delta", mr.cert.delta}};
  }
  std::vector<std::string> artifacts = {"constraints.txt", "lp.json"};

  if (!mr.infeasible) {
    doc["value"] = mr.value;
    doc["iterations"] = mr.lp.iterations;
    doc["converged"] = mr.lp.converged;
    doc["primal_residual"] = mr.lp.primal_res;
    doc["dual_residual"] = mr.lp.dual_res;
    doc["gap"] = mr.lp.gap;
    doc["dual_objective"] = mr.lp.dual_value;
    ConjugateBound cb = verify_conjugate_bound(mr.cs, mr.value);
    doc["conjugate_bound"] = {{"bound", cb.bound}, {"margin", cb.margin}};

    {
      Csv c(out / "measure.csv");
      c.header("t,x,v,weight");
      for (int i = 0; i < mg.nt; ++i)
        for (int j = 0; j < mg.nx; ++j)
          for (int k = 0; k < mg.nv; ++k) {
            const double w = mr.lp.x[mg.idx(i, j, k)];
            if (w > 1e-15) c.row({mg.tcell(i), mg.xcell(j), mg.vcell(k), w});
          }
      c.close(out / "measure.csv");
    }
    {
      Csv c(out / "terminal.csv");
      c.header("x,weight");
      for (int j = 0; j < mg.nx; ++j) {
        const double w = mo.free_nu ? mr.lp.x[mg.cells() + j] : mo.nu_cells[j];
        c.row({mg.xcell(j), w});
      }
      c.close(out / "terminal.csv");
    }
    {
      Csv c(out / "multipliers.csv");
      c.f << "row,kind,value\n";
      for (int r = 0; r < mr.cs.nrows; ++r) {
        const char* kind = "holonomy";
        if (mr.cs.row_kind[r] == RowKind::balance) kind = "balance";
        if (mr.cs.row_kind[r] == RowKind::slice_mass) kind = "slice_mass";
        if (mr.cs.row_kind[r] == RowKind::terminal_mass) kind = "terminal_mass";
        c.f << r << "," << kind << "," << g17(mr.lp.y[r]) << "\n";
      }
      c.close(out / "multipliers.csv");
    }
    artifacts.insert(artifacts.end(), {"measure.csv", "terminal.csv", "multipliers.csv"});
  }

  write_json(out / "lp.json", doc);
  write_manifest(out, "lp", cfg, artifacts);

  if (mr.infeasible) {
    json w;
    if (mr.cert.applicable)
      w = {{"displacement", mr.cert.displacement},
           {"supply_sum", mr.cert.supply_sum},
           {"delta", mr.cert.delta}};
    throw InfeasibleProblem(mr.note, w.dump());
  }
  if (!mr.lp.converged)
    throw NonConvergence("measure program did not reach tolerance: " + mr.note,
                         mr.lp.iterations, mr.lp.primal_res);
}

void run_duality(const RunConfig& cfg, const std::string& out_dir) {
  const auto out = ensure_out(out_dir);
  DualityReport rep =
      gap_report(cfg.H, [&](int nt, int nx) { return cfg.make_problem(nt, nx); },
                 cfg.duality);

  {
    Csv c(out / "duality.csv");
    c.header("level,h,dt,dx,dv,primal,dual,gap");
    for (const auto& lv : rep.levels)
      c.row({(double)lv.level, lv.h, lv.dt, lv.dx, lv.dv, lv.primal, lv.dual, lv.gap});
    c.close(out / "duality.csv");
  }
  json doc;
  doc["rate"] = rep.rate;
  doc["gaps_decreasing"] = rep.gaps_decreasing;
  doc["final_gap"] = rep.final_gap;
  json levels = json::array();
  for (const auto& lv : rep.levels) {
    levels.push_back({{"level", lv.level},
                      {"h", lv.h},
                      {"dt", lv.dt},
                      {"dx", lv.dx},
                      {"dv", lv.dv},
                      {"eps", lv.eps},
                      {"primal", lv.primal},
                      {"dual", lv.dual},
                      {"gap", lv.gap},
                      {"lp_iterations", lv.lp_iterations},
                      {"lp_converged", lv.lp_converged},
                      {"lp_primal_res", lv.lp_primal_res},
                      {"lp_gap", lv.lp_gap},
                      {"mfg_iterations", lv.mfg_iterations},
                      {"mfg_residual", lv.mfg_residual}});
  }
  doc["levels"] = levels;
  write_json(out / "duality.json", doc);
  write_manifest(out, "duality", cfg, {"duality.csv", "duality.json"});
}

void run_commutation(const RunConfig& cfg, const std::string& out_dir) {
  const auto out = ensure_out(out_dir);
  ProblemData prob = cfg.make_problem();
  MFGSolution sol = fixed_point_solve(cfg.H, prob, cfg.eps, cfg.solver);
  ResidualProfile prof = commutation_order_fit(cfg.H, prob, sol, cfg.commutation_alphas);

  {
    Csv c(out / "residuals.csv");
    c.header("alpha,sup_residual");
    for (size_t i = 0; i < prof.alpha.size(); ++i)
      c.row({prof.alpha[i], prof.residual[i]});
    c.close(out / "residuals.csv");
  }
  json doc;
  doc["slope"] = prof.slope;
  doc["at_floor"] = prof.at_floor;
  doc["alphas"] = prof.alpha;
  doc["residuals"] = prof.residual;
  doc["subsolution_residual"] = subsolution_residual(cfg.H, prob, sol);
  doc["solver"] = solution_stats(cfg.H, prob, sol);
  write_json(out / "commutation.json", doc);
  write_manifest(out, "commutation", cfg, {"residuals.csv", "commutation.json"});
}

void run_sweep(const RunConfig& cfg, const std::string& out_dir) {
  const auto out = ensure_out(out_dir);
  ProblemData prob = cfg.make_problem();
  SweepResult sweep = vanishing_viscosity_sweep(cfg.H, prob, cfg.eps_list, cfg.solver);

  {
    Csv c(out / "price_sweep.csv");
    std::string h = "t";
    for (size_t k = 0; k < sweep.eps_list.size(); ++k)
      h += ",varpi_eps" + std::to_string(k);
    h += ",varpi_limit";
    c.header(h);
    for (int i = 0; i <= prob.grid.nt; ++i) {
      c.f << g17(prob.grid.tnode(i));
      for (const auto& lv : sweep.levels) c.f << "," << g17(lv.varpi[i]);
      c.f << "," << g17(sweep.limit.varpi[i]) << "\n";
    }
    c.close(out / "price_sweep.csv");
  }

  // weak-convergence bins live at field resolution so the induced measures
  // share the solve's time and space cells
  MeasureGrid mg = cfg.make_measure_grid(cfg.nt, cfg.nx);
  DiscreteMeasure ref = induced_measure(cfg.H, prob, sweep.limit, mg);
  std::vector<DiscreteMeasure> level_measures;
  for (const auto& lv : sweep.levels)
    level_measures.push_back(induced_measure(cfg.H, prob, lv, mg));
  WeakConvergenceReport weak = weak_convergence_diagnostic(
      level_measures, sweep.eps_list, ref, cfg.zeta1, cfg.zeta2);

  json doc;
  doc["eps_list"] = sweep.eps_list;
  json levels = json::array();
  for (size_t k = 0; k < sweep.levels.size(); ++k) {
    const MFGSolution& lv = sweep.levels[k];
    json jl = solution_stats(cfg.H, prob, lv);
    jl["dual_value"] = dual_value(prob, lv);
    levels.push_back(jl);
  }
  doc["levels"] = levels;
  json lim = solution_stats(cfg.H, prob, sweep.limit);
  lim["dual_value"] = dual_value(prob, sweep.limit);
  doc["limit"] = lim;
  doc["weak_convergence"] = {{"labels", weak.label},
                             {"discrepancy", weak.discrepancy},
                             {"zeta_moment", weak.zeta_moment},
                             {"reference_zeta_moment", weak.reference_zeta_moment},
                             {"decreasing", weak.decreasing}};
  write_json(out / "sweep.json", doc);
  write_manifest(out, "sweep", cfg, {"price_sweep.csv", "sweep.json"});
}

void run_pipeline(const std::string& name, const RunConfig& cfg, const std::string& out_dir) {
  if (name == "validate") return run_validate(cfg, out_dir);
  if (name == "solve") return run_solve(cfg, out_dir);
  if (name == "lp") return run_lp(cfg, out_dir);
  if (name == "duality") return run_duality(cfg, out_dir);
  if (name == "commutation") return run_commutation(cfg, out_dir);
  if (name == "sweep") return run_sweep(cfg, out_dir);
  throw InvalidArgument("unknown pipeline: " + name);
}

}  // namespace pfmg
