#include "core/assumptions.hpp"

#include <cmath>
#include <limits>

namespace pfmg {

namespace {

struct Tracker {
  double margin = std::numeric_limits<double>::infinity();
  double wx = 0.0, wp = 0.0;
  void feed(double slack, double x, double p) {
    if (slack < margin) {
      margin = slack;
      wx = x;
      wp = p;
    }
  }
  AssumptionCheck finish(const std::string& id, const std::string& note = {}) const {
    AssumptionCheck c;
    c.id = id;
    c.status = (margin >= 0.0) ? "pass" : "fail";
    c.margin = margin;
    c.witness_x = wx;
    c.witness_p = wp;
    c.note = note;
    return c;
  }
};

// Composite Simpson of f over [a,b]; n must be even.
double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace

AssumptionReport validate_assumptions(const HamiltonianSpec& spec,
                                      const ProblemData& prob,
                                      const SampleBox& box) {
  AssumptionReport rep;
  const double fd_tol = 1e-7;

  auto xs = [&](int i) { return box.xmin + (box.xmax - box.xmin) * i / (box.nx - 1); };
  auto ps = [&](int i) { return box.pmin + (box.pmax - box.pmin) * i / (box.np - 1); };

  {  // uniform convexity of H in p
    Tracker t;
    for (int i = 0; i < box.nx; ++i)
      for (int k = 0; k < box.np; ++k)
        t.feed(spec.Hpp(xs(i), ps(k)) - spec.kappa, xs(i), ps(k));
    rep.checks.push_back(t.finish("uniform_convexity"));
  }

  {  // growth sandwich and derivative growth in p
    Tracker t;
    for (int i = 0; i < box.nx; ++i) {
      for (int k = 0; k < box.np; ++k) {
        const double x = xs(i), p = ps(k);
        const double ap = std::abs(p);
        const double H = spec.H(x, p);
        // eps absorbs last-ulp differences between pow(|p|,2) and p*p on
        // families where the sandwich is tight
        const double eps = 1e-9 * (1.0 + std::abs(H));
        t.feed(spec.C * (std::pow(ap, spec.gamma2) + 1.0) - H + eps, x, p);
        t.feed(H - (spec.C1 * std::pow(ap, spec.gamma2) -
                    spec.C2 * (std::pow(std::abs(x), spec.gamma1) + 1.0)) + eps,
               x, p);
        t.feed(spec.C * (std::pow(ap, spec.gamma2 - 1.0) + 1.0) - std::abs(spec.Hp(x, p)) + eps,
               x, p);
        t.feed(spec.C * (std::pow(ap, spec.gamma2) + 1.0) - std::abs(spec.Hx(x, p)) + eps, x, p);
      }
    }
    rep.checks.push_back(t.finish("momentum_growth"));
  }

  {  // terminal cost gradient bound
    Tracker t;
    for (int j = 0; j <= prob.grid.nx; ++j)
      t.feed(spec.C - std::abs(prob.uTp[j]), prob.grid.xnode(j), 0.0);
    rep.checks.push_back(t.finish("terminal_cost_gradient_bound"));
  }

  {  // supply smoothness surrogate: divided differences stay finite and tame
    Tracker t;
    const double dt = prob.grid.dt();
    const double cap = 1e6;
    bool finite = true;
    for (int i = 0; i + 1 <= prob.grid.nt; ++i) {
      const double d1 = (prob.Q[i + 1] - prob.Q[i]) / dt;
      if (!std::isfinite(d1)) finite = false;
      t.feed(cap - std::abs(d1), prob.grid.tnode(i), 1.0);
      if (i + 2 <= prob.grid.nt) {
        const double d2 = (prob.Q[i + 2] - 2.0 * prob.Q[i + 1] + prob.Q[i]) / (dt * dt);
        if (!std::isfinite(d2)) finite = false;
        t.feed(cap - std::abs(d2), prob.grid.tnode(i), 2.0);
      }
    }
    auto c = t.finish("supply_smoothness", "sampled divided-difference surrogate");
    if (!finite) c.status = "fail";
    rep.checks.push_back(c);
  }

  {  // finite gamma-moment of m0, with expanding boxes when a formula exists
    AssumptionCheck c;
    c.id = "initial_moment_finite";
    if (prob.m0_fn) {
      double prev = 0.0, cur = 0.0;
      bool plateau = false;
      double B = 1.0;
      for (int k = 0; k <= 14; ++k, B *= 2.0) {
        auto f = [&](double x) { return std::pow(std::abs(x), prob.gamma) * prob.m0_fn(x); };
        cur = simpson(f, -B, B, 4096);
        if (k > 3 && cur > 0.0 && (cur - prev) <= 1e-8 * cur) {
          plateau = true;
          break;
        }
        prev = cur;
      }
      c.status = plateau ? "pass" : "fail";
      c.margin = plateau ? (cur > 0 ? (cur - prev) / cur : 0.0) - 1e-8 : -(cur - prev);
      c.witness_x = B;
      c.note = plateau ? "moment quadrature plateaued" : "moment grows on expanding boxes";
    } else {
      double I = 0.0;
      for (int j = 0; j <= prob.grid.nx; ++j)
        I += std::pow(std::abs(prob.grid.xnode(j)), prob.gamma) * prob.m0[j];
      I *= prob.grid.dx();
      c.status = std::isfinite(I) ? "pass" : "fail";
      c.margin = I;
      c.note = "grid-restricted moment only (no density formula available)";
    }
    rep.checks.push_back(c);
  }

  {  // separable structure with bounded Hpp, Hppp and V bounded below
    if (!spec.separable || !spec.V) {
      AssumptionCheck c;
      c.id = "separable_regularity";
      c.status = "not_checked";
      c.note = "instance is not declared separable";
      rep.checks.push_back(c);
    } else {
      Tracker t;
      double vmin = std::numeric_limits<double>::infinity();
      for (int i = 0; i < box.nx; ++i) vmin = std::min(vmin, spec.V(xs(i)));
      for (int k = 0; k < box.np; ++k) {
        const double p = ps(k);
        t.feed(spec.C - std::abs(spec.Hpp(0.0, p)), 0.0, p);
        t.feed(spec.C - std::abs(eval_Hppp(spec, 0.0, p)), 0.0, p);
      }
      auto c = t.finish("separable_regularity");
      if (!std::isfinite(vmin)) c.status = "fail";
      c.note = "min V on box = " + std::to_string(vmin);
      rep.checks.push_back(c);
    }
  }

  {  // Lipschitz data and bounded second derivatives of V, uT, m0
    Tracker t;
    const double h = prob.grid.dx();
    for (int j = 1; j < prob.grid.nx; ++j) {
      const double x = prob.grid.xnode(j);
      const double d2u = (prob.uT[j + 1] - 2.0 * prob.uT[j] + prob.uT[j - 1]) / (h * h);
      const double d2m = (prob.m0[j + 1] - 2.0 * prob.m0[j] + prob.m0[j - 1]) / (h * h);
      t.feed(spec.C - std::abs(d2u), x, 0.0);
      t.feed(spec.C - std::abs(d2m), x, 0.0);
      t.feed(spec.C - std::abs(prob.uTp[j]), x, 0.0);
      if (spec.V) {
        t.feed(spec.C - std::abs(spec.Vp(x)), x, 0.0);
        const double d2v = (spec.V(x + h) - 2.0 * spec.V(x) + spec.V(x - h)) / (h * h);
        t.feed(spec.C - std::abs(d2v), x, 0.0);
      }
    }
    rep.checks.push_back(t.finish("second_derivative_bounds"));
  }

  {  // convexity of V and uT
    Tracker t;
    const double h = prob.grid.dx();
    for (int j = 1; j < prob.grid.nx; ++j) {
      const double x = prob.grid.xnode(j);
      const double d2u = (prob.uT[j + 1] - 2.0 * prob.uT[j] + prob.uT[j - 1]) / (h * h);
      t.feed(d2u + fd_tol, x, 0.0);
      if (spec.V) {
        const double d2v = (spec.V(x + h) - 2.0 * spec.V(x) + spec.V(x - h)) / (h * h);
        t.feed(d2v + fd_tol, x, 0.0);
      }
    }
    rep.checks.push_back(t.finish("convex_data"));
  }

  return rep;
}

}  // namespace pfmg
