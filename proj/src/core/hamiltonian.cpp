#include "core/hamiltonian.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace pfmg {

double eval_Hppp(const HamiltonianSpec& spec, double x, double p) {
  const double h = 1e-4;
  return (spec.Hpp(x, p + h) - spec.Hpp(x, p - h)) / (2.0 * h);
}

ConjugatePoint legendre_numeric(const HamiltonianSpec& spec, double x, double v) {
  const double expo = 1.0 / (spec.gamma2 - 1.0);
  double P = 10.0 * spec.C * std::pow(1.0 + std::abs(v), expo);
  if (!(P > 0.0) || !std::isfinite(P))
    throw NumericalFailure("conjugate bracket degenerate at v=" + std::to_string(v));

  auto phi = [&](double p) { return -p * v - spec.H(x, p); };

  // The maximizer solves H_p(x,p) = -v; grow the bracket until the slope of
  // phi changes sign across it, then ternary search on the concave profile.
  double a = -P, b = P;
  for (int grow = 0; grow < 60; ++grow) {
    const double ga = -v - spec.Hp(x, a);   // phi'(a), must be >= 0
    const double gb = -v - spec.Hp(x, b);   // phi'(b), must be <= 0
    if (ga >= 0.0 && gb <= 0.0) break;
    a *= 2.0;
    b *= 2.0;
    if (!std::isfinite(a) || grow == 59)
      throw NumericalFailure("conjugate bracket failed at (x,v)=(" + std::to_string(x) +
                             "," + std::to_string(v) + ")");
  }

  const double tol = 1e-13 * std::max(1.0, b - a);
  while (b - a > tol) {
    const double m1 = a + (b - a) / 3.0;
    const double m2 = b - (b - a) / 3.0;
    if (phi(m1) < phi(m2))
      a = m1;
    else
      b = m2;
  }
  const double pstar = 0.5 * (a + b);
  const double val = phi(pstar);
  if (!std::isfinite(val))
    throw NumericalFailure("conjugate value not finite at (x,v)=(" + std::to_string(x) +
                           "," + std::to_string(v) + ")");
  return {val, pstar};
}

double legendre_transform(const HamiltonianSpec& spec, double x, double v) {
  if (spec.L_closed) return spec.L_closed(x, v);
  return legendre_numeric(spec, x, v).value;
}

double eval_Lv(const HamiltonianSpec& spec, double x, double v) {
  if (spec.Lv_closed) return spec.Lv_closed(x, v);
  return -legendre_numeric(spec, x, v).argmax_p;
}

double legendre_involution_check(const HamiltonianSpec& spec,
                                 const std::vector<double>& xs,
                                 const std::vector<double>& ps) {
  // Inner conjugate sup_v(-pv - L(x,v)) shares the bracket recipe, with the
  // coercivity exponent swapped to the dual one (L grows like |v|^g2').
  double worst = 0.0;
  for (double x : xs) {
    for (double p : ps) {
      auto psi = [&](double v) { return -p * v - legendre_transform(spec, x, v); };
      double Vb = 10.0 * spec.C * std::pow(1.0 + std::abs(p), spec.gamma2 - 1.0);
      double a = -Vb, b = Vb;
      const double tol = 1e-11 * std::max(1.0, b - a);
      while (b - a > tol) {
        const double m1 = a + (b - a) / 3.0;
        const double m2 = b - (b - a) / 3.0;
        if (psi(m1) < psi(m2))
          a = m1;
        else
          b = m2;
      }
      const double back = psi(0.5 * (a + b));
      worst = std::max(worst, std::abs(back - spec.H(x, p)));
    }
  }
  return worst;
}

double dual_pairing_check(const HamiltonianSpec& spec,
                          const std::vector<double>& xs,
                          const std::vector<double>& ps) {
  double worst = 0.0;
  for (double x : xs) {
    for (double p : ps) {
      const double v = -spec.Hp(x, p);
      const double phat = -eval_Lv(spec, x, v);
      worst = std::max(worst, std::abs(p - phat));
    }
  }
  return worst;
}

namespace {

struct Potential {
  std::function<double(double)> V, Vp, Vpp;
  double lip;     // sup |V'| on the reference box [-5,5]
  double gamma1;  // growth order of the lower bound
  double C2;      // coefficient in C2(|x|^g1 + 1)
};

Potential make_potential(const PotentialParams& p) {
  if (p.family == "zero") {
    return {[](double) { return 0.0; }, [](double) { return 0.0; },
            [](double) { return 0.0; }, 0.0, 1.0, 0.0};
  }
  if (p.family == "quadratic") {
    const double a = p.a;
    return {[a](double x) { return a * x * x; },
            [a](double x) { return 2.0 * a * x; },
            [a](double) { return 2.0 * a; },
            2.0 * std::abs(a) * 5.0, 2.0, std::abs(a)};
  }
  if (p.family == "smooth_abs") {
    const double b = p.b, d = p.delta;
    return {[b, d](double x) { return b * (std::sqrt(x * x + d * d) - d); },
            [b, d](double x) { return b * x / std::sqrt(x * x + d * d); },
            [b, d](double x) {
              const double r = std::sqrt(x * x + d * d);
              return b * d * d / (r * r * r);
            },
            std::abs(b), 1.0, std::abs(b)};
  }
  throw ConfigError("unknown potential family: " + p.family);
}

}  // namespace

HamiltonianSpec make_builtin(const std::string& family, double gamma2,
                             const PotentialParams& pot) {
  Potential P = make_potential(pot);
  HamiltonianSpec s;
  s.separable = true;
  s.V = P.V;
  s.Vp = P.Vp;
  s.gamma1 = P.gamma1;
  s.C2 = P.C2;

  // The shared constant C covers |V| and |V'| on the reference box [-5,5];
  // box-restricted validation reports margins against exactly these numbers.
  double vbox = 0.0, vpbox = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double x = -5.0 + 10.0 * i / 200.0;
    vbox = std::max(vbox, std::abs(P.V(x)));
    vpbox = std::max(vpbox, std::abs(P.Vp(x)));
  }

  if (family == "quadratic") {
    s.name = "quadratic";
    s.gamma2 = 2.0;
    s.kappa = 1.0;
    s.C1 = 0.5;
    s.C = std::max({1.0, vbox, vpbox});
    auto V = P.V, Vp = P.Vp;
    s.H = [V](double x, double p) { return 0.5 * p * p - V(x); };
    s.Hp = [](double, double p) { return p; };
    s.Hpp = [](double, double) { return 1.0; };
    s.Hx = [Vp](double x, double) { return -Vp(x); };
    s.L_closed = [V](double x, double v) { return 0.5 * v * v + V(x); };
    s.Lv_closed = [](double, double v) { return v; };
    return s;
  }

  if (family == "power_gamma2") {
    if (!(gamma2 > 1.0)) throw ConfigError("power_gamma2 requires gamma2 > 1");
    s.name = "power_gamma2";
    s.gamma2 = gamma2;
    const double g = gamma2;
    auto V = P.V, Vp = P.Vp;
    s.H = [V, g](double x, double p) { return std::pow(1.0 + p * p, 0.5 * g) - V(x); };
    s.Hp = [g](double, double p) {
      return g * p * std::pow(1.0 + p * p, 0.5 * g - 1.0);
    };
    s.Hpp = [g](double, double p) {
      const double w = 1.0 + p * p;
      return g * std::pow(w, 0.5 * g - 2.0) * (1.0 + (g - 1.0) * p * p);
    };
    s.Hx = [Vp](double x, double) { return -Vp(x); };
    s.C1 = (g >= 2.0) ? 1.0 : 0.5;
    s.C = std::max({std::pow(2.0, 0.5 * g) + vbox, vpbox, g * std::pow(2.0, 0.5 * g), 1.0});
    // kappa: min of Hpp over the reference momentum box [-10,10]
    double kap = s.Hpp(0.0, 0.0);
    for (int i = 0; i <= 400; ++i) {
      const double p = -10.0 + 20.0 * i / 400.0;
      kap = std::min(kap, s.Hpp(0.0, p));
    }
    s.kappa = kap;
    if (g == 2.0) {
      // H = 1 + p^2 - V: conjugate in closed form
      s.L_closed = [V](double x, double v) { return 0.25 * v * v - 1.0 + V(x); };
      s.Lv_closed = [](double, double v) { return 0.5 * v; };
    }
    return s;
  }

  throw ConfigError("unknown hamiltonian family: " + family);
}

}  // namespace pfmg
