#pragma once

#include <functional>
#include <string>
#include <vector>

namespace pfmg {

// A Hamiltonian instance: evaluators plus the declared structural constants
// the validation and estimate layers work against.  All evaluators take
// (x, p); separable instances also expose the potential split H = Hkin(p) - V(x).
struct HamiltonianSpec {
  std::string name;
  bool separable = true;

  // declared constants
  double kappa = 1.0;    // uniform convexity: H_pp >= kappa on the working box
  double C = 1.0;        // shared growth / Lipschitz constant
  double C1 = 0.5;       // lower growth: H >= C1|p|^g2 - C2(|x|^g1 + 1)
  double C2 = 0.0;
  double gamma1 = 1.0;   // spatial growth order (>= 1)
  double gamma2 = 2.0;   // momentum growth order (> 1)

  std::function<double(double, double)> H;     // (x,p)
  std::function<double(double, double)> Hp;
  std::function<double(double, double)> Hpp;
  std::function<double(double, double)> Hx;
  std::function<double(double)> V;             // may be null when not separable
  std::function<double(double)> Vp;

  // closed-form conjugate when the family has one; null otherwise
  std::function<double(double, double)> L_closed;    // (x,v)
  std::function<double(double, double)> Lv_closed;

  // conjugate exponent g2' = g2/(g2-1)
  double gamma2_conj() const { return gamma2 / (gamma2 - 1.0); }
};

// Third p-derivative by central differencing of Hpp; step pinned at 1e-4.
double eval_Hppp(const HamiltonianSpec& spec, double x, double p);

struct ConjugatePoint {
  double value;     // L(x,v)
  double argmax_p;  // maximizer of -pv - H(x,p)
};

// L(x,v) = sup_p { -p v - H(x,p) } by bracketed ternary search on
// [-P, P], P = 10 C (1+|v|)^(1/(g2-1)).  Throws NumericalFailure if the
// bracket cannot contain the maximizer.
ConjugatePoint legendre_numeric(const HamiltonianSpec& spec, double x, double v);

// Dispatches to the closed form when the family carries one.
double legendre_transform(const HamiltonianSpec& spec, double x, double v);

// dL/dv.  Envelope: L_v(x,v) = -argmax_p, so the numeric path reuses the
// conjugate maximizer instead of differencing.
double eval_Lv(const HamiltonianSpec& spec, double x, double v);

// max over an (x,p) sample grid of |sup_v(-pv - L(x,v)) - H(x,p)|.
double legendre_involution_check(const HamiltonianSpec& spec,
                                 const std::vector<double>& xs,
                                 const std::vector<double>& ps);

// max over samples of |p - phat| where v = -H_p(x,p), phat = -L_v(x,v).
double dual_pairing_check(const HamiltonianSpec& spec,
                          const std::vector<double>& xs,
                          const std::vector<double>& ps);

// Built-in families.  "quadratic": H = p^2/2 - V(x).
// "power_gamma2": H = (1+p^2)^(g2/2) - V(x), parameter g2 > 1.
// Potentials: "zero", "quadratic" (a x^2), "smooth_abs" (b(sqrt(x^2+d^2)-d)).
struct PotentialParams {
  std::string family = "zero";
  double a = 0.0;    // quadratic coefficient
  double b = 1.0;    // smooth_abs slope
  double delta = 0.1;
};

HamiltonianSpec make_builtin(const std::string& family, double gamma2,
                             const PotentialParams& pot);

}  // namespace pfmg
