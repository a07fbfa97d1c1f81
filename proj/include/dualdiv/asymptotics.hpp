#pragma once

#include <cmath>
#include <utility>

namespace dualdiv {

// Exponential/exponential censoring scheme: lifetimes exp(theta0), censoring
// times exp(c); c = 0 encodes no censoring (G identically zero). Holds the
// observed-time distribution F, the censoring law G and the event/censoring
// subdistributions F1/F0 with F0 + F1 = F.
struct CensoringScheme {
  double theta0 = 1.0;
  double c = 0.0;

  double lambda() const { return theta0 + c; }
  // P(delta = 0): probability an observation is censored.
  double censoring_probability() const { return c / (theta0 + c); }

  double lifetime_survival(double x) const {
    return x <= 0.0 ? 1.0 : std::exp(-theta0 * x);
  }
  double censoring_survival(double x) const {
    return (c == 0.0 || x <= 0.0) ? 1.0 : std::exp(-c * x);
  }
  double G(double x) const { return 1.0 - censoring_survival(x); }
  double F(double x) const {
    return x <= 0.0 ? 0.0 : -std::expm1(-lambda() * x);
  }
  double F0(double x) const {
    return (c / lambda()) * F(x);  // P(Y <= x, delta = 0)
  }
  double F1(double x) const {
    return (theta0 / lambda()) * F(x);  // P(Y <= x, delta = 1)
  }
  // m(y) = P(delta = 1 | Y = y); constant for this scheme.
  double m(double) const { return theta0 / lambda(); }
};

// Scalar S, V and the sandwich S^-1 V S^-1 of the limit law.
struct SandwichVariance {
  double S;
  double V;
  double sandwich;
};

// d/dalpha of the dual integrand h(theta, alpha, y) for the exponential
// model (the building block of xi1, xi2, U and V):
//   -gamma theta^g alpha^-g (theta-alpha)/k^2
//     + (theta/alpha)^g e^{-g(theta-alpha)y} (1/alpha - y).
double dual_integrand_alpha_deriv(double gamma, double theta, double alpha,
                                  double y);

// C(x) = integral over y < x of dG / ((1-P)(1-G)^2), by quadrature.
// Nondecreasing, C(0) = 0, identically 0 when c = 0.
double compute_C(const CensoringScheme& scheme, double x);

// xi0(x) = exp{ integral over y < x of dF0 / (1-F) }, by quadrature.
double compute_xi0(const CensoringScheme& scheme, double x);

// (xi1(x), xi2(x)) at alpha = theta0:
//   xi1(x) = (1-F(x))^-1 * integral over y > x of h'(y) xi0(y) dF1(y)
//   xi2(x) = integral of h'(z) xi0(z) C(min(x,z)) dF1(z).
std::pair<double, double> compute_xi1_xi2(const CensoringScheme& scheme,
                                          double gamma, double theta,
                                          double x);

// S = integral of phi''(p_theta/p_theta0) p_theta^2 / p_theta0^3 *
//     (dp/dalpha at theta0)^2, by quadrature; equals 1/theta0^2 at
// theta = theta0 for every gamma.
double compute_S(const CensoringScheme& scheme, double gamma, double theta);

// V = E[U(theta0)^2] with U = h' xi0 delta + xi1 (1-delta) - xi2, computed
// by splitting on delta: the squared event branch against F1 plus the
// squared censored branch against F0. Returns +infinity when the second
// moment diverges (an R.3/R.4 violation for that (gamma, scheme) pair).
double compute_V(const CensoringScheme& scheme, double gamma, double theta);

// Assembles S, V and the sandwich S^-1 V S^-1; throws when S is
// numerically singular.
SandwichVariance sandwich_variance(const CensoringScheme& scheme, double gamma,
                                   double theta);

// Population dual criterion: quadrature of the generic dual integrand
// h(theta, alpha, .) against P_theta0. Its supremum over alpha sits at
// alpha = theta0 and equals the phi-divergence between P_theta and
// P_theta0. Returns +/-infinity when the integral genuinely diverges.
double population_criterion(double theta0, double gamma, double theta,
                            double alpha);

}  // namespace dualdiv
