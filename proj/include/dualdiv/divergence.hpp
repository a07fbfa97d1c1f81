#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dualdiv {

// Power-divergence index. gamma = 1 is KL, 0 modified KL, 2 chi-squared,
// -1 modified chi-squared, 1/2 twice the squared Hellinger distance.
struct PowerDivergence {
  double gamma;
};

// Human-readable tag for the named members of the family; nullptr otherwise.
inline const char* divergence_name(double gamma) {
  if (gamma == 1.0) return "KL";
  if (gamma == 0.0) return "KLm";
  if (gamma == 2.0) return "chi2";
  if (gamma == -1.0) return "chi2m";
  if (gamma == 0.5) return "Hellinger";
  return nullptr;
}

// phi_gamma(x). The gamma in {0,1} branches are exact, selected by exact
// comparison; the general branch uses expm1 so it stays accurate for gamma
// near the special values. x = 0 follows the limit convention: 1/gamma for
// gamma > 0, +infinity (returned, not thrown) for gamma <= 0.
inline double phi(const PowerDivergence& d, double x) {
  if (x < 0.0) throw std::domain_error("phi: x must be nonnegative");
  const double g = d.gamma;
  if (x == 0.0)
    return g > 0.0 ? 1.0 / g : std::numeric_limits<double>::infinity();
  if (g == 0.0) return -std::log(x) + x - 1.0;
  if (g == 1.0) return x * std::log(x) - x + 1.0;
  // (x^g - g x + g - 1)/(g(g-1)) = (expm1(g log x) - g(x-1))/(g(g-1))
  return (std::expm1(g * std::log(x)) - g * (x - 1.0)) / (g * (g - 1.0));
}

// phi'_gamma(x); phi'(1) = 0 for every gamma.
inline double phi_prime(const PowerDivergence& d, double x) {
  if (x <= 0.0) throw std::domain_error("phi_prime: x must be positive");
  const double g = d.gamma;
  if (g == 0.0) return 1.0 - 1.0 / x;
  if (g == 1.0) return std::log(x);
  return std::expm1((g - 1.0) * std::log(x)) / (g - 1.0);
}

// phi''_gamma(x) = x^(gamma-2) for every gamma; strictly positive.
inline double phi_second(const PowerDivergence& d, double x) {
  if (x <= 0.0) throw std::domain_error("phi_second: x must be positive");
  return std::pow(x, d.gamma - 2.0);
}

// x phi'(x) - phi(x), the bracket appearing in the dual integrand. Equals
// (x^gamma - 1)/gamma in general, log x at gamma = 0, x - 1 at gamma = 1.
inline double phi_legendre_term(const PowerDivergence& d, double x) {
  if (x <= 0.0) throw std::domain_error("phi_legendre_term: x must be positive");
  const double g = d.gamma;
  if (g == 0.0) return std::log(x);
  if (g == 1.0) return x - 1.0;
  return std::expm1(g * std::log(x)) / g;
}

// Same bracket evaluated from s = log x, so extreme ratios keep working
// where x itself would under/overflow.
inline double phi_legendre_log(const PowerDivergence& d, double s) {
  if (!std::isfinite(s))
    throw std::domain_error("phi_legendre_log: log-ratio must be finite");
  const double g = d.gamma;
  if (g == 0.0) return s;
  if (g == 1.0) return std::expm1(s);
  return std::expm1(g * s) / g;
}

// h(theta, alpha, x): the integrand of the dual representation. The model
// supplies log-densities and the model-side integral of
// phi'(p_theta/p_alpha) against P_theta (closed form for the exponential
// model). Works through the log density ratio for numerical range.
template <class Model>
double dual_integrand(const Model& model, const PowerDivergence& d,
                      double theta, double alpha, double x) {
  const double s =
      model.log_density(theta, x) - model.log_density(alpha, x);
  if (std::isnan(s))
    throw std::runtime_error("dual_integrand: undefined density ratio at x=" +
                             std::to_string(x));
  return model.phi_prime_integral(theta, alpha, d.gamma) -
         phi_legendre_log(d, s);
}

}  // namespace dualdiv
