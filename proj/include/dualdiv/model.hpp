#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "dualdiv/rng.hpp"

namespace dualdiv {

// Exponential lifetime model with rate parameter theta > 0:
// density p_theta(x) = theta exp(-theta x) on x >= 0.
struct ExponentialModel {
  static void check_rate(double theta, const char* where) {
    if (!(theta > 0.0)) throw std::domain_error(std::string(where) + ": rate must be positive");
  }

  double density(double theta, double x) const {
    check_rate(theta, "density");
    return x < 0.0 ? 0.0 : theta * std::exp(-theta * x);
  }

  double log_density(double theta, double x) const {
    check_rate(theta, "log_density");
    if (x < 0.0) throw std::domain_error("log_density: x must be nonnegative");
    return std::log(theta) - theta * x;
  }

  double cdf(double theta, double x) const {
    check_rate(theta, "cdf");
    return x <= 0.0 ? 0.0 : -std::expm1(-theta * x);
  }

  double survival(double theta, double x) const {
    check_rate(theta, "survival");
    return x <= 0.0 ? 1.0 : std::exp(-theta * x);
  }

  // d/dtheta log p_theta(x) = 1/theta - x.
  double score(double theta, double x) const {
    check_rate(theta, "score");
    return 1.0 / theta - x;
  }

  double sample(double theta, Rng& rng) const {
    check_rate(theta, "sample");
    return rng.exponential(theta);
  }

  // Admissibility of (theta, alpha) for the gamma-integral: the effective
  // exponential rate k = gamma*theta + (1-gamma)*alpha must be positive.
  double effective_rate(double theta, double alpha, double gamma) const {
    return gamma * theta + (1.0 - gamma) * alpha;
  }

  bool in_domain(double theta, double alpha, double gamma) const {
    return theta > 0.0 && alpha > 0.0 &&
           effective_rate(theta, alpha, gamma) > 0.0;
  }

  // integral term I(theta, alpha; gamma) = (1/(gamma-1)) *
  //   integral (p_theta/p_alpha)^(gamma-1) dP_theta, closed form:
  //   theta^gamma alpha^(1-gamma) / ((gamma-1) (gamma theta + (1-gamma) alpha))
  // with the exact conventions I = 0 at gamma = 0 and
  // I = log(theta/alpha) - (theta-alpha)/theta at gamma = 1.
  double integral_term(double theta, double alpha, double gamma) const {
    check_rate(theta, "integral_term");
    check_rate(alpha, "integral_term");
    if (gamma == 0.0) return 0.0;
    if (gamma == 1.0)
      return std::log(theta / alpha) - (theta - alpha) / theta;
    const double k = effective_rate(theta, alpha, gamma);
    if (!(k > 0.0))
      throw std::domain_error("integral_term: gamma*theta + (1-gamma)*alpha must be positive");
    return std::pow(theta, gamma) * std::pow(alpha, 1.0 - gamma) /
           ((gamma - 1.0) * k);
  }

  // integral of phi'_gamma(p_theta/p_alpha) dP_theta, the model-side piece of
  // the dual integrand. Equals I - 1/(gamma-1) in general, 0 at gamma = 0
  // (phi'_0 integrates the score identity away), I itself at gamma = 1.
  double phi_prime_integral(double theta, double alpha, double gamma) const {
    if (gamma == 0.0) return 0.0;
    if (gamma == 1.0) return integral_term(theta, alpha, gamma);
    return integral_term(theta, alpha, gamma) - 1.0 / (gamma - 1.0);
  }
};

}  // namespace dualdiv
