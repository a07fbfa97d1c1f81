#include "dualdiv/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dualdiv/divergence.hpp"
#include "dualdiv/model.hpp"
#include "dualdiv/quadrature.hpp"

namespace dualdiv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_scheme(const CensoringScheme& s) {
  if (!(s.theta0 > 0.0))
    throw std::domain_error("censoring scheme: theta0 must be positive");
  if (!(s.c >= 0.0))
    throw std::domain_error("censoring scheme: c must be nonnegative");
}

void check_admissible(const CensoringScheme& s, double gamma, double theta) {
  if (!(theta > 0.0))
    throw std::domain_error("asymptotics: theta must be positive");
  if (!(gamma * theta + (1.0 - gamma) * s.theta0 > 0.0))
    throw std::domain_error(
        "asymptotics: (theta, theta0) outside the admissible set");
}

// Cutoff policy: at least far enough that (1-F) < 1e-12, extended when the
// integrand itself decays at a slower rate.
double outer_bound(const CensoringScheme& s, double slowest_rate) {
  const double base = -std::log(1e-12) / s.lambda();
  return std::max(base, tail_cutoff(slowest_rate));
}

// All nested quantities below use the analytically reduced xi0 and C for
// this scheme; their agreement with the defining quadratures (compute_xi0,
// compute_C) is enforced by tests.
struct Nested {
  CensoringScheme s;
  double gamma;
  double theta;

  double k() const { return gamma * theta + (1.0 - gamma) * s.theta0; }
  double hp(double y) const {
    return dual_integrand_alpha_deriv(gamma, theta, s.theta0, y);
  }
  double xi0c(double y) const { return std::exp(s.c * y); }
  double Cc(double x) const {
    return s.c == 0.0 ? 0.0
                      : (s.c / s.lambda()) * std::expm1(s.lambda() * x);
  }
  // densities of the subdistributions F1 (events) and F0 (censorings)
  double f1(double y) const {
    return s.censoring_survival(y) * s.theta0 * std::exp(-s.theta0 * y);
  }
  double f0(double y) const {
    return s.c == 0.0
               ? 0.0
               : s.lifetime_survival(y) * s.c * std::exp(-s.c * y);
  }
  // span over which the h' xi0 dF1 tail is integrated; its integrand decays
  // at exactly rate k
  double tail_span() const { return outer_bound(s, k()); }

  double tail(double x) const {  // integral over y > x of h' xi0 dF1
    return integrate([this](double z) { return hp(z) * xi0c(z) * f1(z); }, x,
                     x + tail_span(), 1e-10);
  }
  double head(double x) const {  // integral over z <= x of h' xi0 C(z) dF1
    if (x <= 0.0) return 0.0;
    return integrate(
        [this](double z) { return hp(z) * xi0c(z) * Cc(z) * f1(z); }, 0.0, x,
        1e-10);
  }
  double xi1(double x) const {
    const double one_minus_F =
        s.lifetime_survival(x) * s.censoring_survival(x);
    if (one_minus_F < 1e-300) return 0.0;  // past any usable support
    return tail(x) / one_minus_F;
  }
  double xi2(double x) const { return Cc(x) * tail(x) + head(x); }
};

}  // namespace

double dual_integrand_alpha_deriv(double gamma, double theta, double alpha,
                                  double y) {
  const double k = gamma * theta + (1.0 - gamma) * alpha;
  const double lr = std::log(theta / alpha);
  double first = 0.0;
  if (gamma != 0.0)
    first = -gamma * std::pow(theta, gamma) * std::pow(alpha, -gamma) *
            (theta - alpha) / (k * k);
  return first + std::exp(gamma * (lr - (theta - alpha) * y)) *
                     (1.0 / alpha - y);
}

double compute_C(const CensoringScheme& scheme, double x) {
  check_scheme(scheme);
  if (!(x >= 0.0)) throw std::domain_error("compute_C: x must be nonnegative");
  if (scheme.c == 0.0 || x == 0.0) return 0.0;
  const auto integrand = [&](double y) {
    const double g_density = scheme.c * scheme.censoring_survival(y);
    const double cs = scheme.censoring_survival(y);
    return g_density / (scheme.lifetime_survival(y) * cs * cs);
  };
  return integrate(integrand, 0.0, x, 1e-10);
}

double compute_xi0(const CensoringScheme& scheme, double x) {
  check_scheme(scheme);
  if (scheme.c == 0.0 || x <= 0.0) return 1.0;
  const auto integrand = [&](double y) {
    const double f0_density = scheme.lifetime_survival(y) * scheme.c *
                              scheme.censoring_survival(y);
    const double one_minus_F =
        scheme.lifetime_survival(y) * scheme.censoring_survival(y);
    return f0_density / one_minus_F;
  };
  return std::exp(integrate(integrand, 0.0, x, 1e-10));
}

std::pair<double, double> compute_xi1_xi2(const CensoringScheme& scheme,
                                          double gamma, double theta,
                                          double x) {
  check_scheme(scheme);
  check_admissible(scheme, gamma, theta);
  const Nested n{scheme, gamma, theta};
  return {n.xi1(x), n.xi2(x)};
}

double compute_S(const CensoringScheme& scheme, double gamma, double theta) {
  check_scheme(scheme);
  check_admissible(scheme, gamma, theta);
  const ExponentialModel model;
  const PowerDivergence d{gamma};
  const double theta0 = scheme.theta0;
  const auto integrand = [&](double y) {
    const double t = model.density(theta, y) / model.density(theta0, y);
    const double score = model.score(theta0, y);
    return phi_second(d, t) * t * t * score * score *
           model.density(theta0, y);
  };
  const double k = gamma * theta + (1.0 - gamma) * theta0;
  return integrate(integrand, 0.0, outer_bound(scheme, k), 1e-10);
}

double compute_V(const CensoringScheme& scheme, double gamma, double theta) {
  check_scheme(scheme);
  check_admissible(scheme, gamma, theta);
  const double theta0 = scheme.theta0;
  // Slowest decay of the squared branches: theta0 - c - 2*max(0, growth of
  // h'). Nonpositive means E[U^2] diverges (R.3/R.4 fail numerically).
  const double growth = std::max(0.0, -gamma * (theta - theta0));
  const double rate = theta0 - scheme.c - 2.0 * growth;
  if (!(rate > 0.0)) return kInf;

  const Nested n{scheme, gamma, theta};
  const double bound = outer_bound(scheme, rate);
  const auto event_branch = [&](double y) {
    const double u = n.hp(y) * n.xi0c(y) - n.xi2(y);
    return u * u * n.f1(y);
  };
  double v = integrate(event_branch, 0.0, bound, 1e-8);
  if (scheme.c > 0.0) {
    const auto censored_branch = [&](double y) {
      const double u = n.xi1(y) - n.xi2(y);
      return u * u * n.f0(y);
    };
    v += integrate(censored_branch, 0.0, bound, 1e-8);
  }
  return v;
}

SandwichVariance sandwich_variance(const CensoringScheme& scheme, double gamma,
                                   double theta) {
  const double S = compute_S(scheme, gamma, theta);
  if (!std::isfinite(S) || !(S > 1e-12))
    throw std::domain_error("sandwich_variance: S is numerically singular");
  const double V = compute_V(scheme, gamma, theta);
  return {S, V, V / (S * S)};
}

double population_criterion(double theta0, double gamma, double theta,
                            double alpha) {
  if (!(theta0 > 0.0) || !(theta > 0.0) || !(alpha > 0.0))
    throw std::domain_error(
        "population_criterion: parameters must be positive");
  const ExponentialModel model;
  const PowerDivergence d{gamma};
  // Constant part of h; throws when (theta, alpha) leaves the admissible set.
  const double constant = model.phi_prime_integral(theta, alpha, gamma);
  // Decay rate of the non-constant part integrated against p_theta0.
  const double rate = theta0 + gamma * (theta - alpha);
  if (!(rate > 0.0)) return gamma < 0.0 ? kInf : -kInf;

  const double lr = std::log(theta / alpha);
  // Integrand h * p_theta0 with the exponentials fused, so that near-
  // boundary (rate -> 0) evaluations never overflow. Identical algebra to
  // dual_integrand(model, d, theta, alpha, y) * density(theta0, y).
  const auto integrand = [&](double y) {
    const double p0 = theta0 * std::exp(-theta0 * y);
    const double s = lr - (theta - alpha) * y;
    double bracket_p0;  // phi_legendre(e^s) * p0 without forming e^s
    if (gamma == 0.0) {
      bracket_p0 = s * p0;
    } else {
      bracket_p0 = (theta0 / gamma) * (std::exp(gamma * s - theta0 * y) -
                                       std::exp(-theta0 * y));
    }
    return constant * p0 - bracket_p0;
  };
  const double cut =
      std::max(tail_cutoff(theta0), tail_cutoff(std::min(rate, theta0)));
  return integrate(integrand, 0.0, cut, 1e-8);
}

}  // namespace dualdiv
