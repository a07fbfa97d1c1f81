#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "dualdiv/divergence.hpp"
#include "dualdiv/model.hpp"
#include "dualdiv/quadrature.hpp"
#include "dualdiv/rng.hpp"

using namespace dualdiv;

namespace {

const std::vector<double> kGammas{-1.0, 0.0, 0.5, 1.0, 2.0};

double fd_derivative(double (*f)(const PowerDivergence&, double),
                     const PowerDivergence& d, double x) {
  const double h = 1e-5 * std::max(1.0, std::fabs(x));
  return (f(d, x + h) - f(d, x - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("phi: named divergences") {
  CHECK(divergence_name(1.0) == doctest::String("KL"));
  CHECK(divergence_name(0.0) == doctest::String("KLm"));
  CHECK(divergence_name(2.0) == doctest::String("chi2"));
  CHECK(divergence_name(-1.0) == doctest::String("chi2m"));
  CHECK(divergence_name(0.5) == doctest::String("Hellinger"));
  CHECK(divergence_name(0.3) == nullptr);
}

TEST_CASE("phi: pinned values") {
  CHECK(phi({0.5}, 1.0) == 0.0);
  CHECK(phi({2.0}, 3.0) == doctest::Approx(2.0).epsilon(1e-14));  // (3-1)^2/2
  // gamma=1/2 closed form equals 2(sqrt(x)-1)^2 at x=4
  CHECK(phi({0.5}, 4.0) == doctest::Approx(2.0).epsilon(1e-14));
  for (double g : kGammas) CHECK(phi({g}, 1.0) == 0.0);
}

TEST_CASE("phi: domain and x=0 limit convention") {
  CHECK_THROWS_AS(phi({0.5}, -1.0), std::domain_error);
  CHECK_THROWS_AS(phi({0.0}, -0.5), std::domain_error);
  // gamma <= 0: limit is +infinity, returned not thrown
  CHECK(std::isinf(phi({0.0}, 0.0)));
  CHECK(std::isinf(phi({-1.0}, 0.0)));
  // gamma > 0: limit 1/gamma (gamma=1 branch: x log x - x + 1 -> 1)
  CHECK(phi({2.0}, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(phi({0.5}, 0.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(phi({1.0}, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("phi_prime: pinned values and domain") {
  CHECK(phi_prime({2.0}, 1.0) == 0.0);
  CHECK(phi_prime({1.0}, std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(phi_prime({0.5}, 4.0) == doctest::Approx(1.0).epsilon(1e-14));
  for (double g : kGammas) CHECK(phi_prime({g}, 1.0) == 0.0);
  CHECK_THROWS_AS(phi_prime({0.5}, 0.0), std::domain_error);
  CHECK_THROWS_AS(phi_prime({0.5}, -2.0), std::domain_error);
}

TEST_CASE("phi_second: pinned values, positivity, domain") {
  for (double g : kGammas) CHECK(phi_second({g}, 1.0) == 1.0);
  CHECK(phi_second({0.0}, 2.0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(phi_second({3.0}, 2.0) == doctest::Approx(2.0).epsilon(1e-14));
  for (double g : kGammas)
    for (double x : {0.1, 0.7, 1.3, 5.0, 10.0}) CHECK(phi_second({g}, x) > 0.0);
  CHECK_THROWS_AS(phi_second({1.0}, 0.0), std::domain_error);
}

TEST_CASE("phi derivatives match central finite differences") {
  for (double g : {-1.0, 0.0, 0.5, 1.0, 2.0, 3.0}) {
    const PowerDivergence d{g};
    for (double x = 0.1; x <= 10.0; x += 0.3) {
      // relative error with a small-value floor (the derivative vanishes at
      // x=1, where any relative comparison is pure roundoff)
      const double fd1 = fd_derivative(&phi, d, x);
      const double an1 = phi_prime(d, x);
      CHECK(std::fabs(fd1 - an1) / std::max(1e-3, std::fabs(an1)) <= 1e-6);
      const double fd2 = fd_derivative(&phi_prime, d, x);
      const double an2 = phi_second(d, x);
      CHECK(std::fabs(fd2 - an2) / std::max(1e-3, std::fabs(an2)) <= 1e-6);
    }
  }
}

TEST_CASE("gamma-branch continuity at the gamma=0 switch") {
  const PowerDivergence tiny{1e-8};
  const PowerDivergence zero{0.0};
  for (double x = 0.2; x <= 5.0; x += 0.1)
    CHECK(std::fabs(phi(tiny, x) - phi(zero, x)) <= 1e-6);
}

TEST_CASE("convex-duality inequality with equality only at s=t") {
  Rng rng(2026);
  for (double g : kGammas) {
    const PowerDivergence d{g};
    for (int i = 0; i < 200; ++i) {
      const double s = 0.05 + rng.uniform() * 19.95;
      const double t = 0.05 + rng.uniform() * 19.95;
      const double gap = phi(d, t) - phi(d, s) - phi_prime(d, s) * (t - s);
      CHECK(gap >= -1e-12);
      if (std::fabs(t - s) > 1e-3) CHECK(gap > 0.0);
    }
    CHECK(std::fabs(phi(d, 1.0) - phi(d, 1.0)) == 0.0);
  }
}

TEST_CASE("phi_legendre_term equals x phi'(x) - phi(x)") {
  for (double g : kGammas) {
    const PowerDivergence d{g};
    for (double x : {0.2, 0.8, 1.0, 1.7, 6.0}) {
      const double direct = x * phi_prime(d, x) - phi(d, x);
      CHECK(phi_legendre_term(d, x) == doctest::Approx(direct).epsilon(1e-12));
      CHECK(phi_legendre_log(d, std::log(x)) ==
            doctest::Approx(direct).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(phi_legendre_term({0.5}, 0.0), std::domain_error);
  CHECK_THROWS_AS(
      phi_legendre_log({0.5}, std::numeric_limits<double>::infinity()),
      std::domain_error);
}

TEST_CASE("dual_integrand: identity case and quadrature oracle") {
  const ExponentialModel model;
  for (double g : kGammas)
    for (double x : {0.1, 1.0, 3.0})
      CHECK(std::fabs(dual_integrand(model, {g}, 1.3, 1.3, x)) <= 1e-12);

  // Oracle: model-side integral by quadrature + pointwise bracket, at
  // admissible (theta, alpha) pairs.
  struct Case {
    double gamma, theta, alpha, x;
  };
  for (const Case& c : {Case{0.5, 2.0, 1.0, 0.7}, Case{0.5, 1.0, 2.0, 0.5},
                        Case{2.0, 1.0, 0.8, 0.5}, Case{-1.0, 1.0, 1.4, 2.0},
                        Case{1.0, 1.5, 1.0, 1.0}}) {
    const PowerDivergence d{c.gamma};
    const double k = c.gamma * c.theta + (1.0 - c.gamma) * c.alpha;
    REQUIRE(k > 0.0);
    const double cut = tail_cutoff(std::min(k, c.theta));
    const double integral = integrate(
        [&](double y) {
          const double t = model.density(c.theta, y) / model.density(c.alpha, y);
          return phi_prime(d, t) * model.density(c.theta, y);
        },
        0.0, cut, 1e-10);
    const double t = model.density(c.theta, c.x) / model.density(c.alpha, c.x);
    const double oracle = integral - phi_legendre_term(d, t);
    CHECK(dual_integrand(model, d, c.theta, c.alpha, c.x) ==
          doctest::Approx(oracle).epsilon(1e-8));
  }
}

TEST_CASE("dual_integrand rejects pairs outside the admissible set") {
  // gamma*theta + (1-gamma)*alpha = 0: the model-side integral diverges.
  const ExponentialModel model;
  CHECK_THROWS_AS(dual_integrand(model, {2.0}, 1.0, 2.0, 0.5),
                  std::domain_error);
}

// ---------------------------------------------------------------------------
// Exponential model
// ---------------------------------------------------------------------------

TEST_CASE("exponential density: pinned values, mass one, cdf consistency") {
  const ExponentialModel model;
  CHECK(model.density(1.0, 0.0) == 1.0);
  CHECK(model.density(2.0, 0.0) == 2.0);
  CHECK(model.density(1.0, 1.0) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(model.density(1.0, -0.5) == 0.0);

  for (double theta : {0.5, 1.0, 2.0}) {
    const double mass = integrate(
        [&](double x) { return model.density(theta, x); }, 0.0,
        tail_cutoff(theta), 1e-12);
    CHECK(std::fabs(mass - 1.0) <= 1e-10);
    for (double x : {0.1, 0.9, 2.5}) {
      CHECK(model.cdf(theta, x) ==
            doctest::Approx(1.0 - std::exp(-theta * x)).epsilon(1e-12));
      const double h = 1e-5;
      const double fd = (model.cdf(theta, x + h) - model.cdf(theta, x - h)) /
                        (2.0 * h);
      CHECK(std::fabs(fd - model.density(theta, x)) /
                model.density(theta, x) <=
            1e-6);
    }
  }
}

TEST_CASE("exponential score equals d/dtheta log density") {
  const ExponentialModel model;
  for (double theta : {0.5, 1.0, 3.0})
    for (double x : {0.1, 1.0, 4.0}) {
      CHECK(model.score(theta, x) ==
            doctest::Approx(1.0 / theta - x).epsilon(1e-12));
      const double h = 1e-6 * theta;
      const double fd = (model.log_density(theta + h, x) -
                         model.log_density(theta - h, x)) /
                        (2.0 * h);
      CHECK(std::fabs(fd - model.score(theta, x)) <= 1e-6);
    }
}

TEST_CASE("exponential sampling: determinism, LLN, KS distance") {
  const ExponentialModel model;
  const std::size_t n = 10000;
  for (double theta : {1.0, 2.0}) {
    Rng a(77), b(77);
    std::vector<double> xs(n);
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = model.sample(theta, a);
      CHECK(xs[i] == model.sample(theta, b));  // same seed, same stream
      mean += xs[i];
    }
    mean /= static_cast<double>(n);
    const double sigma = 1.0 / theta;
    CHECK(std::fabs(mean - 1.0 / theta) <= 3.0 * sigma / std::sqrt(double(n)));

    std::sort(xs.begin(), xs.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double F = model.cdf(theta, xs[i]);
      const double lo = static_cast<double>(i) / n;
      const double hi = static_cast<double>(i + 1) / n;
      ks = std::max({ks, std::fabs(F - lo), std::fabs(F - hi)});
    }
    CHECK(ks < 0.05);
  }
}

TEST_CASE("integral_term: pinned values and boundary") {
  const ExponentialModel model;
  CHECK(model.integral_term(1.0, 1.0, 2.0) == doctest::Approx(1.0));
  CHECK(model.integral_term(2.0, 1.0, 0.5) ==
        doctest::Approx(-std::sqrt(2.0) / 0.75).epsilon(1e-12));
  CHECK_THROWS_AS(model.integral_term(1.0, 2.0, 2.0), std::domain_error);
  // alpha=theta collapses to 1/(gamma-1) for gamma outside {0,1}
  for (double g : {-1.0, 0.5, 2.0})
    CHECK(model.integral_term(1.7, 1.7, g) ==
          doctest::Approx(1.0 / (g - 1.0)).epsilon(1e-12));
}

TEST_CASE("integral_term matches the quadrature oracle on the grid") {
  const ExponentialModel model;
  const std::vector<double> params{0.5, 1.0, 2.0, 4.0};
  for (double g : {-1.0, 0.5, 2.0})
    for (double theta : params)
      for (double alpha : params) {
        const double k = g * theta + (1.0 - g) * alpha;
        if (k <= 0.0) {
          CHECK_THROWS_AS(model.integral_term(theta, alpha, g),
                          std::domain_error);
          continue;
        }
        const double oracle = integrate(
            [&](double x) {
              const double t =
                  model.density(theta, x) / model.density(alpha, x);
              return std::pow(t, g - 1.0) / (g - 1.0) *
                     model.density(theta, x);
            },
            0.0, tail_cutoff(std::min(k, theta)), 1e-10);
        CHECK(std::fabs(model.integral_term(theta, alpha, g) - oracle) <=
              1e-8);
      }
}

TEST_CASE("integral_term gamma in {0,1} branches vs quadrature") {
  const ExponentialModel model;
  for (double theta : {0.5, 1.0, 2.0})
    for (double alpha : {0.5, 1.0, 2.0}) {
      // gamma=0: integral of phi'_0(p_t/p_a) dP_t = 1 - integral p_a = 0
      const double oracle0 = integrate(
          [&](double x) {
            return (1.0 - model.density(alpha, x) / model.density(theta, x)) *
                   model.density(theta, x);
          },
          0.0, tail_cutoff(std::min(theta, alpha)), 1e-10);
      CHECK(std::fabs(model.integral_term(theta, alpha, 0.0) - oracle0) <=
            1e-8);
      // gamma=1: integral of log(p_t/p_a) dP_t = log(t/a) - (t-a)/t
      const double oracle1 = integrate(
          [&](double x) {
            return std::log(model.density(theta, x) /
                            model.density(alpha, x)) *
                   model.density(theta, x);
          },
          0.0, tail_cutoff(theta), 1e-10);
      CHECK(std::fabs(model.integral_term(theta, alpha, 1.0) - oracle1) <=
            1e-8);
    }
}

TEST_CASE("model rejects nonpositive rates") {
  const ExponentialModel model;
  CHECK_THROWS_AS(model.density(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(model.density(-1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(model.integral_term(1.0, 0.0, 0.5), std::domain_error);
}
