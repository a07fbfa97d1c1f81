#include "dualdiv/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace dualdiv {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_pair(double theta, double alpha, double gamma) {
  ExponentialModel model;
  if (!(theta > 0.0) || !(alpha > 0.0))
    throw std::domain_error("dual criterion: parameters must be positive");
  if (!model.in_domain(theta, alpha, gamma))
    throw std::domain_error(
        "dual criterion: (theta, alpha) outside the admissible set");
}

void check_events(const KaplanMeierFit& fit, const char* where) {
  if (fit.weight_sum() == 0.0)
    throw std::domain_error(std::string(where) +
                            ": degenerate sample (no events)");
}

// Geometric grid of m points from lo to hi inclusive.
std::vector<double> geometric_grid(double lo, double hi, int m) {
  std::vector<double> g(m);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < m; ++i)
    g[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) /
                              static_cast<double>(m - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

struct Refined {
  double root;
  int iterations;
  bool ok;
};

// Safeguarded Newton inside a bracket [a, b] with f(a) and f(b) of opposite
// (weak) sign: Newton steps that leave the bracket, or hit a nonfinite
// value, fall back to bisection. Stops once |f| <= tol or the bracket
// collapses.
Refined refine_root(const std::function<double(double)>& f,
                    const std::function<double(double)>& df, double a,
                    double b, double fa, double fb, double tol,
                    int max_iter) {
  if (fb == 0.0) return {b, 0, true};
  if (fa == 0.0) return {a, 0, true};
  // orient so f(a) > 0 > f(b) conceptually; keep signs via sa
  double x = 0.5 * (a + b);
  int it = 0;
  double fx = 0.0;
  for (; it < max_iter; ++it) {
    fx = f(x);
    if (!std::isnan(fx)) {
      if (fx == 0.0 || (std::isfinite(fx) && std::abs(fx) <= tol))
        return {x, it + 1, true};
      if ((fx > 0.0) == (fa > 0.0)) {  // infinities keep a usable sign
        a = x;
        fa = fx;
      } else {
        b = x;
        fb = fx;
      }
    } else {
      b = x;  // NaN: shrink arbitrarily but keep the original left endpoint
    }
    if (std::abs(b - a) <= 1e-14 * std::max(1.0, std::abs(x)))
      return {0.5 * (a + b), it + 1, std::isfinite(fx)};
    double xn = kNaN;
    const double d = std::isfinite(fx) ? df(x) : kNaN;
    if (std::isfinite(fx) && std::isfinite(d) && d != 0.0) xn = x - fx / d;
    if (!(xn > std::min(a, b) && xn < std::max(a, b))) xn = 0.5 * (a + b);
    x = xn;
  }
  return {x, it, std::isfinite(fx) && std::abs(fx) <= 100.0 * tol};
}

struct CriterionParts {
  double gamma, theta, alpha;
  const KaplanMeierFit* fit;

  // s_i = log(theta/alpha) - (theta - alpha) z_i;  t_i = exp(s_i)
  double s(double z) const {
    return std::log(theta / alpha) - (theta - alpha) * z;
  }
};

}  // namespace

double dual_criterion(const KaplanMeierFit& fit, double gamma, double theta,
                      double alpha) {
  check_pair(theta, alpha, gamma);
  check_events(fit, "dual_criterion");
  const auto& w = fit.weights();
  const auto& z = fit.times();
  const double lr = std::log(theta / alpha);
  if (gamma == 0.0) {
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] != 0.0) acc += w[i] * ((theta - alpha) * z[i] - lr);
    return acc;
  }
  if (gamma == 1.0) {
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] != 0.0) acc += w[i] * std::expm1(lr - (theta - alpha) * z[i]);
    return lr - (theta - alpha) / theta - acc;
  }
  ExponentialModel model;
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] != 0.0)
      acc += w[i] * std::expm1(gamma * (lr - (theta - alpha) * z[i]));
  return model.integral_term(theta, alpha, gamma) - acc / gamma -
         1.0 / (gamma - 1.0);
}

double dual_criterion(const CensoredSample& sample, double gamma, double theta,
                      double alpha) {
  return dual_criterion(km_fit(sample), gamma, theta, alpha);
}

// psi(alpha) = d/dalpha criterion
//   = -gamma theta^gamma alpha^(-gamma) (theta-alpha) / k^2
//     + sum W_i t_i^gamma (1/alpha - z_i),      k = gamma theta + (1-gamma) alpha
// valid for every gamma (the first term vanishes at gamma = 0 and the second
// reduces to the AMLE equation).
double criterion_derivative(const KaplanMeierFit& fit, double gamma,
                            double theta, double alpha) {
  check_pair(theta, alpha, gamma);
  check_events(fit, "criterion_derivative");
  const auto& w = fit.weights();
  const auto& z = fit.times();
  const double lr = std::log(theta / alpha);
  const double k = gamma * theta + (1.0 - gamma) * alpha;
  double first = 0.0;
  if (gamma != 0.0)
    first = -gamma * std::pow(theta, gamma) * std::pow(alpha, -gamma) *
            (theta - alpha) / (k * k);
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] != 0.0)
      acc += w[i] * std::exp(gamma * (lr - (theta - alpha) * z[i])) *
             (1.0 / alpha - z[i]);
  return first + acc;
}

double criterion_second_derivative(const KaplanMeierFit& fit, double gamma,
                                   double theta, double alpha) {
  check_pair(theta, alpha, gamma);
  check_events(fit, "criterion_second_derivative");
  const auto& w = fit.weights();
  const auto& z = fit.times();
  const double lr = std::log(theta / alpha);
  const double k = gamma * theta + (1.0 - gamma) * alpha;
  double first = 0.0;
  if (gamma != 0.0) {
    const double ag = std::pow(alpha, gamma);
    first = -gamma * std::pow(theta, gamma) *
            (-gamma * (theta - alpha) / (ag * alpha * k * k) -
             1.0 / (ag * k * k) -
             2.0 * (1.0 - gamma) * (theta - alpha) / (ag * k * k * k));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] != 0.0) {
      const double u = 1.0 / alpha - z[i];
      acc += w[i] * std::exp(gamma * (lr - (theta - alpha) * z[i])) *
             (gamma * u * u + 1.0 / (alpha * alpha));
    }
  return first - acc;
}

double mle_value(const CensoredSample& sample) {
  if (sample.size() == 0) throw std::invalid_argument("mle: empty sample");
  double events = 0.0, total = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    events += sample.delta[i];
    total += sample.z[i];
  }
  if (events == 0.0)
    throw std::domain_error("mle: degenerate sample (no events)");
  if (!(total > 0.0))
    throw std::domain_error("mle: total observed time must be positive");
  return events / total;
}

double amle_value(const KaplanMeierFit& fit) {
  check_events(fit, "amle");
  const double wz = km_integral(fit, [](double z) { return z; });
  if (!(wz > 0.0))
    throw std::domain_error("amle: weighted mean time must be positive");
  return fit.weight_sum() / wz;
}

FitResult fit_mle_exponential(const CensoredSample& sample) {
  FitResult r;
  r.estimate = mle_value(sample);
  r.gradient_norm = 0.0;
  r.converged = true;
  return r;
}

FitResult fit_amle(const KaplanMeierFit& fit) {
  FitResult r;
  r.estimate = amle_value(fit);
  r.gradient_norm = 0.0;
  r.converged = true;
  return r;
}

FitResult fit_amle(const CensoredSample& sample) {
  return fit_amle(km_fit(sample));
}

FitResult fit_dphide(const KaplanMeierFit& fit, const DphideConfig& config) {
  if (!(config.tolerance > 0.0))
    throw std::invalid_argument("fit_dphide: tolerance must be positive");
  if (config.max_iterations < 1 || config.grid_points < 2)
    throw std::invalid_argument("fit_dphide: bad iteration/grid limits");
  if (!config.adaptive_escort && !(config.escort > 0.0))
    throw std::invalid_argument("fit_dphide: fixed escort must be positive");
  if (config.interval_lo > 0.0 && config.interval_hi > 0.0 &&
      !(config.interval_lo < config.interval_hi))
    throw std::invalid_argument("fit_dphide: interval lo must be below hi");
  check_events(fit, "fit_dphide");

  const double gamma = config.divergence.gamma;
  const double amle = amle_value(fit);
  const double theta = config.adaptive_escort ? amle : config.escort;

  FitResult result;
  result.escort = theta;

  if (gamma == 0.0) {
    // Closed form: the criterion derivative is sum W (1/alpha - z), whose
    // unique root is the AMLE whatever the escort.
    result.estimate = amle;
    result.criterion = dual_criterion(fit, gamma, theta, amle);
    result.gradient_norm = std::abs(criterion_derivative(fit, gamma, theta, amle));
    result.converged = result.gradient_norm <= config.tolerance;
    result.grid_best = amle;
    return result;
  }

  double lo = config.interval_lo > 0.0 ? config.interval_lo : amle / 10.0;
  double hi = config.interval_hi > 0.0 ? config.interval_hi : amle * 10.0;
  // Intersect with the admissible set: gamma*theta + (1-gamma)*alpha > 0.
  const double boundary = gamma * theta / (gamma - 1.0);
  if (gamma < 0.0) lo = std::max(lo, boundary * (1.0 + 1e-9));
  if (gamma > 1.0) hi = std::min(hi, boundary * (1.0 - 1e-9));
  if (!(lo < hi))
    throw std::domain_error(
        "fit_dphide: search interval empty inside the admissible set");

  const auto psi = [&](double a) {
    return criterion_derivative(fit, gamma, theta, a);
  };
  const auto dpsi = [&](double a) {
    return criterion_second_derivative(fit, gamma, theta, a);
  };

  const std::vector<double> grid =
      geometric_grid(lo, hi, config.grid_points);
  std::vector<double> pv(grid.size());
  double best_grid_val = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    pv[i] = psi(grid[i]);
    const double c = dual_criterion(fit, gamma, theta, grid[i]);
    if (std::isfinite(c) && c > best_grid_val) {
      best_grid_val = c;
      result.grid_best = grid[i];
    }
  }

  double best_crit = -std::numeric_limits<double>::infinity();
  int total_iter = 0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (!(pv[i] > 0.0 && pv[i + 1] <= 0.0)) continue;  // maxima only
    const Refined r = refine_root(psi, dpsi, grid[i], grid[i + 1], pv[i],
                                  pv[i + 1], config.tolerance,
                                  config.max_iterations);
    total_iter += r.iterations;
    if (!r.ok) continue;
    const double c = dual_criterion(fit, gamma, theta, r.root);
    if (std::isfinite(c) && c > best_crit) {
      best_crit = c;
      result.estimate = r.root;
      result.criterion = c;
    }
  }
  result.iterations = total_iter;
  if (std::isfinite(result.estimate)) {
    result.gradient_norm = std::abs(psi(result.estimate));
    result.converged = result.gradient_norm <= config.tolerance;
  }
  return result;
}

FitResult fit_dphide(const CensoredSample& sample,
                     const DphideConfig& config) {
  return fit_dphide(km_fit(sample), config);
}

FitResult fit_mdpde(const KaplanMeierFit& fit, double beta, double tolerance,
                    int max_iterations) {
  if (!(beta >= 1e-6))
    throw std::domain_error("fit_mdpde: beta must be at least 1e-6");
  check_events(fit, "fit_mdpde");

  const auto& w = fit.weights();
  const auto& z = fit.times();
  // objective m(a) = a^b/(1+b) - (1+1/b) sum W a^b exp(-b a z)
  const auto objective = [&](double a) {
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] != 0.0) acc += w[i] * std::exp(-beta * a * z[i]);
    const double ab = std::pow(a, beta);
    return ab / (1.0 + beta) - (1.0 + 1.0 / beta) * ab * acc;
  };
  // m'(a) = a^(b-1) g(a),  g(a) = b/(1+b) - (1+b) sum W exp(-b a z)(1 - a z)
  const auto g = [&](double a) {
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] != 0.0)
        acc += w[i] * std::exp(-beta * a * z[i]) * (1.0 - a * z[i]);
    return beta / (1.0 + beta) - (1.0 + beta) * acc;
  };
  const auto dg = [&](double a) {
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] != 0.0)
        acc += w[i] * z[i] * std::exp(-beta * a * z[i]) *
               (beta * (1.0 - a * z[i]) + 1.0);
    return (1.0 + beta) * acc;
  };

  const double amle = amle_value(fit);
  const std::vector<double> grid = geometric_grid(amle / 10.0, amle * 10.0, 32);
  std::vector<double> gv(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) gv[i] = g(grid[i]);

  FitResult result;
  double best_obj = std::numeric_limits<double>::infinity();
  int total_iter = 0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (!(gv[i] < 0.0 && gv[i + 1] >= 0.0)) continue;  // minima only
    const Refined r =
        refine_root(g, dg, grid[i], grid[i + 1], gv[i], gv[i + 1],
                    tolerance, max_iterations);
    total_iter += r.iterations;
    if (!r.ok) continue;
    const double m = objective(r.root);
    if (std::isfinite(m) && m < best_obj) {
      best_obj = m;
      result.estimate = r.root;
      result.criterion = m;
    }
  }
  result.iterations = total_iter;
  if (std::isfinite(result.estimate)) {
    const double deriv = std::pow(result.estimate, beta - 1.0) * g(result.estimate);
    result.gradient_norm = std::abs(deriv);
    result.converged = result.gradient_norm <= tolerance;
  }
  return result;
}

FitResult fit_mdpde(const CensoredSample& sample, double beta,
                    double tolerance, int max_iterations) {
  return fit_mdpde(km_fit(sample), beta, tolerance, max_iterations);
}

std::vector<std::pair<double, double>> density_ratio_diagnostic(
    double theta_hat, double theta0, const std::vector<double>& grid) {
  if (!(theta_hat > 0.0) || !(theta0 > 0.0))
    throw std::domain_error(
        "density_ratio_diagnostic: parameters must be positive");
  std::vector<std::pair<double, double>> rows;
  rows.reserve(grid.size());
  for (double x : grid)
    rows.emplace_back(
        x, (theta_hat / theta0) * std::exp(-(theta_hat - theta0) * x));
  return rows;
}

}  // namespace dualdiv
