#pragma once

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace dualdiv {

// Adaptive Gauss-Kronrod (G7,K15) integral of f over [a, b].
template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-10,
                 int max_depth = 14) {
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      std::forward<F>(f), a, b, max_depth, tol);
}

// Upper truncation point for an integrand decaying like poly(x)*exp(-rate*x):
// beyond the returned point the remaining mass is below eps. The fixed-point
// iteration adds slack for the polynomial factor; a plain log(1/eps)/rate
// cutoff under-truncates badly when rate is small.
inline double tail_cutoff(double rate, double eps = 1e-12) {
  const double L = -std::log(eps);
  double u = L / rate;
  for (int i = 0; i < 4; ++i) u = (L + 2.0 * std::log1p(u)) / rate;
  return u;
}

}  // namespace dualdiv
