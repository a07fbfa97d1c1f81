#include "dualdiv/kaplan_meier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>

namespace dualdiv {

KaplanMeierFit::KaplanMeierFit(const CensoredSample& sample) {
  const std::size_t n = sample.z.size();
  if (n == 0) throw std::invalid_argument("km_fit: empty sample");
  if (sample.delta.size() != n)
    throw std::invalid_argument("km_fit: z and delta lengths differ");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(sample.z[i]))
      throw std::invalid_argument("km_fit: nonfinite time");
    if (sample.delta[i] != 0 && sample.delta[i] != 1)
      throw std::invalid_argument("km_fit: delta must be 0 or 1");
  }

  order_.resize(n);
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  std::stable_sort(order_.begin(), order_.end(),
                   [&](std::size_t a, std::size_t b) {
                     if (sample.z[a] != sample.z[b])
                       return sample.z[a] < sample.z[b];
                     return sample.delta[a] > sample.delta[b];
                   });

  z_.resize(n);
  delta_.resize(n);
  weight_.resize(n);
  survival_.resize(n);
  greenwood_cum_.resize(n);

  double prod = 1.0;   // running S, product over processed observations
  double green = 0.0;  // running Greenwood log-variance
  for (std::size_t i = 0; i < n; ++i) {
    z_[i] = sample.z[order_[i]];
    delta_[i] = sample.delta[order_[i]];
    const double at_risk = static_cast<double>(n - i);
    if (delta_[i] == 1) {
      weight_[i] = prod / at_risk;
      prod *= (at_risk - 1.0) / at_risk;
      green += (at_risk > 1.0)
                   ? 1.0 / (at_risk * (at_risk - 1.0))
                   : std::numeric_limits<double>::infinity();
    } else {
      weight_[i] = 0.0;
    }
    survival_[i] = prod;
    greenwood_cum_[i] = green;
    weight_sum_ += weight_[i];
  }
}

std::size_t KaplanMeierFit::step_index(double x) const {
  auto it = std::upper_bound(z_.begin(), z_.end(), x);
  if (it == z_.begin()) return static_cast<std::size_t>(-1);
  return static_cast<std::size_t>(it - z_.begin()) - 1;
}

double KaplanMeierFit::survival(double x) const {
  const std::size_t i = step_index(x);
  return i == static_cast<std::size_t>(-1) ? 1.0 : survival_[i];
}

SurvivalPoint KaplanMeierFit::survival_with_ci(double x, double level) const {
  if (!(level > 0.0 && level < 1.0))
    throw std::domain_error("survival_with_ci: level must be in (0, 1)");
  const std::size_t i = step_index(x);
  if (i == static_cast<std::size_t>(-1)) return {1.0, 1.0, 1.0};
  const double s = survival_[i];
  if (s == 0.0) return {0.0, 0.0, 0.0};
  const boost::math::normal_distribution<double> norm;
  const double q = boost::math::quantile(norm, 0.5 * (1.0 + level));
  const double sd = std::sqrt(greenwood_cum_[i]);
  const double lo = std::clamp(s * std::exp(-q * sd), 0.0, 1.0);
  const double hi = std::clamp(s * std::exp(q * sd), 0.0, 1.0);
  return {lo, s, hi};
}

KaplanMeierFit km_fit(const CensoredSample& sample) {
  return KaplanMeierFit(sample);
}

}  // namespace dualdiv
