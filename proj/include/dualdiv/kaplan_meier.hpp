#pragma once

#include <cstddef>
#include <vector>

namespace dualdiv {

// Right-censored sample: z[i] = min(lifetime, censoring time),
// delta[i] = 1 if z[i] is an event (lifetime observed), 0 if censored.
struct CensoredSample {
  std::vector<double> z;
  std::vector<int> delta;

  std::size_t size() const { return z.size(); }
};

struct SurvivalPoint {
  double lower;
  double estimate;
  double upper;
};

// Product-limit fit. Observations are sorted by time, events before
// censorings at ties (so censored-at-t stays at risk for events at t),
// original order retained for stability.
class KaplanMeierFit {
 public:
  explicit KaplanMeierFit(const CensoredSample& sample);

  std::size_t size() const { return z_.size(); }
  const std::vector<double>& times() const { return z_; }
  const std::vector<int>& events() const { return delta_; }
  const std::vector<std::size_t>& order() const { return order_; }

  // Jump weights of 1 - S at each sorted observation (zero at censorings).
  const std::vector<double>& weights() const { return weight_; }
  // Sum of all weights; equals 1 exactly when the largest observation is
  // an event, and falls short of 1 otherwise.
  double weight_sum() const { return weight_sum_; }

  // S(x), right-continuous step function; 1 for x below the smallest time.
  double survival(double x) const;

  // Pointwise confidence interval for S(x) at the given level, on the log
  // scale: S * exp(-q*s) .. S * exp(+q*s) with s^2 the cumulative
  // Greenwood log-variance, clipped to [0, 1]. Returns (0,0,0) where the
  // estimate has reached zero and (1,1,1) below the smallest time.
  SurvivalPoint survival_with_ci(double x, double level = 0.95) const;

 private:
  std::vector<double> z_;
  std::vector<int> delta_;
  std::vector<std::size_t> order_;
  std::vector<double> weight_;
  std::vector<double> survival_;       // S(z_(i))
  std::vector<double> greenwood_cum_;  // sum over events <= z_(i) of d/(r(r-d))
  double weight_sum_ = 0.0;

  // Index of the last sorted time <= x, or npos when x precedes all times.
  std::size_t step_index(double x) const;
};

KaplanMeierFit km_fit(const CensoredSample& sample);

// Sum of W_i * f(z_(i)) over the event observations: the empirical
// integral of f against the product-limit distribution.
template <class F>
double km_integral(const KaplanMeierFit& fit, F&& f) {
  double acc = 0.0;
  const auto& w = fit.weights();
  const auto& z = fit.times();
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] != 0.0) acc += w[i] * f(z[i]);
  return acc;
}

}  // namespace dualdiv
