#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dualdiv/kaplan_meier.hpp"

namespace dualdiv {

// One Monte Carlo study: censored, possibly contaminated exponential samples
// of each size in n_values, fitted by every estimator in the roster,
// replicated `replications` times per size.
struct SimulationScenario {
  std::vector<int> n_values{25, 50, 75, 100, 150, 200};
  double theta0 = 1.0;
  double censoring_rate = 0.0;          // c; 0 means no censoring
  double contamination_fraction = 0.0;  // epsilon in [0, 1)
  double contamination_rate = 5.0;      // rate of the contaminating exponential
  int replications = 1000;
  std::vector<double> gammas{-1.0, 0.0, 0.5, 1.0, 2.0};
  std::vector<double> betas{0.1, 0.5, 1.0};
  bool include_mle = true;
  std::uint64_t base_seed = 20250819;
};

// MSE table: rows keyed by estimator in roster order (MLE, then gammas,
// then betas), columns keyed by sample size. Failed replications are
// excluded from the cell mean and reported per cell, never averaged in.
struct MseTable {
  SimulationScenario scenario;
  std::vector<std::string> row_labels;
  std::vector<std::vector<double>> mse;    // [row][size index]
  std::vector<std::vector<int>> failures;  // [row][size index]
};

// Replication sample, deterministic in (scenario.base_seed, size index,
// replication index): n lifetimes from exp(theta0); a uniformly chosen
// subset of round(epsilon*n) of them replaced by contamination draws;
// independent exp(c) censoring times (infinite when c = 0); then
// (z, delta) = (min, indicator of an event).
CensoredSample generate_sample(const SimulationScenario& scenario,
                               std::size_t size_index,
                               std::uint64_t replication);

// Runs the full study. Replications are independent and may run on a worker
// pool (DUALDIV_THREADS environment variable; default: hardware threads);
// accumulation is a reduction in replication order, so the table is
// bit-identical whatever the thread count. A replication whose escort
// (AMLE) fails is excluded for every estimator and counted as a failure in
// every row, keeping rows comparable.
MseTable run_scenario(const SimulationScenario& scenario);

// Named studies: table1=(c=1/9, eps=0), table2=(c=1/4, eps=0),
// table3=(c=1/9, eps=0.20, exp(5)), table4=(c=1/4, eps=0.20, exp(5)),
// longtail=(c=1/9, eps=0.20, exp(0.1)). Unknown names are usage errors.
SimulationScenario preset(const std::string& name);

}  // namespace dualdiv
