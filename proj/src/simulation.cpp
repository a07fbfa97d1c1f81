#include "dualdiv/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

#include "dualdiv/estimators.hpp"
#include "dualdiv/rng.hpp"

namespace dualdiv {

namespace {

void check_scenario(const SimulationScenario& sc) {
  if (sc.n_values.empty())
    throw std::invalid_argument("scenario: no sample sizes");
  for (int n : sc.n_values)
    if (n < 2) throw std::invalid_argument("scenario: sample size below 2");
  if (!(sc.theta0 > 0.0))
    throw std::invalid_argument("scenario: theta0 must be positive");
  if (!(sc.censoring_rate >= 0.0))
    throw std::invalid_argument("scenario: censoring rate must be >= 0");
  if (!(sc.contamination_fraction >= 0.0 && sc.contamination_fraction < 1.0))
    throw std::invalid_argument("scenario: contamination fraction not in [0,1)");
  if (sc.contamination_fraction > 0.0 && !(sc.contamination_rate > 0.0))
    throw std::invalid_argument("scenario: contamination rate must be positive");
  if (sc.replications < 1)
    throw std::invalid_argument("scenario: replications must be >= 1");
  for (int n : sc.n_values) {
    const int m =
        static_cast<int>(std::floor(sc.contamination_fraction * n + 0.5));
    if (m >= n)
      throw std::invalid_argument(
          "scenario: contamination count must stay below n");
  }
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

unsigned worker_count() {
  if (const char* env = std::getenv("DUALDIV_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace

CensoredSample generate_sample(const SimulationScenario& scenario,
                               std::size_t size_index,
                               std::uint64_t replication) {
  check_scenario(scenario);
  if (size_index >= scenario.n_values.size())
    throw std::invalid_argument("generate_sample: size index out of range");
  const int n = scenario.n_values[size_index];
  Rng rng = Rng::substream(
      scenario.base_seed,
      (static_cast<std::uint64_t>(size_index) << 32) | replication);

  std::vector<double> lifetime(n);
  for (int i = 0; i < n; ++i) lifetime[i] = rng.exponential(scenario.theta0);

  const int contaminated = static_cast<int>(
      std::floor(scenario.contamination_fraction * n + 0.5));
  if (contaminated > 0) {
    const std::vector<std::size_t> picked =
        rng.choose(static_cast<std::size_t>(n),
                   static_cast<std::size_t>(contaminated));
    for (std::size_t i : picked)
      lifetime[i] = rng.exponential(scenario.contamination_rate);
  }

  CensoredSample out;
  out.z.resize(n);
  out.delta.resize(n);
  for (int i = 0; i < n; ++i) {
    const double censor = scenario.censoring_rate > 0.0
                              ? rng.exponential(scenario.censoring_rate)
                              : std::numeric_limits<double>::infinity();
    out.z[i] = std::min(lifetime[i], censor);
    out.delta[i] = lifetime[i] <= censor ? 1 : 0;
  }
  return out;
}

MseTable run_scenario(const SimulationScenario& scenario) {
  check_scenario(scenario);

  MseTable table;
  table.scenario = scenario;
  if (scenario.include_mle) table.row_labels.push_back("MLE");
  for (double g : scenario.gammas)
    table.row_labels.push_back("gamma=" + format_value(g));
  for (double b : scenario.betas)
    table.row_labels.push_back("beta=" + format_value(b));
  const std::size_t rows = table.row_labels.size();
  if (rows == 0) throw std::invalid_argument("scenario: empty roster");
  const std::size_t sizes = scenario.n_values.size();
  const std::size_t reps = static_cast<std::size_t>(scenario.replications);

  table.mse.assign(rows, std::vector<double>(sizes, 0.0));
  table.failures.assign(rows, std::vector<int>(sizes, 0));

  for (std::size_t si = 0; si < sizes; ++si) {
    // Per-replication squared errors, NaN marking a failed fit; reduced in
    // replication order below so the result is thread-count independent.
    std::vector<std::vector<double>> sqerr(
        rows, std::vector<double>(reps,
                                  std::numeric_limits<double>::quiet_NaN()));

    const auto run_rep = [&](std::size_t rep) {
      const CensoredSample sample = generate_sample(scenario, si, rep);
      KaplanMeierFit fit(sample);
      try {
        amle_value(fit);  // the shared escort
      } catch (const std::exception&) {
        return;  // escort failure: every row records a failure for this rep
      }
      std::size_t row = 0;
      if (scenario.include_mle) {
        try {
          const FitResult r = fit_mle_exponential(sample);
          sqerr[row][rep] = (r.estimate - scenario.theta0) *
                            (r.estimate - scenario.theta0);
        } catch (const std::exception&) {
        }
        ++row;
      }
      for (double g : scenario.gammas) {
        try {
          DphideConfig cfg;
          cfg.divergence.gamma = g;
          cfg.adaptive_escort = true;
          const FitResult r = fit_dphide(fit, cfg);
          if (r.converged)
            sqerr[row][rep] = (r.estimate - scenario.theta0) *
                              (r.estimate - scenario.theta0);
        } catch (const std::exception&) {
        }
        ++row;
      }
      for (double b : scenario.betas) {
        try {
          const FitResult r = fit_mdpde(fit, b);
          if (r.converged)
            sqerr[row][rep] = (r.estimate - scenario.theta0) *
                              (r.estimate - scenario.theta0);
        } catch (const std::exception&) {
        }
        ++row;
      }
    };

    const unsigned workers =
        std::min<unsigned>(worker_count(), static_cast<unsigned>(reps));
    if (workers <= 1) {
      for (std::size_t rep = 0; rep < reps; ++rep) run_rep(rep);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
          for (std::size_t rep = w; rep < reps; rep += workers) run_rep(rep);
        });
      for (auto& t : pool) t.join();
    }

    for (std::size_t row = 0; row < rows; ++row) {
      double sum = 0.0;
      int good = 0;
      for (std::size_t rep = 0; rep < reps; ++rep) {
        const double e = sqerr[row][rep];
        if (std::isnan(e)) continue;
        sum += e;
        ++good;
      }
      table.failures[row][si] = static_cast<int>(reps) - good;
      table.mse[row][si] =
          good > 0 ? sum / good : std::numeric_limits<double>::quiet_NaN();
    }
  }
  return table;
}

SimulationScenario preset(const std::string& name) {
  SimulationScenario sc;
  if (name == "table1") {
    sc.censoring_rate = 1.0 / 9.0;
  } else if (name == "table2") {
    sc.censoring_rate = 0.25;
  } else if (name == "table3") {
    sc.censoring_rate = 1.0 / 9.0;
    sc.contamination_fraction = 0.20;
    sc.contamination_rate = 5.0;
  } else if (name == "table4") {
    sc.censoring_rate = 0.25;
    sc.contamination_fraction = 0.20;
    sc.contamination_rate = 5.0;
  } else if (name == "longtail") {
    sc.censoring_rate = 1.0 / 9.0;
    sc.contamination_fraction = 0.20;
    sc.contamination_rate = 0.1;
  } else {
    throw std::invalid_argument("unknown preset: " + name);
  }
  return sc;
}

}  // namespace dualdiv
