// Command-line front end: Kaplan-Meier curves, estimator fits, asymptotic
// variance tables and Monte Carlo MSE studies over censored exponential data.
//
// Exit codes: 0 success; 2 usage; 3 I/O or malformed input; 4 domain error;
// 5 fit did not converge (the result file is still written, flag false).

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dualdiv/asymptotics.hpp"
#include "dualdiv/estimators.hpp"
#include "dualdiv/io.hpp"
#include "dualdiv/kaplan_meier.hpp"
#include "dualdiv/simulation.hpp"

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct KmArgs {
  std::string input;
  std::string out = "/dev/stdout";
  double level = 0.95;
};

struct FitArgs {
  std::string input;
  std::string out = "/dev/stdout";
  std::string format = "json";
  bool use_gamma = false;
  double gamma = 0.0;
  bool use_beta = false;
  double beta = 0.0;
  bool use_mle = false;
  bool use_amle = false;
  std::string escort = "adaptive";
  double tolerance = 1e-8;
  int max_iterations = 100;
  double interval_lo = 0.0;
  double interval_hi = 0.0;
  std::string ratio_out;
  double theta0 = 1.0;
  double ratio_max = 5.0;
  int ratio_points = 101;
};

struct VarianceArgs {
  std::string out = "/dev/stdout";
  double theta0 = 1.0;
  double c = 0.0;
  std::vector<double> gammas;
  std::vector<double> thetas;
};

struct SimulateArgs {
  std::string preset;
  std::string out = "/dev/stdout";
  std::string format = "csv";
  std::uint64_t seed = 0;
  int replications = 0;  // 0: keep preset value
  std::string dump_sample;
  std::size_t dump_size_index = 0;
  std::uint64_t dump_rep = 0;
};

int run_km(const KmArgs& a) {
  const dualdiv::CensoredSample sample = dualdiv::read_censored_csv(a.input);
  const dualdiv::KaplanMeierFit fit(sample);
  dualdiv::write_km_curve_csv(a.out, fit, a.level);
  return 0;
}

int run_fit(const FitArgs& a) {
  const int chosen = int(a.use_gamma) + int(a.use_beta) + int(a.use_mle) +
                     int(a.use_amle);
  if (chosen != 1)
    throw std::invalid_argument(
        "choose exactly one of --gamma, --beta, --mle, --amle");
  if (a.format != "csv" && a.format != "json")
    throw std::invalid_argument("--format must be csv or json");

  const dualdiv::CensoredSample sample = dualdiv::read_censored_csv(a.input);

  std::string estimator;
  double parameter = kNaN;
  dualdiv::FitResult result;
  if (a.use_mle) {
    estimator = "mle";
    result = dualdiv::fit_mle_exponential(sample);
  } else if (a.use_amle) {
    estimator = "amle";
    result = dualdiv::fit_amle(sample);
  } else if (a.use_beta) {
    estimator = "mdpde";
    parameter = a.beta;
    result = dualdiv::fit_mdpde(sample, a.beta, a.tolerance, a.max_iterations);
  } else {
    estimator = "dphide";
    parameter = a.gamma;
    dualdiv::DphideConfig cfg;
    cfg.divergence.gamma = a.gamma;
    cfg.tolerance = a.tolerance;
    cfg.max_iterations = a.max_iterations;
    cfg.interval_lo = a.interval_lo;
    cfg.interval_hi = a.interval_hi;
    if (a.escort == "adaptive") {
      cfg.adaptive_escort = true;
    } else {
      char* end = nullptr;
      const double value = std::strtod(a.escort.c_str(), &end);
      if (end == a.escort.c_str() || *end != '\0')
        throw std::invalid_argument("--escort must be 'adaptive' or a number");
      cfg.adaptive_escort = false;
      cfg.escort = value;
    }
    result = dualdiv::fit_dphide(sample, cfg);
  }

  if (a.format == "json")
    dualdiv::write_fit_result_json(a.out, estimator, parameter, result);
  else
    dualdiv::write_fit_result_csv(a.out, estimator, parameter, result);

  if (!a.ratio_out.empty()) {
    if (a.ratio_points < 2)
      throw std::invalid_argument("--ratio-points must be at least 2");
    std::vector<double> grid(a.ratio_points);
    for (int i = 0; i < a.ratio_points; ++i)
      grid[i] = a.ratio_max * double(i) / double(a.ratio_points - 1);
    dualdiv::write_ratio_csv(
        a.ratio_out,
        dualdiv::density_ratio_diagnostic(result.estimate, a.theta0, grid));
  }
  return result.converged ? 0 : 5;
}

int run_variance(const VarianceArgs& a) {
  std::vector<double> gammas = a.gammas;
  if (gammas.empty()) gammas = {-1.0, 0.0, 0.5, 1.0, 2.0};
  std::vector<double> thetas = a.thetas;
  if (thetas.empty()) thetas = {a.theta0};
  const dualdiv::CensoringScheme scheme{a.theta0, a.c};
  std::vector<dualdiv::VarianceRow> rows;
  for (double g : gammas)
    for (double t : thetas) {
      const dualdiv::SandwichVariance sv =
          dualdiv::sandwich_variance(scheme, g, t);
      rows.push_back({g, t, a.c, sv.S, sv.V, sv.sandwich});
    }
  dualdiv::write_variance_csv(a.out, rows);
  return 0;
}

int run_simulate(const SimulateArgs& a) {
  if (a.format != "csv" && a.format != "json")
    throw std::invalid_argument("--format must be csv or json");
  dualdiv::SimulationScenario sc = dualdiv::preset(a.preset);
  sc.base_seed = a.seed;
  if (a.replications > 0) sc.replications = a.replications;

  if (!a.dump_sample.empty()) {
    dualdiv::write_censored_csv(
        a.dump_sample,
        dualdiv::generate_sample(sc, a.dump_size_index, a.dump_rep));
  }

  const dualdiv::MseTable table = dualdiv::run_scenario(sc);
  if (a.format == "csv")
    dualdiv::write_mse_table_csv(a.out, table);
  else
    dualdiv::write_mse_table_json(a.out, table);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Dual divergence estimators for right-censored exponential lifetimes"};
  app.require_subcommand(1);

  KmArgs km;
  CLI::App* km_cmd =
      app.add_subcommand("km", "Kaplan-Meier survival curve with confidence band");
  km_cmd->add_option("--input", km.input, "observations CSV (header z,delta)")
      ->required();
  km_cmd->add_option("--out", km.out, "output CSV path (default stdout)");
  km_cmd->add_option("--level", km.level, "confidence level (default 0.95)");

  FitArgs fit;
  CLI::App* fit_cmd = app.add_subcommand("fit", "fit one estimator to a sample");
  fit_cmd->add_option("--input", fit.input, "observations CSV (header z,delta)")
      ->required();
  fit_cmd->add_option("--out", fit.out, "output path (default stdout)");
  fit_cmd->add_option("--format", fit.format, "csv or json (default json)");
  fit_cmd->add_option("--gamma", fit.gamma,
                      "dual divergence estimator with this gamma");
  fit_cmd->add_option("--beta", fit.beta,
                      "density power divergence estimator with this beta");
  fit_cmd->add_flag("--mle", fit.use_mle, "maximum likelihood estimator");
  fit_cmd->add_flag("--amle", fit.use_amle,
                    "Kaplan-Meier weighted likelihood estimator");
  fit_cmd->add_option("--escort", fit.escort,
                      "'adaptive' or a fixed escort value (default adaptive)");
  fit_cmd->add_option("--tolerance", fit.tolerance,
                      "estimating-equation tolerance (default 1e-8)");
  fit_cmd->add_option("--max-iterations", fit.max_iterations,
                      "iteration cap (default 100)");
  fit_cmd->add_option("--interval-lo", fit.interval_lo,
                      "search interval lower end (default adaptive)");
  fit_cmd->add_option("--interval-hi", fit.interval_hi,
                      "search interval upper end (default adaptive)");
  fit_cmd->add_option("--ratio-out", fit.ratio_out,
                      "also write the density-ratio diagnostic CSV here");
  fit_cmd->add_option("--theta0", fit.theta0,
                      "reference parameter for the ratio diagnostic");
  fit_cmd->add_option("--ratio-max", fit.ratio_max,
                      "ratio diagnostic grid upper end (default 5)");
  fit_cmd->add_option("--ratio-points", fit.ratio_points,
                      "ratio diagnostic grid size (default 101)");

  VarianceArgs var;
  CLI::App* var_cmd =
      app.add_subcommand("variance", "asymptotic sandwich variance table");
  var_cmd->add_option("--out", var.out, "output CSV path (default stdout)");
  var_cmd->add_option("--theta0", var.theta0, "true rate (default 1)");
  var_cmd->add_option("--c", var.c, "censoring rate (default 0: none)");
  var_cmd->add_option("--gamma", var.gammas,
                      "gamma values (default -1 0 0.5 1 2)");
  var_cmd->add_option("--theta", var.thetas,
                      "escort values (default: theta0)");

  SimulateArgs sim;
  CLI::App* sim_cmd =
      app.add_subcommand("simulate", "Monte Carlo MSE study from a preset");
  sim_cmd->add_option("--preset", sim.preset,
                      "table1|table2|table3|table4|longtail")
      ->required();
  sim_cmd->add_option("--seed", sim.seed, "base seed (required)")->required();
  sim_cmd->add_option("--out", sim.out, "output path (default stdout)");
  sim_cmd->add_option("--format", sim.format, "csv or json (default csv)");
  sim_cmd->add_option("--replications", sim.replications,
                      "override preset replication count");
  sim_cmd->add_option("--dump-sample", sim.dump_sample,
                      "write one generated sample to this CSV path");
  sim_cmd->add_option("--dump-size-index", sim.dump_size_index,
                      "size index of the dumped sample (default 0)");
  sim_cmd->add_option("--dump-rep", sim.dump_rep,
                      "replication index of the dumped sample (default 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  fit.use_gamma = fit_cmd->count("--gamma") > 0;
  fit.use_beta = fit_cmd->count("--beta") > 0;

  try {
    if (km_cmd->parsed()) return run_km(km);
    if (fit_cmd->parsed()) return run_fit(fit);
    if (var_cmd->parsed()) return run_variance(var);
    if (sim_cmd->parsed()) return run_simulate(sim);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
