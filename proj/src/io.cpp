#include "dualdiv/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace dualdiv {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary: LF on every platform
  if (!out)
    throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

[[noreturn]] void parse_error(const std::string& path, std::size_t lineno,
                              const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + what);
}

nlohmann::json json_number(double v) {
  // nlohmann serializes NaN/inf as null; make that explicit
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CensoredSample read_censored_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(path + ": empty file");
  if (strip_cr(line) != "z,delta")
    parse_error(path, 1, "expected header 'z,delta'");
  CensoredSample sample;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(line);
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos)
      parse_error(path, lineno, "expected two comma-separated fields");
    const std::string zfield = line.substr(0, comma);
    const std::string dfield = line.substr(comma + 1);
    char* end = nullptr;
    errno = 0;
    const double z = std::strtod(zfield.c_str(), &end);
    if (end == zfield.c_str() || *end != '\0' || errno == ERANGE ||
        !std::isfinite(z))
      parse_error(path, lineno, "bad time value '" + zfield + "'");
    if (dfield != "0" && dfield != "1")
      parse_error(path, lineno, "delta must be 0 or 1, got '" + dfield + "'");
    sample.z.push_back(z);
    sample.delta.push_back(dfield == "1" ? 1 : 0);
  }
  if (sample.z.empty()) parse_error(path, lineno, "no observations");
  return sample;
}

void write_censored_csv(const std::string& path,
                        const CensoredSample& sample) {
  std::ofstream out = open_out(path);
  out << "z,delta\n";
  for (std::size_t i = 0; i < sample.size(); ++i)
    out << format_double(sample.z[i]) << ',' << sample.delta[i] << '\n';
  finish(out, path);
}

void write_km_curve_csv(const std::string& path, const KaplanMeierFit& fit,
                        double level) {
  std::ofstream out = open_out(path);
  out << "x,estimate,lower,upper\n";
  for (std::size_t i = 0; i < fit.size(); ++i) {
    const double x = fit.times()[i];
    const SurvivalPoint p = fit.survival_with_ci(x, level);
    out << format_double(x) << ',' << format_double(p.estimate) << ','
        << format_double(p.lower) << ',' << format_double(p.upper) << '\n';
  }
  finish(out, path);
}

std::string fit_result_json(const std::string& estimator, double parameter,
                            const FitResult& result) {
  nlohmann::json j;
  j["estimator"] = estimator;
  j["parameter"] = json_number(parameter);
  j["estimate"] = json_number(result.estimate);
  j["criterion"] = json_number(result.criterion);
  j["escort"] = json_number(result.escort);
  j["gradient_norm"] = json_number(result.gradient_norm);
  j["iterations"] = result.iterations;
  j["converged"] = result.converged;
  j["grid_best"] = json_number(result.grid_best);
  return j.dump(2) + "\n";
}

void write_fit_result_json(const std::string& path,
                           const std::string& estimator, double parameter,
                           const FitResult& result) {
  std::ofstream out = open_out(path);
  out << fit_result_json(estimator, parameter, result);
  finish(out, path);
}

void write_fit_result_csv(const std::string& path,
                          const std::string& estimator, double parameter,
                          const FitResult& result) {
  std::ofstream out = open_out(path);
  out << "estimator,parameter,estimate,converged,iterations,criterion,"
         "gradient_norm,escort\n";
  out << estimator << ',' << format_double(parameter) << ','
      << format_double(result.estimate) << ',' << (result.converged ? 1 : 0)
      << ',' << result.iterations << ',' << format_double(result.criterion)
      << ',' << format_double(result.gradient_norm) << ','
      << format_double(result.escort) << '\n';
  finish(out, path);
}

void write_mse_table_csv(const std::string& path, const MseTable& table) {
  std::ofstream out = open_out(path);
  out << "estimator";
  for (int n : table.scenario.n_values) out << ',' << n;
  out << '\n';
  for (std::size_t r = 0; r < table.row_labels.size(); ++r) {
    out << table.row_labels[r];
    for (std::size_t c = 0; c < table.scenario.n_values.size(); ++c)
      out << ',' << format_double(table.mse[r][c]);
    out << '\n';
  }
  finish(out, path);
}

void write_mse_table_json(const std::string& path, const MseTable& table) {
  nlohmann::json j;
  const SimulationScenario& sc = table.scenario;
  j["scenario"] = {
      {"n", sc.n_values},
      {"theta0", sc.theta0},
      {"censoring_rate", sc.censoring_rate},
      {"contamination_fraction", sc.contamination_fraction},
      {"contamination_rate", sc.contamination_rate},
      {"replications", sc.replications},
      {"gammas", sc.gammas},
      {"betas", sc.betas},
      {"include_mle", sc.include_mle},
      {"base_seed", sc.base_seed},
  };
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < table.row_labels.size(); ++r) {
    nlohmann::json row;
    row["estimator"] = table.row_labels[r];
    nlohmann::json cells = nlohmann::json::array();
    for (std::size_t c = 0; c < sc.n_values.size(); ++c)
      cells.push_back(nlohmann::json{{"n", sc.n_values[c]},
                                     {"mse", json_number(table.mse[r][c])},
                                     {"failures", table.failures[r][c]}});
    row["cells"] = cells;
    rows.push_back(row);
  }
  j["rows"] = rows;
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
  finish(out, path);
}

void write_variance_csv(const std::string& path,
                        const std::vector<VarianceRow>& rows) {
  std::ofstream out = open_out(path);
  out << "gamma,theta,c,S,V,sandwich\n";
  for (const VarianceRow& r : rows)
    out << format_double(r.gamma) << ',' << format_double(r.theta) << ','
        << format_double(r.c) << ',' << format_double(r.S) << ','
        << format_double(r.V) << ',' << format_double(r.sandwich) << '\n';
  finish(out, path);
}

void write_ratio_csv(const std::string& path,
                     const std::vector<std::pair<double, double>>& rows) {
  std::ofstream out = open_out(path);
  out << "x,ratio\n";
  for (const auto& [x, ratio] : rows)
    out << format_double(x) << ',' << format_double(ratio) << '\n';
  finish(out, path);
}

}  // namespace dualdiv
