#pragma once

#include <string>
#include <vector>

#include "dualdiv/estimators.hpp"
#include "dualdiv/kaplan_meier.hpp"
#include "dualdiv/simulation.hpp"

namespace dualdiv {

// One row of the asymptotic-variance table.
struct VarianceRow {
  double gamma;
  double theta;
  double c;
  double S;
  double V;
  double sandwich;
};

// Doubles in every CSV are written with %.17g so values round-trip exactly.
std::string format_double(double v);

// Observation CSV: header "z,delta", one observation per line, LF endings.
// Malformed rows raise errors naming the offending line number.
CensoredSample read_censored_csv(const std::string& path);
void write_censored_csv(const std::string& path, const CensoredSample& sample);

// Survival curve with pointwise confidence band, one row per sorted
// observation: x,estimate,lower,upper.
void write_km_curve_csv(const std::string& path, const KaplanMeierFit& fit,
                        double level);

// Fit result as a JSON object / a one-row CSV. `parameter` carries gamma or
// beta (NaN when not applicable, serialized as null/nan).
std::string fit_result_json(const std::string& estimator, double parameter,
                            const FitResult& result);
void write_fit_result_json(const std::string& path,
                           const std::string& estimator, double parameter,
                           const FitResult& result);
void write_fit_result_csv(const std::string& path,
                          const std::string& estimator, double parameter,
                          const FitResult& result);

// MSE table: CSV is the bare matrix (rows = estimators, columns = n);
// JSON carries the failure counts and an echo of the scenario.
void write_mse_table_csv(const std::string& path, const MseTable& table);
void write_mse_table_json(const std::string& path, const MseTable& table);

void write_variance_csv(const std::string& path,
                        const std::vector<VarianceRow>& rows);

// Plot-ready ratio diagnostic: x,ratio rows.
void write_ratio_csv(const std::string& path,
                     const std::vector<std::pair<double, double>>& rows);

}  // namespace dualdiv
