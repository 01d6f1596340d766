#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "matint/analytics.hpp"
#include "matint/keyvalues.hpp"

namespace matint {

/// Analytics-versus-simulation comparison campaign over a parameter grid.
struct ValidationConfig {
  std::vector<double> lambda_p{0.5, 1.0};
  std::vector<double> d{0.5, 1.0};
  std::vector<double> alpha{3.0};
  std::vector<double> m{1.0, 2.0};
  std::size_t realizations = 10000;
  double window_radius = 50.0;
  std::uint64_t seed = 1;
  int threads = 1;
  AnalyticsOptions analytics;

  void validate() const;
};

/// Build a config from flat `key = value` text. Recognized keys: lambda_p, d,
/// alpha, m (comma lists), realizations, window_radius, seed, threads,
/// rel_tol, abs_tol, printed_lambda_convention (0/1).
ValidationConfig parse_validation_config(std::istream& is);

struct ValidationRow {
  ModelParams params;
  std::string quantity;
  double analytic = 0.0;
  double analytic_error = 0.0;
  double mc = 0.0;
  double mc_stderr = 0.0;
  double tolerance = 0.0;  ///< 3 sigma + quadrature error (+ bias for mean)
  bool pass = false;
};

struct ValidationReport {
  std::vector<ValidationRow> rows;
  bool all_pass = false;
  std::string text() const;  ///< fixed-format table, identical across reruns
};

ValidationReport run_validation(const ValidationConfig& config);

}  // namespace matint
