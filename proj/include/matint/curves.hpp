#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "matint/analytics.hpp"
#include "matint/keyvalues.hpp"
#include "matint/montecarlo.hpp"

namespace matint {

inline constexpr const char* kToolName = "matint";
inline constexpr const char* kToolVersion = "0.1.0";

enum class Quantity {
  p1,
  p12,
  p11,
  p12r,
  rho2,
  mean,
  variance,
  covariance,
  correlation,
  poisson_correlation,
};

enum class SweepVariable { d, lambda_p, alpha, m, r, p1_fraction };

std::string to_string(Quantity quantity);
std::string to_string(SweepVariable variable);
Quantity quantity_from_string(const std::string& name);
SweepVariable sweep_variable_from_string(const std::string& name);

/// One parameter sweep: which quantity, over which variable, on which grid,
/// everything else pinned by `fixed`. `separation` feeds the r-dependent
/// quantities when r itself is not the sweep variable.
struct CurveSpec {
  Quantity quantity = Quantity::correlation;
  SweepVariable sweep = SweepVariable::d;
  std::vector<double> grid;
  ModelParams fixed;
  double separation = 1.0;
  std::optional<SimConfig> mc_check;

  void validate() const;  // non-empty strictly increasing grid
};

struct CurveRow {
  double x = 0.0;
  double analytic = 0.0;
  double analytic_error = 0.0;
  bool ok = true;  ///< false on per-point numerical failure (cells left empty)
  std::optional<double> mc;
  std::optional<double> mc_stderr;
};

struct CurveData {
  CurveSpec spec;
  AnalyticsOptions options;
  std::vector<CurveRow> rows;
  KeyValues metadata;  ///< resolved parameters; enough to reproduce the run
};

/// Evaluate a sweep; grid points run concurrently up to `threads`, rows stay
/// in grid order.
CurveData run_curve(const CurveSpec& spec, const AnalyticsOptions& options = {},
                    int threads = 1);

/// CSV with a `# key = value` metadata block; values printed to 9 significant
/// digits, error estimates to 2.
void write_curve_csv(const CurveData& data, std::ostream& os);
std::string curve_to_json(const CurveData& data);

/// Rebuild the sweep description and options of a previous run from its
/// metadata block
/// (e.g. parsed back out of a CSV); reruns reproduce the file byte for byte
/// apart from the timestamp entry.
std::pair<CurveSpec, AnalyticsOptions> spec_from_metadata(const KeyValues& kv);

/// Solve (1 - e^{-y})/y = target for y >= 0 (strictly decreasing left side);
/// feeds the p1_fraction sweep which pins d = sqrt(y/(lambda_p pi)).
double invert_p1(double target);

/// A multi-column sweep (x plus one column per curve in a figure family).
struct SweepTable {
  std::string name;
  std::string x_label;
  std::vector<std::string> columns;
  std::vector<double> x;
  std::vector<std::vector<double>> values;  ///< [column][row], NaN = failed
  KeyValues metadata;
};

/// Bundled families reproducing the figure data sets: "fig1" (pair survival
/// intensities over r), "fig2" (correlation over the sending fraction),
/// "fig3" (over the fading shape), "fig4" (over the path-loss exponent),
/// "fig5" (over the hard-core distance), "fig6" (over the parent intensity,
/// with the thinned intensity as a companion column).
SweepTable figure_preset(const std::string& name,
                         const AnalyticsOptions& options = {}, int threads = 1);

void write_table_csv(const SweepTable& table, std::ostream& os);
std::string table_to_json(const SweepTable& table);

}  // namespace matint
