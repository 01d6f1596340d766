#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "matint/curves.hpp"
#include "matint/montecarlo.hpp"
#include "matint/retention.hpp"
#include "matint/validation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitValidation = 3;

int default_threads() {
  if (const char* env = std::getenv("MATINT_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

std::vector<double> parse_grid(const std::string& text, bool log_spaced) {
  std::vector<double> grid;
  const auto c1 = text.find(':');
  if (c1 != std::string::npos) {
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos)
      throw std::invalid_argument("grid must be start:stop:count or a comma list");
    const double lo = std::stod(text.substr(0, c1));
    const double hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    const int count = std::stoi(text.substr(c2 + 1));
    if (count < 1) throw std::invalid_argument("grid count must be >= 1");
    for (int i = 0; i < count; ++i) {
      const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
      grid.push_back(log_spaced ? lo * std::pow(hi / lo, t)
                                : lo + (hi - lo) * t);
    }
    return grid;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) grid.push_back(std::stod(item));
  return grid;
}

struct OutputTarget {
  std::string path;
  std::ofstream file;
  std::ostream& stream() {
    if (path.empty()) return std::cout;
    if (!file.is_open()) {
      file.open(path);
      if (!file) throw std::runtime_error("cannot write to " + path);
    }
    return file;
  }
};

void print_stats_text(std::ostream& os, const matint::ModelParams& params,
                      const matint::InterferenceStats& stats,
                      const matint::RetentionProbabilities& probs) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "lambda_p = %.9g  d = %.9g  alpha = %.9g  m = %.9g\n",
                params.lambda_p, params.d, params.alpha, params.m);
  os << buf;
  std::snprintf(buf, sizeof buf, "lambda      = %.9g\n", probs.lambda);
  os << buf;
  std::snprintf(buf, sizeof buf, "p1          = %.9g\n", probs.p1);
  os << buf;
  std::snprintf(buf, sizeof buf, "p12         = %.9g\n", probs.p12);
  os << buf;
  std::snprintf(buf, sizeof buf, "mean        = %.9g\n", stats.mean);
  os << buf;
  std::snprintf(buf, sizeof buf, "variance    = %.9g +- %.2g\n", stats.variance,
                stats.error.variance);
  os << buf;
  std::snprintf(buf, sizeof buf, "covariance  = %.9g +- %.2g\n",
                stats.covariance, stats.error.covariance);
  os << buf;
  std::snprintf(buf, sizeof buf, "correlation = %.9g +- %.2g\n",
                stats.correlation, stats.error.correlation);
  os << buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interference statistics for hard-core wireless networks"};
  app.require_subcommand(1);

  matint::ModelParams params;
  double m_arg = 1.0;
  bool no_fading = false;
  int threads = default_threads();
  std::uint64_t seed = 1;
  double rel_tol = 1e-5, abs_tol = 1e-9;
  std::string out_path;
  bool as_json = false;

  auto add_model_flags = [&](CLI::App* cmd) {
    cmd->add_option("--lambda-p", params.lambda_p, "parent process intensity");
    cmd->add_option("--d", params.d, "hard-core distance");
    cmd->add_option("--alpha", params.alpha, "path-loss exponent (> 2)");
    cmd->add_option("--m", m_arg, "Nakagami shape (>= 0.5)");
    cmd->add_flag("--no-fading", no_fading, "no-fading limit (overrides --m)");
  };
  auto add_common_flags = [&](CLI::App* cmd) {
    cmd->add_option("--threads", threads, "worker thread cap");
    cmd->add_option("--seed", seed, "base seed");
    cmd->add_option("--rel-tol", rel_tol, "relative tolerance of the integrals");
    cmd->add_option("--abs-tol", abs_tol, "absolute tolerance of the integrals");
    cmd->add_option("--out", out_path, "output file (default stdout)");
    cmd->add_flag("--json", as_json, "emit JSON instead of text/CSV");
  };

  // ---- eval ----
  auto* eval = app.add_subcommand("eval", "evaluate statistics at one parameter point");
  add_model_flags(eval);
  add_common_flags(eval);
  bool eval_all = false;
  eval->add_flag("--all", eval_all, "print every quantity (default)");

  // ---- curve ----
  auto* curve = app.add_subcommand("curve", "parameter sweep as a CSV/JSON table");
  add_model_flags(curve);
  add_common_flags(curve);
  std::string preset, quantity_name = "correlation", sweep_name = "d", grid_text;
  std::string from_metadata;
  bool log_grid = false;
  double separation = 1.0;
  std::size_t mc_realizations = 0;
  double mc_window_radius = 50.0;
  curve->add_option("--preset", preset, "bundled family: fig1..fig6");
  curve->add_option("--quantity", quantity_name,
                    "p1|p12|p11|p12r|rho2|mean|variance|covariance|correlation|poisson_correlation");
  curve->add_option("--sweep", sweep_name, "d|lambda_p|alpha|m|r|p1_fraction");
  curve->add_option("--grid", grid_text, "start:stop:count or comma list");
  curve->add_flag("--log-grid", log_grid, "log-spaced start:stop:count grids");
  curve->add_option("--separation", separation,
                    "pair separation r when it is not the sweep variable");
  curve->add_option("--realizations", mc_realizations,
                    "add a Monte Carlo column with this many realizations");
  curve->add_option("--window-radius", mc_window_radius,
                    "observation radius of the Monte Carlo check");
  curve->add_option("--from-metadata", from_metadata,
                    "rerun the sweep described by a previous output file");

  // ---- validate ----
  auto* validate = app.add_subcommand("validate", "analytics vs simulation report");
  add_common_flags(validate);
  std::string config_path;
  std::size_t val_realizations = 0;
  bool printed_convention = false;
  validate->add_option("--config", config_path, "flat key = value config file");
  validate->add_option("--realizations", val_realizations,
                       "override the number of realizations");
  validate->add_flag("--printed-lambda-convention", printed_convention,
                     "diagnostic: use the thinned-intensity symbol inside p12");

  // ---- simulate ----
  auto* simulate = app.add_subcommand("simulate", "raw Monte Carlo estimation run");
  add_model_flags(simulate);
  add_common_flags(simulate);
  std::size_t sim_realizations = 10000;
  double window_radius = 50.0;
  double guard = -1.0;
  std::size_t batch = 0;
  bool progress = false, baseline = false;
  std::string dump_path;
  simulate->add_option("--realizations", sim_realizations, "number of realizations");
  simulate->add_option("--window-radius", window_radius, "observation radius");
  simulate->add_option("--guard", guard, "sampling margin (default: hard-core distance)");
  simulate->add_option("--batch", batch, "realizations per checkpoint");
  simulate->add_flag("--progress", progress, "checkpoint lines on stderr");
  simulate->add_flag("--baseline", baseline, "matched ALOHA baseline instead");
  simulate->add_option("--dump", dump_path, "write one realization as x y mark kept1 kept2");

  // ---- probs ----
  auto* probs_cmd = app.add_subcommand("probs", "survival probability table");
  add_model_flags(probs_cmd);
  add_common_flags(probs_cmd);
  std::string r_text = "1.05,1.2,1.5,1.9,2.5";
  std::size_t probs_realizations = 0;
  probs_cmd->add_option("--r", r_text, "separations (comma list or start:stop:count)");
  probs_cmd->add_option("--realizations", probs_realizations,
                        "add empirical columns with this many realizations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    params.m = no_fading ? matint::kNoFading : m_arg;
    matint::AnalyticsOptions options;
    options.rel_tol = rel_tol;
    options.abs_tol = abs_tol;
    OutputTarget out;
    out.path = out_path;

    if (eval->parsed()) {
      params.validate();
      const matint::InterferenceStats stats =
          matint::compute_interference_stats(params, options);
      const matint::RetentionProbabilities probs =
          matint::retention_probabilities(params.lambda_p, params.d);
      if (as_json) {
        nlohmann::json j;
        j["lambda_p"] = params.lambda_p;
        j["d"] = params.d;
        j["alpha"] = params.alpha;
        j["m"] = params.m;
        j["lambda"] = probs.lambda;
        j["p1"] = probs.p1;
        j["p12"] = probs.p12;
        j["mean"] = stats.mean;
        j["variance"] = stats.variance;
        j["covariance"] = stats.covariance;
        j["correlation"] = stats.correlation;
        j["errors"] = {{"variance", stats.error.variance},
                       {"covariance", stats.error.covariance},
                       {"correlation", stats.error.correlation}};
        out.stream() << j.dump(2) << "\n";
      } else {
        print_stats_text(out.stream(), params, stats, probs);
      }
      if (!stats.converged) {
        std::cerr << "error: quadrature did not converge to the requested tolerance\n";
        return kExitNumerical;
      }
      return kExitOk;
    }

    if (curve->parsed()) {
      if (!preset.empty()) {
        const matint::SweepTable table =
            matint::figure_preset(preset, options, threads);
        if (as_json)
          out.stream() << matint::table_to_json(table) << "\n";
        else
          matint::write_table_csv(table, out.stream());
        return kExitOk;
      }
      matint::CurveSpec spec;
      matint::AnalyticsOptions curve_options = options;
      if (!from_metadata.empty()) {
        std::ifstream in(from_metadata);
        if (!in) throw std::invalid_argument("cannot read " + from_metadata);
        std::tie(spec, curve_options) =
            matint::spec_from_metadata(matint::KeyValues::parse(in));
      } else {
        if (grid_text.empty())
          throw std::invalid_argument("curve needs --grid (or --preset / --from-metadata)");
        spec.quantity = matint::quantity_from_string(quantity_name);
        spec.sweep = matint::sweep_variable_from_string(sweep_name);
        spec.grid = parse_grid(grid_text, log_grid);
        spec.fixed = params;
        spec.separation = separation;
        if (mc_realizations > 0) {
          matint::SimConfig mc =
              matint::SimConfig::defaults(params, mc_realizations, seed);
          mc.window.radius = mc_window_radius;
          mc.threads = threads;
          spec.mc_check = mc;
        }
      }
      const matint::CurveData data =
          matint::run_curve(spec, curve_options, threads);
      if (as_json)
        out.stream() << matint::curve_to_json(data) << "\n";
      else
        matint::write_curve_csv(data, out.stream());
      for (const auto& row : data.rows)
        if (!row.ok) {
          std::cerr << "warning: some grid points failed; cells left empty\n";
          return kExitNumerical;
        }
      return kExitOk;
    }

    if (validate->parsed()) {
      matint::ValidationConfig config;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw std::invalid_argument("cannot read " + config_path);
        config = matint::parse_validation_config(in);
      }
      if (val_realizations > 0) config.realizations = val_realizations;
      if (validate->count("--seed")) config.seed = seed;
      if (validate->count("--threads")) config.threads = threads;
      if (validate->count("--rel-tol")) config.analytics.rel_tol = rel_tol;
      if (printed_convention)
        config.analytics.printed_intensity_convention = true;
      const matint::ValidationReport report = matint::run_validation(config);
      if (as_json) {
        nlohmann::json j;
        j["all_pass"] = report.all_pass;
        j["rows"] = nlohmann::json::array();
        for (const auto& row : report.rows) {
          j["rows"].push_back({{"lambda_p", row.params.lambda_p},
                               {"d", row.params.d},
                               {"alpha", row.params.alpha},
                               {"m", row.params.m},
                               {"quantity", row.quantity},
                               {"analytic", row.analytic},
                               {"analytic_error", row.analytic_error},
                               {"mc", row.mc},
                               {"mc_stderr", row.mc_stderr},
                               {"tolerance", row.tolerance},
                               {"pass", row.pass}});
        }
        out.stream() << j.dump(2) << "\n";
      } else {
        out.stream() << report.text();
      }
      return report.all_pass ? kExitOk : kExitValidation;
    }

    if (simulate->parsed()) {
      params.validate();
      matint::SimConfig config =
          matint::SimConfig::defaults(params, sim_realizations, seed);
      config.window.radius = window_radius;
      config.window.guard = guard >= 0.0 ? guard : params.d;
      config.batch = batch;
      config.threads = threads;
      config.progress = progress;
      if (!dump_path.empty()) {
        matint::Rng rng(seed);
        const matint::PointPattern pattern =
            matint::sample_ppp(params.lambda_p, config.window, rng);
        const auto [first, second] =
            matint::paired_thinnings(pattern, params.d, rng);
        std::ofstream dump(dump_path);
        if (!dump) throw std::runtime_error("cannot write to " + dump_path);
        matint::write_pattern_dump(dump, pattern, first.retained,
                                   second.retained);
      }
      const matint::SimEstimate est =
          baseline ? matint::estimate_poisson_baseline_stats(config)
                   : matint::estimate_stats(config);
      if (as_json) {
        nlohmann::json j;
        j["realizations"] = est.realizations;
        j["mean"] = est.mean;
        j["variance"] = est.variance;
        j["covariance"] = est.covariance;
        j["correlation"] = est.correlation;
        j["std_error"] = {{"mean", est.std_error.mean},
                          {"variance", est.std_error.variance},
                          {"covariance", est.std_error.covariance},
                          {"correlation", est.std_error.correlation}};
        j["bias_bound"] = est.bias_bound;
        j["p1"] = est.retained_fraction;
        j["p12"] = est.retained_both_fraction;
        out.stream() << j.dump(2) << "\n";
      } else {
        char buf[128];
        auto line = [&](const char* name, double v, double se) {
          std::snprintf(buf, sizeof buf, "%-11s = %.9g +- %.2g\n", name, v, se);
          out.stream() << buf;
        };
        line("mean", est.mean, est.std_error.mean);
        line("variance", est.variance, est.std_error.variance);
        line("covariance", est.covariance, est.std_error.covariance);
        line("correlation", est.correlation, est.std_error.correlation);
        line("p1", est.retained_fraction, est.retained_fraction_se);
        line("p12", est.retained_both_fraction, est.retained_both_fraction_se);
        std::snprintf(buf, sizeof buf, "bias_bound  = %.2g\n", est.bias_bound);
        out.stream() << buf;
      }
      return kExitOk;
    }

    if (probs_cmd->parsed()) {
      params.validate();
      const std::vector<double> rs = parse_grid(r_text, false);
      matint::QuadratureOptions prob = matint::probability_quadrature_options();
      std::optional<matint::RetentionEstimate> mc;
      if (probs_realizations > 0) {
        matint::SimConfig config =
            matint::SimConfig::defaults(params, probs_realizations, seed);
        mc = matint::estimate_retention_probs(config, rs);
      }
      std::ostream& os = out.stream();
      if (as_json) {
        nlohmann::json j;
        j["p1"] = matint::p1(params.lambda_p, params.d);
        j["p12"] = matint::p12(params.lambda_p, params.d, prob);
        j["p12_closed"] = matint::p12_closed(params.lambda_p, params.d);
        for (double r : rs) {
          nlohmann::json row;
          row["r"] = r;
          row["p11"] = matint::p11(r, params.lambda_p, params.d);
          row["p11_quadrature"] =
              matint::p11_quadrature(r, params.lambda_p, params.d, prob);
          row["p12r"] = matint::p12r(r, params.lambda_p, params.d, prob);
          if (r >= params.d)
            row["p12r_closed"] =
                matint::p12r_closed(r, params.lambda_p, params.d);
          row["rho2"] = matint::product_density2(r, params.lambda_p, params.d);
          j["rows"].push_back(std::move(row));
        }
        if (mc) {
          j["mc"] = {{"p1", mc->p1},   {"p1_se", mc->p1_se},
                     {"p12", mc->p12}, {"p12_se", mc->p12_se}};
          for (std::size_t i = 0; i < mc->r.size(); ++i) {
            j["rows"][i]["mc_p11"] = mc->p11[i];
            j["rows"][i]["mc_p11_se"] = mc->p11_se[i];
            j["rows"][i]["mc_p12r"] = mc->p12r[i];
            j["rows"][i]["mc_p12r_se"] = mc->p12r_se[i];
          }
        }
        os << j.dump(2) << "\n";
      } else {
        char buf[256];
        std::snprintf(buf, sizeof buf, "p1  = %.9g   p12 = %.9g (closed %.9g)\n",
                      matint::p1(params.lambda_p, params.d),
                      matint::p12(params.lambda_p, params.d, prob),
                      matint::p12_closed(params.lambda_p, params.d));
        os << buf;
        if (mc) {
          std::snprintf(buf, sizeof buf,
                        "mc: p1 = %.6g +- %.2g   p12 = %.6g +- %.2g\n", mc->p1,
                        mc->p1_se, mc->p12, mc->p12_se);
          os << buf;
        }
        os << "r,p11,p11_quadrature,p12r,p12r_closed,rho2";
        if (mc) os << ",mc_p11,mc_p11_se,mc_p12r,mc_p12r_se";
        os << "\n";
        for (std::size_t i = 0; i < rs.size(); ++i) {
          const double r = rs[i];
          std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g,%.9g", r,
                        matint::p11(r, params.lambda_p, params.d),
                        matint::p11_quadrature(r, params.lambda_p, params.d, prob),
                        matint::p12r(r, params.lambda_p, params.d, prob));
          os << buf;
          if (r >= params.d) {
            std::snprintf(buf, sizeof buf, ",%.9g",
                          matint::p12r_closed(r, params.lambda_p, params.d));
            os << buf;
          } else {
            os << ",";
          }
          std::snprintf(buf, sizeof buf, ",%.9g",
                        matint::product_density2(r, params.lambda_p, params.d));
          os << buf;
          if (mc) {
            std::snprintf(buf, sizeof buf, ",%.6g,%.2g,%.6g,%.2g", mc->p11[i],
                          mc->p11_se[i], mc->p12r[i], mc->p12r_se[i]);
            os << buf;
          }
          os << "\n";
        }
      }
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
