#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "matint/curves.hpp"
#include "matint/montecarlo.hpp"
#include "matint/retention.hpp"
#include "matint/special_functions.hpp"

namespace py = pybind11;
using namespace matint;

namespace {

py::dict stats_to_dict(const InterferenceStats& stats) {
  py::dict d;
  d["mean"] = stats.mean;
  d["variance"] = stats.variance;
  d["covariance"] = stats.covariance;
  d["correlation"] = stats.correlation;
  d["variance_error"] = stats.error.variance;
  d["covariance_error"] = stats.error.covariance;
  d["correlation_error"] = stats.error.correlation;
  d["converged"] = stats.converged;
  return d;
}

py::dict estimate_to_dict(const SimEstimate& est) {
  py::dict d;
  d["mean"] = est.mean;
  d["variance"] = est.variance;
  d["covariance"] = est.covariance;
  d["correlation"] = est.correlation;
  d["mean_se"] = est.std_error.mean;
  d["variance_se"] = est.std_error.variance;
  d["covariance_se"] = est.std_error.covariance;
  d["correlation_se"] = est.std_error.correlation;
  d["bias_bound"] = est.bias_bound;
  d["p1"] = est.retained_fraction;
  d["p1_se"] = est.retained_fraction_se;
  d["p12"] = est.retained_both_fraction;
  d["p12_se"] = est.retained_both_fraction_se;
  d["realizations"] = est.realizations;
  return d;
}

SimConfig make_config(const ModelParams& params, std::size_t realizations,
                      std::uint64_t seed, double window_radius, int threads) {
  SimConfig config = SimConfig::defaults(params, realizations, seed);
  config.window.radius = window_radius;
  config.threads = threads;
  return config;
}

}  // namespace

PYBIND11_MODULE(_matint, m) {
  m.doc() =
      "Interference statistics for hard-core (carrier-sensing) wireless "
      "networks: survival probabilities of dependent thinnings and the "
      "mean/variance/covariance/correlation of interference, analytic and "
      "simulated.";
  m.attr("__version__") = kToolVersion;
  m.attr("NO_FADING") = kNoFading;

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init([](double lambda_p, double d, double alpha, double m_) {
             ModelParams p{lambda_p, d, alpha, m_};
             p.validate();
             return p;
           }),
           py::arg("lambda_p") = 1.0, py::arg("d") = 1.0,
           py::arg("alpha") = 3.0, py::arg("m") = 1.0)
      .def_readwrite("lambda_p", &ModelParams::lambda_p)
      .def_readwrite("d", &ModelParams::d)
      .def_readwrite("alpha", &ModelParams::alpha)
      .def_readwrite("m", &ModelParams::m)
      .def("lambda_", &ModelParams::lambda, "retained intensity lambda_p * p1")
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(lambda_p=" + format_double(p.lambda_p) +
               ", d=" + format_double(p.d) + ", alpha=" + format_double(p.alpha) +
               ", m=" + format_double(p.m) + ")";
      });

  // Geometry and survival probabilities.
  m.def("gamma_overlap", &gamma_overlap, py::arg("r"), py::arg("d"),
        "lens area of two discs of radius d at center distance r");
  m.def("gamma_union", &gamma_union, py::arg("r"), py::arg("d"));
  m.def("p1", &p1, py::arg("lambda_p"), py::arg("d"),
        "probability a point survives one thinning");
  m.def(
      "p12", [](double lp, double d) { return p12(lp, d); },
      py::arg("lambda_p"), py::arg("d"),
      "probability a point survives two independent thinnings");
  m.def(
      "p11", [](double r, double lp, double d) { return p11(r, lp, d); },
      py::arg("r"), py::arg("lambda_p"), py::arg("d"),
      "probability two points at distance r survive one thinning");
  m.def(
      "p12r", [](double r, double lp, double d) { return p12r(r, lp, d); },
      py::arg("r"), py::arg("lambda_p"), py::arg("d"),
      "probability two points at distance r survive across two thinnings");
  m.def("product_density2", &product_density2, py::arg("r"),
        py::arg("lambda_p"), py::arg("d"),
        "second-order product density lambda_p^2 p11(r)");
  m.def("exp_integral_ei", &exp_integral_ei, py::arg("x"));

  // Channel.
  m.def("path_gain", &path_gain, py::arg("distance"), py::arg("alpha"));
  m.def("fading_moment2", &fading_moment2, py::arg("m"),
        "E[h^4] = (m+1)/m of the power fading coefficient");

  // Analytic interference statistics.
  m.def("mean_interference", &mean_interference, py::arg("params"));
  m.def(
      "variance_interference",
      [](const ModelParams& p) { return variance_interference(p).value; },
      py::arg("params"));
  m.def(
      "covariance_interference",
      [](const ModelParams& p) { return covariance_interference(p).value; },
      py::arg("params"));
  m.def(
      "correlation_interference",
      [](const ModelParams& p) { return correlation_interference(p).value; },
      py::arg("params"));
  m.def(
      "interference_stats",
      [](const ModelParams& p) {
        return stats_to_dict(compute_interference_stats(p));
      },
      py::arg("params"),
      "mean, variance, covariance and correlation with error estimates");
  m.def("poisson_baseline_correlation", &poisson_baseline_correlation,
        py::arg("p_send"), py::arg("m"));
  m.def(
      "poisson_baseline_stats",
      [](const ModelParams& p) { return stats_to_dict(poisson_baseline_stats(p)); },
      py::arg("params"));

  // Simulation.
  m.def(
      "simulate_stats",
      [](const ModelParams& params, std::size_t realizations,
         std::uint64_t seed, double window_radius, int threads) {
        return estimate_to_dict(estimate_stats(
            make_config(params, realizations, seed, window_radius, threads)));
      },
      py::arg("params"), py::arg("realizations"), py::arg("seed") = 1,
      py::arg("window_radius") = 50.0, py::arg("threads") = 1,
      "Monte Carlo estimate of the interference statistics");
  m.def(
      "simulate_retention",
      [](const ModelParams& params, std::size_t realizations,
         const std::vector<double>& r_grid, std::uint64_t seed) {
        SimConfig config = SimConfig::defaults(params, realizations, seed);
        const RetentionEstimate est = estimate_retention_probs(config, r_grid);
        py::dict d;
        d["p1"] = est.p1;
        d["p1_se"] = est.p1_se;
        d["p12"] = est.p12;
        d["p12_se"] = est.p12_se;
        d["r"] = est.r;
        d["p11"] = est.p11;
        d["p11_se"] = est.p11_se;
        d["p12r"] = est.p12r;
        d["p12r_se"] = est.p12r_se;
        return d;
      },
      py::arg("params"), py::arg("realizations"),
      py::arg("r_grid") = std::vector<double>{}, py::arg("seed") = 1,
      "empirical survival probabilities from planted-point simulation");
}
