#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <sstream>

#include "matint/curves.hpp"
#include "matint/retention.hpp"
#include "matint/validation.hpp"

using namespace matint;

TEST_CASE("key-value store round trip") {
  KeyValues kv;
  kv.set("name", "demo");
  kv.set_double("x", 0.1);
  kv.set_list("grid", {0.5, 1.0, 2.0});
  std::ostringstream os;
  kv.write(os, "# ");
  std::istringstream is(os.str());
  const KeyValues parsed = KeyValues::parse(is);
  CHECK(parsed.get("name") == std::string("demo"));
  CHECK(parsed.get_double("x") == 0.1);
  CHECK(parsed.get_list("grid") == std::vector<double>{0.5, 1.0, 2.0});
  CHECK_FALSE(parsed.get("missing").has_value());
}

TEST_CASE("format_double round trips exactly") {
  for (double v : {0.1, 1.0 / 3.0, 2.8703582452086827, 1e-12, 123456789.0}) {
    CAPTURE(v);
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("p1 inversion") {
  for (double target : {0.05, 0.3, 0.78598, 0.99}) {
    CAPTURE(target);
    const double y = invert_p1(target);
    CHECK((1.0 - std::exp(-y)) / y == doctest::Approx(target).epsilon(1e-10));
  }
  CHECK(invert_p1(1.0) == 0.0);
  CHECK_THROWS_AS(invert_p1(0.0), std::invalid_argument);
  CHECK_THROWS_AS(invert_p1(1.5), std::invalid_argument);
}

TEST_CASE("curve spec validation") {
  CurveSpec spec;
  spec.quantity = Quantity::p1;
  spec.sweep = SweepVariable::d;
  spec.grid = {};
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.grid = {1.0, 0.5};
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.grid = {0.5, 1.0};
  CHECK_NOTHROW(spec.validate());
  spec.sweep = SweepVariable::alpha;
  spec.grid = {1.5, 3.0};  // alpha <= 2 in the grid
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("enum names round trip") {
  for (int q = 0; q < 10; ++q) {
    const Quantity quantity = static_cast<Quantity>(q);
    CHECK(quantity_from_string(to_string(quantity)) == quantity);
  }
  for (int s = 0; s < 6; ++s) {
    const SweepVariable var = static_cast<SweepVariable>(s);
    CHECK(sweep_variable_from_string(to_string(var)) == var);
  }
  CHECK_THROWS_AS(quantity_from_string("bogus"), std::invalid_argument);
}

TEST_CASE("p1 curve over the hard-core distance") {
  CurveSpec spec;
  spec.quantity = Quantity::p1;
  spec.sweep = SweepVariable::d;
  spec.grid = {0.4, 0.8, 1.2};
  spec.fixed = ModelParams{1.0, 1.0, 3.0, 1.0};
  const CurveData data = run_curve(spec);
  REQUIRE(data.rows.size() == 3);
  CHECK(data.rows[0].analytic == doctest::Approx(0.78598).epsilon(1e-5));
  CHECK(data.rows[1].analytic == doctest::Approx(0.43076).epsilon(1e-5));
  CHECK(data.rows[2].analytic == doctest::Approx(0.21865).epsilon(1e-5));
}

TEST_CASE("curve output is reproducible from its own metadata") {
  CurveSpec spec;
  spec.quantity = Quantity::p12r;
  spec.sweep = SweepVariable::r;
  spec.grid = {0.5, 1.2, 2.0, 2.6};
  spec.fixed = ModelParams{1.0, 1.0, 3.0, 1.0};
  const CurveData first = run_curve(spec);
  std::ostringstream out1;
  write_curve_csv(first, out1);

  std::istringstream meta(out1.str());
  const auto [respec, options] = spec_from_metadata(KeyValues::parse(meta));
  const CurveData second = run_curve(respec, options);
  std::ostringstream out2;
  write_curve_csv(second, out2);

  // Byte-identical apart from the timestamp line.
  auto strip_timestamp = [](const std::string& text) {
    std::istringstream is(text);
    std::string line, kept;
    while (std::getline(is, line))
      if (line.rfind("# timestamp", 0) != 0) kept += line + "\n";
    return kept;
  };
  CHECK(strip_timestamp(out1.str()) == strip_timestamp(out2.str()));
}

TEST_CASE("interference sweep over the fading shape shares integrals") {
  CurveSpec spec;
  spec.quantity = Quantity::correlation;
  spec.sweep = SweepVariable::m;
  spec.grid = {0.5, 1.0, 2.0, 6.0};
  spec.fixed = ModelParams{1.0, 1.0, 3.0, 1.0};
  const CurveData data = run_curve(spec);
  REQUIRE(data.rows.size() == 4);
  // Increasing in the fading shape.
  for (std::size_t i = 1; i < 4; ++i)
    CHECK(data.rows[i].analytic > data.rows[i - 1].analytic);
  CHECK(data.rows[1].analytic == doctest::Approx(0.0989356591).epsilon(1e-4));
}

TEST_CASE("sweep with a Monte Carlo column") {
  CurveSpec spec;
  spec.quantity = Quantity::p1;
  spec.sweep = SweepVariable::d;
  spec.grid = {0.4, 1.0};
  spec.fixed = ModelParams{1.0, 1.0, 3.0, 1.0};
  SimConfig mc = SimConfig::defaults(spec.fixed, 4000, 5);
  spec.mc_check = mc;
  const CurveData data = run_curve(spec);
  for (const CurveRow& row : data.rows) {
    REQUIRE(row.mc.has_value());
    CHECK(std::abs(*row.mc - row.analytic) < 4.0 * *row.mc_stderr);
  }
}

TEST_CASE("figure presets carry the right fixed parameters") {
  AnalyticsOptions quick;
  quick.rel_tol = 1e-4;
  quick.abs_tol = 1e-7;
  quick.prob_rel_tol = 1e-7;
  quick.prob_abs_tol = 1e-10;

  const SweepTable fig1 = figure_preset("fig1", quick);
  CHECK(fig1.metadata.get_double("lambda_p") == 1.0);
  CHECK(fig1.metadata.get_double("d") == 1.0);
  CHECK(fig1.x_label == "r");
  REQUIRE(fig1.columns.size() == 3);
  // The cross-slot curve sits below the same-slot one beyond the hard-core
  // distance and stays positive inside it.
  const double lambda = retained_intensity(1.0, 1.0);
  for (std::size_t i = 0; i < fig1.x.size(); ++i) {
    CHECK(fig1.values[0][i] == doctest::Approx(lambda * lambda));
    if (fig1.x[i] <= 1.0) {
      CHECK(fig1.values[1][i] == 0.0);
      CHECK(fig1.values[2][i] > 0.0);
    }
  }

  const SweepTable fig3 = figure_preset("fig3", quick);
  CHECK(fig3.metadata.get_double("lambda_p") == 1.0);
  CHECK(fig3.metadata.get_double("alpha") == 3.0);
  CHECK(fig3.x.front() == doctest::Approx(0.5));
  CHECK(fig3.x.back() == doctest::Approx(100.0));
  REQUIRE(fig3.columns.size() == 6);

  CHECK_THROWS_AS(figure_preset("fig7", quick), std::invalid_argument);
}

TEST_CASE("remaining presets: captions' fixed parameters and curve shapes") {
  AnalyticsOptions quick;
  quick.rel_tol = 1e-4;
  quick.abs_tol = 1e-7;
  quick.prob_rel_tol = 1e-7;
  quick.prob_abs_tol = 1e-10;

  const SweepTable fig2 = figure_preset("fig2", quick);
  CHECK(fig2.metadata.get_double("lambda_p") == 1.0);
  CHECK(fig2.metadata.get_double("alpha") == 3.0);
  {
    // Correlation rises with the sending fraction; both families meet at the
    // same ceiling as the fraction approaches one.
    const auto& mpp = fig2.values[2];  // m = 1
    const auto& ppp = fig2.values[5];
    for (std::size_t i = 1; i < fig2.x.size(); ++i) CHECK(mpp[i] > mpp[i - 1]);
    CHECK(std::abs(mpp.back() - ppp.back()) < 0.02);
  }

  const SweepTable fig4 = figure_preset("fig4", quick);
  CHECK(fig4.metadata.get_double("lambda_p") == 1.0);
  CHECK(fig4.metadata.get_double("d") == 1.0);
  CHECK(fig4.x.front() == doctest::Approx(2.3));

  const SweepTable fig5 = figure_preset("fig5", quick);
  CHECK(fig5.metadata.get_double("lambda_p") == 1.0);
  CHECK(fig5.metadata.get_double("alpha") == 3.0);
  {
    const auto& m1 = fig5.values[3];  // m = 1 column
    for (std::size_t i = 1; i < fig5.x.size(); ++i) CHECK(m1[i] < m1[i - 1]);
  }

  const SweepTable fig6 = figure_preset("fig6", quick);
  CHECK(fig6.metadata.get_double("d") == 1.0);
  CHECK(fig6.metadata.get_double("alpha") == 3.0);
  {
    // The retained intensity rises with the parent intensity and stays below
    // its packing ceiling 1/(pi d^2).
    const auto& lambda = fig6.values[0];
    for (std::size_t i = 1; i < fig6.x.size(); ++i) {
      CHECK(lambda[i] > lambda[i - 1]);
      CHECK(lambda[i] < 1.0 / std::numbers::pi);
    }
  }
}

TEST_CASE("csv cells go empty on failed points") {
  SweepTable table;
  table.name = "demo";
  table.x_label = "x";
  table.columns = {"a"};
  table.x = {1.0, 2.0};
  table.values = {{0.5, std::numeric_limits<double>::quiet_NaN()}};
  std::ostringstream os;
  write_table_csv(table, os);
  CHECK(os.str().find("2,\n") != std::string::npos);
}

TEST_CASE("validation config parsing and checks") {
  std::istringstream is(
      "lambda_p = 0.5, 1\n"
      "d = 1\n"
      "alpha = 3\n"
      "m = 1, 2\n"
      "realizations = 5000\n"
      "window_radius = 30\n"
      "seed = 9\n"
      "threads = 2\n");
  const ValidationConfig config = parse_validation_config(is);
  CHECK(config.lambda_p == std::vector<double>{0.5, 1.0});
  CHECK(config.m == std::vector<double>{1.0, 2.0});
  CHECK(config.realizations == 5000);
  CHECK(config.window_radius == 30.0);
  CHECK(config.seed == 9);
  CHECK(config.threads == 2);
  CHECK_NOTHROW(config.validate());

  ValidationConfig zero = config;
  zero.realizations = 0;
  CHECK_THROWS_AS(zero.validate(), std::invalid_argument);
}

TEST_CASE("validation passes on a small grid") {
  ValidationConfig config;
  config.lambda_p = {1.0};
  config.d = {1.0};
  config.m = {1.0};
  config.realizations = 4000;
  config.window_radius = 30.0;
  config.seed = 2024;
  const ValidationReport report = run_validation(config);
  CHECK(report.rows.size() == 6);
  CHECK(report.all_pass);
  CHECK(report.text().find("RESULT: all comparisons pass") != std::string::npos);
}

TEST_CASE("printed-intensity convention is rejected by simulation") {
  ValidationConfig config;
  config.lambda_p = {2.0};
  config.d = {1.0};
  config.m = {1.0};
  config.realizations = 3000;
  config.window_radius = 20.0;
  config.seed = 31;
  config.analytics.printed_intensity_convention = true;
  const ValidationReport report = run_validation(config);
  CHECK_FALSE(report.all_pass);
  bool covariance_failed = false;
  for (const ValidationRow& row : report.rows)
    if (row.quantity == "covariance" && !row.pass) covariance_failed = true;
  CHECK(covariance_failed);
}
