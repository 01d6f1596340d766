#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "matint/special_functions.hpp"

using namespace matint;

namespace {

// Independent oracle: the defining series gamma + ln|x| + sum x^k/(k k!),
// accumulated in extended precision.
long double ei_series_oracle(long double x) {
  const long double gamma = 0.5772156649015328606065120900824024L;
  long double sum = gamma + std::log(std::abs(x));
  long double term = 1.0L;
  for (int k = 1; k <= 200; ++k) {
    term *= x / k;
    sum += term / k;
    if (std::abs(term / k) < 1e-22L * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

TEST_CASE("euler gamma constant") {
  CHECK(kEulerGamma == doctest::Approx(0.577216).epsilon(1e-6));
}

TEST_CASE("Ei at reference points") {
  struct Ref {
    double x, value;
  };
  // High-precision reference values, frozen.
  const Ref refs[] = {
      {1e-06, -13.238293893062491},
      {-1e-06, -13.238295893062491},
      {0.5, 0.45421990486317358},
      {-0.5, -0.55977359477616081},
      {1.0, 1.8951178163559368},
      {-1.0, -0.21938393439552027},
      {5.0, 40.185275355803177},
      {-5.0, -0.0011482955912753258},
      {30.0, 368973209407.2742},
      {-30.0, -3.0215520106888125e-15},
      {50.0, 1.0585636897131691e+20},
      {-50.0, -3.783264029550459e-24},
      {300.0, 6.4964825080886658e+127},
      {-300.0, -1.7103842768045101e-133},
      {700.0, 1.4509787360525609e+301},
      {-700.0, -1.4065187662340329e-307},
  };
  for (const Ref& ref : refs) {
    CAPTURE(ref.x);
    CHECK(exp_integral_ei(ref.x) ==
          doctest::Approx(ref.value).epsilon(1e-12));
  }
}

TEST_CASE("Ei series identity on |x| <= 5") {
  for (double x = -5.0; x <= 5.0; x += 0.25) {
    if (x == 0.0) continue;
    CAPTURE(x);
    const double expected = static_cast<double>(ei_series_oracle(x));
    CHECK(exp_integral_ei(x) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("Ei diverges at zero") {
  CHECK_THROWS_AS(exp_integral_ei(0.0), std::domain_error);
}

TEST_CASE("scaled Ei agrees with the plain value and stays finite") {
  for (double x : {0.5, 1.0, 10.0, 35.0, 100.0}) {
    CAPTURE(x);
    CHECK(exp_integral_ei_scaled(x) ==
          doctest::Approx(std::exp(-x) * exp_integral_ei(x)).epsilon(1e-12));
  }
  const double huge = exp_integral_ei_scaled(1e6);
  CHECK(std::isfinite(huge));
  CHECK(huge == doctest::Approx(1e-6).epsilon(1e-5));  // ~ 1/x for large x
}

TEST_CASE("entire part of Ei") {
  CHECK(exp_integral_ein(1.0) ==
        doctest::Approx(exp_integral_ei(1.0) - kEulerGamma).epsilon(1e-13));
  CHECK(exp_integral_ein(0.0) == 0.0);
}

TEST_CASE("(1-e^-x)/x and its divided difference") {
  CHECK(one_minus_exp_over(0.0) == 1.0);
  CHECK(one_minus_exp_over(1e-300) == doctest::Approx(1.0));
  CHECK(one_minus_exp_over(1.0) ==
        doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));

  // Against the direct quotient where it is well conditioned.
  for (double a : {0.7, 1.3, 4.0}) {
    for (double b : {2.0, 3.5, 9.0}) {
      CAPTURE(a);
      CAPTURE(b);
      const double direct =
          (one_minus_exp_over(a) - one_minus_exp_over(b)) / (b - a);
      CHECK(one_minus_exp_over_diff(a, b) ==
            doctest::Approx(direct).epsilon(1e-13));
    }
  }
  // Tiny arguments: the series limit is 1/2.
  CHECK(one_minus_exp_over_diff(1e-14, 3e-14) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(one_minus_exp_over_diff(0.0, 0.0) == 0.5);
  // Equal arguments: -f'(a).
  CHECK(one_minus_exp_over_diff(2.0, 2.0) ==
        doctest::Approx((one_minus_exp_over(2.0) - std::exp(-2.0)) / 2.0));
}
