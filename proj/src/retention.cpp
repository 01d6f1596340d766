#include "matint/retention.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "matint/special_functions.hpp"

namespace matint {

namespace {

constexpr double kPi = std::numbers::pi;

void require_nonnegative(double r, double lambda_p, double d) {
  if (!(r >= 0.0)) throw std::invalid_argument("separation must be >= 0");
  if (!(lambda_p >= 0.0)) throw std::invalid_argument("intensity must be >= 0");
  if (!(d >= 0.0)) throw std::invalid_argument("hard-core distance must be >= 0");
}

}  // namespace

double HardcoreGeometry::disc_area() const { return kPi * d * d; }

void HardcoreGeometry::validate() const {
  if (!(d >= 0.0)) throw std::invalid_argument("hard-core distance must be >= 0");
}

double gamma_overlap(double r, double d) {
  require_nonnegative(r, 0.0, d);
  if (d <= 0.0 || r >= 2.0 * d) return 0.0;
  return 2.0 * d * d * std::acos(r / (2.0 * d)) -
         0.5 * r * std::sqrt(4.0 * d * d - r * r);
}

double gamma_union(double r, double d) {
  return 2.0 * kPi * d * d - gamma_overlap(r, d);
}

double p1(double lambda_p, double d) {
  require_nonnegative(0.0, lambda_p, d);
  return one_minus_exp_over(lambda_p * kPi * d * d);
}

double retained_intensity(double lambda_p, double d) {
  return lambda_p * p1(lambda_p, d);
}

QuadratureOptions probability_quadrature_options() {
  QuadratureOptions options;
  options.rel_tol = 1e-8;
  options.abs_tol = 1e-12;
  return options;
}

double p12(double lambda_p, double d, const QuadratureOptions& options) {
  require_nonnegative(0.0, lambda_p, d);
  const double c = lambda_p * kPi * d * d;
  if (c == 0.0) return 1.0;
  return integrate_2d_unit_square(
             [c](double m1, double m2) {
               return std::exp(-(m1 + m2 - m1 * m2) * c);
             },
             options)
      .value;
}

double p12_closed(double lambda_p, double d, IntensityConvention convention) {
  require_nonnegative(0.0, lambda_p, d);
  const double intensity = convention == IntensityConvention::parent
                               ? lambda_p
                               : retained_intensity(lambda_p, d);
  const double c = intensity * kPi * d * d;
  if (c == 0.0) return 1.0;
  // exp(-c) (Ei(c) - ln c - gamma)/c, with the bracket evaluated by its
  // cancellation-free series.
  return std::exp(-c) * exp_integral_ein(c) / c;
}

double p11(double r, double lambda_p, double d) {
  require_nonnegative(r, lambda_p, d);
  if (d == 0.0) return 1.0;
  if (r <= d) return 0.0;
  const double single = p1(lambda_p, d);
  if (r > 2.0 * d) return single * single;
  const double c = lambda_p * kPi * d * d;            // one sensing disc
  const double big = lambda_p * gamma_union(r, d);    // union of both discs
  return 2.0 * one_minus_exp_over_diff(c, big);
}

double p11_quadrature(double r, double lambda_p, double d,
                      const QuadratureOptions& options) {
  require_nonnegative(r, lambda_p, d);
  if (d == 0.0) return 1.0;
  if (r <= d) return 0.0;
  const double overlap = lambda_p * gamma_overlap(r, d);
  const double excl = lambda_p * (kPi * d * d - gamma_overlap(r, d));
  // int int exp(-(mx+my) excl - max(mx,my) overlap); mapped onto the unit
  // square as twice the lower triangle (mx = u v <= my = v, Jacobian v) so the
  // integrand stays smooth.
  return 2.0 *
         integrate_2d_unit_square(
             [excl, overlap](double u, double v) {
               const double mx = u * v;
               const double my = v;
               return v * std::exp(-(mx + my) * excl - my * overlap);
             },
             options)
             .value;
}

double p12r_far_branch(double r, double lambda_p, double d,
                       const QuadratureOptions& options) {
  require_nonnegative(r, lambda_p, d);
  const double c = lambda_p * kPi * d * d;
  const double g = lambda_p * gamma_overlap(r, d);
  if (c == 0.0) return 1.0;
  return integrate_2d_unit_square(
             [c, g](double mx, double my) {
               return std::exp(-c * (mx + my) + g * mx * my);
             },
             options)
      .value;
}

double p12r_near_branch(double r, double lambda_p, double d,
                        const QuadratureOptions& options) {
  require_nonnegative(r, lambda_p, d);
  const double c = lambda_p * kPi * d * d;
  const double g = lambda_p * gamma_overlap(r, d);
  if (c == 0.0) return 1.0;
  // Each survivor sits inside the other's sensing disc, so it must also have
  // drawn the larger mark there: factor (1-mx)(1-my).
  return integrate_2d_unit_square(
             [c, g](double mx, double my) {
               return std::exp(-c * (mx + my) + g * mx * my) * (1.0 - mx) *
                      (1.0 - my);
             },
             options)
      .value;
}

double p12r(double r, double lambda_p, double d,
            const QuadratureOptions& options) {
  require_nonnegative(r, lambda_p, d);
  if (d == 0.0) return 1.0;
  if (r > 2.0 * d) {
    const double single = p1(lambda_p, d);
    return single * single;
  }
  if (r > d) return p12r_far_branch(r, lambda_p, d, options);
  return p12r_near_branch(r, lambda_p, d, options);
}

double p12r_closed(double r, double lambda_p, double d) {
  require_nonnegative(r, lambda_p, d);
  if (d == 0.0) return 1.0;
  if (r == 0.0) return p12_closed(lambda_p, d);  // merging-points limit
  const double single = p1(lambda_p, d);
  if (r > 2.0 * d) return single * single;
  const double c = lambda_p * kPi * d * d;
  const double g = lambda_p * gamma_overlap(r, d);
  if (!(g > 0.0)) return single * single;
  if (c == 0.0) return 1.0;
  // e^{-A} [Ei(A) + Ei(B) - 2 Ei(C)] / g with A = c^2/g, B = (c-g)^2/g,
  // C = c(c-g)/g. Written with scaled Ei so the e^{-A} Ei(A) products stay
  // finite as the overlap vanishes (A -> infinity); the exponent gaps
  // B - A = g - 2c and C - A = -c are bounded.
  const double A = c * c / g;
  const double B = (c - g) * (c - g) / g;
  const double C = c * (c - g) / g;
  const double term_a = exp_integral_ei_scaled(A);
  const double term_b = std::exp(B - A) * exp_integral_ei_scaled(B);
  const double term_c = std::exp(C - A) * exp_integral_ei_scaled(C);
  return (term_a + term_b - 2.0 * term_c) / g;
}

double p12r_near_branch_limit(double lambda_p, double d) {
  require_nonnegative(0.0, lambda_p, d);
  const double c = lambda_p * kPi * d * d;
  if (c == 0.0) return 0.25;  // integral of (1-mx)(1-my) over the unit square
  // [1 - e^{-c}(1 + Ei(c) - ln c - gamma)]/c^2 with the bracket's divergent
  // parts combined through the entire series.
  return (1.0 - std::exp(-c) * (1.0 + exp_integral_ein(c))) / (c * c);
}

double product_density2(double r, double lambda_p, double d) {
  return lambda_p * lambda_p * p11(r, lambda_p, d);
}

RetentionProbabilities retention_probabilities(double lambda_p, double d,
                                               const QuadratureOptions& options) {
  RetentionProbabilities probs;
  probs.p1 = p1(lambda_p, d);
  probs.p12 = p12(lambda_p, d, options);
  probs.lambda = lambda_p * probs.p1;
  const double slack = 1e-9;
  if (probs.p12 < probs.p1 * probs.p1 - slack || probs.p12 > probs.p1 + slack)
    throw std::logic_error("retention probabilities violate p1^2 <= p12 <= p1");
  return probs;
}

}  // namespace matint
