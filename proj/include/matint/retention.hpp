#pragma once

#include "matint/quadrature.hpp"

namespace matint {

/// Intensity symbol used inside the printed closed forms. `parent` scales the
/// mark integrals by the parent-process intensity (the convention the proof
/// integrands and the Monte Carlo law agree with, and the library default);
/// `retained` reproduces the printed formulas that scale by the thinned
/// intensity instead. Kept for diagnostics: the two disagree visibly at high
/// intensity and a validation run can demonstrate which one simulation backs.
enum class IntensityConvention { parent, retained };

/// Hard-core distance with its sensing-disc area.
struct HardcoreGeometry {
  double d = 0.0;
  double disc_area() const;  // pi d^2
  void validate() const;     // d >= 0
};

/// Lens area of two discs of radius d whose centers are r apart:
/// 2 d^2 acos(r/(2d)) - (r/2) sqrt(4d^2 - r^2) for r <= 2d, else 0.
double gamma_overlap(double r, double d);

/// Area of the union of the same two discs: 2 pi d^2 - gamma_overlap(r, d).
double gamma_union(double r, double d);

/// Probability that a point of the parent process survives one thinning:
/// (1 - exp(-lambda_p pi d^2)) / (lambda_p pi d^2), continued with 1 at 0.
double p1(double lambda_p, double d);

/// Intensity of the thinned process, lambda = lambda_p * p1.
double retained_intensity(double lambda_p, double d);

/// Tolerances used for the retention-probability mark integrals.
QuadratureOptions probability_quadrature_options();

/// Probability that a point survives two independent thinnings. Primary
/// route: adaptive 2D quadrature of the mark integral
/// int int exp(-(m1 + m2 - m1 m2) lambda_p pi d^2) dm1 dm2.
double p12(double lambda_p, double d,
           const QuadratureOptions& options = probability_quadrature_options());

/// Closed form of p12 via the exponential integral; cross-check for the
/// quadrature route.
double p12_closed(double lambda_p, double d,
                  IntensityConvention convention = IntensityConvention::parent);

/// Probability that two points at distance r both survive one thinning.
/// Zero at and below the hard-core distance, p1^2 beyond twice of it,
/// closed-form in between (primary route).
double p11(double r, double lambda_p, double d);

/// Proof-integral route for p11 (mark integral with a max(m_x, m_y) factor,
/// split into symmetric triangles); oracle for the closed form.
double p11_quadrature(double r, double lambda_p, double d,
                      const QuadratureOptions& options = probability_quadrature_options());

/// Probability that of two points at distance r, the first survives one
/// thinning and the second survives an independent one. Positive for all
/// r > 0, p1^2 beyond 2d, discontinuous across r = d. Primary route:
/// 2D quadrature of the mark integrals of both branches.
double p12r(double r, double lambda_p, double d,
            const QuadratureOptions& options = probability_quadrature_options());

/// The r > d branch integrand evaluated at any separation with a positive
/// disc overlap; its r -> 0 limit is p12.
double p12r_far_branch(double r, double lambda_p, double d,
                       const QuadratureOptions& options = probability_quadrature_options());

/// The r <= d branch (both survivors inside each other's sensing disc).
double p12r_near_branch(double r, double lambda_p, double d,
                        const QuadratureOptions& options = probability_quadrature_options());

/// Closed form of the r >= d branch under the real principal value
/// Gamma(0, -y) := -Ei(y); evaluated in scaled form so it stays finite as the
/// disc overlap vanishes. Cross-check for the quadrature route.
double p12r_closed(double r, double lambda_p, double d);

/// r -> 0 limit of the near branch: [1 - e^{-c}(1 + Ei(c) - ln c - gamma)]/c^2
/// with c = lambda_p pi d^2. Diagnostic companion to p12r_near_branch.
double p12r_near_branch_limit(double lambda_p, double d);

/// Second-order product density of the thinned process,
/// rho2(r) = lambda_p^2 * p11(r): zero up to d, lambda^2 beyond 2d.
double product_density2(double r, double lambda_p, double d);

/// p1, p12 and the retained intensity bundled, with the internal consistency
/// checks (p1^2 <= p12 <= p1) applied.
struct RetentionProbabilities {
  double p1 = 1.0;
  double p12 = 1.0;
  double lambda = 0.0;
};

RetentionProbabilities retention_probabilities(
    double lambda_p, double d,
    const QuadratureOptions& options = probability_quadrature_options());

}  // namespace matint
