#pragma once

#include "matint/channel.hpp"
#include "matint/quadrature.hpp"

namespace matint {

/// Full model parameter tuple; single source of truth for every computation.
struct ModelParams {
  double lambda_p = 1.0;  ///< parent process intensity, > 0
  double d = 1.0;         ///< hard-core distance, >= 0
  double alpha = 3.0;     ///< path-loss exponent, > 2
  double m = 1.0;         ///< Nakagami shape, >= 1/2 or kNoFading

  void validate() const;
  double lambda() const;  ///< retained intensity lambda_p * p1
};

struct ValueWithError {
  double value = 0.0;
  double abs_error = 0.0;
  bool converged = true;
};

struct InterferenceStats {
  double mean = 0.0;
  double variance = 0.0;
  double covariance = 0.0;
  double correlation = 0.0;
  struct Errors {
    double mean = 0.0, variance = 0.0, covariance = 0.0, correlation = 0.0;
  } error;
  bool converged = true;
};

struct AnalyticsOptions {
  double rel_tol = 1e-5;       ///< outer interference integrals
  double abs_tol = 1e-9;
  double prob_rel_tol = 1e-8;  ///< retention-probability mark integrals
  double prob_abs_tol = 1e-12;
  /// Integrate the pair-density difference against lambda^2 (compactly
  /// supported integrand, the default) instead of the raw product form with
  /// its exact tail constant. Both give the same value; the raw form exists
  /// to expose the cancellation it suffers from.
  bool difference_form = true;
  /// Diagnostic: evaluate the both-slot survival probability with the
  /// thinned-intensity symbol instead of the parent one. Wrong on purpose;
  /// a validation run shows simulation rejecting it.
  bool printed_intensity_convention = false;
};

/// int_{R^2} l(|x+a|) l(|x-a|) dx for |a| = r, evaluated in elliptic
/// coordinates (x1 = r cosh(mu) cos(nu), x2 = r sinh(mu) sin(nu)): the factors
/// become l(r(cosh mu + cos nu)) and l(r(cosh mu - cos nu)) on a separable
/// [0,inf) x [0,2pi) domain.
ValueWithError elliptic_product_integral(double r, double alpha,
                                         const QuadratureOptions& options);

/// Exponential decay rate of the elliptic integrand in mu. Beyond the path
/// gain activation both factors fall like e^{-alpha mu} while the area element
/// grows like e^{2 mu}, so the integrand decays like e^{-(2 alpha - 2) mu}.
double elliptic_mu_decay_rate(double alpha);

double path_gain_area_integral(double alpha);     ///< int l    = alpha pi/(alpha-2)
double path_gain_sq_area_integral(double alpha);  ///< int l^2  = alpha pi/(alpha-1)

/// lambda * alpha pi / (alpha - 2); exact, no quadrature.
double mean_interference(const ModelParams& params);

ValueWithError variance_interference(const ModelParams& params,
                                     const AnalyticsOptions& options = {});

/// Temporal covariance across two slots; does not depend on the fading shape.
ValueWithError covariance_interference(const ModelParams& params,
                                       const AnalyticsOptions& options = {});

/// Pearson correlation cov / var (slots share one variance).
ValueWithError correlation_interference(const ModelParams& params,
                                        const AnalyticsOptions& options = {});

InterferenceStats compute_interference_stats(const ModelParams& params,
                                             const AnalyticsOptions& options = {});

/// The integral work at (lambda_p, d, alpha); everything here is independent
/// of the fading shape, so sweeps over m reuse one of these.
struct ModelIntegrals {
  double lambda_p = 0.0, d = 0.0, alpha = 0.0;
  double lambda = 0.0;
  double mean = 0.0;
  double variance_integral = 0.0;  ///< variance minus its fading-scaled term
  double variance_error = 0.0;
  double covariance = 0.0;
  double covariance_error = 0.0;
  bool converged = true;
};

ModelIntegrals compute_model_integrals(double lambda_p, double d, double alpha,
                                       const AnalyticsOptions& options = {});

ValueWithError variance_from(const ModelIntegrals& integrals, double m);
ValueWithError covariance_from(const ModelIntegrals& integrals);
ValueWithError correlation_from(const ModelIntegrals& integrals, double m);

/// Correlation of the matched ALOHA baseline: p_send * m/(m+1).
double poisson_baseline_correlation(double p_send, double m);

/// Stats of the independently thinned network with per-slot sending
/// probability p1(lambda_p, d): same mean as the hard-core network by
/// construction, variance lambda (m+1)/m alpha pi/(alpha-1), covariance
/// p1 lambda alpha pi/(alpha-1), correlation p1 m/(m+1).
InterferenceStats poisson_baseline_stats(const ModelParams& params);

}  // namespace matint
