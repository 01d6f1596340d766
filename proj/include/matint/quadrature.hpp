#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace matint {

struct QuadratureOptions {
  double rel_tol = 1e-6;
  double abs_tol = 1e-10;
  std::size_t max_intervals = 2000;  ///< subdivision budget
  /// Known kink locations; subdivision boundaries are placed there up front.
  std::vector<double> breakpoints;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;  ///< estimated bound on |value - true value|
  std::size_t evaluations = 0;
  bool converged = false;

  QuadratureResult& operator+=(const QuadratureResult& other);
};

/// Declared decay of an integrand toward +infinity, used to pick a truncation
/// point with a bounded tail.
struct TailDecay {
  enum class Kind { algebraic, exponential };
  Kind kind = Kind::exponential;
  double rate = 1.0;  ///< f ~ x^-rate (algebraic, rate > 1) or e^{-rate*x}

  static TailDecay algebraic(double p) { return {Kind::algebraic, p}; }
  static TailDecay exponential(double r) { return {Kind::exponential, r}; }
};

/// Integrand over [lower, upper]; upper may be +infinity, in which case the
/// tail decay must be declared and integrable.
struct Integrand1D {
  std::function<double(double)> f;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  TailDecay tail;  ///< consulted only when upper is infinite
};

/// Adaptive Gauss-Kronrod integration. Semi-infinite domains are truncated at
/// a point where the declared tail contributes less than a tenth of the
/// tolerance; the tail bound is folded into the error estimate. When the
/// subdivision budget runs out the best estimate is returned with
/// converged = false. Deterministic: identical inputs give identical output.
QuadratureResult integrate_1d(const Integrand1D& integrand,
                              const QuadratureOptions& options = {});

QuadratureResult integrate_1d(const std::function<double(double)>& f, double a,
                              double b, const QuadratureOptions& options = {});

/// Truncation point L for integrating f from `a`: the bounded tail beyond L
/// is below `budget` under the declared decay.
double tail_truncation_point(const std::function<double(double)>& f, double a,
                             TailDecay tail, double budget,
                             std::size_t* evaluations = nullptr);

/// Nested adaptive integration of f(u, v) over the unit square. Kinked
/// integrands (e.g. a max(u, v) factor) should be split by the caller into
/// smooth subdomains.
QuadratureResult integrate_2d_unit_square(
    const std::function<double(double, double)>& f,
    const QuadratureOptions& options = {});

}  // namespace matint
