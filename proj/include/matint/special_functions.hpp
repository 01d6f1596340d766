#pragma once

namespace matint {

inline constexpr double kEulerGamma = 0.57721566490153286060651209;

/// Exponential integral Ei(x), Cauchy principal value for x > 0 and the
/// standard Ei(x) = -E1(-x) for x < 0. Relative accuracy about 1e-13 over
/// |x| in [1e-300, 700]. Throws std::domain_error at x = 0 (divergent).
double exp_integral_ei(double x);

/// e^{-x} * Ei(x) for x > 0; stays finite where Ei alone would overflow.
double exp_integral_ei_scaled(double x);

/// Entire part of Ei: Ein(x) = Ei(x) - ln|x| - gamma = sum_{k>=1} x^k/(k k!).
/// Cancellation-free for x >= 0.
double exp_integral_ein(double x);

/// (1 - e^{-x})/x for x >= 0, continued with its limit 1 at x = 0.
double one_minus_exp_over(double x);

/// Divided difference (f(a) - f(b))/(b - a) of f(x) = (1 - e^{-x})/x,
/// evaluated stably for small or nearly equal nonnegative arguments.
double one_minus_exp_over_diff(double a, double b);

}  // namespace matint
