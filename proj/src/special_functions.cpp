#include "matint/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace matint {

namespace {

// E1(z) for z >= 1 by the standard continued fraction (modified Lentz).
double e1_continued_fraction(double z) {
  const double tiny = 1e-300;
  double b = z + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int k = 1; k <= 200; ++k) {
    const double a = -static_cast<double>(k) * k;
    b += 2.0;
    d = a * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + a / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-z) * h;
}

// Asymptotic sum_{k>=0} k!/x^k, truncated at the smallest term; relative
// error below 1e-13 for x >= 40.
double ei_asymptotic_sum(double x) {
  double sum = 1.0;
  double term = 1.0;
  for (int k = 1; k < 400; ++k) {
    const double next = term * k / x;
    if (next >= term) break;  // past the smallest term
    term = next;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

}  // namespace

double exp_integral_ein(double x) {
  double sum = 0.0;
  double term = 1.0;
  for (int k = 1; k <= 400; ++k) {
    term *= x / k;
    const double add = term / k;
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum) + 1e-300) break;
  }
  return sum;
}

double exp_integral_ei(double x) {
  if (x == 0.0) throw std::domain_error("Ei is divergent at 0");
  if (x < -1.0) return -e1_continued_fraction(-x);
  if (x <= 40.0) return kEulerGamma + std::log(std::abs(x)) + exp_integral_ein(x);
  if (x > 700.0) return std::numeric_limits<double>::infinity();
  return std::exp(x) / x * ei_asymptotic_sum(x);
}

double exp_integral_ei_scaled(double x) {
  if (!(x > 0.0)) throw std::domain_error("scaled Ei requires x > 0");
  if (x <= 40.0) return std::exp(-x) * exp_integral_ei(x);
  return ei_asymptotic_sum(x) / x;
}

double one_minus_exp_over(double x) {
  if (x == 0.0) return 1.0;
  return -std::expm1(-x) / x;
}

double one_minus_exp_over_diff(double a, double b) {
  if (a == b) {
    // f'(a) with f = (1-e^{-a})/a, continuous limit -1/2 at 0.
    if (a == 0.0) return 0.5;
    return (one_minus_exp_over(a) - std::exp(-a)) / a;
  }
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale < 0.5) {
    // f(a) - f(b) = sum_{k>=1} (-1)^k (a^k - b^k)/(k+1)! and
    // (b^k - a^k)/(b - a) = sum_{j<k} b^j a^{k-1-j}.
    double sum = 0.0;
    double factorial = 1.0;  // (k+1)!
    double apow = 1.0;       // a^{k-1}
    double s_prev = 0.0;
    for (int k = 1; k <= 40; ++k) {
      factorial *= (k + 1);
      // s_k = sum_{j=0..k-1} b^j a^{k-1-j} = b*s_{k-1} + a^{k-1}
      const double s_k = s_prev * b + apow;
      const double add = ((k % 2) ? 1.0 : -1.0) * s_k / factorial;
      sum += add;
      if (std::abs(add) < 1e-18 * std::abs(sum) + 1e-300) break;
      s_prev = s_k;
      apow *= a;
    }
    return sum;
  }
  return (one_minus_exp_over(a) - one_minus_exp_over(b)) / (b - a);
}

}  // namespace matint
