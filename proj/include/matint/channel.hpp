#pragma once

#include <limits>

#include "matint/rng.hpp"

namespace matint {

/// Shape value standing for the no-fading limit (the power coefficient is
/// identically 1 and the fourth moment factor (m+1)/m collapses to 1 exactly).
inline constexpr double kNoFading = std::numeric_limits<double>::infinity();

struct ChannelParams {
  double alpha = 3.0;  ///< path-loss exponent, > 2
  double m = 1.0;      ///< Nakagami shape; m = 1 is Rayleigh, kNoFading no fading

  /// alpha must exceed 2 for the mean interference to converge; m below 1/2
  /// is outside the physically standard range and rejected.
  void validate() const;
};

/// Bounded power path gain min(1, distance^-alpha); equals 1 at and inside
/// unit distance, strictly decreasing beyond it.
double path_gain(double distance, double alpha);

/// Power fading coefficient h^2 ~ Gamma(m, 1/m), so E[h^2] = 1 for every m.
/// m = 1 draws Exponential(1) (Rayleigh power); m = kNoFading returns 1.
double sample_fading(double m, Rng& rng);

/// E[h^4] = (m+1)/m for h^2 ~ Gamma(m, 1/m); exactly 1 at m = kNoFading.
double fading_moment2(double m);

}  // namespace matint
