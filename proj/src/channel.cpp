#include "matint/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace matint {

void ChannelParams::validate() const {
  if (!(alpha > 2.0))
    throw std::invalid_argument("path-loss exponent must be > 2");
  if (!(m >= 0.5))
    throw std::invalid_argument("Nakagami shape must be >= 0.5");
}

double path_gain(double distance, double alpha) {
  if (distance <= 1.0) return 1.0;
  return std::pow(distance, -alpha);
}

double sample_fading(double m, Rng& rng) {
  if (m == kNoFading) return 1.0;
  if (!(m > 0.0)) throw std::invalid_argument("Nakagami shape must be > 0");
  if (m == 1.0) {
    std::exponential_distribution<double> expo(1.0);
    return expo(rng);
  }
  std::gamma_distribution<double> gamma(m, 1.0 / m);
  return gamma(rng);
}

double fading_moment2(double m) {
  if (m == kNoFading) return 1.0;
  if (!(m > 0.0)) throw std::invalid_argument("Nakagami shape must be > 0");
  return (m + 1.0) / m;
}

}  // namespace matint
