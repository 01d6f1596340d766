#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "matint/analytics.hpp"
#include "matint/pointprocess.hpp"

namespace matint {

/// One simulation campaign: model, sampling window, size and seeding.
/// Realizations are independent; each draws from its own stream derived from
/// (seed, realization index), so results do not depend on the thread count.
struct SimConfig {
  ModelParams params;
  Window window;
  std::size_t realizations = 0;
  std::uint64_t seed = 1;
  std::size_t batch = 0;  ///< realizations per checkpoint; 0 picks ~100 batches
  int threads = 1;
  bool progress = false;  ///< checkpoint lines on standard error

  /// Window of radius 50 with a guard of the hard-core distance; its mean
  /// truncation bias is below 1e-3 of the mean for alpha = 3.
  static SimConfig defaults(const ModelParams& params, std::size_t realizations,
                            std::uint64_t seed);

  std::size_t batch_size() const;
  void validate() const;  // realizations >= 2, valid window, guard >= d
};

/// Sample-moment estimates with batch-means standard errors.
struct SimEstimate {
  double mean = 0.0;
  double variance = 0.0;
  double covariance = 0.0;
  double correlation = 0.0;
  struct Errors {
    double mean = 0.0, variance = 0.0, covariance = 0.0, correlation = 0.0;
  } std_error;
  /// Analytic bound on the mean contribution lost outside the observation
  /// disc: lambda 2 pi R^{2-alpha}/(alpha-2).
  double bias_bound = 0.0;
  /// Survival frequencies harvested in passing (interior points only).
  double retained_fraction = 0.0;
  double retained_fraction_se = 0.0;
  double retained_both_fraction = 0.0;
  double retained_both_fraction_se = 0.0;
  std::size_t realizations = 0;
};

/// Interference sum at the origin over retained points inside `radius`:
/// sum fading[i] * path_gain(|x_i|). An empty fading span means unit fading.
double interference_at_origin(std::span<const Point2> points,
                              std::span<const std::uint8_t> retained,
                              std::span<const double> fading, double alpha,
                              double radius);

/// One parent realization, two independent thinnings over it, independent
/// fading per point and slot, interference read at the origin from retained
/// points inside the observation disc.
std::pair<double, double> simulate_interference_pair(const ModelParams& params,
                                                     const Window& window,
                                                     Rng& rng);

/// Full estimation campaign for the hard-core network.
SimEstimate estimate_stats(const SimConfig& config);

/// Matched ALOHA baseline: the same parent process, each point kept
/// independently per slot with probability p1(lambda_p, d).
SimEstimate estimate_poisson_baseline_stats(const SimConfig& config);

/// Empirical survival probabilities with binomial standard errors. p1 and
/// p12 are read off one planted point, the pair quantities off two points
/// planted at each separation in `r_grid`. The sampling windows are derived
/// from the planted geometry (a disc covering every killing neighborhood
/// exactly), not from config.window.
struct RetentionEstimate {
  double p1 = 0.0, p1_se = 0.0;
  double p12 = 0.0, p12_se = 0.0;
  std::vector<double> r;
  std::vector<double> p11, p11_se;
  std::vector<double> p12r, p12r_se;
};

RetentionEstimate estimate_retention_probs(const SimConfig& config,
                                           std::span<const double> r_grid);

/// Cross-slot covariances for k independent thinnings of one parent process;
/// every unordered slot pair is estimated, with per-batch values kept so
/// differences between pairs can be tested on correlated samples.
struct LagCovariances {
  int k = 0;
  std::vector<std::pair<int, int>> pairs;
  std::vector<double> covariance;
  std::vector<double> std_error;
  std::vector<std::vector<double>> batch_values;  ///< [batch][pair]
};

LagCovariances estimate_lag_covariances(const SimConfig& config, int k);

}  // namespace matint
