#include "matint/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "matint/channel.hpp"
#include "matint/retention.hpp"

namespace matint {

namespace {

constexpr double kPi = std::numbers::pi;

double mean_bias_bound(const ModelParams& params, const Window& window) {
  return retained_intensity(params.lambda_p, params.d) * 2.0 * kPi *
         std::pow(window.radius, 2.0 - params.alpha) / (params.alpha - 2.0);
}

// Path gain from the squared distance, with the ubiquitous alpha = 3 fast path.
struct GainFromSquare {
  double alpha;
  bool cubic;
  explicit GainFromSquare(double a) : alpha(a), cubic(a == 3.0) {}
  double operator()(double q) const {
    if (q <= 1.0) return 1.0;
    if (cubic) return 1.0 / (q * std::sqrt(q));
    return std::pow(q, -0.5 * alpha);
  }
};

struct PairScratch {
  std::vector<Point2> points;
  std::vector<double> norm2;
  std::vector<std::vector<double>> marks;
  std::vector<std::vector<std::uint8_t>> flags;
  ThinningScratch thinning;
};

// Positions of one parent realization; marks are drawn by the caller.
std::size_t sample_positions(const ModelParams& params, const Window& window,
                             Rng& rng, PairScratch& ws) {
  const double rs = window.sampling_radius();
  const double mean = params.lambda_p * window.sampling_area();
  std::poisson_distribution<long> count(mean);
  const long n = count(rng);
  ws.points.clear();
  ws.norm2.clear();
  ws.points.reserve(static_cast<std::size_t>(n));
  ws.norm2.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    double x, y;
    do {
      x = rng.uniform(-rs, rs);
      y = rng.uniform(-rs, rs);
    } while (x * x + y * y > rs * rs);
    ws.points.push_back({window.center[0] + x, window.center[1] + y});
    ws.norm2.push_back(x * x + y * y);
  }
  return static_cast<std::size_t>(n);
}

struct PairSample {
  double value1 = 0.0, value2 = 0.0;
  std::size_t interior = 0;
  std::size_t retained1 = 0;
  std::size_t retained_both = 0;
};

// Shared skeleton of the per-realization simulators: positions, `slots`
// retention flag vectors (hard-core or independent), fading, sums.
template <typename Thin>
void simulate_slots(const ModelParams& params, const Window& window, Rng& rng,
                    PairScratch& ws, int slots, Thin&& thin,
                    std::span<double> out_values, PairSample* tally) {
  const std::size_t n = sample_positions(params, window, rng, ws);
  thin(rng, n);

  const double obs2 = window.radius * window.radius;
  const GainFromSquare gain(params.alpha);
  const bool no_fading = params.m == kNoFading;

  for (int s = 0; s < slots; ++s) {
    const auto& flags = ws.flags[static_cast<std::size_t>(s)];
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!flags[i] || ws.norm2[i] > obs2) continue;
      const double h2 = no_fading ? 1.0 : sample_fading(params.m, rng);
      sum += h2 * gain(ws.norm2[i]);
    }
    out_values[static_cast<std::size_t>(s)] = sum;
  }

  if (tally != nullptr && slots >= 2) {
    // Survival frequencies over points whose killing neighborhood is fully
    // sampled (guard margin removed from the sampling radius).
    const double harvest =
        std::max(0.0, window.sampling_radius() - params.d);
    const double harvest2 = harvest * harvest;
    for (std::size_t i = 0; i < n; ++i) {
      if (ws.norm2[i] > harvest2) continue;
      ++tally->interior;
      tally->retained1 += ws.flags[0][i];
      tally->retained_both += static_cast<std::size_t>(ws.flags[0][i]) &
                              static_cast<std::size_t>(ws.flags[1][i]);
    }
  }
}

void draw_marks(Rng& rng, PairScratch& ws, int slots, std::size_t n) {
  ws.marks.resize(static_cast<std::size_t>(slots));
  ws.flags.resize(static_cast<std::size_t>(slots));
  for (int s = 0; s < slots; ++s) {
    auto& m = ws.marks[static_cast<std::size_t>(s)];
    m.resize(n);
    for (auto& v : m) v = rng.uniform();
  }
}

PairSample simulate_pair_impl(const ModelParams& params, const Window& window,
                              Rng& rng, PairScratch& ws) {
  PairSample sample;
  double values[2] = {0.0, 0.0};
  simulate_slots(
      params, window, rng, ws, 2,
      [&](Rng& r, std::size_t n) {
        draw_marks(r, ws, 2, n);
        ws.thinning.retained_flags_multi(ws.points, params.d, ws.marks, ws.flags);
      },
      values, &sample);
  sample.value1 = values[0];
  sample.value2 = values[1];
  return sample;
}

PairSample simulate_aloha_pair_impl(const ModelParams& params,
                                    const Window& window, Rng& rng,
                                    PairScratch& ws) {
  const double send = p1(params.lambda_p, params.d);
  PairSample sample;
  double values[2] = {0.0, 0.0};
  simulate_slots(
      params, window, rng, ws, 2,
      [&](Rng& r, std::size_t n) {
        ws.flags.resize(2);
        for (auto& f : ws.flags) {
          f.resize(n);
          for (auto& v : f) v = r.uniform() < send ? 1 : 0;
        }
      },
      values, &sample);
  sample.value1 = values[0];
  sample.value2 = values[1];
  return sample;
}

// Joint Welford accumulator for a pair of slot values plus survival counts.
struct BatchAccumulator {
  long long n = 0;
  double mean1 = 0.0, mean2 = 0.0;
  double m2_1 = 0.0, m2_2 = 0.0, c12 = 0.0;
  long long points = 0, retained1 = 0, retained_both = 0;

  void add(const PairSample& s) {
    ++n;
    const double dx = s.value1 - mean1;
    mean1 += dx / static_cast<double>(n);
    m2_1 += dx * (s.value1 - mean1);
    const double dy = s.value2 - mean2;
    mean2 += dy / static_cast<double>(n);
    m2_2 += dy * (s.value2 - mean2);
    c12 += dx * (s.value2 - mean2);
    points += static_cast<long long>(s.interior);
    retained1 += static_cast<long long>(s.retained1);
    retained_both += static_cast<long long>(s.retained_both);
  }

  void merge(const BatchAccumulator& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(n), nb = static_cast<double>(o.n);
    const double nab = na + nb;
    const double d1 = o.mean1 - mean1;
    const double d2 = o.mean2 - mean2;
    m2_1 += o.m2_1 + d1 * d1 * na * nb / nab;
    m2_2 += o.m2_2 + d2 * d2 * na * nb / nab;
    c12 += o.c12 + d1 * d2 * na * nb / nab;
    mean1 += d1 * nb / nab;
    mean2 += d2 * nb / nab;
    n += o.n;
    points += o.points;
    retained1 += o.retained1;
    retained_both += o.retained_both;
  }

  double pooled_variance() const {
    if (n < 2) return 0.0;
    return (m2_1 + m2_2) / (2.0 * static_cast<double>(n - 1));
  }
  double covariance() const {
    if (n < 2) return 0.0;
    return c12 / static_cast<double>(n - 1);
  }
  double correlation() const {
    const double v = pooled_variance();
    if (v <= 0.0) return 0.0;
    return std::clamp(covariance() / v, -1.0, 1.0);
  }
  double mean() const { return 0.5 * (mean1 + mean2); }
};

double spread_se(const std::vector<double>& batch_values) {
  const std::size_t b = batch_values.size();
  if (b < 2) return std::numeric_limits<double>::infinity();
  double mean = 0.0;
  for (double v : batch_values) mean += v;
  mean /= static_cast<double>(b);
  double ss = 0.0;
  for (double v : batch_values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(b - 1) / static_cast<double>(b));
}

template <typename Simulator>
SimEstimate run_pair_estimator(const SimConfig& config, Simulator simulate) {
  config.validate();
  const std::size_t batch_size = config.batch_size();
  const std::size_t batches =
      (config.realizations + batch_size - 1) / batch_size;

  std::vector<BatchAccumulator> acc(batches);
  std::mutex io_mutex;
  std::size_t done = 0;

  auto run_batch = [&](std::size_t b) {
    PairScratch ws;
    BatchAccumulator local;
    const std::size_t first = b * batch_size;
    const std::size_t last = std::min(first + batch_size, config.realizations);
    for (std::size_t i = first; i < last; ++i) {
      Rng rng = Rng::stream(config.seed, i);
      local.add(simulate(config.params, config.window, rng, ws));
    }
    acc[b] = local;
    if (config.progress) {
      std::scoped_lock lock(io_mutex);
      done += last - first;
      std::cerr << "# checkpoint " << done << "/" << config.realizations
                << " realizations\n";
    }
  };

  const int threads = std::max(1, config.threads);
  if (threads == 1 || batches == 1) {
    for (std::size_t b = 0; b < batches; ++b) run_batch(b);
  } else {
    std::vector<std::thread> pool;
    const int used = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(threads), batches));
    for (int t = 0; t < used; ++t) {
      pool.emplace_back([&, t]() {
        for (std::size_t b = static_cast<std::size_t>(t); b < batches;
             b += static_cast<std::size_t>(used))
          run_batch(b);
      });
    }
    for (auto& th : pool) th.join();
  }

  // Deterministic combination in batch order, independent of thread schedule.
  BatchAccumulator total;
  for (const auto& a : acc) total.merge(a);

  std::vector<double> b_mean, b_var, b_cov, b_corr, b_p1, b_p12;
  for (const auto& a : acc) {
    if (a.n < 2) continue;
    b_mean.push_back(a.mean());
    b_var.push_back(a.pooled_variance());
    b_cov.push_back(a.covariance());
    b_corr.push_back(a.correlation());
    if (a.points > 0) {
      b_p1.push_back(static_cast<double>(a.retained1) /
                     static_cast<double>(a.points));
      b_p12.push_back(static_cast<double>(a.retained_both) /
                      static_cast<double>(a.points));
    }
  }

  SimEstimate est;
  est.realizations = config.realizations;
  est.mean = total.mean();
  est.variance = total.pooled_variance();
  est.covariance = total.covariance();
  est.correlation = total.correlation();
  est.std_error.mean = spread_se(b_mean);
  est.std_error.variance = spread_se(b_var);
  est.std_error.covariance = spread_se(b_cov);
  est.std_error.correlation = spread_se(b_corr);
  est.bias_bound = mean_bias_bound(config.params, config.window);
  if (total.points > 0) {
    est.retained_fraction = static_cast<double>(total.retained1) /
                            static_cast<double>(total.points);
    est.retained_both_fraction = static_cast<double>(total.retained_both) /
                                 static_cast<double>(total.points);
    est.retained_fraction_se = spread_se(b_p1);
    est.retained_both_fraction_se = spread_se(b_p12);
  }
  return est;
}

}  // namespace

SimConfig SimConfig::defaults(const ModelParams& params,
                              std::size_t realizations, std::uint64_t seed) {
  SimConfig config;
  config.params = params;
  config.window.radius = 50.0;
  config.window.guard = params.d;
  config.realizations = realizations;
  config.seed = seed;
  return config;
}

std::size_t SimConfig::batch_size() const {
  if (batch > 0) return batch;
  return std::max<std::size_t>(1, (realizations + 99) / 100);
}

void SimConfig::validate() const {
  params.validate();
  window.validate();
  if (realizations < 2)
    throw std::invalid_argument("need at least two realizations");
  if (window.guard < params.d)
    throw std::invalid_argument(
        "window guard must cover the hard-core distance");
}

double interference_at_origin(std::span<const Point2> points,
                              std::span<const std::uint8_t> retained,
                              std::span<const double> fading, double alpha,
                              double radius) {
  if (retained.size() != points.size())
    throw std::invalid_argument("flag vector length mismatch");
  if (!fading.empty() && fading.size() != points.size())
    throw std::invalid_argument("fading vector length mismatch");
  const GainFromSquare gain(alpha);
  const double r2 = radius * radius;
  double sum = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!retained[i]) continue;
    const double q = squared_norm(points[i]);
    if (q > r2) continue;
    sum += (fading.empty() ? 1.0 : fading[i]) * gain(q);
  }
  return sum;
}

std::pair<double, double> simulate_interference_pair(const ModelParams& params,
                                                     const Window& window,
                                                     Rng& rng) {
  params.validate();
  window.validate();
  PairScratch ws;
  const PairSample s = simulate_pair_impl(params, window, rng, ws);
  return {s.value1, s.value2};
}

SimEstimate estimate_stats(const SimConfig& config) {
  return run_pair_estimator(config, [](const ModelParams& p, const Window& w,
                                       Rng& rng, PairScratch& ws) {
    return simulate_pair_impl(p, w, rng, ws);
  });
}

SimEstimate estimate_poisson_baseline_stats(const SimConfig& config) {
  return run_pair_estimator(config, [](const ModelParams& p, const Window& w,
                                       Rng& rng, PairScratch& ws) {
    return simulate_aloha_pair_impl(p, w, rng, ws);
  });
}

RetentionEstimate estimate_retention_probs(const SimConfig& config,
                                           std::span<const double> r_grid) {
  config.params.validate();
  if (config.realizations < 2)
    throw std::invalid_argument("need at least two realizations");
  for (double r : r_grid)
    if (!(r > 0.0)) throw std::invalid_argument("separations must be > 0");

  RetentionEstimate out;
  const double d = config.params.d;
  const std::size_t n_real = config.realizations;

  if (d == 0.0) {
    out.p1 = out.p12 = 1.0;
    out.r.assign(r_grid.begin(), r_grid.end());
    out.p11.assign(r_grid.size(), 1.0);
    out.p11_se.assign(r_grid.size(), 0.0);
    out.p12r.assign(r_grid.size(), 1.0);
    out.p12r_se.assign(r_grid.size(), 0.0);
    return out;
  }

  auto binomial_se = [n_real](double p) {
    return std::sqrt(std::max(0.0, p * (1.0 - p)) /
                     static_cast<double>(n_real));
  };

  // One planted point at the origin; a sampling disc of radius d covers its
  // whole killing neighborhood, so the survival law is exact.
  {
    Window window;
    window.radius = d;
    ThinningScratch scratch;
    std::vector<Point2> points;
    std::vector<std::vector<double>> marks(2);
    std::vector<std::vector<std::uint8_t>> flags(2);
    PairScratch ws;
    long long hits1 = 0, hits_both = 0;
    for (std::size_t i = 0; i < n_real; ++i) {
      Rng rng = Rng::stream(config.seed, i);
      const std::size_t n = sample_positions(config.params, window, rng, ws);
      points.assign(ws.points.begin(), ws.points.end());
      points.push_back({0.0, 0.0});
      for (auto& mv : marks) {
        mv.resize(n + 1);
        for (auto& v : mv) v = rng.uniform();
      }
      scratch.retained_flags_multi(points, d, marks, flags);
      hits1 += flags[0][n];
      hits_both += flags[0][n] & flags[1][n];
    }
    out.p1 = static_cast<double>(hits1) / static_cast<double>(n_real);
    out.p12 = static_cast<double>(hits_both) / static_cast<double>(n_real);
    out.p1_se = binomial_se(out.p1);
    out.p12_se = binomial_se(out.p12);
  }

  // Two points planted at distance r; the sampling disc of radius r/2 + d
  // covers both killing neighborhoods.
  for (std::size_t gi = 0; gi < r_grid.size(); ++gi) {
    const double r = r_grid[gi];
    Window window;
    window.radius = 0.5 * r + d;
    ThinningScratch scratch;
    std::vector<Point2> points;
    std::vector<std::vector<double>> marks(2);
    std::vector<std::vector<std::uint8_t>> flags(2);
    PairScratch ws;
    long long hits_same = 0, hits_cross = 0;
    for (std::size_t i = 0; i < n_real; ++i) {
      Rng rng = Rng::stream(config.seed, (gi + 1) * n_real + i);
      const std::size_t n = sample_positions(config.params, window, rng, ws);
      points.assign(ws.points.begin(), ws.points.end());
      points.push_back({-0.5 * r, 0.0});
      points.push_back({0.5 * r, 0.0});
      for (auto& mv : marks) {
        mv.resize(n + 2);
        for (auto& v : mv) v = rng.uniform();
      }
      scratch.retained_flags_multi(points, d, marks, flags);
      hits_same += flags[0][n] & flags[0][n + 1];
      hits_cross += flags[0][n] & flags[1][n + 1];
    }
    const double ps = static_cast<double>(hits_same) / static_cast<double>(n_real);
    const double pc = static_cast<double>(hits_cross) / static_cast<double>(n_real);
    out.r.push_back(r);
    out.p11.push_back(ps);
    out.p11_se.push_back(binomial_se(ps));
    out.p12r.push_back(pc);
    out.p12r_se.push_back(binomial_se(pc));
  }
  return out;
}

LagCovariances estimate_lag_covariances(const SimConfig& config, int k) {
  config.validate();
  if (k < 2) throw std::invalid_argument("need at least two slots");

  const std::size_t batch_size = config.batch_size();
  const std::size_t batches =
      (config.realizations + batch_size - 1) / batch_size;
  const std::size_t nk = static_cast<std::size_t>(k);

  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) pairs.emplace_back(a, b);
  const std::size_t np = pairs.size();

  struct KAcc {
    long long n = 0;
    std::vector<double> mean, m2;
    std::vector<double> cross;  // co-moments per pair
  };
  std::vector<KAcc> acc(batches);

  auto run_batch = [&](std::size_t b) {
    PairScratch ws;
    KAcc local;
    local.mean.assign(nk, 0.0);
    local.m2.assign(nk, 0.0);
    local.cross.assign(np, 0.0);
    std::vector<double> values(nk);
    std::vector<double> delta(nk);
    const std::size_t first = b * batch_size;
    const std::size_t last = std::min(first + batch_size, config.realizations);
    for (std::size_t i = first; i < last; ++i) {
      Rng rng = Rng::stream(config.seed, i);
      simulate_slots(
          config.params, config.window, rng, ws, k,
          [&](Rng& r, std::size_t n) {
            draw_marks(r, ws, k, n);
            ws.thinning.retained_flags_multi(ws.points, config.params.d,
                                             ws.marks, ws.flags);
          },
          values, nullptr);
      ++local.n;
      const double inv = 1.0 / static_cast<double>(local.n);
      for (std::size_t s = 0; s < nk; ++s) {
        delta[s] = values[s] - local.mean[s];
        local.mean[s] += delta[s] * inv;
        local.m2[s] += delta[s] * (values[s] - local.mean[s]);
      }
      for (std::size_t p = 0; p < np; ++p) {
        const auto [a2, b2] = pairs[p];
        local.cross[p] += delta[static_cast<std::size_t>(a2)] *
                          (values[static_cast<std::size_t>(b2)] -
                           local.mean[static_cast<std::size_t>(b2)]);
      }
    }
    acc[b] = std::move(local);
  };

  const int threads = std::max(1, config.threads);
  if (threads == 1 || batches == 1) {
    for (std::size_t b = 0; b < batches; ++b) run_batch(b);
  } else {
    std::vector<std::thread> pool;
    const int used = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(threads), batches));
    for (int t = 0; t < used; ++t) {
      pool.emplace_back([&, t]() {
        for (std::size_t b = static_cast<std::size_t>(t); b < batches;
             b += static_cast<std::size_t>(used))
          run_batch(b);
      });
    }
    for (auto& th : pool) th.join();
  }

  LagCovariances out;
  out.k = k;
  out.pairs = pairs;
  out.covariance.assign(np, 0.0);
  out.std_error.assign(np, 0.0);

  std::vector<std::vector<double>> per_pair(np);
  for (const auto& a : acc) {
    if (a.n < 2) continue;
    std::vector<double> row(np);
    for (std::size_t p = 0; p < np; ++p)
      row[p] = a.cross[p] / static_cast<double>(a.n - 1);
    for (std::size_t p = 0; p < np; ++p) per_pair[p].push_back(row[p]);
    out.batch_values.push_back(std::move(row));
  }
  for (std::size_t p = 0; p < np; ++p) {
    double mean = 0.0;
    for (double v : per_pair[p]) mean += v;
    mean /= static_cast<double>(per_pair[p].size());
    out.covariance[p] = mean;
    out.std_error[p] = spread_se(per_pair[p]);
  }
  return out;
}

}  // namespace matint
