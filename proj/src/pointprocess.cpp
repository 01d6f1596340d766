#include "matint/pointprocess.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace matint {

double Window::sampling_area() const {
  const double rs = sampling_radius();
  return std::numbers::pi * rs * rs;
}

void Window::validate() const {
  if (!(radius > 0.0)) throw std::invalid_argument("window radius must be > 0");
  if (!(guard >= 0.0)) throw std::invalid_argument("window guard must be >= 0");
}

void PointPattern::validate() const {
  if (points.size() != marks.size())
    throw std::invalid_argument("pattern points/marks size mismatch");
  window.validate();
  const double rs2 = window.sampling_radius() * window.sampling_radius();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(marks[i] >= 0.0 && marks[i] <= 1.0))
      throw std::invalid_argument("pattern mark outside [0,1]");
    const double dx = points[i][0] - window.center[0];
    const double dy = points[i][1] - window.center[1];
    if (dx * dx + dy * dy > rs2 * (1.0 + 1e-12))
      throw std::invalid_argument("pattern point outside sampling region");
  }
}

std::size_t ThinnedPattern::retained_count() const {
  std::size_t n = 0;
  for (auto f : retained) n += f;
  return n;
}

PointPattern sample_ppp(double intensity, const Window& window, Rng& rng) {
  window.validate();
  if (!(intensity >= 0.0)) throw std::invalid_argument("intensity must be >= 0");

  PointPattern pattern;
  pattern.window = window;
  const double mean = intensity * window.sampling_area();
  if (mean <= 0.0) return pattern;

  std::poisson_distribution<long> count(mean);
  const long n = count(rng);
  pattern.points.reserve(static_cast<std::size_t>(n));
  pattern.marks.reserve(static_cast<std::size_t>(n));

  const double rs = window.sampling_radius();
  for (long i = 0; i < n; ++i) {
    // Rejection from the bounding square; exact uniform law on the disc.
    double x, y;
    do {
      x = rng.uniform(-rs, rs);
      y = rng.uniform(-rs, rs);
    } while (x * x + y * y > rs * rs);
    pattern.points.push_back({window.center[0] + x, window.center[1] + y});
    pattern.marks.push_back(rng.uniform());
  }
  return pattern;
}

template <int SlotCount>
void ThinningScratch::scan(std::size_t n, int runtime_slots, double d2,
                           std::span<std::vector<std::uint8_t>> out) {
  // SlotCount == 0 falls back to the runtime slot loop.
  const int k = SlotCount > 0 ? SlotCount : runtime_slots;
  const double* marks = sorted_marks_.data();
  killed_.assign(static_cast<std::size_t>(k) * n, 0);
  std::uint8_t* killed = killed_.data();

  // Every unordered pair is visited once through a forward stencil (rest of
  // the own cell, the cells east of it, and the rows above); both kill
  // directions are decided per visit, branchlessly.
  for (std::size_t si = 0; si < n; ++si) {
    const double xi = sx_[si];
    const double yi = sy_[si];
    const std::int32_t c = scell_[si];
    const int cx = static_cast<int>(c % nx_);
    const int cy = static_cast<int>(c / nx_);

    double own[16];
    std::uint8_t own_killed[16];
    for (int s = 0; s < k; ++s) {
      own[s] = marks[static_cast<std::size_t>(s) * n + si];
      own_killed[s] = 0;
    }

    auto process_range = [&](std::int32_t lo, std::int32_t hi) {
      for (std::int32_t j = lo; j < hi; ++j) {
        const double dx = sx_[j] - xi;
        const double dy = sy_[j] - yi;
        const std::uint8_t close = dx * dx + dy * dy <= d2;
        for (int s = 0; s < k; ++s) {
          const double mj = marks[static_cast<std::size_t>(s) * n + j];
          own_killed[s] |= close & static_cast<std::uint8_t>(mj < own[s]);
          killed[static_cast<std::size_t>(s) * n + j] |=
              close & static_cast<std::uint8_t>(own[s] < mj);
        }
      }
    };

    // Rest of the own cell plus the cells east of it in the same row.
    {
      const std::size_t row = static_cast<std::size_t>(cy) * nx_;
      const int gx_hi = std::min(nx_ - 1, cx + reach_);
      process_range(static_cast<std::int32_t>(si) + 1,
                    starts_[row + static_cast<std::size_t>(gx_hi) + 1]);
    }
    // Rows above; their in-reach cells are contiguous.
    for (int gy = cy + 1; gy <= std::min(ny_ - 1, cy + reach_); ++gy) {
      const std::size_t row = static_cast<std::size_t>(gy) * nx_;
      const int gx_lo = std::max(0, cx - reach_);
      const int gx_hi = std::min(nx_ - 1, cx + reach_);
      process_range(starts_[row + static_cast<std::size_t>(gx_lo)],
                    starts_[row + static_cast<std::size_t>(gx_hi) + 1]);
    }

    for (int s = 0; s < k; ++s)
      killed[static_cast<std::size_t>(s) * n + si] |= own_killed[s];
  }

  for (std::size_t si = 0; si < n; ++si) {
    const std::size_t original = static_cast<std::size_t>(order_[si]);
    for (int s = 0; s < k; ++s)
      out[static_cast<std::size_t>(s)][original] = static_cast<std::uint8_t>(
          1 - killed[static_cast<std::size_t>(s) * n + si]);
  }
}

void ThinningScratch::retained_flags_multi(
    std::span<const Point2> points, double d,
    std::span<const std::vector<double>> mark_sets,
    std::span<std::vector<std::uint8_t>> out) {
  const std::size_t n = points.size();
  const std::size_t k = mark_sets.size();
  if (out.size() != k) throw std::invalid_argument("output span size mismatch");
  for (std::size_t s = 0; s < k; ++s) {
    if (mark_sets[s].size() != n)
      throw std::invalid_argument("mark vector length mismatch");
    out[s].assign(n, 1);
  }
  if (d <= 0.0 || n == 0) return;
  if (k > 16) {
    // Rare path: decide the slots in groups of 16.
    for (std::size_t base = 0; base < k; base += 16) {
      const std::size_t len = std::min<std::size_t>(16, k - base);
      retained_flags_multi(points, d, mark_sets.subspan(base, len),
                           out.subspan(base, len));
    }
    return;
  }
  const double d2 = d * d;

  if (n < 64) {
    // Tiny patterns: plain pairwise scan.
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double dx = points[i][0] - points[j][0];
        const double dy = points[i][1] - points[j][1];
        if (dx * dx + dy * dy > d2) continue;
        for (std::size_t s = 0; s < k; ++s)
          if (mark_sets[s][j] < mark_sets[s][i]) out[s][i] = 0;
      }
    }
    return;
  }

  double min_x = std::numeric_limits<double>::infinity();
  double min_y = std::numeric_limits<double>::infinity();
  double max_x = -min_x, max_y = -min_y;
  for (const auto& p : points) {
    min_x = std::min(min_x, p[0]);
    max_x = std::max(max_x, p[0]);
    min_y = std::min(min_y, p[1]);
    max_y = std::max(max_y, p[1]);
  }
  const double span = std::max(max_x - min_x, max_y - min_y);
  // Cell edge of d gives a 3x3 neighborhood; cap the cell count for sparse
  // patterns with a tiny hard-core distance.
  const double cell = std::max(d, span / 1024.0);
  reach_ = static_cast<int>(std::ceil(d / cell));
  nx_ = static_cast<int>((max_x - min_x) / cell) + 1;
  ny_ = static_cast<int>((max_y - min_y) / cell) + 1;
  const std::size_t ncells = static_cast<std::size_t>(nx_) * ny_;

  // Counting sort into cell order.
  cell_of_.resize(n);
  starts_.assign(ncells + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const int cx = static_cast<int>((points[i][0] - min_x) / cell);
    const int cy = static_cast<int>((points[i][1] - min_y) / cell);
    const std::int32_t c = static_cast<std::int32_t>(cy) * nx_ + cx;
    cell_of_[i] = c;
    ++starts_[static_cast<std::size_t>(c) + 1];
  }
  for (std::size_t c = 0; c < ncells; ++c) starts_[c + 1] += starts_[c];

  order_.resize(n);
  sx_.resize(n);
  sy_.resize(n);
  sorted_marks_.resize(k * n);
  cursor_.assign(starts_.begin(), starts_.end() - 1);
  scell_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::int32_t pos = cursor_[static_cast<std::size_t>(cell_of_[i])]++;
    order_[pos] = static_cast<std::int32_t>(i);
    sx_[pos] = points[i][0];
    sy_[pos] = points[i][1];
    scell_[static_cast<std::size_t>(pos)] = cell_of_[i];
    for (std::size_t s = 0; s < k; ++s)
      sorted_marks_[s * n + static_cast<std::size_t>(pos)] = mark_sets[s][i];
  }

  switch (k) {
    case 1:
      scan<1>(n, 1, d2, out);
      break;
    case 2:
      scan<2>(n, 2, d2, out);
      break;
    case 4:
      scan<4>(n, 4, d2, out);
      break;
    default:
      scan<0>(n, static_cast<int>(k), d2, out);
      break;
  }
}

void ThinningScratch::retained_flags(std::span<const Point2> points, double d,
                                     std::span<const double> marks,
                                     std::vector<std::uint8_t>& out) {
  if (marks.size() != points.size())
    throw std::invalid_argument("mark vector length mismatch");
  std::vector<double> copy(marks.begin(), marks.end());
  std::vector<std::vector<double>> sets;
  sets.push_back(std::move(copy));
  std::vector<std::vector<std::uint8_t>> flags(1);
  retained_flags_multi(points, d, sets, flags);
  out = std::move(flags[0]);
}

std::vector<std::uint8_t> matern_retained_flags(std::span<const Point2> points,
                                                double hardcore_distance,
                                                std::span<const double> marks) {
  ThinningScratch scratch;
  std::vector<std::uint8_t> out;
  scratch.retained_flags(points, hardcore_distance, marks, out);
  return out;
}

ThinnedPattern matern_thin(const PointPattern& pattern, double hardcore_distance,
                           std::span<const double> marks) {
  if (!(hardcore_distance >= 0.0))
    throw std::invalid_argument("hardcore distance must be >= 0");
  if (marks.size() != pattern.size())
    throw std::invalid_argument("mark vector length mismatch");
  ThinnedPattern thinned;
  thinned.parent = pattern;
  thinned.retained = matern_retained_flags(pattern.points, hardcore_distance, marks);
  return thinned;
}

std::pair<ThinnedPattern, ThinnedPattern> paired_thinnings(
    const PointPattern& pattern, double hardcore_distance, Rng& rng) {
  auto flags = multi_thinning_flags(pattern, hardcore_distance, 2, rng);
  ThinnedPattern a{pattern, std::move(flags[0])};
  ThinnedPattern b{pattern, std::move(flags[1])};
  return {std::move(a), std::move(b)};
}

std::vector<std::vector<std::uint8_t>> multi_thinning_flags(
    const PointPattern& pattern, double hardcore_distance, int k, Rng& rng) {
  if (k < 1) throw std::invalid_argument("need at least one thinning");
  if (!(hardcore_distance >= 0.0))
    throw std::invalid_argument("hardcore distance must be >= 0");
  const std::size_t n = pattern.size();
  std::vector<std::vector<double>> marks(static_cast<std::size_t>(k));
  for (auto& m : marks) {
    m.resize(n);
    for (auto& v : m) v = rng.uniform();
  }
  std::vector<std::vector<std::uint8_t>> flags(static_cast<std::size_t>(k));
  ThinningScratch scratch;
  scratch.retained_flags_multi(pattern.points, hardcore_distance, marks, flags);
  return flags;
}

PointPattern restricted(const PointPattern& pattern, const Window& window) {
  window.validate();
  PointPattern out;
  out.window = window;
  const double rs2 = window.sampling_radius() * window.sampling_radius();
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    const double dx = pattern.points[i][0] - window.center[0];
    const double dy = pattern.points[i][1] - window.center[1];
    if (dx * dx + dy * dy <= rs2) {
      out.points.push_back(pattern.points[i]);
      out.marks.push_back(pattern.marks[i]);
    }
  }
  return out;
}

void write_pattern_dump(std::ostream& os, const PointPattern& pattern,
                        std::span<const std::uint8_t> retained1,
                        std::span<const std::uint8_t> retained2) {
  const std::size_t n = pattern.size();
  if (retained1.size() != n || (!retained2.empty() && retained2.size() != n))
    throw std::invalid_argument("flag vector length mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    os << pattern.points[i][0] << ' ' << pattern.points[i][1] << ' '
       << pattern.marks[i] << ' ' << static_cast<int>(retained1[i]);
    if (!retained2.empty()) os << ' ' << static_cast<int>(retained2[i]);
    os << '\n';
  }
}

}  // namespace matint
