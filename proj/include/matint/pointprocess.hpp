#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "matint/rng.hpp"

namespace matint {

using Point2 = std::array<double, 2>;

inline double squared_norm(const Point2& p) {
  return p[0] * p[0] + p[1] * p[1];
}

/// Observation disc plus a sampling margin. Statistics are read from the disc
/// of `radius` around `center`; points are sampled on the disc of
/// `radius + guard` so that every observed point sees its full killing
/// neighborhood. A guard of at least the hard-core distance makes retention
/// decisions inside the observation disc exact for the infinite process.
struct Window {
  Point2 center{0.0, 0.0};
  double radius = 0.0;
  double guard = 0.0;

  double sampling_radius() const { return radius + guard; }
  double sampling_area() const;
  void validate() const;  // radius > 0, guard >= 0
};

/// A finite realization of a marked point process: positions plus one
/// uniform-[0,1] mark per point. Immutable after creation by convention;
/// safe to share across threads.
struct PointPattern {
  std::vector<Point2> points;
  std::vector<double> marks;
  Window window;

  std::size_t size() const { return points.size(); }
  void validate() const;
};

/// A dependent thinning over a parent pattern: retained[i] says whether
/// parent point i survived. Retained points are pairwise at least the
/// hard-core distance apart.
struct ThinnedPattern {
  PointPattern parent;
  std::vector<std::uint8_t> retained;

  std::size_t retained_count() const;
};

/// Homogeneous Poisson process on the window's sampling disc: point count is
/// Poisson(intensity * area), positions i.i.d. uniform on the disc, marks
/// i.i.d. uniform on [0,1]. Zero intensity yields an empty pattern.
PointPattern sample_ppp(double intensity, const Window& window, Rng& rng);

/// Reusable buffers for repeated thinnings. Points are bucket-sorted into a
/// cell grid of the hard-core distance so the kill scan walks contiguous
/// memory; avoids reallocation inside Monte Carlo loops. One instance per
/// thread.
class ThinningScratch {
 public:
  /// flags[i] = 1 iff no other point within `hardcore_distance` of point i
  /// carries a strictly smaller mark. Equal marks kill neither point.
  void retained_flags(std::span<const Point2> points, double hardcore_distance,
                      std::span<const double> marks,
                      std::vector<std::uint8_t>& out);

  /// Several thinnings over the same positions with independent mark vectors;
  /// the sorted grid is built once and all slots are decided in one scan.
  void retained_flags_multi(std::span<const Point2> points,
                            double hardcore_distance,
                            std::span<const std::vector<double>> mark_sets,
                            std::span<std::vector<std::uint8_t>> out);

 private:
  template <int SlotCount>
  void scan(std::size_t n, int runtime_slots, double d2,
            std::span<std::vector<std::uint8_t>> out);

  std::vector<std::int32_t> cell_of_;
  std::vector<std::int32_t> scell_;
  std::vector<std::int32_t> starts_;
  std::vector<std::int32_t> cursor_;
  std::vector<std::int32_t> order_;
  std::vector<double> sx_, sy_;
  std::vector<double> sorted_marks_;  // slot-major, cell order
  std::vector<std::uint8_t> killed_;  // slot-major, cell order
  int nx_ = 0, ny_ = 0, reach_ = 1;
};

/// One-shot convenience wrapper around ThinningScratch::retained_flags.
std::vector<std::uint8_t> matern_retained_flags(std::span<const Point2> points,
                                                double hardcore_distance,
                                                std::span<const double> marks);

/// Matern type-II thinning of `pattern` under the given mark vector.
/// Throws std::invalid_argument if |marks| != |pattern.points|.
ThinnedPattern matern_thin(const PointPattern& pattern, double hardcore_distance,
                           std::span<const double> marks);

/// Two thinnings over the same positions with two independent mark vectors
/// drawn from `rng` (the joint law behind one point retained twice and two
/// points retained across slots).
std::pair<ThinnedPattern, ThinnedPattern> paired_thinnings(
    const PointPattern& pattern, double hardcore_distance, Rng& rng);

/// k >= 1 independent thinnings over the same positions; returns one flag
/// vector per thinning.
std::vector<std::vector<std::uint8_t>> multi_thinning_flags(
    const PointPattern& pattern, double hardcore_distance, int k, Rng& rng);

/// Pattern restricted to a smaller sampling window (points outside dropped,
/// marks kept). Used to check that the guard margin removes edge effects.
PointPattern restricted(const PointPattern& pattern, const Window& window);

/// Debug dump, one point per line: `x y mark retained1 [retained2]`.
void write_pattern_dump(std::ostream& os, const PointPattern& pattern,
                        std::span<const std::uint8_t> retained1,
                        std::span<const std::uint8_t> retained2 = {});

}  // namespace matint
