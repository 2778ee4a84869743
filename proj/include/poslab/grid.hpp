#pragma once

// Grid scanning kernels. Each kernel has a serial reference version and an
// OpenMP version; both return identical results, including tie-breaking,
// regardless of thread count.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include <omp.h>

#include "poslab/errors.hpp"
#include "poslab/poly.hpp"

namespace poslab {

struct Interval {
  double lo = -1.0;
  double hi = 1.0;
};

using Box = std::vector<Interval>;

Box unit_box(int dimension);

/// Uniform tensor grid with endpoints included, plus refinement settings
/// used by grid_min.
struct GridSpec {
  int points_per_axis = 101;
  Box box;
  int refinement_rounds = 3;

  /// 101 points per axis for n <= 2, 21 for n = 3, 11 beyond; box [-1,1]^n;
  /// 3 refinement rounds.
  static GridSpec defaults(int dimension);
  void validate(int dimension) const;
};

enum class Execution { serial, parallel };

/// Upper limit on points in one tensor grid.
inline constexpr std::uint64_t kMaxGridPoints = 200'000'000;

/// Enumerates the points of a tensor grid by linear index. Axis 0 varies
/// slowest.
class TensorGrid {
 public:
  TensorGrid(const Box& box, int points_per_axis);

  int dimension() const { return static_cast<int>(box_.size()); }
  int points_per_axis() const { return points_; }
  std::uint64_t size() const { return size_; }
  const Box& box() const { return box_; }

  /// Coordinate j of axis i: (lo (N-1-j) + hi j) / (N-1), exact at both ends
  /// and at the midpoint of symmetric boxes.
  double coordinate(int axis, int j) const;
  void point(std::uint64_t linear, double* out) const;
  void multi_index(std::uint64_t linear, int* out) const;
  /// Graded-lex order of the two points' multi-indices.
  bool index_less(std::uint64_t a, std::uint64_t b) const;
  /// Largest distance from any point of the box to its nearest grid node.
  double half_cell_diagonal() const;

 private:
  Box box_;
  int points_;
  std::uint64_t size_;
};

struct ScanResult {
  bool found = false;
  double value = std::numeric_limits<double>::infinity();
  std::uint64_t index = 0;
  std::uint64_t feasible_count = 0;
};

namespace detail {

// True when candidate (value, index) beats the incumbent.
inline bool better(const TensorGrid& grid, double value, std::uint64_t index, const ScanResult& best) {
  if (!best.found) return true;
  if (value < best.value) return true;
  if (value > best.value) return false;
  return grid.index_less(index, best.index);
}

inline void merge(const TensorGrid& grid, ScanResult& into, const ScanResult& from) {
  into.feasible_count += from.feasible_count;
  if (from.found && better(grid, from.value, from.index, into)) {
    into.found = true;
    into.value = from.value;
    into.index = from.index;
  }
}

}  // namespace detail

/// Minimum of `objective` over grid points where `feasible` holds.
/// Reference implementation.
template <class Objective, class Feasible>
ScanResult scan_min_serial(const TensorGrid& grid, Objective&& objective, Feasible&& feasible) {
  ScanResult best;
  std::vector<double> x(static_cast<std::size_t>(grid.dimension()));
  for (std::uint64_t i = 0; i < grid.size(); ++i) {
    grid.point(i, x.data());
    if (!feasible(x.data())) continue;
    ++best.feasible_count;
    const double v = objective(x.data());
    if (detail::better(grid, v, i, best)) {
      best.found = true;
      best.value = v;
      best.index = i;
    }
  }
  return best;
}

/// OpenMP version of scan_min_serial with a deterministic reduction.
template <class Objective, class Feasible>
ScanResult scan_min_parallel(const TensorGrid& grid, Objective&& objective, Feasible&& feasible) {
  const std::int64_t total = static_cast<std::int64_t>(grid.size());
  const int threads = omp_get_max_threads();
  std::vector<ScanResult> partial(static_cast<std::size_t>(threads));
#pragma omp parallel num_threads(threads)
  {
    ScanResult local;
    std::vector<double> x(static_cast<std::size_t>(grid.dimension()));
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < total; ++i) {
      const auto u = static_cast<std::uint64_t>(i);
      grid.point(u, x.data());
      if (!feasible(x.data())) continue;
      ++local.feasible_count;
      const double v = objective(x.data());
      if (detail::better(grid, v, u, local)) {
        local.found = true;
        local.value = v;
        local.index = u;
      }
    }
    partial[static_cast<std::size_t>(omp_get_thread_num())] = local;
  }
  ScanResult best;
  for (const ScanResult& p : partial) detail::merge(grid, best, p);
  return best;
}

template <class Objective, class Feasible>
ScanResult scan_min(const TensorGrid& grid, Objective&& objective, Feasible&& feasible, Execution exec) {
  if (exec == Execution::serial) return scan_min_serial(grid, objective, feasible);
  return scan_min_parallel(grid, objective, feasible);
}

/// Indices of all grid points where `feasible` holds, in increasing order.
template <class Feasible>
std::vector<std::uint64_t> collect_feasible(const TensorGrid& grid, Feasible&& feasible, Execution exec) {
  const std::int64_t total = static_cast<std::int64_t>(grid.size());
  std::vector<unsigned char> mask(grid.size(), 0);
  auto mark = [&](std::int64_t i, double* x) {
    grid.point(static_cast<std::uint64_t>(i), x);
    mask[static_cast<std::size_t>(i)] = feasible(x) ? 1 : 0;
  };
  if (exec == Execution::serial) {
    std::vector<double> x(static_cast<std::size_t>(grid.dimension()));
    for (std::int64_t i = 0; i < total; ++i) mark(i, x.data());
  } else {
#pragma omp parallel
    {
      std::vector<double> x(static_cast<std::size_t>(grid.dimension()));
#pragma omp for schedule(static)
      for (std::int64_t i = 0; i < total; ++i) mark(i, x.data());
    }
  }
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) out.push_back(i);
  }
  return out;
}

/// For each query point, the Euclidean distance to the nearest of `targets`.
/// `queries` and `targets` are row-major with `dimension` columns.
std::vector<double> nearest_distances(std::span<const double> queries, std::span<const double> targets,
                                      int dimension, Execution exec);

}  // namespace poslab
