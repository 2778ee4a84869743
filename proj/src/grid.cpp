#include "poslab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "poslab/errors.hpp"

namespace poslab {

Box unit_box(int dimension) { return Box(static_cast<std::size_t>(dimension), Interval{-1.0, 1.0}); }

GridSpec GridSpec::defaults(int dimension) {
  GridSpec g;
  g.points_per_axis = dimension <= 2 ? 101 : (dimension == 3 ? 21 : 11);
  g.box = unit_box(dimension);
  g.refinement_rounds = 3;
  return g;
}

void GridSpec::validate(int dimension) const {
  if (points_per_axis < 2) throw ArgumentError("grid needs at least 2 points per axis");
  if (refinement_rounds < 0) throw ArgumentError("refinement_rounds must be >= 0");
  if (static_cast<int>(box.size()) != dimension) {
    throw ArgumentError("grid box has " + std::to_string(box.size()) + " axes, expected " +
                        std::to_string(dimension));
  }
  for (const Interval& iv : box) {
    if (!(iv.lo < iv.hi)) throw ArgumentError("grid box interval needs lo < hi");
  }
}

TensorGrid::TensorGrid(const Box& box, int points_per_axis) : box_(box), points_(points_per_axis), size_(1) {
  if (box_.empty()) throw ArgumentError("grid box is empty");
  if (points_ < 2) throw ArgumentError("grid needs at least 2 points per axis");
  for (std::size_t i = 0; i < box_.size(); ++i) {
    if (size_ > kMaxGridPoints / static_cast<std::uint64_t>(points_)) {
      throw CapacityError("grid exceeds " + std::to_string(kMaxGridPoints) + " points");
    }
    size_ *= static_cast<std::uint64_t>(points_);
  }
}

double TensorGrid::coordinate(int axis, int j) const {
  const Interval& iv = box_[static_cast<std::size_t>(axis)];
  const double last = points_ - 1;
  return (iv.lo * (last - j) + iv.hi * j) / last;
}

void TensorGrid::multi_index(std::uint64_t linear, int* out) const {
  for (int axis = dimension() - 1; axis >= 0; --axis) {
    out[axis] = static_cast<int>(linear % static_cast<std::uint64_t>(points_));
    linear /= static_cast<std::uint64_t>(points_);
  }
}

void TensorGrid::point(std::uint64_t linear, double* out) const {
  for (int axis = dimension() - 1; axis >= 0; --axis) {
    out[axis] = coordinate(axis, static_cast<int>(linear % static_cast<std::uint64_t>(points_)));
    linear /= static_cast<std::uint64_t>(points_);
  }
}

bool TensorGrid::index_less(std::uint64_t a, std::uint64_t b) const {
  const auto base = static_cast<std::uint64_t>(points_);
  std::uint64_t sum_a = 0, sum_b = 0;
  for (std::uint64_t x = a, y = b, k = 0; k < box_.size(); ++k, x /= base, y /= base) {
    sum_a += x % base;
    sum_b += y % base;
  }
  if (sum_a != sum_b) return sum_a < sum_b;
  // Same total: the larger leading digit (axis 0) comes first.
  std::uint64_t divisor = size_ / base;
  for (std::size_t k = 0; k < box_.size(); ++k, divisor /= base) {
    const std::uint64_t da = (a / divisor) % base, db = (b / divisor) % base;
    if (da != db) return da > db;
  }
  return false;
}

double TensorGrid::half_cell_diagonal() const {
  double sum = 0.0;
  for (const Interval& iv : box_) {
    const double h = (iv.hi - iv.lo) / (points_ - 1);
    sum += h * h;
  }
  return 0.5 * std::sqrt(sum);
}

std::vector<double> nearest_distances(std::span<const double> queries, std::span<const double> targets,
                                      int dimension, Execution exec) {
  const auto d = static_cast<std::size_t>(dimension);
  const std::size_t nq = queries.size() / d;
  const std::size_t nt = targets.size() / d;
  std::vector<double> out(nq, std::numeric_limits<double>::infinity());
  auto one = [&](std::size_t q) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < nt; ++t) {
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double diff = queries[q * d + k] - targets[t * d + k];
        s += diff * diff;
      }
      best = std::min(best, s);
    }
    out[q] = std::sqrt(best);
  };
  if (exec == Execution::serial) {
    for (std::size_t q = 0; q < nq; ++q) one(q);
  } else {
    const auto total = static_cast<std::int64_t>(nq);
#pragma omp parallel for schedule(static)
    for (std::int64_t q = 0; q < total; ++q) one(static_cast<std::size_t>(q));
  }
  return out;
}

}  // namespace poslab
