#pragma once

#include <functional>
#include <span>
#include <vector>

#include "poslab/grid.hpp"
#include "poslab/poly.hpp"

namespace poslab {

inline constexpr double kDefaultFeasibilityTol = 1e-9;

/// S(g) = { x : g_1(x) >= 0, ..., g_m(x) >= 0 }. The generator g_0 = 1 is
/// implicit and never stored.
class SemialgebraicSystem {
 public:
  explicit SemialgebraicSystem(int dimension, std::vector<Polynomial> constraints = {});

  int dimension() const { return dimension_; }
  int size() const { return static_cast<int>(constraints_.size()); }
  const std::vector<Polynomial>& constraints() const { return constraints_; }
  const Polynomial& operator[](int i) const { return constraints_[static_cast<std::size_t>(i)]; }

 private:
  int dimension_;
  std::vector<Polynomial> constraints_;
};

/// g_i(x) >= -tol for every i.
bool contains(const SemialgebraicSystem& system, std::span<const double> x, double tol = kDefaultFeasibilityTol);

/// min(g_1(x), ..., g_m(x), 0).
double min_violation(const SemialgebraicSystem& system, std::span<const double> x);

/// Replaces every g_i by g_i(r X).
SemialgebraicSystem rescale_system(const SemialgebraicSystem& system, double r);

struct MinimizationResult {
  double minimum_value = 0.0;
  std::vector<double> argmin;
  /// Feasible points on the initial (unrefined) grid.
  std::uint64_t feasible_count = 0;
};

/// Exhaustive grid minimization of f over S intersected with the grid box.
/// Each refinement round re-grids a box of width (2 / points_per_axis) times
/// the previous width, centred on the incumbent and clipped to the original
/// box. Throws InfeasibleAtResolution when no grid point is feasible.
MinimizationResult grid_min(const Polynomial& f, const SemialgebraicSystem& system, const GridSpec& grid,
                            double feasibility_tol = kDefaultFeasibilityTol,
                            Execution exec = Execution::parallel);

/// Same refinement scheme for an arbitrary pointwise objective and feasibility
/// predicate.
MinimizationResult grid_min_function(const std::function<double(const double*)>& objective,
                                     const std::function<bool(const double*)>& feasible, int dimension,
                                     const GridSpec& grid, Execution exec = Execution::parallel);

/// Feasible nodes of the initial grid, row-major.
std::vector<double> feasible_grid_points(const SemialgebraicSystem& system, const GridSpec& grid,
                                         double feasibility_tol = kDefaultFeasibilityTol,
                                         Execution exec = Execution::parallel);

}  // namespace poslab
