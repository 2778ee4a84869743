#include "poslab/semialg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "poslab/errors.hpp"

namespace poslab {

SemialgebraicSystem::SemialgebraicSystem(int dimension, std::vector<Polynomial> constraints)
    : dimension_(dimension), constraints_(std::move(constraints)) {
  if (dimension < 1) throw ArgumentError("system dimension must be >= 1");
  for (const Polynomial& g : constraints_) {
    if (g.dimension() != dimension) throw ArgumentError("constraint dimension mismatch");
  }
}

bool contains(const SemialgebraicSystem& system, std::span<const double> x, double tol) {
  if (static_cast<int>(x.size()) != system.dimension()) throw ArgumentError("point dimension mismatch");
  if (tol < 0) throw ArgumentError("tolerance must be >= 0");
  for (const Polynomial& g : system.constraints()) {
    if (evaluate(g, x) < -tol) return false;
  }
  return true;
}

double min_violation(const SemialgebraicSystem& system, std::span<const double> x) {
  double v = 0.0;
  for (const Polynomial& g : system.constraints()) v = std::min(v, evaluate(g, x));
  return v;
}

SemialgebraicSystem rescale_system(const SemialgebraicSystem& system, double r) {
  std::vector<Polynomial> scaled;
  scaled.reserve(system.constraints().size());
  for (const Polynomial& g : system.constraints()) scaled.push_back(rescale(g, r));
  return SemialgebraicSystem(system.dimension(), std::move(scaled));
}

namespace {

template <class Objective, class Feasible>
MinimizationResult refine_min(Objective&& objective, Feasible&& feasible, int dimension, const GridSpec& spec,
                              Execution exec) {
  spec.validate(dimension);
  TensorGrid grid(spec.box, spec.points_per_axis);
  ScanResult scan = scan_min(grid, objective, feasible, exec);
  if (!scan.found) {
    throw InfeasibleAtResolution("no feasible point on a grid of " + std::to_string(grid.size()) + " points");
  }
  MinimizationResult result;
  result.feasible_count = scan.feasible_count;
  result.minimum_value = scan.value;
  result.argmin.resize(static_cast<std::size_t>(dimension));
  grid.point(scan.index, result.argmin.data());

  Box box = spec.box;
  for (int round = 0; round < spec.refinement_rounds; ++round) {
    Box next(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) {
      const double half = 0.5 * (box[i].hi - box[i].lo) * 2.0 / spec.points_per_axis;
      next[i].lo = std::max(spec.box[i].lo, result.argmin[i] - half);
      next[i].hi = std::min(spec.box[i].hi, result.argmin[i] + half);
    }
    TensorGrid fine(next, spec.points_per_axis);
    ScanResult s = scan_min(fine, objective, feasible, exec);
    if (s.found && s.value < result.minimum_value) {
      result.minimum_value = s.value;
      fine.point(s.index, result.argmin.data());
    }
    box = std::move(next);
  }
  return result;
}

}  // namespace

MinimizationResult grid_min(const Polynomial& f, const SemialgebraicSystem& system, const GridSpec& grid,
                            double feasibility_tol, Execution exec) {
  if (f.dimension() != system.dimension()) throw ArgumentError("objective and system dimension mismatch");
  if (feasibility_tol < 0) throw ArgumentError("tolerance must be >= 0");
  const CompiledPolynomial objective(f);
  std::vector<CompiledPolynomial> constraints;
  for (const Polynomial& g : system.constraints()) constraints.emplace_back(g);
  auto feasible = [&](const double* x) {
    for (const CompiledPolynomial& g : constraints) {
      if (g(x) < -feasibility_tol) return false;
    }
    return true;
  };
  return refine_min(objective, feasible, system.dimension(), grid, exec);
}

MinimizationResult grid_min_function(const std::function<double(const double*)>& objective,
                                     const std::function<bool(const double*)>& feasible, int dimension,
                                     const GridSpec& grid, Execution exec) {
  return refine_min(objective, feasible, dimension, grid, exec);
}

std::vector<double> feasible_grid_points(const SemialgebraicSystem& system, const GridSpec& spec,
                                         double feasibility_tol, Execution exec) {
  spec.validate(system.dimension());
  TensorGrid grid(spec.box, spec.points_per_axis);
  std::vector<CompiledPolynomial> constraints;
  for (const Polynomial& g : system.constraints()) constraints.emplace_back(g);
  auto feasible = [&](const double* x) {
    for (const CompiledPolynomial& g : constraints) {
      if (g(x) < -feasibility_tol) return false;
    }
    return true;
  };
  std::vector<std::uint64_t> idx = collect_feasible(grid, feasible, exec);
  const auto n = static_cast<std::size_t>(system.dimension());
  std::vector<double> points(idx.size() * n);
  for (std::size_t k = 0; k < idx.size(); ++k) grid.point(idx[k], points.data() + k * n);
  return points;
}

}  // namespace poslab
