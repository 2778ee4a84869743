#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace poslab {

/// One entry of a symmetric block matrix. An off-diagonal entry (row, col)
/// stands for both (row, col) and (col, row).
struct SdpEntry {
  int block = 0;
  int row = 0;
  int col = 0;
  double value = 0.0;
};

/// <A, X> = rhs with A block diagonal and symmetric.
struct SdpConstraint {
  std::vector<SdpEntry> entries;
  double rhs = 0.0;
};

/// minimize <C, X>  subject to  <A_i, X> = b_i,  X = diag(X_1, ..., X_p) PSD.
/// An empty objective makes it a feasibility problem.
struct SdpProblem {
  std::vector<int> block_sizes;
  std::vector<SdpConstraint> constraints;
  std::vector<SdpEntry> objective;

  int total_dimension() const;
  /// Throws ArgumentError on out-of-range blocks or indices.
  void validate() const;
};

enum class SdpStatus {
  optimal,
  feasible,
  infeasible_detected,
  unbounded_detected,
  max_iterations,
};

std::string_view to_string(SdpStatus status);

struct SdpOptions {
  double eq_tol = 1e-8;      // infinity norm of b - A(X)
  double psd_tol = 1e-8;     // min eigenvalue of returned blocks >= -psd_tol
  double gap_tol = 1e-9;     // relative duality gap for "optimal"
  double infeasibility_tol = 1e-8;
  int max_iterations = 200;
  int max_total_dimension = 400;
};

struct SdpSolution {
  SdpStatus status = SdpStatus::max_iterations;
  std::vector<Eigen::MatrixXd> block_values;
  /// Dual multipliers, one per constraint of the input problem (zero for
  /// constraints removed as linearly dependent).
  Eigen::VectorXd dual;
  double objective_value = 0.0;
  double dual_objective = 0.0;
  double primal_residual = 0.0;
  double min_eigenvalue = 0.0;
  double relative_gap = 0.0;
  int iterations = 0;
  int removed_constraints = 0;
  std::string message;

  bool has_solution() const { return status == SdpStatus::optimal || status == SdpStatus::feasible; }
};

/// Solves with a primal-dual interior-point method (HKM direction,
/// Mehrotra predictor-corrector). Deterministic for identical inputs.
///
/// Infeasibility is reported only when the iterates yield a Farkas-type
/// certificate: y with b'y = 1 and lambda_max(sum y_i A_i) <= infeasibility_tol,
/// which rules out any solution with trace below 1/infeasibility_tol.
/// Throws CapacityError above max_total_dimension and SolverError on
/// numerical breakdown.
SdpSolution solve(const SdpProblem& problem, const SdpOptions& options = {});

/// <A, X> for a block matrix given as entries.
double inner_product(const std::vector<SdpEntry>& entries, const std::vector<Eigen::MatrixXd>& blocks);

/// Plain-text dump: block sizes, constraint entries, objective entries.
std::string dump_problem(const SdpProblem& problem);

}  // namespace poslab
