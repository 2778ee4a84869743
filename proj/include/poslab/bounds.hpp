#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "poslab/grid.hpp"
#include "poslab/poly.hpp"
#include "poslab/semialg.hpp"

namespace poslab {

/// Inputs of the closed-form degree and gap bounds. The constant c depends
/// on the constraints and has no known formula, so it is always supplied by
/// the caller.
struct BoundInputs {
  double c = 1.0;
  int d = 1;
  int n = 1;
  double norm_f = 1.0;
  double f_star = 1.0;
  std::int64_t k = 0;  // gap bound only
};

/// exp arguments above this saturate to +inf.
inline constexpr double kExpSaturation = 700.0;

struct BoundValue {
  double value = 0.0;
  bool saturated = false;   // value is +inf because exp overflowed
  bool applicable = true;   // false below the gap bound's validity threshold
  double threshold = 0.0;   // gap bound: k must exceed this
};

/// c d^2 (1 + (d^2 n^d |f| / f*)^c). Throws ArgumentError on invalid inputs.
double schmuedgen_degree_bound(const BoundInputs& b);

/// c exp((d^2 n^d |f| / f*)^c), saturated when the exponent exceeds 700.
BoundValue putinar_degree_bound(const BoundInputs& b);

/// 6 d^3 n^(2d) |f| / log(k/c)^(1/c), applicable only for k > c exp((2 d^2 n^d)^c).
/// f_star is not used.
BoundValue gap_bound(const BoundInputs& b);

struct LiftingCaps {
  int max_degree = 400;
  double max_terms = 2e6;
};

/// h = f - lambda * sum_i (g_i - 1)^(2k) g_i, expanded. Throws CapacityError
/// when the degree or the dense term count of h would exceed the caps.
Polynomial lifting_transform(const Polynomial& f, const SemialgebraicSystem& system, double lambda, int k,
                             const LiftingCaps& caps = {});

/// h evaluated pointwise without expansion.
double lifting_value(const Polynomial& f, const SemialgebraicSystem& system, double lambda, std::int64_t k,
                     std::span<const double> x);

struct LiftingSearch {
  bool found = false;
  int k = 0;
  double f_star = 0.0;         // grid minimum of f on S within [-1,1]^n
  double min_h = 0.0;          // grid minimum of h over [-1,1]^n at the returned k
  std::vector<double> argmin;  // where min_h is attained
  std::vector<double> min_h_by_k;
};

/// Smallest k in [1, k_max] with grid-min of h over [-1,1]^n at least
/// f*/2 (1 - 1e-6). The grid box must be [-1,1]^n. Throws ArgumentError
/// when f* <= 0 or some g_i exceeds 1 on the grid.
LiftingSearch find_lifting_k(const Polynomial& f, const SemialgebraicSystem& system, double lambda,
                             const GridSpec& grid, int k_max, Execution exec = Execution::parallel);

struct LiftingParameters {
  double c0 = 1.0;
  double c1 = 1.0;
  double c2 = 1.0;
  int d = 0;
  int n = 0;
  double norm_f = 0.0;
  double f_star = 0.0;
  double L = 0.0;
  double lambda = 0.0;
  /// Smallest k >= 1 with 2k + 1 >= c0 (1 + L^c0); saturates at kMaxLiftingK.
  std::int64_t k = 1;
  bool k_saturated = false;
  double empirical_min_h = 0.0;
  /// empirical_min_h >= f*/2 (1 - 1e-6)
  bool claim_holds = false;
};

inline constexpr std::int64_t kMaxLiftingK = std::int64_t{1} << 52;

/// Throws ArgumentError on non-positive constants, f* <= 0, or g_i > 1 on
/// the grid; InfeasibleAtResolution when S has no grid point.
LiftingParameters lifting_parameters(const Polynomial& f, const SemialgebraicSystem& system, double c0, double c1,
                                     double c2, const GridSpec& grid, Execution exec = Execution::parallel);

struct LojasiewiczFit {
  double c2_exponent = 0.0;
  double c3_scale = 0.0;
  int sample_count = 0;
  double max_violation = 0.0;
  /// Bound on |nearest-grid-point distance - dist(x, S)|, the half cell
  /// diagonal of the grid.
  double dist_error_bound = 0.0;
  int envelope_bins = 0;
  std::uint64_t seed = 0;
};

/// Samples points of the grid box outside S, fits
/// dist(x,S)^c2 <= c3 * (-min(g_i(x), 0)) on the lower envelope and inflates
/// c3 until every sample satisfies it. Throws DegenerateFitError when no
/// sample falls outside S or the envelope is degenerate.
LojasiewiczFit lojasiewicz_estimate(const SemialgebraicSystem& system, const GridSpec& grid, int samples,
                                    std::uint64_t seed = 42, Execution exec = Execution::parallel);

struct RoundResult {
  bool found = false;
  int degree = 0;
  std::optional<Polynomial> polynomial;  // 1 - 1/d - sum X_i^(2d)
  double min_value = 0.0;                // min of p_d over feasible grid points at the last d tried
  std::string reason;
};

/// 1 - 1/d - sum_i X_i^(2d).
Polynomial rounded_hypercube(int n, int d);

/// Smallest d in [1, d_max] with p_d > 0 at every feasible grid point.
/// Throws ArgumentError when a feasible point of the grid box scaled by 1.5
/// has a coordinate of magnitude >= 1.
RoundResult round_hypercube_degree(const SemialgebraicSystem& system, const GridSpec& grid, int d_max,
                                   Execution exec = Execution::parallel);

}  // namespace poslab
