#pragma once

#include <optional>
#include <string>

#include "poslab/basis.hpp"
#include "poslab/certificate.hpp"
#include "poslab/poly.hpp"
#include "poslab/sdp.hpp"
#include "poslab/semialg.hpp"

namespace poslab {

inline constexpr int kMaxPreorderingGenerators = 12;

/// All monomials of degree <= d in n variables, graded-lex.
MonomialBasis monomial_basis(int n, int d, std::size_t max_size = kDefaultMaxBasisSize);

struct MembershipProblem {
  Polynomial target;
  SemialgebraicSystem system;
  int level = 0;
  CertificateMode mode = CertificateMode::quadratic_module;
};

struct SosOptions {
  SdpOptions sdp;
  double residual_tol = kDefaultResidualTol;
  double psd_tol = kDefaultPsdTol;
  std::size_t max_basis_size = kDefaultMaxBasisSize;
  /// lasserre_bound searches a >= -floor_scale * max(1, max |f_alpha|).
  double floor_scale = 1e6;
};

/// Solver summary carried by every outcome.
struct SdpDiagnostics {
  SdpStatus status = SdpStatus::max_iterations;
  int iterations = 0;
  int total_dimension = 0;
  int constraint_count = 0;
  int removed_constraints = 0;
  double primal_residual = 0.0;
  double min_eigenvalue = 0.0;
  double relative_gap = 0.0;
  std::string message;
};

/// "not found" is inconclusive: the target may still lie in the full cone,
/// or in the truncation at a higher level.
struct MembershipResult {
  bool found = false;
  int level = 0;
  std::optional<Certificate> certificate;
  VerificationReport report;
  std::string reason;
  std::optional<SdpDiagnostics> diagnostics;
};

MembershipResult sos_decompose(const Polynomial& f, const SosOptions& options = {});
MembershipResult module_membership(const MembershipProblem& problem, const SosOptions& options = {});
/// Throws CapacityError when the system has more than 12 generators.
MembershipResult preordering_membership(const MembershipProblem& problem, const SosOptions& options = {});
/// Dispatches on problem.mode.
MembershipResult membership(const MembershipProblem& problem, const SosOptions& options = {});

enum class BoundKind {
  finite,
  minus_infinity,  // f - a is outside M(g, k) even for a at the search floor
  plus_infinity,   // the SDP is unbounded: S is empty and M(g, k) contains -1
  inconclusive,    // solver stalled or the certificate failed verification
};

std::string_view to_string(BoundKind kind);

struct LasserreResult {
  int level = 0;
  BoundKind kind = BoundKind::inconclusive;
  /// Meaningful only for BoundKind::finite.
  double lower_bound = 0.0;
  /// Certificate for f - lower_bound.
  std::optional<Certificate> certificate;
  VerificationReport report;
  std::string reason;
  std::optional<SdpDiagnostics> diagnostics;
};

/// f_k* = sup { a : f - a in M(g, k) }. k < deg f gives an inconclusive
/// result with a reason.
LasserreResult lasserre_bound(const Polynomial& f, const SemialgebraicSystem& system, int k,
                              const SosOptions& options = {});

/// Membership of N - |X|^2 in M(g, k).
MembershipResult archimedean_witness(const SemialgebraicSystem& system, double radius_squared, int k,
                                     const SosOptions& options = {});

}  // namespace poslab
