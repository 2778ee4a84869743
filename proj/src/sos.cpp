#include "poslab/sos.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "poslab/errors.hpp"

namespace poslab {

MonomialBasis monomial_basis(int n, int d, std::size_t max_size) { return MonomialBasis(n, d, max_size); }

std::string_view to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::finite:
      return "finite";
    case BoundKind::minus_infinity:
      return "-inf";
    case BoundKind::plus_infinity:
      return "+inf";
    case BoundKind::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

namespace {

// The SDP whose feasible points are Gram matrices Q_j with
// sum_j (z_j' Q_j z_j) * G_j = f, one coefficient row per monomial of degree
// <= k. Generators whose degree exceeds k get no block.
struct Compiled {
  SdpProblem sdp;
  Certificate skeleton;  // entries with bases, empty Grams
  std::vector<Monomial> rows;
};

std::vector<std::vector<int>> preordering_deltas(int m) {
  std::vector<std::vector<int>> deltas;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    std::vector<int> delta(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) delta[static_cast<std::size_t>(i)] = (mask >> i) & 1u;
    deltas.push_back(std::move(delta));
  }
  // Fewer factors first, then lexicographically larger delta first.
  std::stable_sort(deltas.begin(), deltas.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
    const int sa = std::count(a.begin(), a.end(), 1);
    const int sb = std::count(b.begin(), b.end(), 1);
    if (sa != sb) return sa < sb;
    return a > b;
  });
  return deltas;
}

Compiled compile(const Polynomial& f, const SemialgebraicSystem& system, int k, CertificateMode mode,
                 const SosOptions& options) {
  const int n = system.dimension();
  Compiled out;
  out.skeleton.mode = mode;
  out.skeleton.system = system;
  out.skeleton.level = k;

  const MonomialBasis all(n, k, options.max_basis_size);
  out.rows = all.monomials();
  std::map<Monomial, int, GradedLexLess> row_of;
  for (std::size_t r = 0; r < out.rows.size(); ++r) row_of.emplace(out.rows[r], static_cast<int>(r));
  out.sdp.constraints.resize(out.rows.size());
  for (std::size_t r = 0; r < out.rows.size(); ++r) out.sdp.constraints[r].rhs = f.coefficient(out.rows[r]);

  std::vector<CertificateEntry> candidates;
  if (mode == CertificateMode::quadratic_module) {
    for (int i = 0; i <= system.size(); ++i) {
      CertificateEntry e;
      e.index = i;
      candidates.push_back(std::move(e));
    }
  } else {
    for (std::vector<int>& delta : preordering_deltas(system.size())) {
      CertificateEntry e;
      e.delta = std::move(delta);
      candidates.push_back(std::move(e));
    }
  }

  for (CertificateEntry& entry : candidates) {
    const Polynomial g = generator_polynomial(out.skeleton, entry);
    if (g.is_zero() || g.degree() > k) continue;
    entry.basis = MonomialBasis(n, (k - g.degree()) / 2, options.max_basis_size);
    const int block = static_cast<int>(out.sdp.block_sizes.size());
    const int s = static_cast<int>(entry.basis.size());
    out.sdp.block_sizes.push_back(s);
    for (int u = 0; u < s; ++u) {
      for (int v = u; v < s; ++v) {
        const Monomial uv = entry.basis[static_cast<std::size_t>(u)] * entry.basis[static_cast<std::size_t>(v)];
        for (const auto& [gamma, coef] : g.terms()) {
          const int r = row_of.at(uv * gamma);
          out.sdp.constraints[static_cast<std::size_t>(r)].entries.push_back({block, u, v, coef});
        }
      }
    }
    entry.gram = Eigen::MatrixXd::Zero(s, s);
    out.skeleton.entries.push_back(std::move(entry));
  }
  return out;
}

SdpDiagnostics summarize(const SdpProblem& problem, const SdpSolution& sol) {
  SdpDiagnostics d;
  d.status = sol.status;
  d.iterations = sol.iterations;
  d.total_dimension = problem.total_dimension();
  d.constraint_count = static_cast<int>(problem.constraints.size());
  d.removed_constraints = sol.removed_constraints;
  d.primal_residual = sol.primal_residual;
  d.min_eigenvalue = sol.min_eigenvalue;
  d.relative_gap = sol.relative_gap;
  d.message = sol.message;
  return d;
}

void fill_grams(Certificate& c, const SdpSolution& sol) {
  for (std::size_t j = 0; j < c.entries.size(); ++j) {
    const Eigen::MatrixXd& x = sol.block_values[j];
    c.entries[j].gram = 0.5 * (x + x.transpose());
  }
}

std::string level_text(int k) { return "level " + std::to_string(k); }

MembershipResult solve_membership(const MembershipProblem& p, const SosOptions& options) {
  if (p.target.dimension() != p.system.dimension()) throw ArgumentError("target and system dimension mismatch");
  if (p.level < 0) throw ArgumentError("level must be >= 0");
  MembershipResult result;
  result.level = p.level;
  if (p.level < p.target.degree()) {
    result.reason = level_text(p.level) + " is below deg f = " + std::to_string(p.target.degree());
    return result;
  }
  Compiled compiled = compile(p.target, p.system, p.level, p.mode, options);
  const SdpSolution sol = solve(compiled.sdp, options.sdp);
  result.diagnostics = summarize(compiled.sdp, sol);
  if (!sol.has_solution()) {
    if (sol.status == SdpStatus::infeasible_detected) {
      result.reason = "no representation at " + level_text(p.level) + " (SDP infeasible)";
    } else {
      result.reason = "SDP inconclusive at " + level_text(p.level) + ": " + std::string(to_string(sol.status));
      if (!sol.message.empty()) result.reason += " (" + sol.message + ")";
    }
    return result;
  }
  fill_grams(compiled.skeleton, sol);
  result.report = verify(compiled.skeleton, p.target, options.residual_tol, options.psd_tol);
  if (!result.report.pass) {
    result.reason = "SDP solution failed verification at " + level_text(p.level);
    return result;
  }
  result.found = true;
  result.certificate = std::move(compiled.skeleton);
  return result;
}

}  // namespace

MembershipResult sos_decompose(const Polynomial& f, const SosOptions& options) {
  if (f.degree() % 2 != 0) {
    MembershipResult result;
    result.level = f.degree();
    result.reason = "odd degree " + std::to_string(f.degree()) + " cannot be a sum of squares";
    return result;
  }
  return solve_membership({f, SemialgebraicSystem(f.dimension()), f.degree(), CertificateMode::quadratic_module},
                          options);
}

MembershipResult module_membership(const MembershipProblem& problem, const SosOptions& options) {
  MembershipProblem p = problem;
  p.mode = CertificateMode::quadratic_module;
  return solve_membership(p, options);
}

MembershipResult preordering_membership(const MembershipProblem& problem, const SosOptions& options) {
  if (problem.system.size() > kMaxPreorderingGenerators) {
    throw CapacityError("preordering with " + std::to_string(problem.system.size()) + " generators exceeds " +
                        std::to_string(kMaxPreorderingGenerators));
  }
  MembershipProblem p = problem;
  p.mode = CertificateMode::preordering;
  return solve_membership(p, options);
}

MembershipResult membership(const MembershipProblem& problem, const SosOptions& options) {
  return problem.mode == CertificateMode::preordering ? preordering_membership(problem, options)
                                                      : module_membership(problem, options);
}

LasserreResult lasserre_bound(const Polynomial& f, const SemialgebraicSystem& system, int k,
                              const SosOptions& options) {
  if (f.dimension() != system.dimension()) throw ArgumentError("objective and system dimension mismatch");
  if (k < 0) throw ArgumentError("level must be >= 0");
  LasserreResult result;
  result.level = k;
  if (k < f.degree()) {
    result.reason = level_text(k) + " is below deg f = " + std::to_string(f.degree());
    return result;
  }

  // Row 0 (the constant monomial) fixes a = f_0 - <C, Q>; maximizing a is
  // minimizing <C, Q>. The floor a >= a_min becomes <C, Q> + s = f_0 - a_min
  // with a 1x1 slack block, scaled to unit right-hand side.
  Compiled compiled = compile(f, system, k, CertificateMode::quadratic_module, options);
  const double f0 = compiled.sdp.constraints.front().rhs;
  double fmax = 1.0;
  for (const auto& [m, v] : f.terms()) fmax = std::max(fmax, std::abs(v));
  const double a_min = -options.floor_scale * fmax;
  const double span = f0 - a_min;

  SdpProblem sdp;
  sdp.block_sizes = compiled.sdp.block_sizes;
  sdp.objective = compiled.sdp.constraints.front().entries;
  sdp.constraints.assign(compiled.sdp.constraints.begin() + 1, compiled.sdp.constraints.end());
  const int slack = static_cast<int>(sdp.block_sizes.size());
  sdp.block_sizes.push_back(1);
  SdpConstraint floor_row;
  for (const SdpEntry& e : sdp.objective) floor_row.entries.push_back({e.block, e.row, e.col, e.value / span});
  floor_row.entries.push_back({slack, 0, 0, 1.0});
  floor_row.rhs = 1.0;
  sdp.constraints.push_back(std::move(floor_row));

  const SdpSolution sol = solve(sdp, options.sdp);
  result.diagnostics = summarize(sdp, sol);
  switch (sol.status) {
    case SdpStatus::infeasible_detected:
      result.kind = BoundKind::minus_infinity;
      result.reason = "f - a is outside the truncated module for every a >= " + std::to_string(a_min);
      return result;
    case SdpStatus::unbounded_detected:
      result.kind = BoundKind::plus_infinity;
      result.reason = "unbounded: -1 lies in the truncated module";
      return result;
    case SdpStatus::max_iterations:
      result.reason = "SDP inconclusive at " + level_text(k);
      if (!sol.message.empty()) result.reason += ": " + sol.message;
      return result;
    case SdpStatus::optimal:
    case SdpStatus::feasible:
      break;
  }

  fill_grams(compiled.skeleton, sol);
  std::vector<Eigen::MatrixXd> grams;
  grams.reserve(compiled.skeleton.entries.size());
  for (const CertificateEntry& e : compiled.skeleton.entries) grams.push_back(e.gram);
  result.lower_bound = f0 - inner_product(sdp.objective, grams);
  result.report = verify(compiled.skeleton, f - result.lower_bound, options.residual_tol, options.psd_tol);
  result.certificate = std::move(compiled.skeleton);
  if (!result.report.pass) {
    result.reason = "SDP solution failed verification at " + level_text(k);
    return result;
  }
  if (sol.status != SdpStatus::optimal) {
    result.reason = "certified lower bound, not optimal to the gap tolerance";
    return result;
  }
  result.kind = BoundKind::finite;
  return result;
}

MembershipResult archimedean_witness(const SemialgebraicSystem& system, double radius_squared, int k,
                                     const SosOptions& options) {
  if (radius_squared <= 0) throw ArgumentError("N must be > 0");
  if (k < 2 || k % 2 != 0) throw ArgumentError("archimedean witness level must be even and >= 2");
  const int n = system.dimension();
  Polynomial target = Polynomial::constant(n, radius_squared);
  for (int i = 0; i < n; ++i) target.add_term(Monomial::variable(n, i, 2), -1.0);
  return module_membership({target, system, k, CertificateMode::quadratic_module}, options);
}

}  // namespace poslab
