#include "poslab/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "poslab/errors.hpp"

namespace poslab {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Blocks = std::vector<MatrixXd>;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Entry of a block matrix with both triangles spelled out.
struct Entry {
  int r;
  int c;
  double v;
};

// The part of one constraint matrix living in one block.
struct Part {
  int constraint;
  std::vector<Entry> entries;
  std::vector<int> rows;  // distinct rows touched, ascending
};

Part make_part(int constraint, const std::map<std::pair<int, int>, double>& sym) {
  Part part{constraint, {}, {}};
  for (const auto& [rc, v] : sym) {
    if (v == 0.0) continue;
    auto [r, c] = rc;
    part.entries.push_back({r, c, v});
    if (r != c) part.entries.push_back({c, r, v});
  }
  for (const Entry& e : part.entries) part.rows.push_back(e.r);
  std::sort(part.rows.begin(), part.rows.end());
  part.rows.erase(std::unique(part.rows.begin(), part.rows.end()), part.rows.end());
  return part;
}

// Sums duplicates per block in upper-triangle coordinates.
std::vector<std::map<std::pair<int, int>, double>> split_by_block(const std::vector<SdpEntry>& entries,
                                                                   std::size_t block_count) {
  std::vector<std::map<std::pair<int, int>, double>> out(block_count);
  for (const SdpEntry& e : entries) {
    const int r = std::min(e.row, e.col), c = std::max(e.row, e.col);
    out[static_cast<std::size_t>(e.block)][{r, c}] += e.value;
  }
  return out;
}

double frobenius_dot(const Blocks& a, const Blocks& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k].cwiseProduct(b[k]).sum();
  return s;
}

double frobenius_norm(const Blocks& a) { return std::sqrt(frobenius_dot(a, a)); }

Blocks zeros(const std::vector<int>& sizes) {
  Blocks out;
  for (int s : sizes) out.push_back(MatrixXd::Zero(s, s));
  return out;
}

void symmetrize(Blocks& a) {
  for (MatrixXd& m : a) m = 0.5 * (m + m.transpose()).eval();
}

double min_eigenvalue(const Blocks& blocks) {
  double lo = kInf;
  for (const MatrixXd& m : blocks) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(m, Eigen::EigenvaluesOnly);
    lo = std::min(lo, es.eigenvalues()(0));
  }
  return lo;
}

double max_eigenvalue(const Blocks& blocks) {
  double hi = -kInf;
  for (const MatrixXd& m : blocks) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(m, Eigen::EigenvaluesOnly);
    hi = std::max(hi, es.eigenvalues()(es.eigenvalues().size() - 1));
  }
  return hi;
}

// Largest alpha with X + alpha dX PSD (infinity when unbounded); X must be PD.
double max_step(const Blocks& x, const Blocks& dx, bool& ok) {
  double alpha = kInf;
  for (std::size_t k = 0; k < x.size(); ++k) {
    Eigen::LLT<MatrixXd> llt(x[k]);
    if (llt.info() != Eigen::Success) {
      ok = false;
      return 0.0;
    }
    MatrixXd w = llt.matrixL().solve(dx[k]);
    w = llt.matrixL().solve(w.transpose().eval());
    w = 0.5 * (w + w.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(w, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues()(0);
    if (lo < 0) alpha = std::min(alpha, -1.0 / lo);
  }
  return alpha;
}

// The linear map X -> (<A_i, X>)_i restricted to a subset of constraints.
class ConstraintOperator {
 public:
  ConstraintOperator(const SdpProblem& p, const std::vector<int>& keep)
      : sizes_(p.block_sizes), by_block_(p.block_sizes.size()), rhs_(static_cast<Eigen::Index>(keep.size())) {
    for (std::size_t i = 0; i < keep.size(); ++i) {
      const SdpConstraint& con = p.constraints[static_cast<std::size_t>(keep[i])];
      rhs_(static_cast<Eigen::Index>(i)) = con.rhs;
      auto split = split_by_block(con.entries, sizes_.size());
      for (std::size_t b = 0; b < split.size(); ++b) {
        if (split[b].empty()) continue;
        Part part = make_part(static_cast<int>(i), split[b]);
        if (!part.entries.empty()) by_block_[b].push_back(std::move(part));
      }
    }
  }

  int size() const { return static_cast<int>(rhs_.size()); }
  const VectorXd& rhs() const { return rhs_; }

  VectorXd apply(const Blocks& x) const {
    VectorXd out = VectorXd::Zero(rhs_.size());
    for (std::size_t b = 0; b < by_block_.size(); ++b) {
      for (const Part& part : by_block_[b]) {
        double s = 0.0;
        for (const Entry& e : part.entries) s += e.v * x[b](e.r, e.c);
        out(part.constraint) += s;
      }
    }
    return out;
  }

  Blocks adjoint(const VectorXd& y) const {
    Blocks out = zeros(sizes_);
    for (std::size_t b = 0; b < by_block_.size(); ++b) {
      for (const Part& part : by_block_[b]) {
        const double yi = y(part.constraint);
        if (yi == 0.0) continue;
        for (const Entry& e : part.entries) out[b](e.r, e.c) += yi * e.v;
      }
    }
    return out;
  }

  VectorXd row_norms() const {
    VectorXd sq = VectorXd::Zero(rhs_.size());
    for (const auto& parts : by_block_) {
      for (const Part& part : parts) {
        for (const Entry& e : part.entries) sq(part.constraint) += e.v * e.v;
      }
    }
    return sq.cwiseSqrt();
  }

  // G_ij = <A_i, A_j>.
  MatrixXd gram() const {
    const Eigen::Index m = rhs_.size();
    MatrixXd g = MatrixXd::Zero(m, m);
    for (std::size_t b = 0; b < by_block_.size(); ++b) {
      const int s = sizes_[b];
      std::vector<std::vector<std::pair<int, double>>> at(static_cast<std::size_t>(s) * s);
      for (const Part& part : by_block_[b]) {
        for (const Entry& e : part.entries) at[static_cast<std::size_t>(e.r) * s + e.c].push_back({part.constraint, e.v});
      }
      for (const auto& list : at) {
        for (const auto& [i, vi] : list) {
          for (const auto& [j, vj] : list) g(i, j) += vi * vj;
        }
      }
    }
    return g;
  }

  // M_ij = <A_i, X A_j Z^-1>.
  MatrixXd schur(const Blocks& x, const Blocks& zinv) const {
    const Eigen::Index m = rhs_.size();
    MatrixXd schur = MatrixXd::Zero(m, m);
    for (std::size_t b = 0; b < by_block_.size(); ++b) {
      const int s = sizes_[b];
      for (const Part& pj : by_block_[b]) {
        const auto nr = static_cast<Eigen::Index>(pj.rows.size());
        // Rows of A_j Z^-1 and the matching columns of X.
        MatrixXd t = MatrixXd::Zero(nr, s);
        MatrixXd xc(s, nr);
        for (Eigen::Index k = 0; k < nr; ++k) xc.col(k) = x[b].col(pj.rows[static_cast<std::size_t>(k)]);
        for (const Entry& e : pj.entries) {
          const auto k = std::lower_bound(pj.rows.begin(), pj.rows.end(), e.r) - pj.rows.begin();
          t.row(k) += e.v * zinv[b].row(e.c);
        }
        const MatrixXd g = xc * t;
        for (const Part& pi : by_block_[b]) {
          double sum = 0.0;
          for (const Entry& e : pi.entries) sum += e.v * g(e.r, e.c);
          schur(pi.constraint, pj.constraint) += sum;
        }
      }
    }
    return 0.5 * (schur + schur.transpose());
  }

 private:
  std::vector<int> sizes_;
  std::vector<std::vector<Part>> by_block_;
  VectorXd rhs_;
};

// Solves the Schur system, falling back to LDLT and then a small ridge.
class SchurSolver {
 public:
  explicit SchurSolver(const MatrixXd& m) {
    llt_.compute(m);
    if (llt_.info() == Eigen::Success) {
      use_llt_ = true;
      return;
    }
    MatrixXd reg = m;
    const double ridge = 1e-14 * std::max(1.0, m.diagonal().cwiseAbs().maxCoeff());
    reg.diagonal().array() += ridge;
    ldlt_.compute(reg);
    ok_ = ldlt_.info() == Eigen::Success;
  }
  bool ok() const { return ok_; }
  VectorXd solve(const VectorXd& rhs) const {
    if (use_llt_) return llt_.solve(rhs);
    return ldlt_.solve(rhs);
  }

 private:
  Eigen::LLT<MatrixXd> llt_;
  Eigen::LDLT<MatrixXd> ldlt_;
  bool use_llt_ = false;
  bool ok_ = true;
};

struct Dependence {
  std::vector<int> independent;
  bool consistent = true;
  int dependent_count = 0;
};

// Finds a maximal linearly independent subset of constraint rows and checks
// that the dropped rows have consistent right-hand sides.
Dependence find_independent_rows(const SdpProblem& p) {
  std::vector<int> all(p.constraints.size());
  std::iota(all.begin(), all.end(), 0);
  ConstraintOperator full(p, all);
  Dependence dep;
  const Eigen::Index m = full.size();
  if (m == 0) return dep;
  MatrixXd g = full.gram();
  VectorXd scale = g.diagonal().cwiseSqrt();
  std::vector<int> nonzero;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (scale(i) > 0.0) nonzero.push_back(static_cast<int>(i));
  }
  std::vector<int> independent;
  if (!nonzero.empty()) {
    const auto k = static_cast<Eigen::Index>(nonzero.size());
    MatrixXd gn(k, k);
    for (Eigen::Index a = 0; a < k; ++a) {
      for (Eigen::Index c = 0; c < k; ++c) {
        const int i = nonzero[static_cast<std::size_t>(a)], j = nonzero[static_cast<std::size_t>(c)];
        gn(a, c) = g(i, j) / (scale(i) * scale(j));
      }
    }
    Eigen::ColPivHouseholderQR<MatrixXd> qr(gn);
    qr.setThreshold(1e-12);
    const Eigen::Index rank = qr.rank();
    for (Eigen::Index a = 0; a < rank; ++a) independent.push_back(nonzero[static_cast<std::size_t>(qr.colsPermutation().indices()(a))]);
    std::sort(independent.begin(), independent.end());
  }
  dep.independent = independent;
  dep.dependent_count = static_cast<int>(m) - static_cast<int>(independent.size());
  if (dep.dependent_count == 0) return dep;

  const auto r = static_cast<Eigen::Index>(independent.size());
  MatrixXd gii(r, r);
  VectorXd bi(r);
  for (Eigen::Index a = 0; a < r; ++a) {
    bi(a) = full.rhs()(independent[static_cast<std::size_t>(a)]);
    for (Eigen::Index c = 0; c < r; ++c) gii(a, c) = g(independent[static_cast<std::size_t>(a)], independent[static_cast<std::size_t>(c)]);
  }
  Eigen::LDLT<MatrixXd> ldlt(gii);
  std::vector<bool> is_indep(static_cast<std::size_t>(m), false);
  for (int i : independent) is_indep[static_cast<std::size_t>(i)] = true;
  for (Eigen::Index j = 0; j < m; ++j) {
    if (is_indep[static_cast<std::size_t>(j)]) continue;
    const double bj = full.rhs()(j);
    double predicted = 0.0, mass = 0.0;
    if (r > 0) {
      VectorXd gij(r);
      for (Eigen::Index a = 0; a < r; ++a) gij(a) = g(independent[static_cast<std::size_t>(a)], j);
      const VectorXd w = ldlt.solve(gij);
      predicted = w.dot(bi);
      mass = w.cwiseAbs().dot(bi.cwiseAbs());
    }
    if (std::abs(bj - predicted) > 1e-9 * (1.0 + std::abs(bj) + mass)) dep.consistent = false;
  }
  return dep;
}

}  // namespace

int SdpProblem::total_dimension() const { return std::accumulate(block_sizes.begin(), block_sizes.end(), 0); }

void SdpProblem::validate() const {
  for (int s : block_sizes) {
    if (s < 1) throw ArgumentError("SDP block sizes must be >= 1");
  }
  auto check = [&](const SdpEntry& e) {
    if (e.block < 0 || e.block >= static_cast<int>(block_sizes.size())) throw ArgumentError("SDP entry block out of range");
    const int s = block_sizes[static_cast<std::size_t>(e.block)];
    if (e.row < 0 || e.row >= s || e.col < 0 || e.col >= s) throw ArgumentError("SDP entry index out of range");
    if (!std::isfinite(e.value)) throw ArgumentError("SDP entry is not finite");
  };
  for (const SdpConstraint& c : constraints) {
    for (const SdpEntry& e : c.entries) check(e);
    if (!std::isfinite(c.rhs)) throw ArgumentError("SDP right-hand side is not finite");
  }
  for (const SdpEntry& e : objective) check(e);
}

std::string_view to_string(SdpStatus status) {
  switch (status) {
    case SdpStatus::optimal: return "optimal";
    case SdpStatus::feasible: return "feasible";
    case SdpStatus::infeasible_detected: return "infeasible-detected";
    case SdpStatus::unbounded_detected: return "unbounded-detected";
    case SdpStatus::max_iterations: return "max-iterations";
  }
  return "unknown";
}

double inner_product(const std::vector<SdpEntry>& entries, const std::vector<Eigen::MatrixXd>& blocks) {
  double s = 0.0;
  for (const SdpEntry& e : entries) {
    const MatrixXd& b = blocks[static_cast<std::size_t>(e.block)];
    s += e.row == e.col ? e.value * b(e.row, e.col) : e.value * (b(e.row, e.col) + b(e.col, e.row));
  }
  return s;
}

SdpSolution solve(const SdpProblem& problem, const SdpOptions& options) {
  problem.validate();
  const int total_dim = problem.total_dimension();
  if (total_dim > options.max_total_dimension) {
    throw CapacityError("SDP total matrix dimension " + std::to_string(total_dim) + " exceeds cap " +
                        std::to_string(options.max_total_dimension));
  }
  const std::vector<int>& sizes = problem.block_sizes;
  const auto m_full = static_cast<Eigen::Index>(problem.constraints.size());

  SdpSolution sol;
  sol.dual = VectorXd::Zero(m_full);
  sol.block_values = zeros(sizes);

  Dependence dep = find_independent_rows(problem);
  sol.removed_constraints = dep.dependent_count;
  std::vector<int> all(problem.constraints.size());
  std::iota(all.begin(), all.end(), 0);
  const ConstraintOperator full(problem, all);
  if (!dep.consistent) {
    sol.status = SdpStatus::infeasible_detected;
    sol.message = "equality constraints are linearly inconsistent";
    sol.primal_residual = full.rhs().lpNorm<Eigen::Infinity>();
    sol.min_eigenvalue = 0.0;
    return sol;
  }

  const ConstraintOperator op(problem, dep.independent);
  const VectorXd& b = op.rhs();
  Blocks c = zeros(sizes);
  {
    auto split = split_by_block(problem.objective, sizes.size());
    for (std::size_t blk = 0; blk < split.size(); ++blk) {
      for (const auto& [rc, v] : split[blk]) {
        c[blk](rc.first, rc.second) += v;
        if (rc.first != rc.second) c[blk](rc.second, rc.first) += v;
      }
    }
  }
  const bool has_objective = frobenius_norm(c) > 0.0;
  const double n_dim = total_dim;
  const double norm_b = b.norm();
  const double norm_c = frobenius_norm(c);

  // Starting point scaled to the data.
  const VectorXd row_norms = op.row_norms();
  double alpha0 = 1.0, max_a = 0.0;
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    alpha0 = std::max(alpha0, n_dim * (1.0 + std::abs(b(i))) / (1.0 + row_norms(i)));
    max_a = std::max(max_a, row_norms(i));
  }
  const double beta0 = std::max(1.0, (1.0 + std::max(max_a, norm_c)) / std::sqrt(n_dim));
  Blocks x, z;
  for (int s : sizes) {
    x.push_back(10.0 * alpha0 * MatrixXd::Identity(s, s));
    z.push_back(10.0 * beta0 * MatrixXd::Identity(s, s));
  }
  VectorXd y = VectorXd::Zero(b.size());
  const Eigen::LDLT<MatrixXd> gram_ldlt(op.gram());

  bool converged = false, breakdown = false;
  double last_pinf = kInf, last_dinf = kInf;
  double best_merit = kInf;
  int since_improvement = 0;
  // Iterate with the smallest primal infeasibility among those with a closed gap.
  Blocks best_x;
  double best_pinf = kInf, best_dinf = kInf, best_gap = kInf;
  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    const VectorXd rp = b - op.apply(x);
    Blocks rd = c;
    {
      const Blocks aty = op.adjoint(y);
      for (std::size_t k = 0; k < rd.size(); ++k) rd[k] -= z[k] + aty[k];
    }
    const double pobj = frobenius_dot(c, x);
    const double dobj = b.dot(y);
    const double xz = frobenius_dot(x, z);
    const double mu = xz / n_dim;
    const double pinf = rp.norm() / (1.0 + norm_b);
    const double dinf = frobenius_norm(rd) / (1.0 + norm_c);
    const double rel_gap = xz / (1.0 + std::abs(pobj) + std::abs(dobj));
    sol.relative_gap = rel_gap;
    last_pinf = pinf;
    last_dinf = dinf;
    if (rel_gap <= options.gap_tol && dinf <= 1e-9 && pinf < best_pinf) {
      best_x = x;
      best_pinf = pinf;
      best_dinf = dinf;
      best_gap = rel_gap;
    }

    if (pinf <= 1e-9 && dinf <= 1e-9 && rel_gap <= options.gap_tol) {
      converged = true;
      break;
    }

    // Farkas certificate for primal infeasibility: b'y = 1, sum y_i A_i <= 0.
    if (dobj > 0.0 && b.size() > 0) {
      const VectorXd yhat = y / dobj;
      if (max_eigenvalue(op.adjoint(yhat)) <= options.infeasibility_tol) {
        sol.status = SdpStatus::infeasible_detected;
        sol.message = "Farkas certificate: b'y = 1 with sum y_i A_i negative semidefinite";
        for (std::size_t i = 0; i < dep.independent.size(); ++i) {
          sol.dual(dep.independent[i]) = yhat(static_cast<Eigen::Index>(i));
        }
        sol.iterations = iter;
        sol.block_values = x;
        sol.primal_residual = (full.rhs() - full.apply(x)).lpNorm<Eigen::Infinity>();
        sol.min_eigenvalue = min_eigenvalue(x);
        sol.objective_value = pobj;
        sol.dual_objective = dobj;
        return sol;
      }
    }
    // Improving ray for an unbounded objective: A(X) = 0, <C, X> = -1.
    if (has_objective && pobj < 0.0) {
      Blocks xhat = x;
      for (MatrixXd& blk : xhat) blk /= -pobj;
      const double ray_residual = b.size() > 0 ? op.apply(xhat).lpNorm<Eigen::Infinity>() : 0.0;
      if (ray_residual <= options.infeasibility_tol && dinf > 1e-6) {
        sol.status = SdpStatus::unbounded_detected;
        sol.message = "improving ray: A(X) = 0, <C, X> = -1, X PSD";
        sol.iterations = iter;
        sol.block_values = xhat;
        sol.objective_value = -kInf;
        sol.primal_residual = ray_residual;
        sol.min_eigenvalue = min_eigenvalue(xhat);
        return sol;
      }
    }

    const double merit = std::max({pinf, dinf, rel_gap});
    if (merit < 0.5 * best_merit) {
      best_merit = merit;
      since_improvement = 0;
    } else if (++since_improvement > 25) {
      break;
    }

    Blocks zinv;
    for (const MatrixXd& zb : z) {
      Eigen::LLT<MatrixXd> llt(zb);
      if (llt.info() != Eigen::Success) {
        breakdown = true;
        break;
      }
      zinv.push_back(llt.solve(MatrixXd::Identity(zb.rows(), zb.cols())));
    }
    if (breakdown) break;

    const SchurSolver schur(op.schur(x, zinv));
    if (!schur.ok()) {
      breakdown = true;
      break;
    }
    Blocks x_rd_zinv;
    for (std::size_t k = 0; k < x.size(); ++k) x_rd_zinv.push_back(x[k] * rd[k] * zinv[k]);
    const VectorXd a_x_rd_zinv = op.apply(x_rd_zinv);

    // Search direction for a given centering term g (HKM):
    //   dX = g - X - X dZ Z^-1,  dZ = Rd - A*(dy),  A(dX) = rp.
    auto direction = [&](const Blocks& g, Blocks& dx, VectorXd& dy, Blocks& dz) {
      const VectorXd rhs = b - op.apply(g) + a_x_rd_zinv;
      dy = schur.solve(rhs);
      dz = rd;
      const Blocks atdy = op.adjoint(dy);
      dx.clear();
      for (std::size_t k = 0; k < x.size(); ++k) {
        dz[k] -= atdy[k];
        dx.push_back(g[k] - x[k] - x[k] * dz[k] * zinv[k]);
      }
      symmetrize(dx);
      // Remove the rounding error in A(dX) = rp, which otherwise accumulates
      // in the primal residual once X becomes ill-conditioned.
      if (b.size() > 0) {
        const VectorXd fix = gram_ldlt.solve(rp - op.apply(dx));
        if (fix.allFinite()) {
          const Blocks corr = op.adjoint(fix);
          for (std::size_t k = 0; k < dx.size(); ++k) dx[k] += corr[k];
        }
      }
    };

    Blocks dx_aff, dz_aff;
    VectorXd dy_aff;
    direction(zeros(sizes), dx_aff, dy_aff, dz_aff);
    bool ok = true;
    const double ap_aff = std::min(1.0, max_step(x, dx_aff, ok));
    const double ad_aff = std::min(1.0, max_step(z, dz_aff, ok));
    if (!ok || !dy_aff.allFinite()) {
      breakdown = true;
      break;
    }
    double mu_aff = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      mu_aff += (x[k] + ap_aff * dx_aff[k]).cwiseProduct(z[k] + ad_aff * dz_aff[k]).sum();
    }
    mu_aff /= n_dim;
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

    Blocks g;
    for (std::size_t k = 0; k < x.size(); ++k) {
      const auto s = x[k].rows();
      g.push_back((sigma * mu * MatrixXd::Identity(s, s) - dx_aff[k] * dz_aff[k]) * zinv[k]);
    }
    Blocks dx, dz;
    VectorXd dy;
    direction(g, dx, dy, dz);
    const double ap = std::min(1.0, 0.95 * max_step(x, dx, ok));
    const double ad = std::min(1.0, 0.95 * max_step(z, dz, ok));
    if (!ok || !dy.allFinite()) {
      breakdown = true;
      break;
    }
    for (std::size_t k = 0; k < x.size(); ++k) {
      x[k] += ap * dx[k];
      z[k] += ad * dz[k];
    }
    y += ad * dy;
    symmetrize(x);
    symmetrize(z);
    if (ap < 1e-10 && ad < 1e-10) break;
  }
  sol.iterations = iter;
  if (!converged && !best_x.empty() && best_pinf < last_pinf) {
    x = best_x;
    last_pinf = best_pinf;
    last_dinf = best_dinf;
    sol.relative_gap = best_gap;
  }

  // Project onto the affine constraint set; keep whichever of X and its
  // projection meets both tolerances.
  auto evaluate_candidate = [&](const Blocks& cand, double& residual, double& min_eig) {
    residual = m_full > 0 ? (full.rhs() - full.apply(cand)).lpNorm<Eigen::Infinity>() : 0.0;
    min_eig = min_eigenvalue(cand);
    return residual <= options.eq_tol && min_eig >= -options.psd_tol;
  };
  Blocks polished = x;
  if (b.size() > 0) {
    const VectorXd w = gram_ldlt.solve(b - op.apply(x));
    if (w.allFinite()) {
      const Blocks corr = op.adjoint(w);
      for (std::size_t k = 0; k < polished.size(); ++k) polished[k] += corr[k];
      symmetrize(polished);
    }
  }
  double res_p = 0, eig_p = 0, res_x = 0, eig_x = 0;
  const bool polished_ok = evaluate_candidate(polished, res_p, eig_p);
  const bool raw_ok = evaluate_candidate(x, res_x, eig_x);

  for (std::size_t i = 0; i < dep.independent.size(); ++i) sol.dual(dep.independent[i]) = y(static_cast<Eigen::Index>(i));
  sol.dual_objective = b.dot(y);

  if (polished_ok || raw_ok) {
    const bool use_polished = polished_ok && (!raw_ok || res_p <= res_x);
    sol.block_values = use_polished ? polished : x;
    sol.primal_residual = use_polished ? res_p : res_x;
    sol.min_eigenvalue = use_polished ? eig_p : eig_x;
    sol.objective_value = frobenius_dot(c, sol.block_values);
    // A stalled run whose dual is feasible and whose gap is closed only lacked
    // primal accuracy, which the projection above restores.
    if (!converged && last_dinf <= 1e-9 && last_pinf <= 1e-6 && sol.relative_gap <= options.gap_tol) converged = true;
    sol.status = converged && has_objective ? SdpStatus::optimal : SdpStatus::feasible;
    if (!converged) {
      char buf[200];
      std::snprintf(buf, sizeof buf,
                    "stopped after %d iterations with a feasible point (primal inf %.2e, dual inf %.2e, gap %.2e)",
                    iter, last_pinf, last_dinf, sol.relative_gap);
      sol.message = buf;
    }
    return sol;
  }

  sol.block_values = x;
  sol.primal_residual = res_x;
  sol.min_eigenvalue = eig_x;
  sol.objective_value = frobenius_dot(c, x);
  if (breakdown && iter == 0) {
    throw SolverError("SDP numerical breakdown at the first iteration");
  }
  if (!std::isfinite(res_x) || !std::isfinite(eig_x)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "SDP numerical breakdown after %d iterations (gap %.3e)", iter, sol.relative_gap);
    throw SolverError(buf);
  }
  sol.status = SdpStatus::max_iterations;
  char buf[200];
  std::snprintf(buf, sizeof buf, "%s after %d iterations: residual %.3e, min eigenvalue %.3e, gap %.3e",
                breakdown ? "numerical breakdown" : "no convergence", iter, res_x, eig_x, sol.relative_gap);
  sol.message = buf;
  return sol;
}

std::string dump_problem(const SdpProblem& problem) {
  std::ostringstream out;
  out.precision(17);
  out << "blocks " << problem.block_sizes.size() << "\n";
  for (std::size_t i = 0; i < problem.block_sizes.size(); ++i) out << (i ? " " : "") << problem.block_sizes[i];
  out << "\nconstraints " << problem.constraints.size() << "\n";
  for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
    const SdpConstraint& c = problem.constraints[i];
    out << "constraint " << i << " rhs " << c.rhs << " entries " << c.entries.size() << "\n";
    for (const SdpEntry& e : c.entries) out << e.block << " " << e.row << " " << e.col << " " << e.value << "\n";
  }
  out << "objective entries " << problem.objective.size() << "\n";
  for (const SdpEntry& e : problem.objective) out << e.block << " " << e.row << " " << e.col << " " << e.value << "\n";
  return out.str();
}

}  // namespace poslab
