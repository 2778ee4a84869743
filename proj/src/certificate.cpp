#include "poslab/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "poslab/errors.hpp"

namespace poslab {

std::string_view to_string(CertificateMode mode) {
  return mode == CertificateMode::preordering ? "preordering" : "quadratic_module";
}

CertificateMode parse_certificate_mode(std::string_view text) {
  if (text == "quadratic_module") return CertificateMode::quadratic_module;
  if (text == "preordering") return CertificateMode::preordering;
  throw ArgumentError("unknown certificate mode '" + std::string(text) + "'");
}

Polynomial generator_polynomial(const Certificate& c, const CertificateEntry& entry) {
  const int n = c.system.dimension();
  if (c.mode == CertificateMode::quadratic_module) {
    if (entry.index < 0 || entry.index > c.system.size()) {
      throw ArgumentError("certificate entry index " + std::to_string(entry.index) + " out of range");
    }
    return entry.index == 0 ? Polynomial::constant(n, 1.0) : c.system[entry.index - 1];
  }
  if (static_cast<int>(entry.delta.size()) != c.system.size()) {
    throw ArgumentError("certificate delta has length " + std::to_string(entry.delta.size()) + ", expected " +
                        std::to_string(c.system.size()));
  }
  Polynomial g = Polynomial::constant(n, 1.0);
  for (int i = 0; i < c.system.size(); ++i) {
    const int e = entry.delta[static_cast<std::size_t>(i)];
    if (e != 0 && e != 1) throw ArgumentError("certificate delta entries must be 0 or 1");
    if (e == 1) g = g * c.system[i];
  }
  return g;
}

Polynomial gram_polynomial(const MonomialBasis& basis, const Eigen::MatrixXd& gram) {
  const auto s = static_cast<Eigen::Index>(basis.size());
  if (gram.rows() != s || gram.cols() != s) {
    throw ArgumentError("Gram matrix is " + std::to_string(gram.rows()) + "x" + std::to_string(gram.cols()) +
                        " but basis has " + std::to_string(s) + " monomials");
  }
  Polynomial p(basis.dimension());
  for (Eigen::Index u = 0; u < s; ++u) {
    p.add_term(basis[u] * basis[u], gram(u, u), 0.0);
    for (Eigen::Index v = u + 1; v < s; ++v) {
      p.add_term(basis[u] * basis[v], gram(u, v) + gram(v, u), 0.0);
    }
  }
  return p.pruned(kDefaultPruneTolerance);
}

Polynomial reconstruct(const Certificate& c) {
  const int n = c.system.dimension();
  Polynomial total(n);
  for (const CertificateEntry& entry : c.entries) {
    if (entry.basis.dimension() != n) throw ArgumentError("certificate basis dimension mismatch");
    const Polynomial g = generator_polynomial(c, entry);
    if (entry.basis.size() > 0 && !g.is_zero() && 2 * entry.basis.max_degree() + g.degree() > c.level) {
      throw ArgumentError("certificate entry has degree " +
                          std::to_string(2 * entry.basis.max_degree() + g.degree()) + " above level " +
                          std::to_string(c.level));
    }
    total += gram_polynomial(entry.basis, entry.gram) * g;
  }
  return total;
}

double min_gram_eigenvalue(const Certificate& c) {
  double lo = std::numeric_limits<double>::infinity();
  bool any = false;
  for (const CertificateEntry& entry : c.entries) {
    if (entry.gram.size() == 0) continue;
    const Eigen::MatrixXd sym = 0.5 * (entry.gram + entry.gram.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym, Eigen::EigenvaluesOnly);
    lo = std::min(lo, eig.eigenvalues()(0));
    any = true;
  }
  return any ? lo : 0.0;
}

VerificationReport verify(const Certificate& c, const Polynomial& f, double residual_tol, double psd_tol) {
  VerificationReport report;
  report.level = c.level;
  try {
    if (f.dimension() != c.system.dimension()) throw ArgumentError("dimension mismatch");
    report.residual_norm = weighted_norm(f - reconstruct(c));
    report.min_gram_eigenvalue = min_gram_eigenvalue(c);
  } catch (const ArgumentError&) {
    report.residual_norm = std::numeric_limits<double>::infinity();
    report.min_gram_eigenvalue = -std::numeric_limits<double>::infinity();
    report.pass = false;
    return report;
  }
  report.pass = report.residual_norm <= residual_tol && report.min_gram_eigenvalue >= -psd_tol;
  return report;
}

Eigen::MatrixXd round_psd(const Eigen::MatrixXd& q, double clip) {
  if (clip < 0) throw ArgumentError("clip must be >= 0");
  if (q.rows() != q.cols()) throw ArgumentError("Gram matrix must be square");
  if (q.size() == 0) return q;
  const Eigen::MatrixXd sym = 0.5 * (q + q.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  Eigen::VectorXd lambda = eig.eigenvalues();
  if (lambda(0) >= 0) return sym;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) < -clip) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "eigenvalue %.6g is below -%.3g", lambda(i), clip);
      throw RoundingError(buf);
    }
    if (lambda(i) < 0) lambda(i) = 0.0;
  }
  const Eigen::MatrixXd& v = eig.eigenvectors();
  Eigen::MatrixXd out = v * lambda.asDiagonal() * v.transpose();
  return 0.5 * (out + out.transpose());
}

std::vector<SquareDecomposition> extract_squares(const Certificate& c, double clip) {
  std::vector<SquareDecomposition> out;
  out.reserve(c.entries.size());
  for (const CertificateEntry& entry : c.entries) {
    SquareDecomposition dec{generator_polynomial(c, entry), {}};
    if (static_cast<std::size_t>(entry.gram.rows()) != entry.basis.size() || entry.gram.rows() != entry.gram.cols()) {
      throw ArgumentError("Gram matrix does not match its basis");
    }
    if (entry.gram.size() > 0) {
      const Eigen::MatrixXd q = round_psd(entry.gram, clip);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(q);
      const Eigen::VectorXd& lambda = eig.eigenvalues();
      const double cutoff = 1e-14 * std::max(1.0, lambda(lambda.size() - 1));
      // Largest eigenvalue first.
      for (Eigen::Index j = lambda.size() - 1; j >= 0; --j) {
        if (lambda(j) <= cutoff) break;
        Eigen::VectorXd v = std::sqrt(lambda(j)) * eig.eigenvectors().col(j);
        Eigen::Index lead = 0;
        v.cwiseAbs().maxCoeff(&lead);
        if (v(lead) < 0) v = -v;
        Polynomial p(c.system.dimension());
        for (Eigen::Index u = 0; u < v.size(); ++u) p.add_term(entry.basis[u], v(u));
        dec.squares.push_back(std::move(p));
      }
    }
    out.push_back(std::move(dec));
  }
  return out;
}

}  // namespace poslab
