#pragma once

#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "poslab/basis.hpp"
#include "poslab/poly.hpp"
#include "poslab/semialg.hpp"

namespace poslab {

enum class CertificateMode { quadratic_module, preordering };

std::string_view to_string(CertificateMode mode);
/// "quadratic_module" or "preordering"; throws ArgumentError otherwise.
CertificateMode parse_certificate_mode(std::string_view text);

inline constexpr double kDefaultResidualTol = 1e-6;
inline constexpr double kDefaultPsdTol = 1e-8;

/// sigma = z' Q z over `basis`, multiplied by a generator. In module mode the
/// generator is g_index (index 0 is the constant 1); in preordering mode it is
/// the product g^delta.
struct CertificateEntry {
  int index = 0;
  std::vector<int> delta;
  MonomialBasis basis;
  Eigen::MatrixXd gram;
};

struct Certificate {
  CertificateMode mode = CertificateMode::quadratic_module;
  SemialgebraicSystem system{1};
  int level = 0;
  std::vector<CertificateEntry> entries;
};

struct VerificationReport {
  double residual_norm = 0.0;
  double min_gram_eigenvalue = 0.0;
  int level = 0;
  bool pass = false;
};

/// The polynomial multiplying sigma in `entry`.
Polynomial generator_polynomial(const Certificate& c, const CertificateEntry& entry);

/// z' Q z expanded.
Polynomial gram_polynomial(const MonomialBasis& basis, const Eigen::MatrixXd& gram);

/// Sum over entries of (z' Q z) * generator, in entry order. Throws
/// ArgumentError when an entry is malformed (dimensions, indices, or degree
/// above the certificate level).
Polynomial reconstruct(const Certificate& c);

/// Smallest eigenvalue over all Gram matrices (0 when there are none).
double min_gram_eigenvalue(const Certificate& c);

/// Never throws for a dimension-consistent certificate; malformed input
/// yields a failing report with infinite residual.
VerificationReport verify(const Certificate& c, const Polynomial& f, double residual_tol = kDefaultResidualTol,
                          double psd_tol = kDefaultPsdTol);

/// Clips eigenvalues in [-clip, 0) to zero. Throws RoundingError when an
/// eigenvalue is below -clip.
Eigen::MatrixXd round_psd(const Eigen::MatrixXd& q, double clip = kDefaultPsdTol);

struct SquareDecomposition {
  Polynomial generator;
  std::vector<Polynomial> squares;  // sigma = sum p_j^2
};

/// Factors each Gram matrix through its eigendecomposition after round_psd.
std::vector<SquareDecomposition> extract_squares(const Certificate& c, double clip = kDefaultPsdTol);

}  // namespace poslab
