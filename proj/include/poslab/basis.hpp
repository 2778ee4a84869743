#pragma once

#include <cstddef>
#include <vector>

#include "poslab/poly.hpp"

namespace poslab {

inline constexpr std::size_t kDefaultMaxBasisSize = 2000;

/// All monomials of degree <= max_degree in graded-lex order; the vector z
/// in sigma = z' Q z.
class MonomialBasis {
 public:
  MonomialBasis() = default;
  /// Throws CapacityError when binom(n + d, n) exceeds `max_size`.
  MonomialBasis(int dimension, int max_degree, std::size_t max_size = kDefaultMaxBasisSize);
  /// An explicit list; must be strictly increasing in graded-lex order.
  MonomialBasis(int dimension, std::vector<Monomial> monomials);

  int dimension() const { return dimension_; }
  int max_degree() const { return max_degree_; }
  std::size_t size() const { return monomials_.size(); }
  const Monomial& operator[](std::size_t i) const { return monomials_[i]; }
  const std::vector<Monomial>& monomials() const { return monomials_; }

  bool operator==(const MonomialBasis& other) const = default;

 private:
  int dimension_ = 1;
  int max_degree_ = 0;
  std::vector<Monomial> monomials_;
};

/// binom(n + d, n) in floating point (for capacity checks).
double basis_size(int dimension, int max_degree);

}  // namespace poslab
