#include "poslab/basis.hpp"

#include <cmath>
#include <string>

#include "poslab/errors.hpp"

namespace poslab {

namespace {

// Appends every exponent vector with entries summing to `remaining`, filling
// positions [pos, n), largest leading exponent first.
void append_degree(std::vector<int>& current, std::size_t pos, int remaining, std::vector<Monomial>& out) {
  if (pos + 1 == current.size()) {
    current[pos] = remaining;
    out.emplace_back(current);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[pos] = e;
    append_degree(current, pos + 1, remaining - e, out);
  }
  current[pos] = 0;
}

}  // namespace

double basis_size(int dimension, int max_degree) {
  double size = 1.0;
  for (int i = 1; i <= dimension; ++i) size = size * (max_degree + i) / i;
  return std::round(size);
}

MonomialBasis::MonomialBasis(int dimension, int max_degree, std::size_t max_size)
    : dimension_(dimension), max_degree_(max_degree) {
  if (dimension < 1) throw ArgumentError("basis dimension must be >= 1");
  if (max_degree < 0) throw ArgumentError("basis degree must be >= 0");
  const double size = basis_size(dimension, max_degree);
  if (size > static_cast<double>(max_size)) {
    throw CapacityError("monomial basis of size " + std::to_string(static_cast<long long>(size)) +
                        " exceeds cap " + std::to_string(max_size));
  }
  monomials_.reserve(static_cast<std::size_t>(size));
  std::vector<int> current(static_cast<std::size_t>(dimension), 0);
  for (int t = 0; t <= max_degree; ++t) append_degree(current, 0, t, monomials_);
}

MonomialBasis::MonomialBasis(int dimension, std::vector<Monomial> monomials)
    : dimension_(dimension), monomials_(std::move(monomials)) {
  if (dimension < 1) throw ArgumentError("basis dimension must be >= 1");
  for (std::size_t i = 0; i < monomials_.size(); ++i) {
    if (monomials_[i].dimension() != dimension) throw ArgumentError("basis monomial dimension mismatch");
    if (i > 0 && !GradedLexLess{}(monomials_[i - 1], monomials_[i])) {
      throw ArgumentError("basis monomials must be strictly increasing in graded-lex order");
    }
    max_degree_ = std::max(max_degree_, monomials_[i].degree());
  }
}

}  // namespace poslab
