#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace poslab {

/// Exponent vector alpha in N^n. The monomial X^alpha.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<int> exponents);

  static Monomial one(int dimension);
  /// X_{index+1}^power (index is zero-based).
  static Monomial variable(int dimension, int index, int power = 1);

  int dimension() const { return static_cast<int>(exponents_.size()); }
  /// |alpha|
  int degree() const { return degree_; }
  std::span<const int> exponents() const { return exponents_; }
  int operator[](int i) const { return exponents_[static_cast<std::size_t>(i)]; }

  Monomial operator*(const Monomial& other) const;
  bool operator==(const Monomial& other) const = default;

 private:
  std::vector<int> exponents_;
  int degree_ = 0;
};

/// Graded order: lower total degree first; within a degree, the exponent
/// vector that is lexicographically larger comes first, so for n = 2 the
/// order reads 1, X1, X2, X1^2, X1X2, X2^2, ...
bool graded_lex_less(std::span<const int> a, std::span<const int> b);

struct GradedLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return graded_lex_less(a.exponents(), b.exponents());
  }
};

/// Coefficients smaller than this in magnitude are dropped after arithmetic.
inline constexpr double kDefaultPruneTolerance = 1e-14;

/// Sparse real polynomial in a fixed number of variables. Terms are kept in
/// graded-lex order and never hold a zero coefficient.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, double, GradedLexLess>;

  /// The zero polynomial in `dimension` variables.
  explicit Polynomial(int dimension = 1);

  static Polynomial constant(int dimension, double value);
  static Polynomial variable(int dimension, int index);
  static Polynomial from_monomial(const Monomial& m, double coefficient = 1.0);

  int dimension() const { return dimension_; }
  /// Maximum |alpha| over stored terms; 0 for the zero polynomial.
  int degree() const;
  bool is_zero() const { return terms_.empty(); }
  bool is_homogeneous() const;
  std::size_t size() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }
  double coefficient(const Monomial& m) const;

  /// Adds `value` to the coefficient of `m` and prunes the term if it
  /// falls below `prune_tol`.
  void add_term(const Monomial& m, double value, double prune_tol = kDefaultPruneTolerance);

  Polynomial pruned(double tol) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(double scalar);

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.dimension_ == b.dimension_ && a.terms_ == b.terms_;
  }

 private:
  int dimension_;
  TermMap terms_;
};

Polynomial operator+(Polynomial a, const Polynomial& b);
Polynomial operator-(Polynomial a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial operator*(double scalar, Polynomial f);
Polynomial operator*(Polynomial f, double scalar);
Polynomial operator+(Polynomial f, double c);
Polynomial operator-(Polynomial f, double c);
Polynomial operator-(double c, const Polynomial& f);

Polynomial pow(const Polynomial& f, int exponent);

/// Sum of a_alpha x^alpha accumulated in graded-lex term order.
double evaluate(const Polynomial& f, std::span<const double> x);

/// Flattened polynomial for repeated evaluation in grid loops. Produces
/// bitwise the same values as evaluate().
class CompiledPolynomial {
 public:
  CompiledPolynomial() = default;
  explicit CompiledPolynomial(const Polynomial& f);

  int dimension() const { return dimension_; }
  double operator()(const double* x) const;

 private:
  int dimension_ = 0;
  std::vector<int> exponents_;  // row-major, one row per term
  std::vector<double> coefficients_;
};

/// |alpha|! / (alpha_1! ... alpha_n!). Exact integer arithmetic while the
/// value fits in 64 bits, log-gamma otherwise.
double multinomial(std::span<const int> alpha);

/// max_alpha |a_alpha| / multinomial(alpha); 0 for the zero polynomial.
double weighted_norm(const Polynomial& f);

/// 2 d n^d ||f||, a bound on |f| over [-1,1]^n. Requires deg f >= 1.
double sup_bound(const Polynomial& f);

/// d^2 n^(d-1) sqrt(n) ||f||, a Lipschitz constant of f on [-1,1]^n.
/// Requires f != 0.
double lipschitz_bound(const Polynomial& f);

/// f(r X): each a_alpha becomes a_alpha r^|alpha|. Requires r > 0.
Polynomial rescale(const Polynomial& f, double r);

/// prod_i (1 + deg p_i) * prod_i ||p_i||, an upper bound on ||p_1 ... p_s||.
double product_norm_bound(std::span<const Polynomial> factors);

/// Text form `2*x1^2*x2 - 3*x2 + 1`, coefficients at 17 significant digits.
std::string to_string(const Polynomial& f);

/// Parses the text form. Variables are x1..xn; when `dimension` is empty,
/// n is the largest index seen (at least 1).
Polynomial parse_polynomial(std::string_view text, std::optional<int> dimension = std::nullopt);

}  // namespace poslab
