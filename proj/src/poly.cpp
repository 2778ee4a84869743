#include "poslab/poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "poslab/errors.hpp"

namespace poslab {

namespace {

void require_same_dimension(const Polynomial& a, const Polynomial& b) {
  if (a.dimension() != b.dimension()) {
    throw ArgumentError("polynomial dimension mismatch: " + std::to_string(a.dimension()) +
                        " vs " + std::to_string(b.dimension()));
  }
}

double int_power(double base, int e) {
  double result = 1.0;
  for (int i = 0; i < e; ++i) result *= base;
  return result;
}

// a * x^alpha, the factor order shared by evaluate() and CompiledPolynomial.
inline double term_value(double coefficient, const int* alpha, int n, const double* x) {
  double value = coefficient;
  for (int i = 0; i < n; ++i) {
    if (alpha[i] != 0) value *= int_power(x[i], alpha[i]);
  }
  return value;
}

// C(total, k) exactly, or nullopt on 64-bit overflow.
std::optional<std::uint64_t> exact_binomial(int total, int k) {
  unsigned __int128 c = 1;
  for (int j = 1; j <= k; ++j) {
    c = c * static_cast<unsigned __int128>(total - k + j) / static_cast<unsigned __int128>(j);
    if (c > static_cast<unsigned __int128>(UINT64_MAX)) return std::nullopt;
  }
  return static_cast<std::uint64_t>(c);
}

}  // namespace

Monomial::Monomial(std::vector<int> exponents) : exponents_(std::move(exponents)) {
  for (int e : exponents_) {
    if (e < 0) throw ArgumentError("negative exponent in monomial");
    degree_ += e;
  }
}

Monomial Monomial::one(int dimension) {
  if (dimension < 1) throw ArgumentError("monomial dimension must be >= 1");
  return Monomial(std::vector<int>(static_cast<std::size_t>(dimension), 0));
}

Monomial Monomial::variable(int dimension, int index, int power) {
  if (index < 0 || index >= dimension) throw ArgumentError("variable index out of range");
  std::vector<int> e(static_cast<std::size_t>(dimension), 0);
  e[static_cast<std::size_t>(index)] = power;
  return Monomial(std::move(e));
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (other.dimension() != dimension()) throw ArgumentError("monomial dimension mismatch");
  std::vector<int> e(exponents_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.exponents_[i];
  return Monomial(std::move(e));
}

bool graded_lex_less(std::span<const int> a, std::span<const int> b) {
  int da = 0, db = 0;
  for (int e : a) da += e;
  for (int e : b) db += e;
  if (da != db) return da < db;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return a.size() < b.size();
}

Polynomial::Polynomial(int dimension) : dimension_(dimension) {
  if (dimension < 1) throw ArgumentError("polynomial dimension must be >= 1");
}

Polynomial Polynomial::constant(int dimension, double value) {
  Polynomial p(dimension);
  p.add_term(Monomial::one(dimension), value);
  return p;
}

Polynomial Polynomial::variable(int dimension, int index) {
  Polynomial p(dimension);
  p.add_term(Monomial::variable(dimension, index), 1.0);
  return p;
}

Polynomial Polynomial::from_monomial(const Monomial& m, double coefficient) {
  Polynomial p(m.dimension());
  p.add_term(m, coefficient);
  return p;
}

int Polynomial::degree() const {
  // Graded order puts the highest degree last.
  return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  return terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
}

double Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0.0 : it->second;
}

void Polynomial::add_term(const Monomial& m, double value, double prune_tol) {
  if (m.dimension() != dimension_) throw ArgumentError("monomial dimension mismatch");
  auto [it, inserted] = terms_.try_emplace(m, 0.0);
  it->second += value;
  if (std::abs(it->second) < prune_tol || it->second == 0.0) terms_.erase(it);
}

Polynomial Polynomial::pruned(double tol) const {
  Polynomial out(dimension_);
  for (const auto& [m, c] : terms_) {
    if (std::abs(c) >= tol) out.terms_.emplace_hint(out.terms_.end(), m, c);
  }
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(*this);
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_dimension(*this, other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_dimension(*this, other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(double scalar) {
  for (auto& [m, c] : terms_) c *= scalar;
  *this = pruned(kDefaultPruneTolerance);
  return *this;
}

Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_dimension(a, b);
  Polynomial::TermMap acc;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) acc[ma * mb] += ca * cb;
  }
  Polynomial out(a.dimension());
  for (const auto& [m, c] : acc) out.add_term(m, c);
  return out;
}

Polynomial operator*(double scalar, Polynomial f) { return f *= scalar; }
Polynomial operator*(Polynomial f, double scalar) { return f *= scalar; }

Polynomial operator+(Polynomial f, double c) {
  f.add_term(Monomial::one(f.dimension()), c);
  return f;
}

Polynomial operator-(Polynomial f, double c) { return std::move(f) + (-c); }
Polynomial operator-(double c, const Polynomial& f) { return (-f) + c; }

Polynomial pow(const Polynomial& f, int exponent) {
  if (exponent < 0) throw ArgumentError("negative polynomial power");
  Polynomial result = Polynomial::constant(f.dimension(), 1.0);
  Polynomial base = f;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

double evaluate(const Polynomial& f, std::span<const double> x) {
  if (static_cast<int>(x.size()) != f.dimension()) {
    throw ArgumentError("evaluation point has length " + std::to_string(x.size()) +
                        ", polynomial has dimension " + std::to_string(f.dimension()));
  }
  double sum = 0.0;
  for (const auto& [m, c] : f.terms()) sum += term_value(c, m.exponents().data(), f.dimension(), x.data());
  return sum;
}

CompiledPolynomial::CompiledPolynomial(const Polynomial& f) : dimension_(f.dimension()) {
  exponents_.reserve(f.size() * static_cast<std::size_t>(dimension_));
  coefficients_.reserve(f.size());
  for (const auto& [m, c] : f.terms()) {
    exponents_.insert(exponents_.end(), m.exponents().begin(), m.exponents().end());
    coefficients_.push_back(c);
  }
}

double CompiledPolynomial::operator()(const double* x) const {
  double sum = 0.0;
  const int* alpha = exponents_.data();
  for (double c : coefficients_) {
    sum += term_value(c, alpha, dimension_, x);
    alpha += dimension_;
  }
  return sum;
}

double multinomial(std::span<const int> alpha) {
  std::uint64_t result = 1;
  int running = 0;
  bool overflow = false;
  for (int a : alpha) {
    if (a < 0) throw ArgumentError("negative exponent in multinomial");
    running += a;
    auto c = exact_binomial(running, a);
    if (!c || __builtin_mul_overflow(result, *c, &result)) {
      overflow = true;
      break;
    }
  }
  if (!overflow) return static_cast<double>(result);
  int total = 0;
  for (int a : alpha) total += a;
  long double log_value = std::lgamma(static_cast<long double>(total) + 1.0L);
  for (int a : alpha) log_value -= std::lgamma(static_cast<long double>(a) + 1.0L);
  return static_cast<double>(std::exp(log_value));
}

double weighted_norm(const Polynomial& f) {
  double norm = 0.0;
  for (const auto& [m, c] : f.terms()) norm = std::max(norm, std::abs(c) / multinomial(m.exponents()));
  return norm;
}

double sup_bound(const Polynomial& f) {
  const int d = f.degree();
  if (d < 1) throw ArgumentError("sup_bound requires degree >= 1");
  const double n = f.dimension();
  return 2.0 * d * std::pow(n, d) * weighted_norm(f);
}

double lipschitz_bound(const Polynomial& f) {
  if (f.is_zero()) throw ArgumentError("lipschitz_bound requires a nonzero polynomial");
  const int d = f.degree();
  const double n = f.dimension();
  return static_cast<double>(d) * d * std::pow(n, d - 1) * std::sqrt(n) * weighted_norm(f);
}

Polynomial rescale(const Polynomial& f, double r) {
  if (!(r > 0.0)) throw ArgumentError("rescale factor must be positive");
  Polynomial out(f.dimension());
  for (const auto& [m, c] : f.terms()) out.add_term(m, c * std::pow(r, m.degree()));
  return out;
}

double product_norm_bound(std::span<const Polynomial> factors) {
  double bound = 1.0;
  for (const Polynomial& p : factors) {
    if (p.is_zero()) throw ArgumentError("product_norm_bound requires nonzero factors");
    bound *= (1.0 + p.degree()) * weighted_norm(p);
  }
  return bound;
}

}  // namespace poslab
