#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "poslab/certificate.hpp"
#include "poslab/errors.hpp"
#include "test_util.hpp"

using namespace poslab;
using Eigen::MatrixXd;

namespace {

Polynomial P(const char* s, int n) { return parse_polynomial(s, n); }

MatrixXd M(std::initializer_list<std::initializer_list<double>> rows) {
  MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

CertificateEntry entry(int index, MonomialBasis basis, MatrixXd gram) {
  CertificateEntry e;
  e.index = index;
  e.basis = std::move(basis);
  e.gram = std::move(gram);
  return e;
}

// 2 + X = ((X+1)^2/2 + 1) + (1/2)(1 - X^2).
Certificate two_plus_x() {
  Certificate c;
  c.system = SemialgebraicSystem(1, {P("1 - x1^2", 1)});
  c.level = 2;
  c.entries = {entry(0, MonomialBasis(1, 1), M({{1.5, 0.5}, {0.5, 0.5}})), entry(1, MonomialBasis(1, 0), M({{0.5}}))};
  return c;
}

MatrixXd random_psd(std::mt19937_64& rng, int size, int rank) {
  std::normal_distribution<double> g(0.0, 1.0);
  MatrixXd b(size, std::max(rank, 1));
  for (Eigen::Index i = 0; i < b.size(); ++i) b.data()[i] = g(rng);
  if (rank == 0) b.setZero();
  return b * b.transpose();
}

// Random module certificate over random generators with PSD Gram matrices.
Certificate random_certificate(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(1, 2), gens(0, 2), level(0, 4);
  const int n = dim(rng), m = gens(rng), k = level(rng);
  std::vector<Polynomial> g;
  for (int i = 0; i < m; ++i) g.push_back(testutil::random_nonzero_poly(rng, n, 2, 3));
  Certificate c;
  c.system = SemialgebraicSystem(n, g);
  c.level = k + 4;
  for (int i = 0; i <= m; ++i) {
    const int gd = i == 0 ? 0 : g[static_cast<std::size_t>(i - 1)].degree();
    if (gd > c.level) continue;
    MonomialBasis b(n, (c.level - gd) / 2);
    std::uniform_int_distribution<int> rk(0, static_cast<int>(b.size()));
    c.entries.push_back(entry(i, b, random_psd(rng, static_cast<int>(b.size()), rk(rng))));
  }
  return c;
}

}  // namespace

TEST(Reconstruct, Examples) {
  Certificate one;
  one.system = SemialgebraicSystem(1);
  one.entries = {entry(0, MonomialBasis(1, 0), M({{1.0}}))};
  EXPECT_EQ(reconstruct(one), Polynomial::constant(1, 1.0));

  Certificate sq;
  sq.system = SemialgebraicSystem(1);
  sq.level = 2;
  sq.entries = {entry(0, MonomialBasis(1, 1), M({{1, 1}, {1, 1}}))};
  EXPECT_EQ(reconstruct(sq), P("x1^2 + 2*x1 + 1", 1));

  Certificate half;
  half.system = SemialgebraicSystem(1, {P("1 - x1^2", 1)});
  half.level = 2;
  half.entries = {entry(1, MonomialBasis(1, 0), M({{0.5}}))};
  EXPECT_EQ(reconstruct(half), P("0.5 - 0.5*x1^2", 1));

  EXPECT_EQ(reconstruct(two_plus_x()), P("2 + x1", 1));
}

TEST(Reconstruct, MalformedEntriesThrow) {
  Certificate c = two_plus_x();
  c.entries[0].gram = M({{1.0}});
  EXPECT_THROW(reconstruct(c), ArgumentError);
  c = two_plus_x();
  c.entries[1].index = 5;
  EXPECT_THROW(reconstruct(c), ArgumentError);
  c = two_plus_x();
  c.level = 1;
  EXPECT_THROW(reconstruct(c), ArgumentError);
}

TEST(Reconstruct, PreorderingProducts) {
  Certificate c;
  c.mode = CertificateMode::preordering;
  c.system = SemialgebraicSystem(2, {P("x1", 2), P("x2", 2)});
  c.level = 2;
  CertificateEntry e;
  e.delta = {1, 1};
  e.basis = MonomialBasis(2, 0);
  e.gram = M({{1.0}});
  c.entries = {e};
  EXPECT_EQ(reconstruct(c), P("x1*x2", 2));
}

TEST(Verify, Examples) {
  const VerificationReport ok = verify(two_plus_x(), P("2 + x1", 1));
  EXPECT_TRUE(ok.pass);
  EXPECT_LE(ok.residual_norm, 1e-12);
  EXPECT_EQ(ok.level, 2);

  for (int diag : {0, 1}) {
    Certificate bad = two_plus_x();
    bad.entries[0].gram(diag, diag) += 0.1;
    const VerificationReport r = verify(bad, P("2 + x1", 1));
    EXPECT_FALSE(r.pass);
    EXPECT_NEAR(r.residual_norm, 0.1, 1e-12);
  }

  Certificate zero;
  zero.system = SemialgebraicSystem(1);
  zero.entries = {entry(0, MonomialBasis(1, 0), M({{0.0}}))};
  EXPECT_TRUE(verify(zero, Polynomial(1)).pass);

  Certificate indefinite = two_plus_x();
  indefinite.entries[0].gram = M({{0, 1}, {1, 0}});
  EXPECT_FALSE(verify(indefinite, reconstruct(indefinite)).pass);

  Certificate malformed = two_plus_x();
  malformed.entries[0].gram = M({{1.0}});
  const VerificationReport m = verify(malformed, P("2 + x1", 1));
  EXPECT_FALSE(m.pass);
  EXPECT_TRUE(std::isinf(m.residual_norm));
}

TEST(RoundPsd, Examples) {
  const MatrixXd clipped = round_psd(M({{1, 0}, {0, -1e-10}}), 1e-8);
  EXPECT_NEAR((clipped - M({{1, 0}, {0, 0}})).cwiseAbs().maxCoeff(), 0.0, 1e-15);
  const MatrixXd psd = M({{2, 1}, {1, 2}});
  EXPECT_LE((round_psd(psd, 1e-8) - psd).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_THROW(round_psd(M({{0, 1}, {1, 0}}), 1e-8), RoundingError);
  EXPECT_THROW(round_psd(psd, -1.0), ArgumentError);
}

TEST(ExtractSquares, Examples) {
  Certificate sq;
  sq.system = SemialgebraicSystem(1);
  sq.level = 2;
  sq.entries = {entry(0, MonomialBasis(1, 1), M({{1, 1}, {1, 1}}))};
  const auto a = extract_squares(sq);
  ASSERT_EQ(a.size(), 1u);
  ASSERT_EQ(a[0].squares.size(), 1u);
  const Polynomial p = a[0].squares[0];
  EXPECT_LE(weighted_norm(p * p - P("x1^2 + 2*x1 + 1", 1)), 1e-14);
  EXPECT_LE(weighted_norm(p - P("1 + x1", 1)), 1e-14);

  sq.entries[0].gram = MatrixXd::Identity(2, 2);
  const auto b = extract_squares(sq);
  ASSERT_EQ(b[0].squares.size(), 2u);
  Polynomial sum(1);
  for (const Polynomial& s : b[0].squares) sum += s * s;
  EXPECT_LE(weighted_norm(sum - P("1 + x1^2", 1)), 1e-14);

  sq.entries[0].gram = MatrixXd::Zero(2, 2);
  EXPECT_TRUE(extract_squares(sq)[0].squares.empty());
}

TEST(CertificateProperties, RoundTripVerifies) {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 300; ++t) {
    const Certificate c = random_certificate(rng);
    const Polynomial f = reconstruct(c);
    const VerificationReport r = verify(c, f, 1e-12);
    EXPECT_TRUE(r.pass) << "case " << t << " residual " << r.residual_norm << " eig " << r.min_gram_eigenvalue;
  }
}

TEST(CertificateProperties, SquaresReproduceTheCertificate) {
  std::mt19937_64 rng(52);
  for (int t = 0; t < 300; ++t) {
    const Certificate c = random_certificate(rng);
    Polynomial total(c.system.dimension());
    for (const SquareDecomposition& d : extract_squares(c)) {
      Polynomial sigma(c.system.dimension());
      for (const Polynomial& p : d.squares) sigma += p * p;
      total += sigma * d.generator;
    }
    EXPECT_LE(weighted_norm(reconstruct(c) - total), 1e-9) << "case " << t;
  }
}

TEST(CertificateProperties, SoundOnSamplesOfTheSet) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> noise(-1e-7, 1e-7);
  int checked = 0;
  for (int t = 0; t < 100; ++t) {
    const Certificate c = random_certificate(rng);
    const int n = c.system.dimension();
    // f is the certified polynomial plus a small residual.
    Polynomial f = reconstruct(c) + noise(rng);
    f.add_term(Monomial(std::vector<int>(static_cast<std::size_t>(n), 1)), noise(rng));
    const VerificationReport r = verify(c, f);
    ASSERT_TRUE(r.pass);
    const double slack = sup_bound(f - reconstruct(c));
    int samples = 0;
    for (int tries = 0; tries < 20000 && samples < 1000; ++tries) {
      const std::vector<double> x = testutil::random_point(rng, n);
      if (!contains(c.system, x, 0.0)) continue;
      ++samples;
      EXPECT_GE(evaluate(f, x), -slack - 1e-12);
    }
    checked += samples;
  }
  EXPECT_GT(checked, 10000);
}

TEST(CertificateMode, Parse) {
  EXPECT_EQ(parse_certificate_mode("preordering"), CertificateMode::preordering);
  EXPECT_EQ(to_string(CertificateMode::quadratic_module), "quadratic_module");
  EXPECT_THROW(parse_certificate_mode("schmuedgen"), ArgumentError);
}
