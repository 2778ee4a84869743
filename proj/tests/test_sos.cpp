#include <gtest/gtest.h>

#include <random>

#include "poslab/errors.hpp"
#include "poslab/sos.hpp"
#include "test_util.hpp"

using namespace poslab;

namespace {

Polynomial P(const char* s, int n) { return parse_polynomial(s, n); }

SemialgebraicSystem interval() { return SemialgebraicSystem(1, {P("1 - x1^2", 1)}); }
SemialgebraicSystem box2() { return SemialgebraicSystem(2, {P("1 - x1^2", 2), P("1 - x2^2", 2)}); }

MembershipProblem problem(Polynomial f, SemialgebraicSystem s, int k,
                          CertificateMode mode = CertificateMode::quadratic_module) {
  return MembershipProblem{std::move(f), std::move(s), k, mode};
}

double grid_minimum(const Polynomial& f, const SemialgebraicSystem& s) {
  return grid_min(f, s, GridSpec::defaults(s.dimension())).minimum_value;
}

}  // namespace

TEST(MonomialBasis, Examples) {
  const MonomialBasis a = monomial_basis(1, 2);
  ASSERT_EQ(a.size(), 3u);
  EXPECT_EQ(a[0], Monomial({0}));
  EXPECT_EQ(a[1], Monomial({1}));
  EXPECT_EQ(a[2], Monomial({2}));
  const MonomialBasis b = monomial_basis(2, 1);
  ASSERT_EQ(b.size(), 3u);
  EXPECT_EQ(b[0], Monomial({0, 0}));
  EXPECT_EQ(b[1], Monomial({1, 0}));
  EXPECT_EQ(b[2], Monomial({0, 1}));
  EXPECT_EQ(monomial_basis(2, 2).size(), 6u);
  EXPECT_THROW(monomial_basis(10, 10), CapacityError);
  EXPECT_THROW(MonomialBasis(1, {Monomial({1}), Monomial({0})}), ArgumentError);
}

TEST(MonomialBasis, SizeAndOrder) {
  for (int n = 1; n <= 4; ++n) {
    for (int d = 0; d <= 5; ++d) {
      const MonomialBasis b = monomial_basis(n, d);
      EXPECT_EQ(static_cast<double>(b.size()), basis_size(n, d));
      for (std::size_t i = 1; i < b.size(); ++i) {
        EXPECT_TRUE(graded_lex_less(b[i - 1].exponents(), b[i].exponents()));
      }
    }
  }
}

TEST(SosDecompose, Examples) {
  const MembershipResult sq = sos_decompose(P("x1^2 + 2*x1 + 1", 1));
  ASSERT_TRUE(sq.found) << sq.reason;
  EXPECT_LE(sq.certificate->entries[0].gram.cwiseAbs().maxCoeff() - 1.0, 1e-6);
  EXPECT_NEAR(sq.certificate->entries[0].gram(0, 1), 1.0, 1e-6);

  const MembershipResult neg = sos_decompose(P("x1^2 - 2*x1", 1));
  EXPECT_FALSE(neg.found);
  EXPECT_FALSE(neg.reason.empty());

  const MembershipResult zero = sos_decompose(Polynomial(1));
  ASSERT_TRUE(zero.found);
  EXPECT_LE(zero.certificate->entries[0].gram.norm(), 1e-8);

  EXPECT_FALSE(sos_decompose(P("x1^3", 1)).found);
}

TEST(ModuleMembership, Examples) {
  const MembershipResult a = module_membership(problem(P("2 + x1", 1), interval(), 2));
  ASSERT_TRUE(a.found) << a.reason;
  EXPECT_TRUE(verify(*a.certificate, P("2 + x1", 1)).pass);
  EXPECT_EQ(a.level, 2);

  for (int k = 0; k <= 10; k += 2) {
    const MembershipResult r = module_membership(problem(P("-1", 1), interval(), k));
    EXPECT_FALSE(r.found) << k;
    EXPECT_NE(r.reason.find(std::to_string(k)), std::string::npos) << r.reason;
  }

  const MembershipResult b = module_membership(problem(P("x1^2 + x2^2", 2), SemialgebraicSystem(2), 2));
  ASSERT_TRUE(b.found) << b.reason;
  EXPECT_EQ(b.certificate->entries.size(), 1u);

  const MembershipResult low = module_membership(problem(P("x1^4 + 1", 1), interval(), 2));
  EXPECT_FALSE(low.found);
  EXPECT_NE(low.reason.find("below"), std::string::npos);
}

TEST(PreorderingMembership, Examples) {
  const Polynomial f = P("x1^4 - x1^2 + 1", 1);
  const MembershipResult a = preordering_membership(problem(f, SemialgebraicSystem(1), 4, CertificateMode::preordering));
  const MembershipResult b = sos_decompose(f);
  ASSERT_TRUE(a.found && b.found);
  EXPECT_EQ(a.certificate->entries.size(), 1u);

  EXPECT_TRUE(preordering_membership(problem(P("2 + x1", 1), interval(), 2, CertificateMode::preordering)).found);

  const SemialgebraicSystem quadrant(2, {P("x1", 2), P("x2", 2)});
  const MembershipResult t = preordering_membership(problem(P("x1*x2", 2), quadrant, 2, CertificateMode::preordering));
  ASSERT_TRUE(t.found) << t.reason;
  EXPECT_TRUE(verify(*t.certificate, P("x1*x2", 2)).pass);
  EXPECT_FALSE(module_membership(problem(P("x1*x2", 2), quadrant, 2)).found);

  std::vector<Polynomial> many(13, P("1 - x1^2", 1));
  EXPECT_THROW(preordering_membership(problem(P("1", 1), SemialgebraicSystem(1, many), 2, CertificateMode::preordering)),
               CapacityError);
}

TEST(LasserreBound, Examples) {
  const LasserreResult a = lasserre_bound(P("x1", 1), interval(), 2);
  ASSERT_EQ(a.kind, BoundKind::finite) << a.reason;
  EXPECT_NEAR(a.lower_bound, -1.0, 1e-6);
  EXPECT_TRUE(a.report.pass);

  const LasserreResult b = lasserre_bound(P("1", 1), interval(), 2);
  ASSERT_EQ(b.kind, BoundKind::finite) << b.reason;
  EXPECT_NEAR(b.lower_bound, 1.0, 1e-6);

  const LasserreResult c = lasserre_bound(P("x1 + x2 + 2", 2), box2(), 2);
  ASSERT_EQ(c.kind, BoundKind::finite) << c.reason;
  EXPECT_NEAR(c.lower_bound, 0.0, 1e-6);

  EXPECT_EQ(lasserre_bound(P("x1", 1), SemialgebraicSystem(1), 2).kind, BoundKind::minus_infinity);
  EXPECT_EQ(lasserre_bound(P("x1", 1), SemialgebraicSystem(1, {P("-1 - x1^2", 1)}), 2).kind, BoundKind::plus_infinity);
  const LasserreResult low = lasserre_bound(P("x1^4", 1), interval(), 2);
  EXPECT_EQ(low.kind, BoundKind::inconclusive);
  EXPECT_FALSE(low.reason.empty());
}

TEST(LasserreBound, CertificatesVerify) {
  const LasserreResult a = lasserre_bound(P("x1^3 - x1", 1), interval(), 4);
  ASSERT_EQ(a.kind, BoundKind::finite) << a.reason;
  ASSERT_TRUE(a.certificate.has_value());
  const VerificationReport r = verify(*a.certificate, P("x1^3 - x1", 1) - a.lower_bound);
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.residual_norm, 1e-6);
  EXPECT_GE(r.min_gram_eigenvalue, -1e-8);
}

TEST(LasserreBound, MonotoneAndBelowGridMinimum) {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 6; ++t) {
    const int n = 1 + t % 2;
    const Polynomial f = testutil::random_nonzero_poly(rng, n, 3, 5);
    const SemialgebraicSystem s = n == 1 ? interval() : box2();
    const double fstar = grid_minimum(f, s);
    const int start = std::max(2, f.degree() + f.degree() % 2);
    double previous = -INFINITY;
    for (int k = start; k <= start + 4; k += 2) {
      const LasserreResult r = lasserre_bound(f, s, k);
      ASSERT_EQ(r.kind, BoundKind::finite) << to_string(f) << " k=" << k << " " << r.reason;
      EXPECT_TRUE(r.report.pass);
      EXPECT_LE(previous, r.lower_bound + 1e-6) << to_string(f) << " k=" << k;
      EXPECT_LE(r.lower_bound, fstar + 1e-6) << to_string(f) << " k=" << k;
      previous = r.lower_bound;
    }
  }
}

TEST(ModuleMembership, FoundResultsAreSound) {
  std::mt19937_64 rng(62);
  int found = 0;
  for (int t = 0; t < 20; ++t) {
    const Polynomial f = testutil::random_poly(rng, 1, 4, 4) + 3.0;
    const MembershipResult r = module_membership(problem(f, interval(), 4));
    if (!r.found) continue;
    ++found;
    EXPECT_TRUE(verify(*r.certificate, f, 1e-6).pass);
  }
  EXPECT_GT(found, 0);
}

TEST(ModuleMembership, PositiveOnArchimedeanSetIsFoundAtSomeLevel) {
  struct Fixture {
    Polynomial f;
    SemialgebraicSystem s;
  };
  const Fixture fixtures[] = {
      {P("x1 + 1.1", 1), interval()},
      {P("x1^3 + 1.05", 1), interval()},
      {P("x1 + x2 + 2.2", 2), box2()},
      {P("1.1 - x1*x2", 2), SemialgebraicSystem(2, {P("1 - x1^2 - x2^2", 2)})},
      {P("x1^2 - x1 + 0.3", 1), interval()},
  };
  for (const Fixture& fx : fixtures) {
    ASSERT_GT(grid_minimum(fx.f, fx.s), 0.0);
    int found_at = -1;
    for (int k = std::max(2, fx.f.degree() + fx.f.degree() % 2); k <= 10 && found_at < 0; k += 2) {
      if (module_membership(problem(fx.f, fx.s, k)).found) found_at = k;
    }
    EXPECT_GE(found_at, 0) << to_string(fx.f);
  }
}

TEST(PreorderingMembership, DominatesTheModule) {
  std::mt19937_64 rng(63);
  const SemialgebraicSystem s(2, {P("1 - x1^2", 2), P("x2 + 1", 2), P("1 - x2", 2)});
  for (int t = 0; t < 12; ++t) {
    const Polynomial f = testutil::random_poly(rng, 2, 2, 4) + 2.0;
    const MembershipResult m = module_membership(problem(f, s, 2));
    const MembershipResult p = preordering_membership(problem(f, s, 2, CertificateMode::preordering));
    if (m.found) {
      EXPECT_TRUE(p.found) << to_string(f);
    }
    if (p.found) {
      EXPECT_TRUE(verify(*p.certificate, f).pass);
    }
  }
}

TEST(ArchimedeanWitness, RequiresEvenLevel) {
  EXPECT_THROW(archimedean_witness(interval(), 1.0, 1), ArgumentError);
  EXPECT_TRUE(archimedean_witness(interval(), 2.0, 2).found);
}
