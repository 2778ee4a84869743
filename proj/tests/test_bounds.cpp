#include <gtest/gtest.h>

#include <cmath>

#include "poslab/bounds.hpp"
#include "poslab/errors.hpp"
#include "test_util.hpp"

using namespace poslab;

namespace {

Polynomial P(const char* s, int n) { return parse_polynomial(s, n); }

SemialgebraicSystem interval() { return SemialgebraicSystem(1, {P("1 - x1^2", 1)}); }

BoundInputs inputs(double c, int d, int n, double norm, double fstar, std::int64_t k = 0) {
  BoundInputs b;
  b.c = c;
  b.d = d;
  b.n = n;
  b.norm_f = norm;
  b.f_star = fstar;
  b.k = k;
  return b;
}

GridSpec line_grid(int points) {
  GridSpec g = GridSpec::defaults(1);
  g.points_per_axis = points;
  return g;
}

}  // namespace

TEST(SchmuedgenBound, Examples) {
  EXPECT_DOUBLE_EQ(schmuedgen_degree_bound(inputs(1, 1, 1, 1, 1)), 2.0);
  EXPECT_DOUBLE_EQ(schmuedgen_degree_bound(inputs(1, 2, 1, 1, 1)), 20.0);
  EXPECT_DOUBLE_EQ(schmuedgen_degree_bound(inputs(2, 1, 2, 1, 2)), 4.0);
  EXPECT_THROW(schmuedgen_degree_bound(inputs(0, 1, 1, 1, 1)), ArgumentError);
  EXPECT_THROW(schmuedgen_degree_bound(inputs(1, 1, 1, 1, -1)), ArgumentError);
}

TEST(PutinarBound, Examples) {
  EXPECT_NEAR(putinar_degree_bound(inputs(1, 1, 1, 1, 1)).value, std::exp(1.0), 1e-12);
  EXPECT_NEAR(putinar_degree_bound(inputs(1, 1, 1, 1, 2)).value, 1.6487212707, 1e-9);
  const BoundValue big = putinar_degree_bound(inputs(1, 10, 3, 1, 1));
  EXPECT_TRUE(big.saturated);
  EXPECT_TRUE(std::isinf(big.value));
}

TEST(GapBound, Examples) {
  const BoundValue a = gap_bound(inputs(1, 1, 1, 1, 1, 8));
  ASSERT_TRUE(a.applicable);
  EXPECT_NEAR(a.value, 6.0 / std::log(8.0), 1e-12);
  EXPECT_NEAR(a.value, 2.8854, 1e-4);
  EXPECT_NEAR(a.threshold, std::exp(2.0), 1e-12);
  EXPECT_FALSE(gap_bound(inputs(1, 1, 1, 1, 1, 7)).applicable);
  EXPECT_NEAR(gap_bound(inputs(1, 1, 1, 2, 1, 8)).value, 12.0 / std::log(8.0), 1e-12);
}

TEST(GapBound, StrictlyDecreasingInK) {
  for (double c : {1.0, 1.5}) {
    const BoundInputs base = inputs(c, 1, 1, 1.0, 1.0);
    double previous = INFINITY, first = INFINITY;
    int applicable = 0;
    for (std::int64_t k = 2; k < (std::int64_t{1} << 60); k *= 2) {
      BoundInputs b = base;
      b.k = k;
      const BoundValue v = gap_bound(b);
      if (!v.applicable) continue;
      if (applicable++ == 0) first = v.value;
      EXPECT_LT(v.value, previous) << "c=" << c << " k=" << k;
      previous = v.value;
    }
    EXPECT_GT(applicable, 40);
    EXPECT_LT(previous, 0.2 * first);
  }
}

TEST(DegreeBounds, PutinarDominatesSchmuedgen) {
  for (double c : {1.0, 1.5, 2.0}) {
    for (int d : {1, 2, 3}) {
      for (int n : {1, 2}) {
        for (double ratio : {1.0, 2.0, 5.0}) {
          const BoundInputs b = inputs(c, d, n, ratio, 1.0);
          const BoundValue p = putinar_degree_bound(b);
          EXPECT_GE(p.value, schmuedgen_degree_bound(b)) << c << " " << d << " " << n << " " << ratio;
        }
      }
    }
  }
}

TEST(LiftingTransform, Examples) {
  const Polynomial f = P("x1 + 2", 1);
  EXPECT_EQ(lifting_transform(f, interval(), 0.0, 1), f);
  EXPECT_EQ(lifting_transform(f, interval(), 1.0, 1), P("x1 + 2 - x1^4 + x1^6", 1));
  EXPECT_EQ(lifting_transform(f, SemialgebraicSystem(1), 5.0, 3), f);
  EXPECT_THROW(lifting_transform(f, interval(), -1.0, 1), ArgumentError);
  EXPECT_THROW(lifting_transform(f, interval(), 1.0, 0), ArgumentError);
  LiftingCaps caps;
  caps.max_degree = 10;
  EXPECT_THROW(lifting_transform(f, interval(), 1.0, 3, caps), CapacityError);
}

TEST(LiftingTransform, PointwiseValueMatchesExpansion) {
  std::mt19937_64 rng(71);
  for (int t = 0; t < 100; ++t) {
    const SemialgebraicSystem s(2, {testutil::random_poly(rng, 2, 2, 3), testutil::random_poly(rng, 2, 1, 2)});
    const Polynomial f = testutil::random_poly(rng, 2, 3, 4);
    const Polynomial h = lifting_transform(f, s, 0.7, 2);
    const std::vector<double> x = testutil::random_point(rng, 2);
    EXPECT_NEAR(evaluate(h, x), lifting_value(f, s, 0.7, 2, x), 1e-9 * (1 + std::abs(evaluate(h, x))));
  }
}

TEST(LiftingTransform, DominatedByFOnTheSet) {
  std::mt19937_64 rng(72);
  const TensorGrid grid(unit_box(2), 41);
  std::vector<double> x(2);
  int checked = 0;
  for (int t = 0; t < 20; ++t) {
    const SemialgebraicSystem s(2, {P("1 - x1^2 - x2^2", 2), testutil::random_poly(rng, 2, 2, 3) * 0.5 + 0.5});
    const Polynomial f = testutil::random_poly(rng, 2, 3, 4);
    for (int k : {1, 2, 3}) {
      const Polynomial h = lifting_transform(f, s, 3.0, k);
      for (std::uint64_t i = 0; i < grid.size(); ++i) {
        grid.point(i, x.data());
        bool unit = true;
        for (const Polynomial& g : s.constraints()) {
          const double v = evaluate(g, x);
          unit = unit && v >= 0.0 && v <= 1.0;
        }
        if (!unit) continue;
        ++checked;
        EXPECT_LE(evaluate(h, x), evaluate(f, x) + 1e-9);
      }
    }
  }
  EXPECT_GT(checked, 1000);
}

TEST(FindLiftingK, Examples) {
  const Polynomial f = P("x1 + 2", 1);
  const LiftingSearch a = find_lifting_k(f, interval(), 0.1, line_grid(10001), 10);
  ASSERT_TRUE(a.found);
  EXPECT_EQ(a.k, 1);
  EXPECT_DOUBLE_EQ(a.f_star, 1.0);
  EXPECT_GE(a.min_h, 0.5);

  const LiftingSearch zero = find_lifting_k(f, interval(), 0.0, line_grid(101), 5);
  ASSERT_TRUE(zero.found);
  EXPECT_EQ(zero.k, 1);

  const LiftingSearch huge = find_lifting_k(f, interval(), 1e6, line_grid(10001), 3);
  EXPECT_FALSE(huge.found);
  EXPECT_EQ(huge.min_h_by_k.size(), 3u);

  EXPECT_THROW(find_lifting_k(f, SemialgebraicSystem(1, {P("2 - x1^2", 1)}), 0.1, line_grid(101), 3), ArgumentError);
  EXPECT_THROW(find_lifting_k(P("x1", 1), interval(), 0.1, line_grid(101), 3), ArgumentError);
}

TEST(FindLiftingK, MonotoneInLambda) {
  const struct {
    const char* f;
    const char* g;
  } fixtures[] = {{"x1 + 2", "1 - x1^2"}, {"x1 + 1.5", "1 - x1^2"}, {"x1^2 + 0.5", "x1"}};
  for (const auto& fx : fixtures) {
    const Polynomial f = P(fx.f, 1);
    const SemialgebraicSystem s(1, {P(fx.g, 1)});
    int previous = 0;
    for (double lambda : {0.0, 0.1, 1.0, 10.0, 100.0, 1000.0}) {
      const LiftingSearch r = find_lifting_k(f, s, lambda, line_grid(2001), 60);
      const int k = r.found ? r.k : 61;
      EXPECT_GE(k, previous) << fx.f << " lambda " << lambda;
      previous = k;
    }
  }
}

TEST(LiftingParameters, Examples) {
  // f = x + 2 on [-1,1]: d = 1, n = 1, |f| = 2, f* = 1 gives L = 2, lambda = c1 * 2 * 2^c2.
  const LiftingParameters p = lifting_parameters(P("x1 + 2", 1), interval(), 1.0, 1.0, 1.0, line_grid(101));
  EXPECT_DOUBLE_EQ(p.L, 2.0);
  EXPECT_DOUBLE_EQ(p.lambda, 4.0);
  EXPECT_EQ(p.k, 1);
  EXPECT_TRUE(p.claim_holds);

  // 0.5 x + 1.5 on [0,1]: |f| = 1.5, f* = 1.5, so L = 1 and lambda = 1.5.
  const LiftingParameters q = lifting_parameters(P("0.5*x1 + 1.5", 1), SemialgebraicSystem(1, {P("x1", 1)}), 1.0, 1.0,
                                                 1.0, line_grid(101));
  EXPECT_DOUBLE_EQ(q.L, 1.0);
  EXPECT_DOUBLE_EQ(q.lambda, 1.5);

  // c0 = 3, L = 2: 2k + 1 >= 27.
  const LiftingParameters r = lifting_parameters(P("x1 + 2", 1), interval(), 3.0, 1.0, 1.0, line_grid(101));
  EXPECT_EQ(r.k, 13);
  EXPECT_FALSE(r.k_saturated);

  EXPECT_THROW(lifting_parameters(P("x1 + 2", 1), interval(), 0.0, 1.0, 1.0, line_grid(101)), ArgumentError);
}

TEST(Lojasiewicz, Examples) {
  const LojasiewiczFit lin = lojasiewicz_estimate(SemialgebraicSystem(1, {P("x1", 1)}), line_grid(1001), 2000);
  EXPECT_NEAR(lin.c2_exponent, 1.0, 0.05);
  EXPECT_NEAR(lin.c3_scale, 1.0, 0.05);
  EXPECT_EQ(lin.max_violation, 0.0);

  const LojasiewiczFit cube = lojasiewicz_estimate(SemialgebraicSystem(1, {P("x1^3", 1)}), line_grid(1001), 2000);
  EXPECT_NEAR(cube.c2_exponent, 3.0, 0.1);
  EXPECT_EQ(cube.max_violation, 0.0);

  GridSpec wide = line_grid(2001);
  wide.box = {{-2.0, 2.0}};
  const LojasiewiczFit w = lojasiewicz_estimate(interval(), wide, 2000);
  EXPECT_NEAR(w.c2_exponent, 1.0, 0.1);
  EXPECT_EQ(w.max_violation, 0.0);

  EXPECT_THROW(lojasiewicz_estimate(SemialgebraicSystem(1, {P("2 - x1^2", 1)}), line_grid(101), 100),
               DegenerateFitError);
}

TEST(Lojasiewicz, FitHoldsOnItsSamplesAndIsSeeded) {
  std::mt19937_64 rng(73);
  for (int t = 0; t < 5; ++t) {
    const SemialgebraicSystem s(2, {P("0.5 - x1^2 - x2^2", 2) + testutil::random_poly(rng, 2, 2, 2) * 0.1});
    GridSpec g = GridSpec::defaults(2);
    g.points_per_axis = 61;
    const LojasiewiczFit a = lojasiewicz_estimate(s, g, 500, 7);
    const LojasiewiczFit b = lojasiewicz_estimate(s, g, 500, 7);
    EXPECT_EQ(a.max_violation, 0.0);
    EXPECT_GT(a.c2_exponent, 0.0);
    EXPECT_GT(a.c3_scale, 0.0);
    EXPECT_EQ(a.c2_exponent, b.c2_exponent);
    EXPECT_EQ(a.c3_scale, b.c3_scale);
    EXPECT_EQ(a.seed, 7u);
  }
}

TEST(RoundedHypercube, Examples) {
  EXPECT_EQ(rounded_hypercube(2, 2), P("0.5 - x1^4 - x2^4", 2));

  const RoundResult point = round_hypercube_degree(SemialgebraicSystem(1, {P("x1", 1), P("-x1", 1)}), line_grid(101), 10);
  ASSERT_TRUE(point.found);
  EXPECT_EQ(point.degree, 2);
  EXPECT_EQ(*point.polynomial, rounded_hypercube(1, 2));

  const RoundResult half = round_hypercube_degree(SemialgebraicSystem(1, {P("0.25 - x1^2", 1)}), line_grid(101), 10);
  ASSERT_TRUE(half.found);
  EXPECT_EQ(half.degree, 2);

  const SemialgebraicSystem corner(2, {P("x1 - 0.99", 2), P("x2 - 0.99", 2), P("1.98 - x1 - x2", 2)});
  GridSpec g = GridSpec::defaults(2);
  g.points_per_axis = 201;
  const RoundResult c = round_hypercube_degree(corner, g, 20);
  EXPECT_FALSE(c.found);
  EXPECT_FALSE(c.reason.empty());

  EXPECT_THROW(round_hypercube_degree(interval(), line_grid(101), 10), ArgumentError);
}
