#include <cmath>

#include <gtest/gtest.h>

#include "gmbif/jet.hpp"

using namespace gmbif;

TEST(Jet2, IndexLayout) {
  EXPECT_EQ(Jet2::index(0, 0), 0u);
  EXPECT_EQ(Jet2::index(1, 0), 1u);
  EXPECT_EQ(Jet2::index(0, 1), 2u);
  EXPECT_EQ(Jet2::index(2, 0), 3u);
  EXPECT_EQ(Jet2::index(0, 3), 9u);
  EXPECT_EQ(Jet2::storage_size(5), 21u);
  Jet2 j(3);
  EXPECT_EQ(j.coeff(4, 0), 0.0);
  EXPECT_ANY_THROW(j.set(2, 2, 1.0));
}

TEST(Jet2, ProductTruncates) {
  const int n = 4;
  const Jet2 a = Jet2::constant(n, 1.0) + Jet2::x(n);
  const Jet2 b = Jet2::constant(n, 1.0) - Jet2::x(n);
  const Jet2 p = a * b;
  EXPECT_DOUBLE_EQ(p.coeff(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(p.coeff(2, 0), -1.0);
  EXPECT_DOUBLE_EQ(p.coeff(1, 0), 0.0);
  const Jet2 q = power(Jet2::x(n) + Jet2::y(n), 5);
  EXPECT_EQ(q.max_abs(), 0.0);
}

TEST(Jet2, GeometricSeries) {
  const int n = 7;
  const Jet2 r = reciprocal(Jet2::constant(n, 1.0) - Jet2::x(n) - Jet2::y(n));
  // 1/(1 - x - y) = sum (x + y)^k, coefficient of x^i y^j is binomial(i+j, i)
  EXPECT_DOUBLE_EQ(r.coeff(3, 2), 10.0);
  EXPECT_DOUBLE_EQ(r.coeff(4, 3), 35.0);
  EXPECT_DOUBLE_EQ(r.coeff(0, 7), 1.0);
  EXPECT_THROW(reciprocal(Jet2::x(n)), InvalidInput);
}

TEST(Jet2, DerivativesAndEval) {
  const int n = 5;
  const Jet2 f = Jet2::monomial(n, 3, 2, 2.0) + Jet2::monomial(n, 1, 0, -1.0);
  EXPECT_DOUBLE_EQ(dx(f).coeff(2, 2), 6.0);
  EXPECT_DOUBLE_EQ(dx(f).coeff(0, 0), -1.0);
  EXPECT_DOUBLE_EQ(dy(f).coeff(3, 1), 4.0);
  EXPECT_NEAR(f.eval(0.5, -2.0), 2.0 * 0.125 * 4.0 - 0.5, 1e-15);
}

TEST(Jet2, ComposeMatchesEvaluation) {
  const int n = 6;
  Jet2 f(n);
  f.set(2, 0, 1.5);
  f.set(1, 1, -0.7);
  f.set(0, 3, 0.2);
  f.set(3, 1, 0.9);
  const Jet2 gx = Jet2::x(n) + Jet2::monomial(n, 0, 2, 0.3);
  const Jet2 gy = Jet2::y(n) - Jet2::monomial(n, 1, 1, 0.4);
  const Jet2 h = compose(f, gx, gy);
  for (const auto& [x, y] : {std::pair{1e-2, 2e-2}, std::pair{-3e-2, 1e-2}}) {
    const double direct = f.eval(gx.eval(x, y), gy.eval(x, y));
    EXPECT_NEAR(h.eval(x, y), direct, 1e-13);
  }
}

TEST(JetMap, InverseRoundTrip) {
  const int n = 6;
  JetMap m = JetMap::linear(n, 2.0, 1.0, -0.5, 3.0);
  m.x.set(2, 0, 0.7);
  m.x.set(1, 2, -0.3);
  m.y.set(0, 2, 1.1);
  m.y.set(3, 1, 0.4);
  const JetMap inv = invert(m);
  const JetMap id = compose(m, inv);
  const JetMap ref = JetMap::identity(n);
  for (std::size_t k = 0; k < id.x.size(); ++k) {
    EXPECT_NEAR(id.x.data()[k], ref.x.data()[k], 1e-12);
    EXPECT_NEAR(id.y.data()[k], ref.y.data()[k], 1e-12);
  }
  EXPECT_TRUE(inv.fixes_origin());
}

TEST(JetMap, SubstituteAgreesWithPushForward) {
  const Params p{0.4, 0.6, 0.0125, 0.4};
  const PlanarJetField f = expand_gm_field(p, {0.15, 0.09}, 5);
  PlanarJetField g = f;
  g.fx.set(0, 0, 0.0);
  g.fy.set(0, 0, 0.0);
  JetMap t = JetMap::linear(5, 1.0, 0.2, -0.1, 1.0);
  t.y.set(2, 0, 0.5);
  const PlanarJetField a = substitute(g, t);
  const PlanarJetField b = push_forward(g, invert(t));
  for (int k = 0; k < 2; ++k)
    for (std::size_t i = 0; i < a[k].size(); ++i) EXPECT_NEAR(a[k].data()[i], b[k].data()[i], 1e-11);
}

TEST(Expansion, MatchesFieldNearCenter) {
  const Params p{0.37, 0.8, 0.02, 0.55};
  const State c{0.3, 0.21};
  const PlanarJetField f = expand_gm_field(p, c, 8);
  for (const double h : {1e-2, 5e-3}) {
    const Vec2 exact = eval_field(p, {c.u + h, c.v - 0.5 * h});
    EXPECT_NEAR(f.fx.eval(h, -0.5 * h), exact[0], 1e-11);
    EXPECT_NEAR(f.fy.eval(h, -0.5 * h), exact[1], 1e-11);
  }
  const Jet2 s = expand_square_over(0.3, 0.21, 6);
  EXPECT_NEAR(s.eval(1e-3, 2e-3), 0.301 * 0.301 / 0.212, 1e-13);
}

TEST(Lienard, SecondComponentIsExactlyY) {
  const Params p{0.4, 0.5477, 0.0, 0.4};
  PlanarJetField f = expand_gm_field(p, {0.10954, 0.06}, 5);
  f.fx.set(0, 0, 0.0);
  f.fy.set(0, 0, 0.0);
  f.fx.set(0, 1, 1.0);
  const PlanarJetField g = lienard(f);
  const double tol = 1e-14 * std::max(f.max_abs(), g.max_abs());
  for (std::size_t i = 0; i < g.fx.size(); ++i)
    EXPECT_NEAR(g.fx.data()[i], i == Jet2::index(0, 1) ? 1.0 : 0.0, tol);
}

TEST(TimeRescale, ScalesBothComponents) {
  const int n = 4;
  const PlanarJetField f{Jet2::y(n), Jet2::monomial(n, 2, 0)};
  const PlanarJetField g = time_rescale(f, Jet2::constant(n, 3.0));
  EXPECT_DOUBLE_EQ(g.fx.coeff(0, 1), 3.0);
  EXPECT_DOUBLE_EQ(g.fy.coeff(2, 0), 3.0);
}
