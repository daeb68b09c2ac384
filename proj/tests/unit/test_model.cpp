#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "gmbif/model.hpp"

using namespace gmbif;

namespace {

const Equilibrium* find(const std::vector<Equilibrium>& eqs, EquilibriumLabel l) {
  for (const auto& e : eqs)
    if (e.label == l) return &e;
  return nullptr;
}

double fnorm(const Params& p, const State& s) {
  if (s.u == 0.0) return std::abs(p.b - p.d * s.v); // u' vanishes on u = 0
  const Vec2 f = eval_field(p, s);
  return std::max(std::abs(f[0]), std::abs(f[1]));
}

} // namespace

TEST(Params, RejectsNonPositiveFields) {
  EXPECT_NO_THROW(Params::make(0.3, 0.5, 0.0075, 0.4));
  const char* names[] = {"c", "beta", "b", "d"};
  for (int k = 0; k < 4; ++k) {
    double v[4] = {0.3, 0.5, 0.0075, 0.4};
    for (double bad : {0.0, -1.0, double(NAN), double(INFINITY)}) {
      v[k] = bad;
      try {
        Params::make(v[0], v[1], v[2], v[3]);
        FAIL() << names[k] << " = " << bad << " accepted";
      } catch (const InvalidInput& e) {
        EXPECT_EQ(std::string(e.what()), std::string(names[k]) + " must be positive");
      }
    }
  }
}

TEST(Equilibria, ThreeRootsAtBistableParameters) {
  const Params p{0.3, 0.5, 0.0075, 0.4};
  const auto eqs = equilibria(p);
  ASSERT_EQ(eqs.size(), 3u);
  // Delta = 0.04 - 0.03 = 0.01, u = (0.2 +- 0.1) / 2
  EXPECT_NEAR(p.discriminant(), 0.01, 1e-15);
  EXPECT_EQ(eqs[0].label, EquilibriumLabel::E0);
  EXPECT_DOUBLE_EQ(eqs[0].point.u, 0.0);
  EXPECT_DOUBLE_EQ(eqs[0].point.v, 0.0075 / 0.4);
  EXPECT_NEAR(find(eqs, EquilibriumLabel::E2)->point.u, 0.15, 1e-15);
  EXPECT_NEAR(find(eqs, EquilibriumLabel::E2)->point.v, 0.075, 1e-15);
  EXPECT_NEAR(find(eqs, EquilibriumLabel::E3)->point.u, 0.05, 1e-15);
  EXPECT_NEAR(find(eqs, EquilibriumLabel::E3)->point.v, 0.025, 1e-15);
  EXPECT_EQ(positive_equilibrium_count(p, 1e-12), 2u);
}

TEST(Equilibria, DoubleRootOnSaddleNodeLocus) {
  Params p{0.3, 0.5, 0.0, 0.4};
  p.b = p.b_sn();
  const auto eqs = equilibria(p);
  ASSERT_EQ(eqs.size(), 2u);
  const auto* e1 = find(eqs, EquilibriumLabel::E1);
  ASSERT_NE(e1, nullptr);
  EXPECT_NEAR(e1->point.u, 0.5 * p.d * p.beta, 1e-15);
  EXPECT_NEAR(e1->point.v, p.beta * e1->point.u, 1e-15);
}

TEST(Equilibria, OnlyBoundaryPointBeyondSaddleNode) {
  Params p{0.3, 0.5, 0.0, 0.4};
  p.b = 1.5 * p.b_sn();
  const auto eqs = equilibria(p);
  ASSERT_EQ(eqs.size(), 1u);
  EXPECT_EQ(eqs[0].label, EquilibriumLabel::E0);
}

TEST(Equilibria, VietaAndResidualOverRandomDraws) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.05, 2.0), F(0.01, 0.99);
  for (int k = 0; k < 500; ++k) {
    Params p{U(rng), U(rng), 0.0, U(rng)};
    p.b = F(rng) * p.b_sn();
    const auto eqs = equilibria(p);
    ASSERT_EQ(eqs.size(), 3u);
    const double u2 = find(eqs, EquilibriumLabel::E2)->point.u;
    const double u3 = find(eqs, EquilibriumLabel::E3)->point.u;
    EXPECT_GT(u2, u3);
    EXPECT_NEAR(u2 * u3 / p.b, 1.0, 1e-12);
    EXPECT_NEAR((u2 + u3) / (p.d * p.beta), 1.0, 1e-12);
    for (const auto& e : eqs) EXPECT_LT(fnorm(p, e.point), 1e-10);
  }
}

TEST(Jacobian, MatchesFiniteDifferences) {
  const Params p{0.37, 0.8, 0.02, 0.55};
  const State s{0.3, 0.21};
  const auto J = jacobian(p, s);
  const double h = 1e-6;
  for (int col = 0; col < 2; ++col) {
    State a = s, b = s;
    (col == 0 ? a.u : a.v) += h;
    (col == 0 ? b.u : b.v) -= h;
    const Vec2 fa = eval_field(p, a), fb = eval_field(p, b);
    for (int row = 0; row < 2; ++row)
      EXPECT_NEAR(J.entries[row][col], (fa[row] - fb[row]) / (2 * h), 1e-8);
  }
  EXPECT_NEAR(J.trace, J.entries[0][0] + J.entries[1][1], 1e-15);
  EXPECT_NEAR(J.determinant,
              J.entries[0][0] * J.entries[1][1] - J.entries[0][1] * J.entries[1][0], 1e-15);
}

TEST(Jacobian, TraceAtE2IsCMinusD) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.05, 2.0), F(0.05, 0.95);
  for (int k = 0; k < 100; ++k) {
    Params p{U(rng), U(rng), 0.0, U(rng)};
    p.b = F(rng) * p.b_sn();
    const auto e2 = find(equilibria(p), EquilibriumLabel::E2)->point;
    EXPECT_NEAR(jacobian(p, e2).trace, p.c - p.d, 1e-12 * (p.c + p.d));
  }
}

TEST(Field, UndefinedBelowAxis) {
  const Params p{0.3, 0.5, 0.0075, 0.4};
  EXPECT_THROW(eval_field(p, {0.1, 0.0}), DomainError);
  EXPECT_THROW(eval_field(p, {0.1, -1.0}), DomainError);
  EXPECT_THROW(eval_field(p, {NAN, 1.0}), DomainError);
}

TEST(Dulac, DivergenceSignFollowsCMinusD) {
  const State s{0.2, 0.1};
  EXPECT_GT(dulac_divergence({0.5, 0.6, 0.01, 0.4}, s), 0.0);
  EXPECT_LT(dulac_divergence({0.3, 0.6, 0.01, 0.4}, s), 0.0);
  EXPECT_DOUBLE_EQ(dulac_divergence({0.4, 0.6, 0.01, 0.4}, s), 0.0);
  // (c - d) / u^2
  EXPECT_NEAR(dulac_divergence({0.5, 0.6, 0.01, 0.4}, s), 0.1 / 0.04, 1e-12);
}

TEST(FirstIntegral, GradientIsOrthogonalToField) {
  const Params p{0.4, 0.6, 0.0125, 0.4};
  const double h = 1e-6;
  for (const State s : {State{0.1, 0.05}, State{0.3, 0.2}, State{0.05, 0.4}}) {
    const double Hu = (first_integral(p, {s.u + h, s.v}) - first_integral(p, {s.u - h, s.v})) / (2 * h);
    const double Hv = (first_integral(p, {s.u, s.v + h}) - first_integral(p, {s.u, s.v - h})) / (2 * h);
    const Vec2 f = eval_field(p, s);
    EXPECT_NEAR(Hu * f[0] + Hv * f[1], 0.0, 1e-6 * (std::abs(Hu) + std::abs(Hv)));
  }
  EXPECT_THROW(first_integral(p, {0.0, 0.1}), DomainError);
}
