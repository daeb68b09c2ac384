#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "gmbif/bifurcation.hpp"
#include "gmbif/normal_form.hpp"

using namespace gmbif;

namespace {

Params cusp_point(double c, double beta) {
  Params p{c, beta, 0.0, c};
  p.b = p.b_sn();
  return p;
}

} // namespace

TEST(CuspChain, StagesInOrder) {
  const auto rep = cusp_normal_form(cusp_point(0.4, 0.5477));
  std::vector<std::string> labels;
  for (const auto& s : rep.stages) labels.push_back(s.label);
  const std::vector<std::string> want{"expansion", "eigenbasis", "quadratic", "lienard",
                                      "elimination", "reduced", "normal"};
  EXPECT_EQ(labels, want);
  EXPECT_TRUE(rep.has_stage("reduced"));
  EXPECT_FALSE(rep.has_stage("nope"));
  EXPECT_ANY_THROW(rep.stage("nope"));
}

TEST(CuspChain, ExpansionHasNoConstantTerm) {
  const auto rep = cusp_normal_form(cusp_point(0.7, 1.3));
  const auto& f = rep.stage("expansion").field;
  EXPECT_NEAR(f.fx.constant_term(), 0.0, 1e-15);
  EXPECT_NEAR(f.fy.constant_term(), 0.0, 1e-15);
  // linear part at E1 is nilpotent
  const double a = f.fx.coeff(1, 0), b = f.fx.coeff(0, 1), c = f.fy.coeff(1, 0), d = f.fy.coeff(0, 1);
  EXPECT_NEAR(a + d, 0.0, 1e-14);
  EXPECT_NEAR(a * d - b * c, 0.0, 1e-14);
}

TEST(CuspChain, ReducedFormIsLienard) {
  const auto rep = cusp_normal_form(cusp_point(0.4, 0.5477));
  const auto& f = rep.stage("reduced").field;
  for (std::size_t i = 0; i < f.fx.size(); ++i)
    EXPECT_NEAR(f.fx.data()[i], i == Jet2::index(0, 1) ? 1.0 : 0.0, 1e-12);
  // x' = y, y' = f20 x^2 + f40 x^4 + f31 x^3 y: no other terms up to degree 4
  for (int deg = 0; deg <= 4; ++deg)
    for (int j = 0; j <= deg; ++j) {
      const int i = deg - j;
      if ((i == 2 && j == 0) || (i == 4 && j == 0) || (i == 3 && j == 1) || (i == 3 && j == 0)) continue;
      EXPECT_NEAR(f.fy.coeff(i, j), 0.0, 1e-10) << "x^" << i << " y^" << j;
    }
}

TEST(CuspChain, NormalStageHasUnitQuadratic) {
  const auto rep = cusp_normal_form(cusp_point(0.4, 0.5477));
  EXPECT_NEAR(rep.last().field.fy.coeff(2, 0), 1.0, 1e-12);
  EXPECT_NEAR(rep.last().field.fx.coeff(0, 1), 1.0, 1e-12);
}

// Independent oracle: along d = c the system has the first integral
// H = c beta ln v - c v/u + b/u - u, which forces f31 = 0 and f40 = -1/(3 c beta^3).
TEST(CuspReport, InvariantsAgainstClosedForms) {
  struct Case {
    double c, beta, f40;
  };
  for (const Case k : {Case{0.4, 0.6, -625.0 / 162.0}, Case{1.0 / 3.0, 1.75, -64.0 / 343.0}}) {
    const auto r = cusp_report(cusp_point(k.c, k.beta));
    EXPECT_NEAR(r.f20, -k.c / k.beta, 1e-12);
    EXPECT_NEAR(r.f40 / k.f40, 1.0, 1e-9);
    EXPECT_NEAR(r.f31, 0.0, 1e-9);
    EXPECT_FALSE(r.certified);
  }
}

TEST(CuspReport, RandomLocusPoints) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> C(0.2, 1.5), B(0.3, 1.5);
  for (int k = 0; k < 30; ++k) {
    const double c = C(rng), beta = B(rng);
    const auto r = cusp_report(cusp_point(c, beta));
    EXPECT_NEAR(r.f20 / (-c / beta), 1.0, 1e-12);
    EXPECT_NEAR(r.f40 * (-3.0 * c * beta * beta * beta), 1.0, 1e-9);
    EXPECT_LT(std::abs(r.f31), 1e-9 * std::abs(r.f40) + 1e-9);
  }
}

TEST(CuspReport, JetOrderStable) {
  const Params p = cusp_point(0.4, 0.5477);
  const auto r5 = cusp_report(p, {.order = 5});
  for (int n : {6, 7, 9}) {
    const auto r = cusp_report(p, {.order = n});
    EXPECT_NEAR(r.f20, r5.f20, 1e-8);
    EXPECT_NEAR(r.f40, r5.f40, 1e-8);
    EXPECT_NEAR(r.f31, r5.f31, 1e-8);
  }
}

TEST(CuspReport, ReadingsAgreeOnQuadratic) {
  const Params p = cusp_point(0.4, 0.5477);
  const auto a = cusp_report(p, {.reading = LienardReading::Exact});
  const auto b = cusp_report(p, {.reading = LienardReading::Truncated});
  EXPECT_NEAR(a.f20, b.f20, 1e-12);
  EXPECT_NE(a.intermediate.stage("lienard").note, b.intermediate.stage("lienard").note);
}

TEST(CuspReport, RejectsOffLocus) {
  EXPECT_THROW(cusp_report(Params{0.4, 0.6, 0.005, 0.4}), InvalidInput);
  EXPECT_TRUE(on_cusp_locus(cusp_point(0.4, 0.6), 1e-12));
  EXPECT_FALSE(on_cusp_locus(Params{0.4, 0.6, 0.0144, 0.41}, 1e-8));
}

TEST(SignCase, FromSigns) {
  EXPECT_EQ(sign_case_for(1.0, 2.0), SignCase::I);
  EXPECT_EQ(sign_case_for(-1.0, 2.0), SignCase::II);
  EXPECT_EQ(sign_case_for(1.0, -2.0), SignCase::II);
  EXPECT_EQ(sign_case_for(-1.0, -2.0), SignCase::III);
  EXPECT_EQ(to_string(SignCase::II), "ii");
}

TEST(Unfolding, BasePointNormalisation) {
  const Params base = cusp_point(0.4, 0.5477);
  const auto ch = unfolding_chain(base, {0.0, 0.0, 0.0});
  EXPECT_NEAR(ch.l[0], 0.0, 1e-8);
  EXPECT_NEAR(ch.l[1], 0.0, 1e-8);
  EXPECT_NEAR(ch.l[2], 0.0, 1e-8);
  EXPECT_NEAR(ch.l[3], 1.0, 1e-12);
  EXPECT_NEAR(std::abs(ch.l[4]), 1.0, 1e-12);
  EXPECT_EQ(ch.report.stages.front().label, "expansion");
  EXPECT_EQ(ch.report.stages.back().label, "shift");
}

TEST(Unfolding, SmallOffsetsGiveSmallUnfoldingParameters) {
  const Params base = cusp_point(0.4, 0.5477);
  const auto ch = unfolding_chain(base, {1e-4, -2e-5, 3e-4});
  for (int k = 0; k < 3; ++k) EXPECT_LT(std::abs(ch.l[k]), 0.1);
  EXPECT_GT(std::abs(ch.l[0]) + std::abs(ch.l[1]) + std::abs(ch.l[2]), 1e-8);
}

TEST(Unfolding, GuardNamesStage) {
  UnfoldingOptions o;
  o.guard = 1e3;
  try {
    unfolding_chain(cusp_point(0.4, 0.5477), {0.0, 0.0, 0.0}, o);
    FAIL() << "guard did not trip";
  } catch (const PipelineGuard& e) {
    EXPECT_EQ(e.stage(), "expansion");
  }
}

TEST(EliminationMap, RemovesMixedTerms) {
  const int n = 5;
  Jet2 e(n);
  e.set(2, 0, -0.8);
  e.set(0, 2, 0.3);
  e.set(2, 1, 0.4);
  e.set(1, 2, -0.2);
  e.set(0, 3, 0.1);
  const PlanarJetField f{Jet2::y(n), e};
  const PlanarJetField g = lienard(push_forward(f, cusp_elimination_map(e)));
  EXPECT_NEAR(g.fy.coeff(2, 0), -0.8, 1e-12);
  EXPECT_NEAR(g.fy.coeff(0, 2), 0.0, 1e-12);
  EXPECT_NEAR(g.fy.coeff(2, 1), 0.0, 1e-12);
  EXPECT_NEAR(g.fy.coeff(1, 2), 0.0, 1e-12);
  EXPECT_NEAR(g.fy.coeff(0, 3), 0.0, 1e-12);
}
