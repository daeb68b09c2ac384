#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "gmbif/bifurcation.hpp"

using namespace gmbif;

namespace {

Params on_sn(double c, double beta, double d) {
  Params p{c, beta, 0.0, d};
  p.b = p.b_sn();
  return p;
}

} // namespace

TEST(SaddleNode, TransversalityClosedForms) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> U(0.05, 2.0);
  for (int k = 0; k < 100; ++k) {
    const Params p = on_sn(U(rng), U(rng), U(rng));
    const auto r = saddle_node_report(p);
    const double s = p.c / (p.d * p.beta);
    EXPECT_NEAR(r.wf_b / -s, 1.0, 1e-12);
    EXPECT_NEAR(r.wd2f / (-2.0 * s), 1.0, 1e-12);
    EXPECT_TRUE(r.certified);
    EXPECT_LT(r.jv_residual, 1e-12);
    EXPECT_LT(r.wj_residual, 1e-12);
    EXPECT_DOUBLE_EQ(r.V[0], 1.0);
    EXPECT_DOUBLE_EQ(r.W[0], 1.0);
  }
}

TEST(SaddleNode, CountsAcrossLocus) {
  const Params p = on_sn(0.3, 0.5, 0.4);
  EXPECT_EQ(equilibrium_count_across_sn(p, 0.1 * p.b_sn()), (std::array<int, 3>{2, 1, 0}));
  EXPECT_THROW(equilibrium_count_across_sn(p, p.b_sn()), InvalidInput);
  EXPECT_THROW(equilibrium_count_across_sn(p, 0.0), InvalidInput);
}

TEST(SaddleNode, RejectsOffLocus) {
  EXPECT_THROW(saddle_node_report({0.3, 0.5, 0.0075, 0.4}), InvalidInput);
}

TEST(Hopf, TransversalityAndAmplitudeScale) {
  const Params p{0.4, 0.6, 0.0125, 0.4};
  const auto r = hopf_report(p, false);
  EXPECT_EQ(r.transversality, -1.0);
  EXPECT_NEAR(r.transversality_fd, -1.0, 1e-8);
  EXPECT_FALSE(r.simulated);
  // u2 = (d beta + sqrt(Delta)) / 2
  EXPECT_NEAR(r.u2, 0.5 * (0.24 + std::sqrt(0.0576 - 0.05)), 1e-14);
  EXPECT_NEAR(r.sigma_reference, std::sqrt(r.D) / (4.0 * r.u2 * r.u2), 1e-15);
}

TEST(Hopf, CenterOnTheLocus) {
  const auto r = hopf_report({0.4, 0.6, 0.0125, 0.4}, true);
  EXPECT_TRUE(r.simulated);
  EXPECT_TRUE(r.center_detected);
  EXPECT_LT(r.return_map_defect, 1e-9);
  ASSERT_TRUE(r.on_locus.has_value());
  EXPECT_EQ(r.on_locus->outcome, CycleOutcome::NeutralFamily);
  EXPECT_FALSE(r.cycle.has_value());
  EXPECT_EQ(r.criticality, Criticality::Undetermined);
  EXPECT_EQ(r.sides.size(), 2u);
  for (const auto& s : r.sides) EXPECT_FALSE(s.search.cycle.has_value());
}

TEST(Hopf, Preconditions) {
  EXPECT_THROW(hopf_report({0.4, 0.6, 0.0125, 0.45}, false), InvalidInput);
  EXPECT_THROW(hopf_report(on_sn(0.4, 0.6, 0.4), false), InvalidInput);
}

TEST(Hopf, SectionThroughE2) {
  const Params p{0.4, 0.6, 0.0125, 0.4};
  const Section s = hopf_section(p);
  EXPECT_NEAR(s.origin.v, p.beta * s.origin.u, 1e-15);
  EXPECT_NEAR(std::hypot(s.direction[0], s.direction[1]), 1.0, 1e-15);
}

TEST(Unfolding, ReportAtBase) {
  Params base{0.4, 0.5477, 0.0, 0.4};
  base.b = base.b_sn();
  const auto r = bt_unfolding(base, {0.0, 0.0, 0.0});
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(r.l[k], 0.0, 1e-8);
  EXPECT_NEAR(r.l[3], 1.0, 1e-12);
  EXPECT_EQ(r.sign_case, SignCase::II);
  EXPECT_NEAR(r.j20, -0.7303268212525106, 1e-9);
  ASSERT_TRUE(r.jacobian.has_value());
  EXPECT_TRUE(r.jacobian->complete());
  EXPECT_DOUBLE_EQ(r.jac_det, r.jacobian->det_h);
  EXPECT_THROW(bt_unfolding({0.4, 0.5477, 0.01, 0.4}, {0.0, 0.0, 0.0}), InvalidInput);
}

TEST(Unfolding, JacobianDeterminantShrinksWithStep) {
  // the exact Jacobian is singular, the difference quotient is O(h^2)
  Params base{0.4, 0.5477, 0.0, 0.4};
  base.b = base.b_sn();
  const auto j = unfolding_jacobian(base);
  ASSERT_TRUE(j.complete());
  EXPECT_GT(std::abs(j.det_h), std::abs(j.det_half_h));
  EXPECT_NEAR(j.det_half_h / j.det_h, 0.25, 0.05);
}

TEST(Det3, KnownMatrix) {
  EXPECT_DOUBLE_EQ(det3({{{2, 0, 1}, {1, 3, 2}, {1, 1, 1}}}), 2 * (3 - 2) - 0 + 1 * (1 - 3));
  EXPECT_DOUBLE_EQ(det3({{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}), 1.0);
}

TEST(Scan, SaddleNodeAndHopfBoundaries) {
  ParamBox box{{0.4, 0.4, 1}, {0.6, 0.6, 1}, {0.005, 0.03, 6}, {0.3, 0.5, 5}};
  const auto r = scan_bifurcation_set(box);
  EXPECT_EQ(r.shape, (std::array<int, 4>{1, 1, 6, 5}));
  ASSERT_EQ(r.cells.size(), 30u);
  // d fastest
  EXPECT_DOUBLE_EQ(r.cells[1].params.d, 0.35);
  EXPECT_DOUBLE_EQ(r.cells[5].params.b, 0.01);
  EXPECT_EQ(r.cells[0].label, "2:source");
  EXPECT_EQ(r.cells[2].label, "2:neutral");
  EXPECT_EQ(r.cells[3].label, "2:sink");
  EXPECT_EQ(r.cells.back().positive_count, 0);
  bool sn = false, hopf = false;
  for (const auto& b : r.boundaries) {
    if (b.kind == "saddle-node" && b.axis == 2) {
      sn = true;
      const auto& p = r.cells[b.from[2] * 5 + b.from[3]].params;
      EXPECT_NEAR(b.locus_value, p.b_sn(), 1e-15);
      EXPECT_GT(r.cells[b.from[2] * 5 + b.from[3]].positive_count,
                r.cells[b.to[2] * 5 + b.to[3]].positive_count);
    }
    if (b.kind == "hopf") {
      hopf = true;
      EXPECT_EQ(b.axis, 3);
      EXPECT_DOUBLE_EQ(b.locus_value, 0.4);
    }
  }
  EXPECT_TRUE(sn);
  EXPECT_TRUE(hopf);
}

TEST(Scan, RejectsEmptyBox) {
  ParamBox box{{0.4, 0.4, 0}, {0.6, 0.6, 1}, {0.01, 0.01, 1}, {0.4, 0.4, 1}};
  EXPECT_THROW(scan_bifurcation_set(box), InvalidInput);
}
