// SPDX-License-Identifier: Apache-2.0

#include "sasaki/operators.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sasaki {
namespace {

const InitialFrame kOblique{FrameVector(0.8, 0.36, 0.48), FrameVector(-0.6, 0.48, 0.64), FrameVector(0.0, -0.8, 0.6)};

FrenetCurve curve(double c, const ScalarFunction& k, const ScalarFunction& t, double h = 1e-3, double length = 1.0) {
  return synthesize_frenet_curve(build_space_form(c), k, t, kOblique, h, test::samples_for(length, h));
}

// Largest |value - expected(p1, p2, p3 components)| with expected given per curve sample.
template <typename Expected>
double deviation(const OperatorValue& value, const FrenetData& fd, Expected expected) {
  double worst = 0.0;
  for (std::size_t j = 0; j < value.size(); ++j) {
    const std::size_t f = value.start + j - fd.start;
    const FrameVector e = expected(fd.arclength(f), fd.p1[f], fd.p2[f], fd.p3[f]);
    worst = std::max(worst, (value.as_vectors[j] - e).norm());
  }
  return worst;
}

TEST(Operators, MeanCurvatureVector) {
  const FrenetCurve geo = curve(0.0, test::constant(0.0), test::constant(0.0));
  EXPECT_EQ(max_norm(mean_curvature_vector(geo.frenet)), 0.0);

  const FrenetCurve helix = curve(0.0, test::constant(1.0), test::constant(1.0));
  EXPECT_LE(deviation(mean_curvature_vector(helix.frenet), helix.frenet,
                      [](double, const FrameVector&, const FrameVector& p2, const FrameVector&) { return p2; }),
            1e-15);

  const FrenetCurve ramp = curve(0.0, [](double s) { return s; }, test::constant(1.0));
  EXPECT_LE(deviation(mean_curvature_vector(ramp.frenet), ramp.frenet,
                      [](double s, const FrameVector&, const FrameVector& p2, const FrameVector&) { return s * p2; }),
            1e-12);
}

TEST(Operators, HelixLaplacianIsEigen) {
  const FrenetCurve fc = curve(1.0, test::constant(1.0), test::constant(1.0));
  const SpaceForm sf = build_space_form(1.0);
  const OperatorValue H = mean_curvature_vector(fc.frenet);
  const OperatorValue closed = laplacian_H_closed(fc.frenet);
  const OperatorValue oracle = laplacian_H_oracle(sf, fc.curve, fc.frenet);
  const auto two_h = [](double, const FrameVector&, const FrameVector& p2, const FrameVector&) { return 2.0 * p2; };
  EXPECT_LE(deviation(closed, fc.frenet, two_h), 1e-12);
  EXPECT_LE(deviation(oracle, fc.frenet, two_h), 10.0 * 1e-6);
  EXPECT_NEAR(eigen_residual(closed, H).lambda, 2.0, 1e-12);
  EXPECT_LE(representation_defect(closed, fc.frenet), 1e-14);
  EXPECT_LE(representation_defect(oracle, fc.frenet), 1e-14);
}

TEST(Operators, GeodesicOperatorsVanish) {
  const SpaceForm sf = build_space_form(-3.0);
  const FrenetCurve fc = curve(-3.0, test::constant(0.0), test::constant(0.0));
  EXPECT_EQ(max_norm(laplacian_H_closed(fc.frenet)), 0.0);
  EXPECT_EQ(max_norm(normal_laplacian_H(fc.frenet)), 0.0);
  EXPECT_LE(max_norm(laplacian_H_oracle(sf, fc.curve, fc.frenet)), 1e-12);
  EXPECT_LE(max_norm(bitension_curve(sf, fc.frenet)), 1e-15);
  EXPECT_THROW(eigen_residual(laplacian_H_closed(fc.frenet), mean_curvature_vector(fc.frenet)), std::domain_error);
}

TEST(Operators, RampCurvatureHasTangentialLaplacian) {
  // kappa = s, tau = 1: the p1 component of Delta H is 3 kappa kappa' = 3 s.
  const SpaceForm sf = build_space_form(2.0);
  const FrenetCurve fc = curve(2.0, [](double s) { return s; }, test::constant(1.0));
  const OperatorValue closed = laplacian_H_closed(fc.frenet);
  for (std::size_t j = 0; j < closed.size(); j += 50) {
    const double s = fc.frenet.arclength(closed.start + j - fc.frenet.start);
    EXPECT_NEAR(closed.along_p1[j], 3.0 * s, 1e-9);
    EXPECT_NEAR(closed.along_p3[j], -2.0, 1e-9);  // -(2 kappa' tau + kappa tau')
  }
  EXPECT_LE(max_difference(closed, laplacian_H_oracle(sf, fc.curve, fc.frenet)), 10.0 * 1e-6);
}

TEST(Operators, OracleAgreesToSecondOrder) {
  // kappa = 1 + s^2, tau = 1 and a varying torsion case.
  struct Case {
    double c;
    ScalarFunction k, t;
  };
  const Case cases[] = {
      {1.0, [](double s) { return 1.0 + s * s; }, test::constant(1.0)},
      {-7.0, [](double s) { return 1.5 + 0.5 * std::sin(2.0 * s); }, [](double s) { return 1.0 + s; }},
      {5.0, [](double s) { return 2.0 - s; }, test::constant(-0.5)},
  };
  for (const Case& cs : cases) {
    const SpaceForm sf = build_space_form(cs.c);
    double gaps[3][2];
    for (int level = 0; level < 2; ++level) {
      const double h = level == 0 ? 2e-3 : 1e-3;
      const FrenetCurve fc = curve(cs.c, cs.k, cs.t, h);
      gaps[0][level] = max_difference(laplacian_H_closed(fc.frenet), laplacian_H_oracle(sf, fc.curve, fc.frenet));
      gaps[1][level] =
          max_difference(normal_laplacian_H(fc.frenet), normal_laplacian_H_oracle(sf, fc.curve, fc.frenet));
      gaps[2][level] =
          max_difference(bitension_curve(sf, fc.frenet), bitension_curve_oracle(sf, fc.curve, fc.frenet));
      for (const auto& g : gaps) EXPECT_LE(g[level], 1000.0 * h * h);
    }
    for (const auto& g : gaps) {
      EXPECT_GE(g[0] / g[1], 3.0) << "c=" << cs.c;
      EXPECT_LE(g[0] / g[1], 5.0) << "c=" << cs.c;
    }
  }
}

TEST(Operators, LegendreNormalLaplacianHasEigenvalueOne) {
  for (double c : {-7.0, 0.0, 1.0, 5.0}) {
    const SpaceForm sf = build_space_form(c);
    for (double k : {0.5, 1.0, 2.0}) {
      const FrenetCurve fc = synthesize_legendre_curve(sf, test::constant(k), 1e-3, 1001);
      const OperatorValue H = mean_curvature_vector(fc.frenet);
      const EigenFit fit = eigen_residual(normal_laplacian_H(fc.frenet), H);
      EXPECT_NEAR(fit.lambda, 1.0, 1e-9);
      EXPECT_LE(fit.residual, 1e-9);
      EXPECT_NEAR(eigen_residual(laplacian_H_closed(fc.frenet), H).lambda, k * k + 1.0, 1e-9);
      const EigenFit oracle = eigen_residual(normal_laplacian_H_oracle(sf, fc.curve, fc.frenet), H);
      EXPECT_NEAR(oracle.lambda, 1.0, 1e-5);
    }
  }
}

TEST(Operators, UntwistedAffineCurvatureHasZeroNormalLaplacian) {
  const FrenetCurve fc = curve(0.0, [](double s) { return 0.5 * s + 1.0; }, test::constant(0.0));
  EXPECT_LE(max_norm(normal_laplacian_H(fc.frenet)), 1e-9);
  const SpaceForm sf = build_space_form(0.0);
  EXPECT_LE(max_norm(normal_laplacian_H_oracle(sf, fc.curve, fc.frenet)), 1e-5);
}

TEST(Operators, LegendreCurvatureTerm) {
  // R(p2, p1) p1 = c p2 along any Legendre curve.
  for (double c : {-7.0, -3.0, 1.0, 5.0}) {
    const SpaceForm sf = build_space_form(c);
    const FrenetCurve fc = synthesize_legendre_curve(sf, [](double s) { return 1.0 + s; }, 1e-3, 501);
    for (std::size_t i = 0; i < fc.frenet.size(); i += 50) {
      const FrameVector& p1 = fc.frenet.p1[i];
      const FrameVector& p2 = fc.frenet.p2[i];
      EXPECT_LE((curvature_formula(sf, p2, p1, p1) - c * p2).norm(), 1e-12);
      EXPECT_LE((curvature_from_frame(sf, p2, p1, p1) - c * p2).norm(), 1e-12);
    }
  }
}

TEST(Operators, LegendreHelixBitension) {
  // For constant kappa the bitension field is -kappa (kappa^2 - (c - 1)) p2.
  struct Case {
    double c, k;
  };
  for (const Case cs : {Case{5.0, 2.0}, Case{2.0, 1.0}, Case{1.0, 1.0}, Case{-3.0, 0.5}, Case{5.0, 1.0}}) {
    const SpaceForm sf = build_space_form(cs.c);
    const FrenetCurve fc = synthesize_legendre_curve(sf, test::constant(cs.k), 1e-3, 1001);
    const double amplitude = -cs.k * (cs.k * cs.k - (cs.c - 1.0));
    const auto expected = [amplitude](double, const FrameVector&, const FrameVector& p2, const FrameVector&) {
      return amplitude * p2;
    };
    EXPECT_LE(deviation(bitension_curve(sf, fc.frenet), fc.frenet, expected), 1e-9);
    EXPECT_LE(deviation(bitension_curve_oracle(sf, fc.curve, fc.frenet), fc.frenet, expected), verdict_tolerance(1e-3));
  }
  const SpaceForm sphere = build_space_form(1.0);
  const FrenetCurve fc = synthesize_legendre_curve(sphere, test::constant(1.0), 1e-3, 1001);
  EXPECT_NEAR(max_norm(bitension_curve(sphere, fc.frenet)), 1.0, 1e-9);
}

TEST(Operators, EigenResidualSeparatesHelicesFromRamps) {
  const FrenetCurve helix = curve(0.0, test::constant(2.0), test::constant(1.0));
  const EigenFit fit = eigen_residual(laplacian_H_closed(helix.frenet), mean_curvature_vector(helix.frenet));
  EXPECT_NEAR(fit.lambda, 5.0, 1e-9);
  EXPECT_LE(fit.residual, 1e-9);

  for (double h : {2e-3, 1e-3}) {
    const FrenetCurve ramp = curve(0.0, [](double s) { return s; }, test::constant(1.0), h);
    const EigenFit r = eigen_residual(laplacian_H_closed(ramp.frenet), mean_curvature_vector(ramp.frenet));
    EXPECT_GT(r.residual, 0.5) << "h=" << h;
  }
}

TEST(Operators, FieldBookkeeping) {
  const FrenetCurve fc = curve(1.0, test::constant(1.0), test::constant(1.0), 1e-3, 0.02);
  const OperatorValue lap = laplacian_H_closed(fc.frenet);
  EXPECT_EQ(lap.start, 1u);
  EXPECT_EQ(lap.size(), fc.frenet.size() - 2);
  const OperatorValue part = restrict_to(lap, 5, 8);
  EXPECT_EQ(part.size(), 3u);
  EXPECT_EQ(part.as_vectors[0], lap.as_vectors[4]);
  EXPECT_THROW(restrict_to(lap, 0, 3), std::out_of_range);
  EXPECT_THROW(max_difference(restrict_to(lap, 1, 3), restrict_to(lap, 5, 8)), std::invalid_argument);
  EXPECT_DOUBLE_EQ(verdict_tolerance(1e-3), 5e-5);
  EXPECT_DOUBLE_EQ(verdict_tolerance(1e-4), 1e-6);
}

}  // namespace
}  // namespace sasaki
