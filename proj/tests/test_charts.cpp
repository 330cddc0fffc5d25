// SPDX-License-Identifier: Apache-2.0

#include "sasaki/charts.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace sasaki {
namespace {

const InitialFrame kOblique{FrameVector(0.8, 0.36, 0.48), FrameVector(-0.6, 0.48, 0.64), FrameVector(0.0, -0.8, 0.6)};

FrenetCurve geodesic(double c, const InitialFrame& frame, double h, double length) {
  return synthesize_frenet_curve(build_space_form(c), test::constant(0.0), test::constant(0.0), frame, h,
                                 test::samples_for(length, h));
}

TEST(Charts, KindFollowsCurvature) {
  EXPECT_EQ(GroupChart::for_curvature(1.0).kind(), ChartKind::berger_sphere);
  EXPECT_EQ(GroupChart::for_curvature(-2.5).kind(), ChartKind::berger_sphere);
  EXPECT_EQ(GroupChart::for_curvature(-3.0).kind(), ChartKind::heisenberg);
  EXPECT_EQ(GroupChart::for_curvature(-7.0).kind(), ChartKind::sl2r);
  EXPECT_EQ(GroupChart::for_curvature(-7.0, "sl2r").name(), "sl2r");
  EXPECT_EQ(supported_charts().size(), 3u);
}

TEST(Charts, GeneratorsReproduceFrameBrackets) {
  for (double c : {-7.0, -4.0, -3.0, -1.0, 0.0, 1.0, 5.0}) {
    const SpaceForm sf = build_space_form(c);
    const GroupChart chart = GroupChart::for_curvature(c);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        const Eigen::MatrixXd a = chart.algebra_element(frame_vector(i));
        const Eigen::MatrixXd b = chart.algebra_element(frame_vector(j));
        const Eigen::MatrixXd expected = chart.algebra_element(sf.lie_bracket(frame_vector(i), frame_vector(j)));
        EXPECT_LE((a * b - b * a - expected).norm(), 1e-12) << "c=" << c << " i=" << i << " j=" << j;
      }
    }
  }
}

TEST(Charts, RenormalizeRestoresGroupConstraint) {
  std::mt19937 rng(5);
  std::normal_distribution<double> noise(0.0, 1e-6);
  for (double c : {-7.0, -3.0, 1.0, 5.0}) {
    const GroupChart chart = GroupChart::for_curvature(c);
    Eigen::MatrixXd g = chart.identity();
    for (int k = 0; k < 10; ++k) g = g * chart.exp(0.3 * test::random_vector(rng));
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
      for (Eigen::Index col = 0; col < g.cols(); ++col) g(r, col) += noise(rng);
    }
    chart.renormalize(g);
    switch (chart.kind()) {
      case ChartKind::berger_sphere:
        EXPECT_LE((g.transpose() * g - chart.identity()).norm(), 1e-12);
        break;
      case ChartKind::heisenberg:
        for (int i = 0; i < 3; ++i) {
          EXPECT_EQ(g(i, i), 1.0);
          for (int j = 0; j < i; ++j) EXPECT_EQ(g(i, j), 0.0);
        }
        break;
      case ChartKind::sl2r:
        EXPECT_NEAR(g.determinant(), 1.0, 1e-12);
        break;
    }
  }
}

TEST(Charts, RoundSphereGeodesicIsGreatCircle) {
  // At c = 1 the quaternion path of a geodesic is cos s + sin s (u1 i + u2 j + u3 k).
  const double h = 1e-3;
  const FrenetCurve fc = geodesic(1.0, kOblique, h, 3.0);
  const GroupChart chart = GroupChart::for_curvature(1.0);
  const auto path = integrate_group_path(chart, fc.curve);
  ASSERT_EQ(path.size(), fc.curve.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const double s = fc.curve.arclength(i);
    const Eigen::Vector4d expected(std::cos(s), std::sin(s) * kOblique.p1.x(), std::sin(s) * kOblique.p1.y(),
                                   std::sin(s) * kOblique.p1.z());
    worst = std::max(worst, (path[i].col(0) - expected).norm());
  }
  EXPECT_LE(worst, 1e-6);
}

// Geodesics of dx^2 + dy^2 + 4 (dz - x dy)^2: with w = z' - x y' and p_y = y' - 4 x w
// conserved, x'' = -4 w y', y' = p_y + 4 x w, z' = w + x y'.
std::vector<Eigen::Vector3d> heisenberg_geodesic(const Eigen::Vector3d& q0, const Eigen::Vector3d& v0, double h,
                                                 std::size_t n) {
  const double w = v0.z() - q0.x() * v0.y();
  const double py = v0.y() - 4.0 * q0.x() * w;
  using State = std::array<double, 4>;  // x, y, z, x'
  const auto rhs = [&](const State& s) -> State {
    const double yd = py + 4.0 * s[0] * w;
    return {s[3], yd, w + s[0] * yd, -4.0 * w * yd};
  };
  State s{q0.x(), q0.y(), q0.z(), v0.x()};
  std::vector<Eigen::Vector3d> out{{s[0], s[1], s[2]}};
  for (std::size_t i = 1; i < n; ++i) {
    const State k1 = rhs(s);
    State t;
    for (int j = 0; j < 4; ++j) t[j] = s[j] + 0.5 * h * k1[j];
    const State k2 = rhs(t);
    for (int j = 0; j < 4; ++j) t[j] = s[j] + 0.5 * h * k2[j];
    const State k3 = rhs(t);
    for (int j = 0; j < 4; ++j) t[j] = s[j] + h * k3[j];
    const State k4 = rhs(t);
    for (int j = 0; j < 4; ++j) s[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    out.emplace_back(s[0], s[1], s[2]);
  }
  return out;
}

TEST(Charts, HeisenbergGeodesicMatchesCoordinateEquations) {
  const double h = 1e-3;
  const FrenetCurve fc = geodesic(-3.0, kOblique, h, 2.0);
  const GroupChart chart = GroupChart::for_curvature(-3.0);
  const auto positions = chart_positions(chart, integrate_group_path(chart, fc.curve));
  // Frame velocity (0.8, 0.36, 0.48) is (x', y', z' - x y') = (0.8, 0.36, 0.24) at the identity.
  const Eigen::Vector3d v0(0.8, 0.36, 0.24);
  EXPECT_NEAR(v0.x() * v0.x() + v0.y() * v0.y() + 4.0 * v0.z() * v0.z(), 1.0, 1e-15);
  const auto oracle = heisenberg_geodesic(Eigen::Vector3d::Zero(), v0, h, positions.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < positions.size(); ++i) worst = std::max(worst, (positions[i] - oracle[i]).norm());
  EXPECT_LE(worst, 1e-5);
  EXPECT_GT((positions.back() - positions.front()).norm(), 1.0);
}

TEST(Charts, HeisenbergFiberGeodesicIsVerticalLine) {
  const FrenetCurve fc = geodesic(-3.0, InitialFrame{xi(), frame_vector(0), frame_vector(1)}, 1e-3, 2.0);
  const GroupChart chart = GroupChart::for_curvature(-3.0);
  const auto positions = chart_positions(chart, integrate_group_path(chart, fc.curve));
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const double s = fc.curve.arclength(i);
    EXPECT_LE((positions[i] - Eigen::Vector3d(0.0, 0.0, 0.5 * s)).norm(), 1e-12);
  }
  EXPECT_FALSE(chart.fiber_period().has_value());
}

TEST(Charts, FibersCloseAfterOnePeriod) {
  for (double c : {-7.0, -4.0, -1.0, 1.0, 5.0}) {
    const GroupChart chart = GroupChart::for_curvature(c);
    ASSERT_TRUE(chart.fiber_period().has_value());
    const double period = *chart.fiber_period();
    EXPECT_LE((chart.exp(period * xi()) - chart.identity()).norm(), 1e-10) << "c=" << c;
    EXPECT_GT((chart.exp(0.5 * period * xi()) - chart.identity()).norm(), 1.0) << "c=" << c;
  }
  EXPECT_NEAR(*GroupChart::for_curvature(1.0).fiber_period(), 2.0 * std::numbers::pi, 1e-15);
}

TEST(Charts, RoundSphereFibersAreCirclesInChart) {
  const GroupChart chart = GroupChart::for_curvature(1.0);
  const FrenetCurve fc = geodesic(1.0, kOblique, 1e-3, 1.2);
  const auto path = integrate_group_path(chart, fc.curve);
  const std::size_t m = 48;
  const auto steps = fiber_steps(chart, *chart.fiber_period() / static_cast<double>(m), m + 1);
  for (std::size_t i : {std::size_t{0}, path.size() / 2, path.size() - 1}) {
    const auto orbit = fiber_orbit(chart, path[i], steps);
    ASSERT_EQ(orbit.size(), m + 1);
    EXPECT_LE((orbit.front() - orbit.back()).norm(), 1e-10);
    // Circle through three orbit points; all others must lie on it.
    const Eigen::Vector3d a = orbit[0], b = orbit[m / 3], d = orbit[2 * m / 3];
    const Eigen::Vector3d ab = b - a, ad = d - a, n = ab.cross(ad);
    const Eigen::Vector3d center =
        a + (ab.squaredNorm() * ad.cross(n) + ad.squaredNorm() * n.cross(ab)) / (2.0 * n.squaredNorm());
    const double radius = (a - center).norm();
    for (const auto& p : orbit) {
      EXPECT_NEAR((p - center).norm(), radius, 1e-9);
      EXPECT_NEAR((p - a).dot(n.normalized()), 0.0, 1e-9);
    }
  }
}

TEST(Charts, UnavailableChartsListSupportedOnes) {
  const auto expect_unavailable = [](double c, std::optional<std::string_view> name) {
    try {
      (void)GroupChart::for_curvature(c, name);
      ADD_FAILURE() << "expected ChartUnavailable for c=" << c;
    } catch (const ChartUnavailable& e) {
      const std::string msg = e.what();
      for (const auto supported : supported_charts()) EXPECT_NE(msg.find(supported), std::string::npos) << msg;
    }
  };
  expect_unavailable(std::nan(""), std::nullopt);
  expect_unavailable(INFINITY, std::nullopt);
  expect_unavailable(1.0, "sl2r");
  expect_unavailable(-3.0, "berger-sphere");
  expect_unavailable(-7.0, "hyperbolic");
}

}  // namespace
}  // namespace sasaki
