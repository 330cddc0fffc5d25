// SPDX-License-Identifier: Apache-2.0
//
// Matrix realizations of M^3(c) used to turn frame-intrinsic curves into
// point positions for plotting.  The generators E1, E2, E3 reproduce the
// frame brackets [E1,E2] = 2 E3, [E2,E3] = mu E1, [E3,E1] = mu E2:
//
//   c > -3   unit quaternions (Berger sphere):  E1 = a i, E2 = a j, E3 = b k,
//            b = mu / 2, a = sqrt(b).  c = 1 is the round unit sphere.
//   c = -3   Heisenberg group, upper unitriangular 3x3: E1 = e12, E2 = e23, E3 = e13 / 2.
//   c < -3   SL(2,R): E1 = a L1, E2 = a L2, E3 = b L3 with b = -mu, a = sqrt(2 b),
//            L1 = diag(1,-1)/2, L2 = [[0,1],[1,0]]/2, L3 = [[0,1],[-1,0]]/2.
//
// A curve with frame velocity u(s) lifts to G' = G (u^i E_i), G(0) = I.

#pragma once

#include "sasaki/curves.hpp"
#include "sasaki/spaceform.hpp"

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sasaki {

enum class ChartKind { berger_sphere, heisenberg, sl2r };

class ChartUnavailable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// "berger-sphere", "heisenberg", "sl2r".
std::string_view to_string(ChartKind kind);

/// The names accepted by chart_for, in a fixed order.
std::vector<std::string_view> supported_charts();

class GroupChart {
 public:
  /// The chart realizing M^3(c).  A requested name must be the one that
  /// applies to c; otherwise, or for non-finite c, throws ChartUnavailable
  /// with the list of supported charts.
  static GroupChart for_curvature(double c, std::optional<std::string_view> requested = std::nullopt);

  ChartKind kind() const { return kind_; }
  double c() const { return c_; }
  std::string_view name() const { return to_string(kind_); }

  /// One line naming the group and the coordinates written by position().
  std::string description() const;

  Eigen::MatrixXd identity() const;
  Eigen::MatrixXd algebra_element(const FrameVector& u) const;  // u^i E_i
  Eigen::MatrixXd exp(const FrameVector& u) const;              // exp(u^i E_i)

  /// Projects back onto the group (unit quaternion, unitriangular, det = 1).
  void renormalize(Eigen::MatrixXd& g) const;

  /// Berger sphere: stereographic image of the quaternion from -i.
  /// Heisenberg: matrix entries (g12, g23, g13).
  /// SL(2,R): g.i in the upper half plane and the fiber angle atan2(-g21, g22).
  Eigen::Vector3d position(const Eigen::MatrixXd& g) const;

  /// Length of a closed fiber t -> g exp(t xi), when fibers close in the chart.
  std::optional<double> fiber_period() const;

 private:
  GroupChart(ChartKind kind, double c);

  ChartKind kind_;
  double c_;
  double mu_;
  std::array<Eigen::MatrixXd, 3> generators_;
};

/// Group elements along the curve, one per sample.  Each step applies
/// exp(h (u_i + u_{i+1}) / 2) and renormalizes.
std::vector<Eigen::MatrixXd> integrate_group_path(const GroupChart& chart, const SampledCurve& curve);

std::vector<Eigen::Vector3d> chart_positions(const GroupChart& chart, const std::vector<Eigen::MatrixXd>& path);

/// exp(t xi) for t = 0, dt, ..., (m-1) dt.
std::vector<Eigen::MatrixXd> fiber_steps(const GroupChart& chart, double dt, std::size_t m);

/// Positions of g exp(t xi) over the given fiber steps.
std::vector<Eigen::Vector3d> fiber_orbit(const GroupChart& chart, const Eigen::MatrixXd& g,
                                         const std::vector<Eigen::MatrixXd>& steps);

}  // namespace sasaki
