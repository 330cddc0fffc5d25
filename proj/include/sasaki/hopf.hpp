// SPDX-License-Identifier: Apache-2.0
//
// Hopf cylinders: preimages of base curves under the Boothby-Wang fibering
// M^3(c) -> base.  A cylinder over a base curve with signed curvature kbar(s)
// is flat, has surface frame (t, xi) with t the horizontal lift of the base
// tangent, unit normal n = phi t, and mean curvature H = kbar / 2.  All of its
// mean curvature operators depend only on H(s) and c, so the cylinder is held
// as scalar samples plus the ambient space form.
//
// The frame oracle instead works with actual vector fields.  The horizontal
// lift of the base curve is a horizontal curve with nabla_t t = kbar n; fields
// on the cylinder are invariant under the fiber flow, so their xi-derivatives
// follow from [xi, V] = 0:
//
//   nabla_xi V = nabla_V xi = sum_j V^j (Gamma_{3j} - C_{3j}).

#pragma once

#include "sasaki/curves.hpp"
#include "sasaki/operators.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace sasaki {

struct HopfCylinder {
  SpaceForm sf;
  ScalarFunction kappa_bar_fn;
  std::vector<double> kappa_bar;  // signed base curvature at s_i = i h
  std::vector<double> H;          // kappa_bar / 2
  double h = 0.0;

  std::size_t size() const { return kappa_bar.size(); }
  double arclength(std::size_t i) const { return static_cast<double>(i) * h; }
};

/// Components of a field along the cylinder in the frame (t, n, xi), on
/// samples [start, start + size()).
struct SurfaceOperatorValue {
  std::size_t start = 0;
  std::vector<double> along_t, along_n, along_xi;

  std::size_t size() const { return along_t.size(); }
};

enum class CylinderOperator { laplacian, normal_laplacian, jacobi };

/// Parses "laplacian", "normal_laplacian" or "jacobi"; throws std::invalid_argument otherwise.
CylinderOperator parse_cylinder_operator(std::string_view tag);

HopfCylinder build_cylinder(const SpaceForm& sf, ScalarFunction kappa_bar, double h, std::size_t n);

/// H n.
SurfaceOperatorValue cylinder_mean_curvature(const HopfCylinder& cyl);

/// Delta H = 6 H H' t + (-H'' + 4 H^3 + 2 H) n - 2 H' xi.
SurfaceOperatorValue cylinder_laplacian_H(const HopfCylinder& cyl);

/// Delta-perp H = -H'' n.
SurfaceOperatorValue cylinder_normal_laplacian_H(const HopfCylinder& cyl);

/// J(H) = 6 H H' t - (H'' - 4 H^3 + (c - 1) H) n - 2 H' xi.
SurfaceOperatorValue cylinder_jacobi_H(const HopfCylinder& cyl);

/// Bitension field of the inclusion, -2 J(H).
SurfaceOperatorValue cylinder_bitension(const HopfCylinder& cyl);

/// Independent evaluation from vector fields along the horizontal lift.
/// Trimmed by two samples at each end.
SurfaceOperatorValue cylinder_frame_oracle(const HopfCylinder& cyl, CylinderOperator which);

/// R(H, t) t + R(H, xi) xi from the frame curvature tensor.
SurfaceOperatorValue cylinder_curvature_term(const HopfCylinder& cyl);

/// Fiber derivative nabla_xi V of a fiber-invariant field.
FrameVector fiber_derivative(const SpaceForm& sf, const FrameVector& v);

struct SecondFundamentalForm {
  std::size_t start = 0;
  std::vector<double> tt, t_xi, xi_xi;
};

/// II(X, Y) = g(nabla_X Y, n) evaluated with covariant differences along the lift.
SecondFundamentalForm cylinder_second_fundamental_form(const HopfCylinder& cyl);

/// Largest tangential part of nabla_t t, nabla_t xi, nabla_xi xi, nabla_xi t;
/// zero for a flat cylinder with a parallel frame.
double cylinder_flatness_residual(const HopfCylinder& cyl);

/// Least-squares fit op ~ lambda H n; residual normalized by max |H|.
/// Throws std::domain_error for a minimal cylinder.
EigenFit surface_eigen_residual(const SurfaceOperatorValue& op, const SurfaceOperatorValue& mean_curvature);

double max_norm(const SurfaceOperatorValue& value);

/// Largest pointwise difference over the samples both values cover.
double max_difference(const SurfaceOperatorValue& a, const SurfaceOperatorValue& b);

/// Closed-form solutions of kbar'' + lambda kbar = 0:
///   lambda = 0: a s + b;  lambda > 0: a cos(sqrt(lambda) s) + b sin(sqrt(lambda) s);
///   lambda < 0: a exp(sqrt(-lambda) s) + b exp(-sqrt(-lambda) s).
ScalarFunction natural_equation_profile(double lambda, double a, double b);
std::vector<double> solve_natural_equation(double lambda, double a, double b, double h, std::size_t n);

/// Curvature of the base: sec_M(e1, e2) + (3/4) |vertical part of [e1, e2]|^2.
double oneill_base_curvature(const SpaceForm& sf);

/// On a horizontal curve: max deviation of eta(nabla gamma' gamma') from 0
/// and of eta(nabla gamma' (phi gamma')) from 1.
/// Throws std::invalid_argument when the curve is not horizontal.
double horizontal_lift_check(const SpaceForm& sf, const SampledCurve& curve);

}  // namespace sasaki
