// SPDX-License-Identifier: Apache-2.0
//
// Mean curvature operators along Frenet curves.
//
// Every operator has a closed-form route (Frenet components of the
// expression, with kappa', kappa'', tau' from central differences) and an
// oracle route (repeated finite-difference covariant derivatives of the field
// itself).  Laplacians use the sign convention Delta = -nabla_{gamma'} nabla_{gamma'}.

#pragma once

#include "sasaki/curves.hpp"

#include <cstddef>
#include <vector>

namespace sasaki {

/// A vector field along a curve on curve samples [start, start + size()),
/// given both by its Frenet components and by its frame coefficients.
struct OperatorValue {
  std::size_t start = 0;
  std::vector<double> along_p1, along_p2, along_p3;
  FrameField as_vectors;

  std::size_t size() const { return along_p1.size(); }
};

/// Largest |V(s_i)| over the samples.
double max_norm(const OperatorValue& value);

/// Largest disagreement between the component and vector representations.
double representation_defect(const OperatorValue& value, const FrenetData& fd);

/// Largest |a(s_i) - b(s_i)| over the samples both fields cover.
double max_difference(const OperatorValue& a, const OperatorValue& b);

/// The same field restricted to curve samples [first, last).
OperatorValue restrict_to(const OperatorValue& value, std::size_t first, std::size_t last);

/// H = nabla_{gamma'} gamma' = kappa p2.
OperatorValue mean_curvature_vector(const FrenetData& fd);

/// Delta H = 3 kappa kappa' p1 + (-kappa'' + kappa^3 + kappa tau^2) p2 - (2 kappa' tau + kappa tau') p3.
/// Trimmed by one sample at each end.
OperatorValue laplacian_H_closed(const FrenetData& fd);

/// -nabla nabla (kappa p2) by two covariant differences, re-expressed in the Frenet frame.
/// Throws std::invalid_argument with fewer than 5 Frenet samples.
OperatorValue laplacian_H_oracle(const SpaceForm& sf, const SampledCurve& curve, const FrenetData& fd);

/// Delta-perp H = (kappa tau^2 - kappa'') p2 - (2 kappa' tau + kappa tau') p3.
OperatorValue normal_laplacian_H(const FrenetData& fd);

/// -nabla-perp nabla-perp H, where nabla-perp drops the p1 component.
OperatorValue normal_laplacian_H_oracle(const SpaceForm& sf, const SampledCurve& curve, const FrenetData& fd);

/// Bitension field T2 = -Delta H + kappa R(p2, p1) p1, curvature from the closed-form tensor.
OperatorValue bitension_curve(const SpaceForm& sf, const FrenetData& fd);

/// T2 = -J(H) = nabla nabla H + R(H, p1) p1, with covariant differences and the
/// frame-derived curvature tensor.
OperatorValue bitension_curve_oracle(const SpaceForm& sf, const SampledCurve& curve, const FrenetData& fd);

struct EigenFit {
  double lambda = 0.0;
  double residual = 0.0;  // max_i |op_i - lambda H_i| / max_i |H_i|
};

/// Least-squares fit of op ~ lambda H over the samples both fields cover.
/// Throws std::domain_error when H vanishes identically.
EigenFit eigen_residual(const OperatorValue& op, const OperatorValue& H);

/// max(1e-6, 50 h^2).
double verdict_tolerance(double h);

/// Central first and second differences of samples; both trimmed by one at each end.
std::vector<double> central_first_difference(const std::vector<double>& f, double h);
std::vector<double> central_second_difference(const std::vector<double>& f, double h);

}  // namespace sasaki
