// SPDX-License-Identifier: Apache-2.0
//
// Unit-speed curves in M^3(c) sampled on a uniform arclength grid.
//
// A curve is known only through its velocity gamma'(s_i) written in the
// left-invariant frame.  Covariant derivatives along it are evaluated as
//
//   (nabla_{gamma'} V)^k = dV^k/ds + sum_{a,b} u^a V^b Gamma^k_ab,   u = gamma',
//
// with dV/ds replaced by a central difference.

#pragma once

#include "sasaki/spaceform.hpp"

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sasaki {

/// Below this value |nabla_{gamma'} gamma'| counts as zero.
inline constexpr double kKappaFloor = 1e-7;

using ScalarFunction = std::function<double(double)>;

struct SampledCurve {
  double h = 0.0;
  FrameField velocity;  // gamma'(s_i), s_i = i h
  bool legendre = false;

  std::size_t size() const { return velocity.size(); }
  double arclength(std::size_t i) const { return static_cast<double>(i) * h; }
};

/// Frenet data on the curve samples [start, start + size()).
///
/// Synthesized curves carry data on every sample.  Extracted data is trimmed
/// at both ends by the width of the difference stencils.
struct FrenetData {
  double h = 0.0;
  std::size_t start = 0;
  std::vector<double> kappa;
  std::vector<double> tau;
  FrameField p1, p2, p3;

  bool geodesic = false;
  bool torsion_defined = true;       // false for extracted geodesics that are not Legendre
  bool torsion_sign_violation = false;  // some extracted tau < 0

  std::size_t size() const { return kappa.size(); }
  double arclength(std::size_t j) const { return static_cast<double>(start + j) * h; }
};

struct FrenetCurve {
  SampledCurve curve;
  FrenetData frenet;
};

struct InitialFrame {
  FrameVector p1 = FrameVector::UnitX();
  FrameVector p2 = FrameVector::UnitY();
  FrameVector p3 = FrameVector::UnitZ();
};

enum class Stencil {
  central2,  // (V[i+1] - V[i-1]) / 2h
  central4,  // five-point, fourth order
};

std::size_t stencil_half_width(Stencil stencil);

class FrenetDegenerate : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// nabla_{gamma'} V at curve sample i, V given on every curve sample.
/// Throws std::out_of_range("needs interior sample") when the stencil does not fit.
FrameVector covariant_derivative(const SpaceForm& sf, const SampledCurve& curve, const FrameField& field,
                                 std::size_t i, Stencil stencil = Stencil::central2);

/// nabla_{gamma'} V for a field known on curve samples [start, start + V.size()).
/// The result covers [start + w, start + V.size() - w) with w the stencil half width.
FrameField covariant_derivative_field(const SpaceForm& sf, const SampledCurve& curve, const FrameField& field,
                                      std::size_t start, Stencil stencil = Stencil::central2);

/// Integrates the Frenet-Serret system for prescribed curvature and torsion
/// with classic RK4, re-orthonormalizing the frame after each step.
/// Throws std::invalid_argument for a non-orthonormal initial frame, h <= 0 or n < 5.
FrenetCurve synthesize_frenet_curve(const SpaceForm& sf, const ScalarFunction& kappa, const ScalarFunction& tau,
                                    const InitialFrame& frame, double h, std::size_t n);

/// Horizontal curve with signed curvature k(s): nabla p1 = k phi(p1).
/// The frame is (p1, phi p1, xi).  This is the horizontal lift of a base
/// curve with signed curvature k.
FrenetCurve synthesize_horizontal_curve(const SpaceForm& sf, const ScalarFunction& signed_kappa, double h,
                                        std::size_t n, double initial_angle = 0.0);

/// Legendre curve with curvature kappa >= 0; p3 is pinned to xi, p2 = phi p1, tau = 1.
FrenetCurve synthesize_legendre_curve(const SpaceForm& sf, const ScalarFunction& kappa, double h, std::size_t n);

/// Recovers (kappa, tau, p1, p2, p3) from the velocity samples using fourth
/// order differences.  The result starts at sample 4.
/// A geodesic gets kappa = 0 and an arbitrary completion of p1, or, when the
/// curve is flagged Legendre, the frame (p1, phi p1, xi) with tau = 1.
/// Throws FrenetDegenerate when kappa vanishes at some but not all samples.
FrenetData extract_frenet(const SpaceForm& sf, const SampledCurve& curve);

/// max_{i,j} |g(p_i, p_j) - delta_ij| over all samples.
double frame_orthonormality_defect(const FrenetData& fd);

/// Gram residual of a single frame.
double frame_orthonormality_defect(const FrameVector& a, const FrameVector& b, const FrameVector& c);

}  // namespace sasaki
