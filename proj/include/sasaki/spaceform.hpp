// SPDX-License-Identifier: Apache-2.0
//
// Three-dimensional Sasakian space forms M^3(c) realized as unimodular Lie
// groups with a left-invariant orthonormal frame {e1, e2, e3 = xi}.
//
// Every tangent vector is carried by its coefficients in that frame.  Since
// the frame is orthonormal, the metric is the Euclidean dot product of the
// coefficient vectors.  Brackets and covariant derivatives of frame fields are
// constant, so the whole geometry reduces to two 3x3x3 tables:
//
//   [e_i, e_j]       = sum_k C^k_ij e_k        (structure constants)
//   nabla_{e_i} e_j  = sum_k Gamma^k_ij e_k    (Levi-Civita connection)
//
// The structure constants are
//
//   [e1, e2] = 2 e3,   [e2, e3] = mu e1,   [e3, e1] = mu e2,   mu = (c + 3) / 2,
//
// and Gamma is derived from them with the Koszul formula.  The curvature
// tensor is then available both from the connection table and from the
// closed-form Sasakian space form expression; the two must agree.

#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <array>
#include <cstddef>
#include <vector>

namespace sasaki {

/// Coefficients (a1, a2, a3) of a tangent vector along (e1, e2, xi).
using FrameVector = Eigen::Vector3d;

/// A vector field sampled along a curve, one FrameVector per sample.
using FrameField = std::vector<FrameVector>;

using FrameTable = std::array<std::array<FrameVector, 3>, 3>;

struct SpaceForm {
  double c = 1.0;
  double mu = 2.0;       // [e2,e3] = mu e1, [e3,e1] = mu e2
  double lambda3 = 2.0;  // [e1,e2] = lambda3 e3

  FrameTable bracket{};  // bracket[i][j] = [e_i, e_j]
  FrameTable gamma{};    // gamma[i][j]   = nabla_{e_i} e_j

  /// nabla_v w for the left-invariant extensions of v and w.
  FrameVector connection(const FrameVector& v, const FrameVector& w) const;

  /// [v, w] for the left-invariant extensions of v and w.
  FrameVector lie_bracket(const FrameVector& v, const FrameVector& w) const;
};

/// Builds M^3(c).  The connection is obtained from the brackets through the
/// Koszul formula for left-invariant metrics,
///   Gamma^k_ij = (C^k_ij - C^i_jk + C^j_ki) / 2.
SpaceForm build_space_form(double c);

// Contact structure tensors.  They are the same for every c.

inline double metric(const FrameVector& v, const FrameVector& w) { return v.dot(w); }
inline double eta(const FrameVector& v) { return v.z(); }
inline FrameVector xi() { return FrameVector::UnitZ(); }
inline FrameVector frame_vector(std::size_t i) { return FrameVector::Unit(static_cast<Eigen::Index>(i)); }

/// phi e1 = e2, phi e2 = -e1, phi xi = 0.
inline FrameVector phi(const FrameVector& v) { return {-v.y(), v.x(), 0.0}; }

/// Exterior derivative of eta on left-invariant fields, with the convention
/// d eta(X, Y) = X eta(Y) - Y eta(X) - eta([X, Y]).
double d_eta(const SpaceForm& sf, const FrameVector& v, const FrameVector& w);

/// (nabla_v phi) w = nabla_v (phi w) - phi (nabla_v w) on left-invariant fields.
FrameVector nabla_phi(const SpaceForm& sf, const FrameVector& v, const FrameVector& w);

/// The closed-form curvature tensor R(X,Y)Z of a Sasakian space form.
FrameVector curvature_formula(const SpaceForm& sf, const FrameVector& x, const FrameVector& y,
                              const FrameVector& z);

/// R(e_i, e_j) e_k from the connection table alone,
///   R(X,Y) = nabla_X nabla_Y - nabla_Y nabla_X - nabla_[X,Y].
/// Indices are zero based (0 = e1, 1 = e2, 2 = xi).
/// Throws std::out_of_range for an index outside {0, 1, 2}.
FrameVector curvature_from_frame(const SpaceForm& sf, std::size_t i, std::size_t j, std::size_t k);

/// Trilinear extension of curvature_from_frame to arbitrary vectors.
FrameVector curvature_from_frame(const SpaceForm& sf, const FrameVector& x, const FrameVector& y,
                                 const FrameVector& z);

/// g(R(X,Y)Y, X) / |X ^ Y|^2 using the frame curvature.
double sectional_curvature(const SpaceForm& sf, const FrameVector& x, const FrameVector& y);

/// Cross product in frame coefficients, oriented so that e1 x e2 = xi.
inline FrameVector cross(const FrameVector& v, const FrameVector& w) { return v.cross(w); }

}  // namespace sasaki
