// SPDX-License-Identifier: Apache-2.0
//
// Runs corpora of curves and Hopf cylinders through the operators and
// records, per instance, the fitted eigenvalue, the residual at two grid
// resolutions (h and h/2), the resulting verdict and the verdict the
// classification statements predict for that instance.

#pragma once

#include "sasaki/curves.hpp"
#include "sasaki/spaceform.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sasaki {

enum class Verdict { eigen, polyharmonic, non_eigen, degenerate, unresolved };
enum class OperatorTag { laplacian, normal_laplacian, bitension, jacobi };

/// "eigen", "biharmonic/polyharmonic", "non-eigen", "geodesic/minimal", "unresolved".
std::string_view to_string(Verdict verdict);
/// "laplacian", "normal_laplacian", "bitension", "jacobi".
std::string_view to_string(OperatorTag tag);

struct EigenReport {
  std::string subject;      // e.g. "legendre-helix kappa=2"
  std::string kind;         // "curve", "legendre" or "cylinder"
  double c = 0.0;
  OperatorTag op = OperatorTag::laplacian;
  std::optional<double> lambda_est;
  double residual = 0.0;          // at h
  double residual_refined = 0.0;  // at h/2
  double h = 0.0;
  double tolerance = 0.0;         // at h
  Verdict verdict = Verdict::unresolved;
  std::optional<double> oracle_gap;  // |closed form - finite-difference oracle| at h, when one exists

  Verdict expected_verdict = Verdict::unresolved;
  std::optional<double> expected_lambda;
  std::string theorem_tag;
  std::string direction;  // "witness" or "counterexample"

  /// Verdict as predicted, and lambda_est within 10 tol of the predicted value.
  bool matches_expected() const;
};

struct VerifyOptions {
  double h = 1e-3;
  double length = 2.0;                 // s in [0, length]
  std::optional<double> tolerance;     // overrides max(1e-6, 50 h^2)

  std::size_t samples() const;
  double tolerance_at(double step) const;
};

/// A curve prescribed by curvature and torsion.  Constant curvature and
/// torsion are flagged explicitly so the predicted verdict does not depend
/// on numerics.
struct CurveCase {
  std::string name;
  ScalarFunction kappa;
  ScalarFunction tau;
  bool constant = false;
  double kappa0 = 0.0;
  double tau0 = 0.0;
};

/// Positively oriented frame with p1 neither horizontal nor vertical; the
/// starting frame of every non-Legendre curve in the corpus.
const InitialFrame& oblique_initial_frame();

/// {-7, -3, 0, 1, 2, 5}.
std::vector<double> default_c_list();

/// Geodesic, helices (including kappa = sqrt(c-1) when c > 1) and curves
/// with affine, quadratic and trigonometric curvature or varying torsion.
std::vector<CurveCase> default_curve_corpus(double c);

/// Delta H = lambda H holds iff the curve is a geodesic or a helix with lambda = kappa^2 + tau^2.
std::vector<EigenReport> verify_curve_eigen_theorem(const SpaceForm& sf, std::span<const CurveCase> corpus,
                                                    const VerifyOptions& options = {});

/// Legendre curves: Delta H (lambda = kappa^2 + 1), Delta-perp H (lambda = 1),
/// and the bitension field, which vanishes only for geodesics and, when c > 1,
/// for helices of curvature sqrt(c - 1).
std::vector<EigenReport> verify_legendre_theorems(std::span<const double> c_list, const VerifyOptions& options = {});

/// Hopf cylinders: Delta H (lambda = 4H^2 + 2), Delta-perp H and the natural
/// equations, J(H) (lambda = 4H^2 + 1 - c) and the bitension field.
std::vector<EigenReport> verify_hopf_theorems(std::span<const double> c_list, const VerifyOptions& options = {});

}  // namespace sasaki
