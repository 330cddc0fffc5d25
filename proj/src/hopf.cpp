// SPDX-License-Identifier: Apache-2.0

#include "sasaki/hopf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sasaki {

namespace {

struct ScalarDerivatives {
  std::vector<double> H, dH, ddH;
};

ScalarDerivatives scalar_derivatives(const HopfCylinder& cyl) {
  if (cyl.size() < 3) throw std::invalid_argument("closed forms need at least 3 samples");
  ScalarDerivatives d;
  d.H.assign(cyl.H.begin() + 1, cyl.H.end() - 1);
  d.dH = central_first_difference(cyl.H, cyl.h);
  d.ddH = central_second_difference(cyl.H, cyl.h);
  return d;
}

SurfaceOperatorValue make_value(std::size_t start, std::size_t m) {
  SurfaceOperatorValue v;
  v.start = start;
  v.along_t.assign(m, 0.0);
  v.along_n.assign(m, 0.0);
  v.along_xi.assign(m, 0.0);
  return v;
}

FrameVector normal_part(const FrameVector& v, const FrameVector& n) { return metric(v, n) * n; }

// Vector fields of the cylinder sampled along the horizontal lift of the base curve.
struct LiftedFrame {
  FrenetCurve lift;
  FrameField t, n, mean_curvature;
};

LiftedFrame lift_cylinder(const HopfCylinder& cyl) {
  LiftedFrame f{synthesize_horizontal_curve(cyl.sf, cyl.kappa_bar_fn, cyl.h, cyl.size()), {}, {}, {}};
  f.t = f.lift.curve.velocity;
  f.n.resize(cyl.size());
  f.mean_curvature.resize(cyl.size());
  for (std::size_t i = 0; i < cyl.size(); ++i) {
    f.n[i] = phi(f.t[i]);
    f.mean_curvature[i] = cyl.H[i] * f.n[i];
  }
  return f;
}

}  // namespace

CylinderOperator parse_cylinder_operator(std::string_view tag) {
  if (tag == "laplacian") return CylinderOperator::laplacian;
  if (tag == "normal_laplacian") return CylinderOperator::normal_laplacian;
  if (tag == "jacobi") return CylinderOperator::jacobi;
  throw std::invalid_argument("unknown cylinder operator tag: " + std::string(tag));
}

HopfCylinder build_cylinder(const SpaceForm& sf, ScalarFunction kappa_bar, double h, std::size_t n) {
  if (!(h > 0.0)) throw std::invalid_argument("arclength step must be positive");
  if (n < 5) throw std::invalid_argument("a cylinder needs at least 5 samples");
  HopfCylinder cyl;
  cyl.sf = sf;
  cyl.h = h;
  cyl.kappa_bar_fn = std::move(kappa_bar);
  cyl.kappa_bar.reserve(n);
  cyl.H.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = cyl.kappa_bar_fn(static_cast<double>(i) * h);
    cyl.kappa_bar.push_back(k);
    cyl.H.push_back(k / 2.0);
  }
  return cyl;
}

SurfaceOperatorValue cylinder_mean_curvature(const HopfCylinder& cyl) {
  auto v = make_value(0, cyl.size());
  v.along_n = cyl.H;
  return v;
}

SurfaceOperatorValue cylinder_laplacian_H(const HopfCylinder& cyl) {
  const auto d = scalar_derivatives(cyl);
  auto v = make_value(1, d.H.size());
  for (std::size_t j = 0; j < d.H.size(); ++j) {
    const double H = d.H[j];
    v.along_t[j] = 6.0 * H * d.dH[j];
    v.along_n[j] = -d.ddH[j] + 4.0 * H * H * H + 2.0 * H;
    v.along_xi[j] = -2.0 * d.dH[j];
  }
  return v;
}

SurfaceOperatorValue cylinder_normal_laplacian_H(const HopfCylinder& cyl) {
  const auto d = scalar_derivatives(cyl);
  auto v = make_value(1, d.H.size());
  for (std::size_t j = 0; j < d.H.size(); ++j) v.along_n[j] = -d.ddH[j];
  return v;
}

SurfaceOperatorValue cylinder_jacobi_H(const HopfCylinder& cyl) {
  const auto d = scalar_derivatives(cyl);
  const double c = cyl.sf.c;
  auto v = make_value(1, d.H.size());
  for (std::size_t j = 0; j < d.H.size(); ++j) {
    const double H = d.H[j];
    v.along_t[j] = 6.0 * H * d.dH[j];
    v.along_n[j] = -(d.ddH[j] - 4.0 * H * H * H + (c - 1.0) * H);
    v.along_xi[j] = -2.0 * d.dH[j];
  }
  return v;
}

SurfaceOperatorValue cylinder_bitension(const HopfCylinder& cyl) {
  auto v = cylinder_jacobi_H(cyl);
  for (auto* comp : {&v.along_t, &v.along_n, &v.along_xi}) {
    for (double& x : *comp) x *= -2.0;
  }
  return v;
}

FrameVector fiber_derivative(const SpaceForm& sf, const FrameVector& v) {
  return sf.connection(xi(), v) - sf.lie_bracket(xi(), v);
}

SurfaceOperatorValue cylinder_curvature_term(const HopfCylinder& cyl) {
  const LiftedFrame f = lift_cylinder(cyl);
  auto v = make_value(0, cyl.size());
  for (std::size_t i = 0; i < cyl.size(); ++i) {
    const FrameVector& H = f.mean_curvature[i];
    const FrameVector r =
        curvature_from_frame(cyl.sf, H, f.t[i], f.t[i]) + curvature_from_frame(cyl.sf, H, xi(), xi());
    v.along_t[i] = metric(r, f.t[i]);
    v.along_n[i] = metric(r, f.n[i]);
    v.along_xi[i] = eta(r);
  }
  return v;
}

SurfaceOperatorValue cylinder_frame_oracle(const HopfCylinder& cyl, CylinderOperator which) {
  const SpaceForm& sf = cyl.sf;
  const LiftedFrame f = lift_cylinder(cyl);
  const SampledCurve& curve = f.lift.curve;
  const std::size_t n = cyl.size();

  // Derivatives along t on [1, n-1), then [2, n-2).
  const FrameField dH = covariant_derivative_field(sf, curve, f.mean_curvature, 0);
  FrameField result(n - 4);

  switch (which) {
    case CylinderOperator::laplacian:
    case CylinderOperator::jacobi: {
      const FrameField ddH = covariant_derivative_field(sf, curve, dH, 1);
      for (std::size_t j = 0; j < result.size(); ++j) {
        const std::size_t i = j + 2;
        const FrameVector ff = fiber_derivative(sf, fiber_derivative(sf, f.mean_curvature[i]));
        result[j] = -(ddH[j] + ff);
        if (which == CylinderOperator::jacobi) {
          const FrameVector& H = f.mean_curvature[i];
          result[j] -= curvature_from_frame(sf, H, f.t[i], f.t[i]) + curvature_from_frame(sf, H, xi(), xi());
        }
      }
      break;
    }
    case CylinderOperator::normal_laplacian: {
      FrameField w(dH.size());
      for (std::size_t j = 0; j < dH.size(); ++j) w[j] = normal_part(dH[j], f.n[j + 1]);
      const FrameField dw = covariant_derivative_field(sf, curve, w, 1);
      for (std::size_t j = 0; j < result.size(); ++j) {
        const std::size_t i = j + 2;
        const FrameVector& nn = f.n[i];
        const FrameVector fiber_once = normal_part(fiber_derivative(sf, f.mean_curvature[i]), nn);
        const FrameVector fiber_twice = normal_part(fiber_derivative(sf, fiber_once), nn);
        result[j] = -(normal_part(dw[j], nn) + fiber_twice);
      }
      break;
    }
  }

  auto v = make_value(2, result.size());
  for (std::size_t j = 0; j < result.size(); ++j) {
    v.along_t[j] = metric(result[j], f.t[j + 2]);
    v.along_n[j] = metric(result[j], f.n[j + 2]);
    v.along_xi[j] = eta(result[j]);
  }
  return v;
}

SecondFundamentalForm cylinder_second_fundamental_form(const HopfCylinder& cyl) {
  const LiftedFrame f = lift_cylinder(cyl);
  const SampledCurve& curve = f.lift.curve;
  const FrameField dt = covariant_derivative_field(cyl.sf, curve, f.t, 0);
  const FrameField dxi = covariant_derivative_field(cyl.sf, curve, FrameField(cyl.size(), xi()), 0);
  SecondFundamentalForm ii;
  ii.start = 1;
  for (std::size_t j = 0; j < dt.size(); ++j) {
    const FrameVector& nn = f.n[j + 1];
    ii.tt.push_back(metric(dt[j], nn));
    ii.t_xi.push_back(metric(dxi[j], nn));
    ii.xi_xi.push_back(metric(fiber_derivative(cyl.sf, xi()), nn));
  }
  return ii;
}

double cylinder_flatness_residual(const HopfCylinder& cyl) {
  const LiftedFrame f = lift_cylinder(cyl);
  const SampledCurve& curve = f.lift.curve;
  const FrameField dt = covariant_derivative_field(cyl.sf, curve, f.t, 0);
  const FrameField dxi = covariant_derivative_field(cyl.sf, curve, FrameField(cyl.size(), xi()), 0);
  double worst = 0.0;
  for (std::size_t j = 0; j < dt.size(); ++j) {
    const std::size_t i = j + 1;
    const FrameVector& t = f.t[i];
    for (const FrameVector& v : {dt[j], dxi[j], fiber_derivative(cyl.sf, xi()), fiber_derivative(cyl.sf, t)}) {
      worst = std::max({worst, std::abs(metric(v, t)), std::abs(eta(v))});
    }
  }
  return worst;
}

double max_norm(const SurfaceOperatorValue& value) {
  double m = 0.0;
  for (std::size_t j = 0; j < value.size(); ++j) {
    m = std::max(m, std::hypot(value.along_t[j], value.along_n[j], value.along_xi[j]));
  }
  return m;
}

double max_difference(const SurfaceOperatorValue& a, const SurfaceOperatorValue& b) {
  const std::size_t first = std::max(a.start, b.start);
  const std::size_t last = std::min(a.start + a.size(), b.start + b.size());
  if (first >= last) throw std::invalid_argument("max_difference: values share no samples");
  double d = 0.0;
  for (std::size_t i = first; i < last; ++i) {
    const std::size_t p = i - a.start;
    const std::size_t q = i - b.start;
    d = std::max(d, std::hypot(a.along_t[p] - b.along_t[q], a.along_n[p] - b.along_n[q],
                               a.along_xi[p] - b.along_xi[q]));
  }
  return d;
}

EigenFit surface_eigen_residual(const SurfaceOperatorValue& op, const SurfaceOperatorValue& mean_curvature) {
  const std::size_t first = std::max(op.start, mean_curvature.start);
  const std::size_t last = std::min(op.start + op.size(), mean_curvature.start + mean_curvature.size());
  if (first >= last) throw std::invalid_argument("surface_eigen_residual: fields share no samples");

  double hh = 0.0, oh = 0.0, hmax = 0.0;
  for (std::size_t i = first; i < last; ++i) {
    const std::size_t a = i - op.start;
    const std::size_t b = i - mean_curvature.start;
    const double ht = mean_curvature.along_t[b], hn = mean_curvature.along_n[b], hx = mean_curvature.along_xi[b];
    hh += ht * ht + hn * hn + hx * hx;
    oh += op.along_t[a] * ht + op.along_n[a] * hn + op.along_xi[a] * hx;
    hmax = std::max(hmax, std::hypot(ht, hn, hx));
  }
  if (hmax < kKappaFloor) throw std::domain_error("eigen relation vacuous for minimal cylinders");

  EigenFit fit;
  fit.lambda = oh / hh;
  for (std::size_t i = first; i < last; ++i) {
    const std::size_t a = i - op.start;
    const std::size_t b = i - mean_curvature.start;
    fit.residual = std::max(fit.residual, std::hypot(op.along_t[a] - fit.lambda * mean_curvature.along_t[b],
                                                     op.along_n[a] - fit.lambda * mean_curvature.along_n[b],
                                                     op.along_xi[a] - fit.lambda * mean_curvature.along_xi[b]));
  }
  fit.residual /= hmax;
  return fit;
}

ScalarFunction natural_equation_profile(double lambda, double a, double b) {
  if (lambda == 0.0) return [a, b](double s) { return a * s + b; };
  if (lambda > 0.0) {
    const double w = std::sqrt(lambda);
    return [a, b, w](double s) { return a * std::cos(w * s) + b * std::sin(w * s); };
  }
  const double w = std::sqrt(-lambda);
  return [a, b, w](double s) { return a * std::exp(w * s) + b * std::exp(-w * s); };
}

std::vector<double> solve_natural_equation(double lambda, double a, double b, double h, std::size_t n) {
  const ScalarFunction k = natural_equation_profile(lambda, a, b);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = k(static_cast<double>(i) * h);
  return out;
}

double oneill_base_curvature(const SpaceForm& sf) {
  const FrameVector e1 = frame_vector(0);
  const FrameVector e2 = frame_vector(1);
  const double vertical = eta(sf.lie_bracket(e1, e2));
  return sectional_curvature(sf, e1, e2) + 0.75 * vertical * vertical;
}

double horizontal_lift_check(const SpaceForm& sf, const SampledCurve& curve) {
  for (const auto& u : curve.velocity) {
    if (std::abs(eta(u)) > 1e-8) throw std::invalid_argument("horizontal_lift_check: curve is not horizontal");
  }
  FrameField phi_u(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) phi_u[i] = phi(curve.velocity[i]);
  const FrameField accel = covariant_derivative_field(sf, curve, curve.velocity, 0);
  const FrameField dphi = covariant_derivative_field(sf, curve, phi_u, 0);
  double worst = 0.0;
  for (std::size_t j = 0; j < accel.size(); ++j) {
    const FrameVector& u = curve.velocity[j + 1];
    const double expected_accel = -metric(u, phi(u));
    const double expected_dphi = -metric(u, phi(phi(u)));
    worst = std::max({worst, std::abs(eta(accel[j]) - expected_accel), std::abs(eta(dphi[j]) - expected_dphi)});
  }
  return worst;
}

}  // namespace sasaki
