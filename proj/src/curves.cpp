// SPDX-License-Identifier: Apache-2.0

#include "sasaki/curves.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace sasaki {

namespace {

void check_grid(double h, std::size_t n) {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("arclength step must be positive");
  if (n < 5) throw std::invalid_argument("a sampled curve needs at least 5 samples");
}

FrameVector difference(const FrameField& field, std::size_t j, double h, Stencil stencil) {
  switch (stencil) {
    case Stencil::central2:
      return (field[j + 1] - field[j - 1]) / (2.0 * h);
    case Stencil::central4:
      return (field[j - 2] - 8.0 * field[j - 1] + 8.0 * field[j + 1] - field[j + 2]) / (12.0 * h);
  }
  throw std::logic_error("unknown stencil");
}

struct Frame {
  FrameVector p1, p2, p3;

  Frame operator+(const Frame& o) const { return {p1 + o.p1, p2 + o.p2, p3 + o.p3}; }
  Frame operator*(double a) const { return {a * p1, a * p2, a * p3}; }
};

// Gram-Schmidt in the order p1, p2, p3; keeps the orientation of the input.
Frame reorthonormalize(const Frame& f) {
  Frame out;
  out.p1 = f.p1.normalized();
  out.p2 = (f.p2 - metric(f.p2, out.p1) * out.p1).normalized();
  out.p3 = f.p3 - metric(f.p3, out.p1) * out.p1 - metric(f.p3, out.p2) * out.p2;
  out.p3.normalize();
  return out;
}

template <typename Rhs>
Frame rk4_step(const Rhs& rhs, double s, const Frame& y, double h) {
  const Frame k1 = rhs(s, y);
  const Frame k2 = rhs(s + 0.5 * h, y + k1 * (0.5 * h));
  const Frame k3 = rhs(s + 0.5 * h, y + k2 * (0.5 * h));
  const Frame k4 = rhs(s + h, y + k3 * h);
  return y + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
}

}  // namespace

std::size_t stencil_half_width(Stencil stencil) { return stencil == Stencil::central2 ? 1 : 2; }

FrameVector covariant_derivative(const SpaceForm& sf, const SampledCurve& curve, const FrameField& field,
                                 std::size_t i, Stencil stencil) {
  const std::size_t w = stencil_half_width(stencil);
  if (field.size() != curve.size()) {
    throw std::invalid_argument("covariant_derivative: field and curve sample counts differ");
  }
  if (i < w || i + w >= curve.size()) throw std::out_of_range("needs interior sample");
  return difference(field, i, curve.h, stencil) + sf.connection(curve.velocity[i], field[i]);
}

FrameField covariant_derivative_field(const SpaceForm& sf, const SampledCurve& curve, const FrameField& field,
                                      std::size_t start, Stencil stencil) {
  const std::size_t w = stencil_half_width(stencil);
  if (start + field.size() > curve.size()) {
    throw std::invalid_argument("covariant_derivative_field: field extends past the curve");
  }
  if (field.size() < 2 * w + 1) throw std::out_of_range("needs interior sample");
  FrameField out;
  out.reserve(field.size() - 2 * w);
  for (std::size_t j = w; j + w < field.size(); ++j) {
    out.push_back(difference(field, j, curve.h, stencil) + sf.connection(curve.velocity[start + j], field[j]));
  }
  return out;
}

double frame_orthonormality_defect(const FrameVector& a, const FrameVector& b, const FrameVector& c) {
  const std::array<const FrameVector*, 3> p{&a, &b, &c};
  double defect = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      defect = std::max(defect, std::abs(metric(*p[i], *p[j]) - (i == j ? 1.0 : 0.0)));
    }
  }
  return defect;
}

double frame_orthonormality_defect(const FrenetData& fd) {
  double defect = 0.0;
  for (std::size_t j = 0; j < fd.size(); ++j) {
    defect = std::max(defect, frame_orthonormality_defect(fd.p1[j], fd.p2[j], fd.p3[j]));
  }
  return defect;
}

FrenetCurve synthesize_frenet_curve(const SpaceForm& sf, const ScalarFunction& kappa, const ScalarFunction& tau,
                                    const InitialFrame& frame, double h, std::size_t n) {
  check_grid(h, n);
  if (frame_orthonormality_defect(frame.p1, frame.p2, frame.p3) > 1e-8) {
    throw std::invalid_argument("initial frame is not orthonormal");
  }

  // dp/ds = (Frenet-Serret terms) - Gamma(u, p) with u = p1.
  const auto rhs = [&](double s, const Frame& f) {
    const double k = kappa(s);
    const double t = tau(s);
    return Frame{k * f.p2 - sf.connection(f.p1, f.p1),
                 -k * f.p1 + t * f.p3 - sf.connection(f.p1, f.p2),
                 -t * f.p2 - sf.connection(f.p1, f.p3)};
  };

  FrenetCurve out;
  out.curve.h = h;
  out.frenet.h = h;
  auto& fd = out.frenet;
  fd.kappa.reserve(n);
  fd.tau.reserve(n);
  fd.p1.reserve(n);
  fd.p2.reserve(n);
  fd.p3.reserve(n);

  Frame state{frame.p1, frame.p2, frame.p3};
  for (std::size_t i = 0; i < n; ++i) {
    const double s = static_cast<double>(i) * h;
    if (i > 0) state = reorthonormalize(rk4_step(rhs, s - h, state, h));
    fd.kappa.push_back(kappa(s));
    fd.tau.push_back(tau(s));
    fd.p1.push_back(state.p1);
    fd.p2.push_back(state.p2);
    fd.p3.push_back(state.p3);
  }
  out.curve.velocity = fd.p1;
  fd.geodesic = std::all_of(fd.kappa.begin(), fd.kappa.end(), [](double k) { return std::abs(k) < kKappaFloor; });
  return out;
}

FrenetCurve synthesize_horizontal_curve(const SpaceForm& sf, const ScalarFunction& signed_kappa, double h,
                                        std::size_t n, double initial_angle) {
  check_grid(h, n);

  const auto rhs = [&](double s, const Frame& f) {
    return Frame{signed_kappa(s) * phi(f.p1) - sf.connection(f.p1, f.p1), FrameVector::Zero(),
                 FrameVector::Zero()};
  };
  const auto pin = [](const FrameVector& p1) {
    FrameVector t(p1.x(), p1.y(), 0.0);
    t.normalize();
    return Frame{t, phi(t), xi()};
  };

  FrenetCurve out;
  out.curve.h = h;
  out.curve.legendre = true;
  auto& fd = out.frenet;
  fd.h = h;

  Frame state = pin(FrameVector(std::cos(initial_angle), std::sin(initial_angle), 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double s = static_cast<double>(i) * h;
    if (i > 0) state = pin(rk4_step(rhs, s - h, state, h).p1);
    fd.kappa.push_back(signed_kappa(s));
    fd.tau.push_back(1.0);
    fd.p1.push_back(state.p1);
    fd.p2.push_back(state.p2);
    fd.p3.push_back(state.p3);
  }
  out.curve.velocity = fd.p1;
  fd.geodesic = std::all_of(fd.kappa.begin(), fd.kappa.end(), [](double k) { return std::abs(k) < kKappaFloor; });
  return out;
}

FrenetCurve synthesize_legendre_curve(const SpaceForm& sf, const ScalarFunction& kappa, double h, std::size_t n) {
  FrenetCurve out = synthesize_horizontal_curve(sf, kappa, h, n);
  for (double k : out.frenet.kappa) {
    if (k < 0.0) throw std::invalid_argument("Legendre curvature must be nonnegative");
  }
  return out;
}

FrenetData extract_frenet(const SpaceForm& sf, const SampledCurve& curve) {
  constexpr Stencil stencil = Stencil::central4;
  const std::size_t w = stencil_half_width(stencil);
  const std::size_t n = curve.size();
  if (n < 4 * w + 1) throw std::invalid_argument("extract_frenet needs at least 9 samples");

  // nabla p1 on [w, n - w).
  const FrameField accel = covariant_derivative_field(sf, curve, curve.velocity, 0, stencil);

  std::vector<double> kappa(accel.size());
  std::size_t flat = 0;
  for (std::size_t j = 0; j < accel.size(); ++j) {
    kappa[j] = accel[j].norm();
    if (kappa[j] < kKappaFloor) ++flat;
  }

  FrenetData fd;
  fd.h = curve.h;
  fd.start = 2 * w;
  const std::size_t m = n - 4 * w;

  if (flat == accel.size()) {
    // Geodesic: p2, p3 are any completion of p1 and torsion is undefined,
    // except on Legendre geodesics, which carry the frame (p1, phi p1, xi) with tau = 1.
    fd.geodesic = true;
    fd.torsion_defined = curve.legendre;
    for (std::size_t j = 0; j < m; ++j) {
      const FrameVector& p1 = curve.velocity[fd.start + j];
      FrameVector p2;
      if (curve.legendre) {
        p2 = phi(p1).normalized();
      } else {
        const FrameVector seed = std::abs(p1.z()) < 0.9 ? xi() : frame_vector(0);
        p2 = (seed - metric(seed, p1) * p1).normalized();
      }
      fd.kappa.push_back(0.0);
      fd.tau.push_back(curve.legendre ? 1.0 : 0.0);
      fd.p1.push_back(p1);
      fd.p2.push_back(p2);
      fd.p3.push_back(cross(p1, p2));
    }
    return fd;
  }
  if (flat > 0) {
    throw FrenetDegenerate("Frenet frame degenerates: curvature vanishes at isolated samples");
  }

  FrameField p2(accel.size());
  for (std::size_t j = 0; j < accel.size(); ++j) p2[j] = accel[j] / kappa[j];
  const FrameField dp2 = covariant_derivative_field(sf, curve, p2, w, stencil);

  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t a = j + w;  // index into accel / p2
    const FrameVector& p1 = curve.velocity[fd.start + j];
    const FrameVector p3 = cross(p1, p2[a]);
    const double t = metric(dp2[j], p3);
    if (t < -1e-6) fd.torsion_sign_violation = true;
    fd.kappa.push_back(kappa[a]);
    fd.tau.push_back(t);
    fd.p1.push_back(p1);
    fd.p2.push_back(p2[a]);
    fd.p3.push_back(p3);
  }
  return fd;
}

}  // namespace sasaki
