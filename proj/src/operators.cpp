// SPDX-License-Identifier: Apache-2.0

#include "sasaki/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sasaki {

namespace {

// Field along the Frenet samples [offset, offset + vectors.size()) of fd.
OperatorValue from_vectors(const FrenetData& fd, std::size_t offset, FrameField vectors) {
  OperatorValue out;
  out.start = fd.start + offset;
  out.along_p1.reserve(vectors.size());
  out.along_p2.reserve(vectors.size());
  out.along_p3.reserve(vectors.size());
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    out.along_p1.push_back(metric(vectors[j], fd.p1[offset + j]));
    out.along_p2.push_back(metric(vectors[j], fd.p2[offset + j]));
    out.along_p3.push_back(metric(vectors[j], fd.p3[offset + j]));
  }
  out.as_vectors = std::move(vectors);
  return out;
}

OperatorValue from_components(const FrenetData& fd, std::size_t offset, std::vector<double> a1,
                              std::vector<double> a2, std::vector<double> a3) {
  OperatorValue out;
  out.start = fd.start + offset;
  out.as_vectors.reserve(a1.size());
  for (std::size_t j = 0; j < a1.size(); ++j) {
    out.as_vectors.push_back(a1[j] * fd.p1[offset + j] + a2[j] * fd.p2[offset + j] + a3[j] * fd.p3[offset + j]);
  }
  out.along_p1 = std::move(a1);
  out.along_p2 = std::move(a2);
  out.along_p3 = std::move(a3);
  return out;
}

FrameField mean_curvature_field(const FrenetData& fd) {
  FrameField H(fd.size());
  for (std::size_t j = 0; j < fd.size(); ++j) H[j] = fd.kappa[j] * fd.p2[j];
  return H;
}

void require_oracle_length(const FrenetData& fd) {
  if (fd.size() < 5) throw std::invalid_argument("finite-difference oracle needs at least 5 samples");
}

// Frenet-component derivatives of kappa and tau, aligned with fd indices [1, m - 1).
struct Derivatives {
  std::vector<double> k, dk, ddk, t, dt;
};

Derivatives derivatives(const FrenetData& fd) {
  if (fd.size() < 3) throw std::invalid_argument("closed forms need at least 3 samples");
  Derivatives d;
  d.k.assign(fd.kappa.begin() + 1, fd.kappa.end() - 1);
  d.t.assign(fd.tau.begin() + 1, fd.tau.end() - 1);
  d.dk = central_first_difference(fd.kappa, fd.h);
  d.ddk = central_second_difference(fd.kappa, fd.h);
  d.dt = central_first_difference(fd.tau, fd.h);
  return d;
}

}  // namespace

std::vector<double> central_first_difference(const std::vector<double>& f, double h) {
  std::vector<double> out;
  if (f.size() < 3) return out;
  out.reserve(f.size() - 2);
  for (std::size_t i = 1; i + 1 < f.size(); ++i) out.push_back((f[i + 1] - f[i - 1]) / (2.0 * h));
  return out;
}

std::vector<double> central_second_difference(const std::vector<double>& f, double h) {
  std::vector<double> out;
  if (f.size() < 3) return out;
  out.reserve(f.size() - 2);
  for (std::size_t i = 1; i + 1 < f.size(); ++i) out.push_back((f[i + 1] - 2.0 * f[i] + f[i - 1]) / (h * h));
  return out;
}

double max_norm(const OperatorValue& value) {
  double m = 0.0;
  for (const auto& v : value.as_vectors) m = std::max(m, v.norm());
  return m;
}

double representation_defect(const OperatorValue& value, const FrenetData& fd) {
  double defect = 0.0;
  for (std::size_t j = 0; j < value.size(); ++j) {
    const std::size_t f = value.start + j - fd.start;
    const FrameVector rebuilt =
        value.along_p1[j] * fd.p1[f] + value.along_p2[j] * fd.p2[f] + value.along_p3[j] * fd.p3[f];
    defect = std::max(defect, (rebuilt - value.as_vectors[j]).norm());
  }
  return defect;
}

double max_difference(const OperatorValue& a, const OperatorValue& b) {
  const std::size_t first = std::max(a.start, b.start);
  const std::size_t last = std::min(a.start + a.size(), b.start + b.size());
  if (first >= last) throw std::invalid_argument("max_difference: fields share no samples");
  double d = 0.0;
  for (std::size_t i = first; i < last; ++i) {
    d = std::max(d, (a.as_vectors[i - a.start] - b.as_vectors[i - b.start]).norm());
  }
  return d;
}

OperatorValue restrict_to(const OperatorValue& value, std::size_t first, std::size_t last) {
  if (first < value.start || last > value.start + value.size() || first > last) {
    throw std::out_of_range("restrict_to: range not covered by the field");
  }
  const auto a = static_cast<std::ptrdiff_t>(first - value.start);
  const auto b = static_cast<std::ptrdiff_t>(last - value.start);
  OperatorValue out;
  out.start = first;
  out.along_p1.assign(value.along_p1.begin() + a, value.along_p1.begin() + b);
  out.along_p2.assign(value.along_p2.begin() + a, value.along_p2.begin() + b);
  out.along_p3.assign(value.along_p3.begin() + a, value.along_p3.begin() + b);
  out.as_vectors.assign(value.as_vectors.begin() + a, value.as_vectors.begin() + b);
  return out;
}

OperatorValue mean_curvature_vector(const FrenetData& fd) {
  const std::size_t m = fd.size();
  return from_components(fd, 0, std::vector<double>(m, 0.0), fd.kappa, std::vector<double>(m, 0.0));
}

OperatorValue laplacian_H_closed(const FrenetData& fd) {
  const Derivatives d = derivatives(fd);
  const std::size_t m = d.k.size();
  std::vector<double> a1(m), a2(m), a3(m);
  for (std::size_t j = 0; j < m; ++j) {
    a1[j] = 3.0 * d.k[j] * d.dk[j];
    a2[j] = -d.ddk[j] + d.k[j] * d.k[j] * d.k[j] + d.k[j] * d.t[j] * d.t[j];
    a3[j] = -2.0 * d.dk[j] * d.t[j] - d.k[j] * d.dt[j];
  }
  return from_components(fd, 1, std::move(a1), std::move(a2), std::move(a3));
}

OperatorValue laplacian_H_oracle(const SpaceForm& sf, const SampledCurve& curve, const FrenetData& fd) {
  require_oracle_length(fd);
  const FrameField dH = covariant_derivative_field(sf, curve, mean_curvature_field(fd), fd.start);
  FrameField ddH = covariant_derivative_field(sf, curve, dH, fd.start + 1);
  for (auto& v : ddH) v = -v;
  return from_vectors(fd, 2, std::move(ddH));
}

OperatorValue normal_laplacian_H(const FrenetData& fd) {
  const Derivatives d = derivatives(fd);
  const std::size_t m = d.k.size();
  std::vector<double> a2(m), a3(m);
  for (std::size_t j = 0; j < m; ++j) {
    a2[j] = d.k[j] * d.t[j] * d.t[j] - d.ddk[j];
    a3[j] = -2.0 * d.dk[j] * d.t[j] - d.k[j] * d.dt[j];
  }
  return from_components(fd, 1, std::vector<double>(m, 0.0), std::move(a2), std::move(a3));
}

OperatorValue normal_laplacian_H_oracle(const SpaceForm& sf, const SampledCurve& curve, const FrenetData& fd) {
  require_oracle_length(fd);
  FrameField dH = covariant_derivative_field(sf, curve, mean_curvature_field(fd), fd.start);
  for (std::size_t j = 0; j < dH.size(); ++j) {
    const FrameVector& t = fd.p1[j + 1];
    dH[j] -= metric(dH[j], t) * t;
  }
  FrameField ddH = covariant_derivative_field(sf, curve, dH, fd.start + 1);
  for (std::size_t j = 0; j < ddH.size(); ++j) {
    const FrameVector& t = fd.p1[j + 2];
    ddH[j] = -(ddH[j] - metric(ddH[j], t) * t);
  }
  return from_vectors(fd, 2, std::move(ddH));
}

OperatorValue bitension_curve(const SpaceForm& sf, const FrenetData& fd) {
  const OperatorValue lap = laplacian_H_closed(fd);
  FrameField t2(lap.size());
  for (std::size_t j = 0; j < lap.size(); ++j) {
    const std::size_t f = j + 1;
    t2[j] = -lap.as_vectors[j] + fd.kappa[f] * curvature_formula(sf, fd.p2[f], fd.p1[f], fd.p1[f]);
  }
  return from_vectors(fd, 1, std::move(t2));
}

OperatorValue bitension_curve_oracle(const SpaceForm& sf, const SampledCurve& curve, const FrenetData& fd) {
  require_oracle_length(fd);
  const FrameField H = mean_curvature_field(fd);
  const FrameField dH = covariant_derivative_field(sf, curve, H, fd.start);
  FrameField ddH = covariant_derivative_field(sf, curve, dH, fd.start + 1);
  for (std::size_t j = 0; j < ddH.size(); ++j) {
    const std::size_t f = j + 2;
    ddH[j] += curvature_from_frame(sf, H[f], fd.p1[f], fd.p1[f]);
  }
  return from_vectors(fd, 2, std::move(ddH));
}

EigenFit eigen_residual(const OperatorValue& op, const OperatorValue& H) {
  const std::size_t first = std::max(op.start, H.start);
  const std::size_t last = std::min(op.start + op.size(), H.start + H.size());
  if (first >= last) throw std::invalid_argument("eigen_residual: fields share no samples");

  double hh = 0.0, oh = 0.0, hmax = 0.0;
  for (std::size_t i = first; i < last; ++i) {
    const FrameVector& hv = H.as_vectors[i - H.start];
    const FrameVector& ov = op.as_vectors[i - op.start];
    hh += hv.squaredNorm();
    oh += ov.dot(hv);
    hmax = std::max(hmax, hv.norm());
  }
  if (hmax < kKappaFloor) throw std::domain_error("eigen relation vacuous for geodesics");

  EigenFit fit;
  fit.lambda = oh / hh;
  for (std::size_t i = first; i < last; ++i) {
    const FrameVector r = op.as_vectors[i - op.start] - fit.lambda * H.as_vectors[i - H.start];
    fit.residual = std::max(fit.residual, r.norm());
  }
  fit.residual /= hmax;
  return fit;
}

double verdict_tolerance(double h) { return std::max(1e-6, 50.0 * h * h); }

}  // namespace sasaki
