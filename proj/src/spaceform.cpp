// SPDX-License-Identifier: Apache-2.0

#include "sasaki/spaceform.hpp"

#include <stdexcept>

namespace sasaki {

namespace {

FrameVector contract(const FrameTable& table, const FrameVector& v, const FrameVector& w) {
  FrameVector out = FrameVector::Zero();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      out += v[i] * w[j] * table[i][j];
    }
  }
  return out;
}

}  // namespace

FrameVector SpaceForm::connection(const FrameVector& v, const FrameVector& w) const {
  return contract(gamma, v, w);
}

FrameVector SpaceForm::lie_bracket(const FrameVector& v, const FrameVector& w) const {
  return contract(bracket, v, w);
}

SpaceForm build_space_form(double c) {
  SpaceForm sf;
  sf.c = c;
  sf.mu = (c + 3.0) / 2.0;
  sf.lambda3 = 2.0;

  for (auto& row : sf.bracket) row.fill(FrameVector::Zero());
  sf.bracket[0][1] = sf.lambda3 * frame_vector(2);
  sf.bracket[1][0] = -sf.bracket[0][1];
  sf.bracket[1][2] = sf.mu * frame_vector(0);
  sf.bracket[2][1] = -sf.bracket[1][2];
  sf.bracket[2][0] = sf.mu * frame_vector(1);
  sf.bracket[0][2] = -sf.bracket[2][0];

  // Koszul: 2 g(nabla_{e_i} e_j, e_k) = g([e_i,e_j],e_k) - g([e_j,e_k],e_i) + g([e_k,e_i],e_j).
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      FrameVector g = FrameVector::Zero();
      for (int k = 0; k < 3; ++k) {
        g[k] = 0.5 * (sf.bracket[i][j][k] - sf.bracket[j][k][i] + sf.bracket[k][i][j]);
      }
      sf.gamma[i][j] = g;
    }
  }
  return sf;
}

double d_eta(const SpaceForm& sf, const FrameVector& v, const FrameVector& w) {
  // eta of a left-invariant field is constant, so only the bracket term survives.
  return -eta(sf.lie_bracket(v, w));
}

FrameVector nabla_phi(const SpaceForm& sf, const FrameVector& v, const FrameVector& w) {
  return sf.connection(v, phi(w)) - phi(sf.connection(v, w));
}

FrameVector curvature_formula(const SpaceForm& sf, const FrameVector& x, const FrameVector& y,
                              const FrameVector& z) {
  const double a = (sf.c + 3.0) / 4.0;
  const double b = (sf.c - 1.0) / 4.0;
  const FrameVector px = phi(x);
  const FrameVector py = phi(y);
  const FrameVector pz = phi(z);

  FrameVector out = a * (metric(y, z) * x - metric(z, x) * y);
  out += b * (eta(z) * eta(x) * y - eta(y) * eta(z) * x + metric(z, x) * eta(y) * xi() -
              metric(y, z) * eta(x) * xi() - metric(y, pz) * px - metric(z, px) * py +
              2.0 * metric(x, py) * pz);
  return out;
}

FrameVector curvature_from_frame(const SpaceForm& sf, std::size_t i, std::size_t j, std::size_t k) {
  if (i > 2 || j > 2 || k > 2) {
    throw std::out_of_range("curvature_from_frame: frame index must be 0, 1 or 2");
  }
  const FrameVector ei = frame_vector(i);
  const FrameVector ej = frame_vector(j);
  const FrameVector ek = frame_vector(k);

  // nabla_{e_j} e_k has constant coefficients, so nabla_{e_i} of it only
  // differentiates the frame fields.
  const FrameVector first = sf.connection(ei, sf.connection(ej, ek));
  const FrameVector second = sf.connection(ej, sf.connection(ei, ek));
  const FrameVector third = sf.connection(sf.lie_bracket(ei, ej), ek);
  return first - second - third;
}

FrameVector curvature_from_frame(const SpaceForm& sf, const FrameVector& x, const FrameVector& y,
                                 const FrameVector& z) {
  FrameVector out = FrameVector::Zero();
  for (std::size_t i = 0; i < 3; ++i) {
    if (x[i] == 0.0) continue;
    for (std::size_t j = 0; j < 3; ++j) {
      if (y[j] == 0.0) continue;
      for (std::size_t k = 0; k < 3; ++k) {
        if (z[k] == 0.0) continue;
        out += x[i] * y[j] * z[k] * curvature_from_frame(sf, i, j, k);
      }
    }
  }
  return out;
}

double sectional_curvature(const SpaceForm& sf, const FrameVector& x, const FrameVector& y) {
  const double area2 = metric(x, x) * metric(y, y) - metric(x, y) * metric(x, y);
  if (area2 <= 0.0) {
    throw std::invalid_argument("sectional_curvature: vectors span no plane");
  }
  return metric(curvature_from_frame(sf, x, y, y), x) / area2;
}

}  // namespace sasaki
