// SPDX-License-Identifier: Apache-2.0
//
// Small helpers shared by the unit tests.

#pragma once

#include "sasaki/curves.hpp"
#include "sasaki/spaceform.hpp"

#include <cmath>
#include <cstddef>
#include <random>

namespace sasaki::test {

inline ScalarFunction constant(double v) {
  return [v](double) { return v; };
}

inline std::size_t samples_for(double length, double h) {
  return static_cast<std::size_t>(std::llround(length / h)) + 1;
}

inline FrameVector random_vector(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {u(rng), u(rng), u(rng)};
}

// Rotation of the standard frame by a random unit quaternion; positively oriented.
inline InitialFrame random_frame(std::mt19937& rng) {
  std::normal_distribution<double> g;
  Eigen::Quaterniond q(g(rng), g(rng), g(rng), g(rng));
  q.normalize();
  const Eigen::Matrix3d r = q.toRotationMatrix();
  return {r.col(0), r.col(1), r.col(2)};
}

}  // namespace sasaki::test
