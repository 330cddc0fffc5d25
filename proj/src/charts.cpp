// SPDX-License-Identifier: Apache-2.0

#include "sasaki/charts.hpp"

#include <fmt/format.h>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>

namespace sasaki {

namespace {

// Left multiplication by w + x i + y j + z k on R^4 = (w, x, y, z).
Eigen::MatrixXd quaternion_left(double w, double x, double y, double z) {
  Eigen::MatrixXd m(4, 4);
  m << w, -x, -y, -z,
       x, w, -z, y,
       y, z, w, -x,
       z, -y, x, w;
  return m;
}

Eigen::MatrixXd unit(int size, int row, int col) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size);
  m(row, col) = 1.0;
  return m;
}

std::string chart_list() {
  std::string out;
  for (const auto name : supported_charts()) {
    if (!out.empty()) out += ", ";
    out += name;
  }
  return out + " (berger-sphere for c > -3, heisenberg for c = -3, sl2r for c < -3)";
}

}  // namespace

std::string_view to_string(ChartKind kind) {
  switch (kind) {
    case ChartKind::berger_sphere: return "berger-sphere";
    case ChartKind::heisenberg: return "heisenberg";
    case ChartKind::sl2r: return "sl2r";
  }
  return "?";
}

std::vector<std::string_view> supported_charts() { return {"berger-sphere", "heisenberg", "sl2r"}; }

GroupChart GroupChart::for_curvature(double c, std::optional<std::string_view> requested) {
  if (!std::isfinite(c)) {
    throw ChartUnavailable(fmt::format("no chart for c = {}; supported charts: {}", c, chart_list()));
  }
  const ChartKind kind = c > -3.0 ? ChartKind::berger_sphere : (c == -3.0 ? ChartKind::heisenberg : ChartKind::sl2r);
  if (requested && *requested != to_string(kind)) {
    throw ChartUnavailable(
        fmt::format("chart '{}' unavailable for c = {}; supported charts: {}", *requested, c, chart_list()));
  }
  return GroupChart(kind, c);
}

GroupChart::GroupChart(ChartKind kind, double c) : kind_(kind), c_(c), mu_((c + 3.0) / 2.0) {
  switch (kind_) {
    case ChartKind::berger_sphere: {
      const double b = mu_ / 2.0;
      const double a = std::sqrt(b);
      generators_ = {quaternion_left(0, a, 0, 0), quaternion_left(0, 0, a, 0), quaternion_left(0, 0, 0, b)};
      break;
    }
    case ChartKind::heisenberg:
      generators_ = {unit(3, 0, 1), unit(3, 1, 2), 0.5 * unit(3, 0, 2)};
      break;
    case ChartKind::sl2r: {
      const double b = -mu_;
      const double a = std::sqrt(2.0 * b);
      Eigen::MatrixXd l1(2, 2), l2(2, 2), l3(2, 2);
      l1 << 0.5, 0.0, 0.0, -0.5;
      l2 << 0.0, 0.5, 0.5, 0.0;
      l3 << 0.0, 0.5, -0.5, 0.0;
      generators_ = {a * l1, a * l2, b * l3};
      break;
    }
  }
}

std::string GroupChart::description() const {
  switch (kind_) {
    case ChartKind::berger_sphere:
      return fmt::format("berger-sphere c={} unit quaternions, xyz = (w, y, z) / (1 + x) for q = w + xi + yj + zk", c_);
    case ChartKind::heisenberg:
      return fmt::format("heisenberg c={} unitriangular 3x3, xyz = (g12, g23, g13)", c_);
    case ChartKind::sl2r:
      return fmt::format("sl2r c={} SL(2,R), xy = g.i in the upper half plane, z = atan2(-g21, g22)", c_);
  }
  return {};
}

Eigen::MatrixXd GroupChart::identity() const {
  const auto size = generators_[0].rows();
  return Eigen::MatrixXd::Identity(size, size);
}

Eigen::MatrixXd GroupChart::algebra_element(const FrameVector& u) const {
  return u[0] * generators_[0] + u[1] * generators_[1] + u[2] * generators_[2];
}

Eigen::MatrixXd GroupChart::exp(const FrameVector& u) const { return algebra_element(u).exp(); }

void GroupChart::renormalize(Eigen::MatrixXd& g) const {
  switch (kind_) {
    case ChartKind::berger_sphere: {
      const Eigen::Vector4d q = g.col(0).normalized();
      g = quaternion_left(q[0], q[1], q[2], q[3]);
      break;
    }
    case ChartKind::heisenberg:
      for (int i = 0; i < 3; ++i) {
        g(i, i) = 1.0;
        for (int j = 0; j < i; ++j) g(i, j) = 0.0;
      }
      break;
    case ChartKind::sl2r:
      g /= std::sqrt(g.determinant());
      break;
  }
}

Eigen::Vector3d GroupChart::position(const Eigen::MatrixXd& g) const {
  switch (kind_) {
    case ChartKind::berger_sphere: {
      // Pole at -i, off the fiber through the identity.
      return Eigen::Vector3d(g(0, 0), g(2, 0), g(3, 0)) / (1.0 + g(1, 0));
    }
    case ChartKind::heisenberg:
      return {g(0, 1), g(1, 2), g(0, 2)};
    case ChartKind::sl2r: {
      const double denom = g(1, 0) * g(1, 0) + g(1, 1) * g(1, 1);
      return {(g(0, 0) * g(1, 0) + g(0, 1) * g(1, 1)) / denom, 1.0 / denom, std::atan2(-g(1, 0), g(1, 1))};
    }
  }
  return Eigen::Vector3d::Zero();
}

std::optional<double> GroupChart::fiber_period() const {
  switch (kind_) {
    case ChartKind::berger_sphere: return 2.0 * std::numbers::pi / (mu_ / 2.0);
    case ChartKind::heisenberg: return std::nullopt;
    case ChartKind::sl2r: return 4.0 * std::numbers::pi / (-mu_);
  }
  return std::nullopt;
}

std::vector<Eigen::MatrixXd> integrate_group_path(const GroupChart& chart, const SampledCurve& curve) {
  std::vector<Eigen::MatrixXd> path;
  path.reserve(curve.size());
  if (curve.size() == 0) return path;
  path.push_back(chart.identity());
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    const FrameVector step = 0.5 * curve.h * (curve.velocity[i] + curve.velocity[i + 1]);
    Eigen::MatrixXd g = path.back() * chart.exp(step);
    chart.renormalize(g);
    path.push_back(std::move(g));
  }
  return path;
}

std::vector<Eigen::Vector3d> chart_positions(const GroupChart& chart, const std::vector<Eigen::MatrixXd>& path) {
  std::vector<Eigen::Vector3d> out;
  out.reserve(path.size());
  for (const auto& g : path) out.push_back(chart.position(g));
  return out;
}

std::vector<Eigen::MatrixXd> fiber_steps(const GroupChart& chart, double dt, std::size_t m) {
  std::vector<Eigen::MatrixXd> out;
  out.reserve(m);
  for (std::size_t k = 0; k < m; ++k) out.push_back(chart.exp(static_cast<double>(k) * dt * xi()));
  return out;
}

std::vector<Eigen::Vector3d> fiber_orbit(const GroupChart& chart, const Eigen::MatrixXd& g,
                                         const std::vector<Eigen::MatrixXd>& steps) {
  std::vector<Eigen::Vector3d> out;
  out.reserve(steps.size());
  for (const auto& step : steps) {
    Eigen::MatrixXd p = g * step;
    chart.renormalize(p);
    out.push_back(chart.position(p));
  }
  return out;
}

}  // namespace sasaki
