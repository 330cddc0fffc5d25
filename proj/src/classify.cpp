// SPDX-License-Identifier: Apache-2.0

#include "sasaki/classify.hpp"

#include "sasaki/hopf.hpp"
#include "sasaki/operators.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <type_traits>

namespace sasaki {

namespace {

enum class Relation {
  eigen,  // op = lambda H
  zero,   // op = 0
};

struct Measurement {
  bool degenerate = false;  // H vanishes identically
  double lambda = 0.0;
  double residual = 0.0;
  std::optional<double> oracle_gap;
};

template <typename Value>
Measurement measure(const Value& op, const Value& mean_curvature, Relation relation) {
  Measurement m;
  m.degenerate = max_norm(mean_curvature) < kKappaFloor;
  if (m.degenerate || relation == Relation::zero) {
    m.residual = max_norm(op);
    return m;
  }
  EigenFit fit;
  if constexpr (std::is_same_v<Value, OperatorValue>) {
    fit = eigen_residual(op, mean_curvature);
  } else {
    fit = surface_eigen_residual(op, mean_curvature);
  }
  m.lambda = fit.lambda;
  m.residual = fit.residual;
  return m;
}

struct Case {
  std::string subject;
  std::string kind;
  double c = 0.0;
  OperatorTag op = OperatorTag::laplacian;
  Relation relation = Relation::eigen;
  std::function<Measurement(double h, std::size_t n)> evaluate;
  Verdict expected = Verdict::unresolved;
  std::optional<double> expected_lambda;
  std::string theorem_tag;
  std::string direction;
};

EigenReport run_case(const Case& item, const VerifyOptions& options) {
  const double h = options.h;
  const double h2 = h / 2.0;
  const std::size_t n = options.samples();
  const Measurement coarse = item.evaluate(h, n);
  const Measurement fine = item.evaluate(h2, 2 * (n - 1) + 1);
  const double tol = options.tolerance_at(h);
  const double tol2 = options.tolerance_at(h2);

  EigenReport r;
  r.subject = item.subject;
  r.kind = item.kind;
  r.c = item.c;
  r.op = item.op;
  r.h = h;
  r.tolerance = tol;
  r.residual = coarse.residual;
  r.residual_refined = fine.residual;
  r.oracle_gap = coarse.oracle_gap;
  r.expected_verdict = item.expected;
  r.expected_lambda = item.expected_lambda;
  r.theorem_tag = item.theorem_tag;
  r.direction = item.direction;

  const bool pass = coarse.residual <= tol;
  const bool pass2 = fine.residual <= tol2;
  if (coarse.degenerate && fine.degenerate) {
    r.verdict = pass && pass2 ? Verdict::degenerate : Verdict::non_eigen;
    if (item.relation == Relation::eigen) r.lambda_est = 0.0;
  } else if (coarse.degenerate != fine.degenerate) {
    r.verdict = Verdict::unresolved;
  } else if (pass && pass2) {
    r.verdict = item.relation == Relation::eigen ? Verdict::eigen : Verdict::polyharmonic;
    if (item.relation == Relation::eigen) r.lambda_est = coarse.lambda;
  } else if (!pass && !pass2) {
    r.verdict = Verdict::non_eigen;
    if (item.relation == Relation::eigen) r.lambda_est = coarse.lambda;
  } else {
    r.verdict = Verdict::unresolved;
  }
  return r;
}

std::vector<double> constant_grid(double c) {
  std::vector<double> values{0.0, 0.5, 1.0, 2.0};
  if (c > 1.0) {
    const double root = std::sqrt(c - 1.0);
    if (std::none_of(values.begin(), values.end(), [root](double v) { return std::abs(v - root) < 1e-12; })) {
      values.push_back(root);
    }
  }
  return values;
}

ScalarFunction constant(double v) {
  return [v](double) { return v; };
}

bool is_root(double c, double k) { return c > 1.0 && std::abs(k - std::sqrt(c - 1.0)) < 1e-12; }

}  // namespace

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::eigen: return "eigen";
    case Verdict::polyharmonic: return "biharmonic/polyharmonic";
    case Verdict::non_eigen: return "non-eigen";
    case Verdict::degenerate: return "geodesic/minimal";
    case Verdict::unresolved: return "unresolved";
  }
  return "unresolved";
}

std::string_view to_string(OperatorTag tag) {
  switch (tag) {
    case OperatorTag::laplacian: return "laplacian";
    case OperatorTag::normal_laplacian: return "normal_laplacian";
    case OperatorTag::bitension: return "bitension";
    case OperatorTag::jacobi: return "jacobi";
  }
  return "laplacian";
}

bool EigenReport::matches_expected() const {
  if (verdict != expected_verdict) return false;
  if (!expected_lambda) return true;
  return lambda_est && std::abs(*lambda_est - *expected_lambda) <= 10.0 * tolerance;
}

std::size_t VerifyOptions::samples() const {
  return static_cast<std::size_t>(std::llround(length / h)) + 1;
}

double VerifyOptions::tolerance_at(double step) const {
  return tolerance ? *tolerance : verdict_tolerance(step);
}

const InitialFrame& oblique_initial_frame() {
  static const InitialFrame frame{FrameVector(0.8, 0.36, 0.48), FrameVector(-0.6, 0.48, 0.64),
                                  FrameVector(0.0, -0.8, 0.6)};
  return frame;
}

std::vector<double> default_c_list() { return {-7.0, -3.0, 0.0, 1.0, 2.0, 5.0}; }

std::vector<CurveCase> default_curve_corpus(double c) {
  std::vector<CurveCase> corpus;
  const auto helix = [&](double k, double t) {
    corpus.push_back({fmt::format("helix kappa={:g} tau={:g}", k, t), constant(k), constant(t), true, k, t});
  };
  helix(0.0, 0.0);
  helix(1.0, 1.0);
  helix(2.0, 1.0);
  helix(0.5, 2.0);
  helix(1.0, 0.0);
  if (c > 1.0) helix(std::sqrt(c - 1.0), 1.0);
  corpus.push_back({"affine kappa=1+s tau=1", [](double s) { return 1.0 + s; }, constant(1.0)});
  corpus.push_back({"quadratic kappa=1+s^2 tau=0.5", [](double s) { return 1.0 + s * s; }, constant(0.5)});
  corpus.push_back({"trig kappa=1.5+0.5sin(2s) tau=1", [](double s) { return 1.5 + 0.5 * std::sin(2.0 * s); },
                    constant(1.0)});
  corpus.push_back({"kappa=1 tau=1+s", constant(1.0), [](double s) { return 1.0 + s; }});
  return corpus;
}

std::vector<EigenReport> verify_curve_eigen_theorem(const SpaceForm& sf, std::span<const CurveCase> corpus,
                                                    const VerifyOptions& options) {
  std::vector<EigenReport> reports;
  for (const CurveCase& cc : corpus) {
    Case item;
    item.subject = cc.name;
    item.kind = "curve";
    item.c = sf.c;
    item.op = OperatorTag::laplacian;
    item.theorem_tag = "curve.laplacian: geodesic or helix with lambda = kappa^2 + tau^2";
    item.evaluate = [&sf, &cc](double h, std::size_t n) {
      const FrenetCurve fc = synthesize_frenet_curve(sf, cc.kappa, cc.tau, oblique_initial_frame(), h, n);
      const OperatorValue closed = laplacian_H_closed(fc.frenet);
      Measurement m = measure(closed, mean_curvature_vector(fc.frenet), Relation::eigen);
      m.oracle_gap = max_difference(closed, laplacian_H_oracle(sf, fc.curve, fc.frenet));
      return m;
    };
    if (cc.constant && cc.kappa0 == 0.0) {
      item.expected = Verdict::degenerate;
      item.expected_lambda = 0.0;
      item.direction = "witness";
    } else if (cc.constant) {
      item.expected = Verdict::eigen;
      item.expected_lambda = cc.kappa0 * cc.kappa0 + cc.tau0 * cc.tau0;
      item.direction = "witness";
    } else {
      item.expected = Verdict::non_eigen;
      item.direction = "counterexample";
    }
    reports.push_back(run_case(item, options));
  }
  return reports;
}

std::vector<EigenReport> verify_legendre_theorems(std::span<const double> c_list, const VerifyOptions& options) {
  std::vector<EigenReport> reports;
  for (const double c : c_list) {
    const SpaceForm sf = build_space_form(c);

    struct LegendreCase {
      std::string name;
      ScalarFunction kappa;
      bool constant;
      double kappa0;
    };
    std::vector<LegendreCase> cases;
    for (double k : constant_grid(c)) {
      cases.push_back({fmt::format("legendre-helix kappa={:g}", k), constant(k), true, k});
    }
    cases.push_back({"legendre kappa=1+0.5s", [](double s) { return 1.0 + 0.5 * s; }, false, 0.0});

    for (const LegendreCase& lc : cases) {
      const bool geodesic = lc.constant && lc.kappa0 == 0.0;
      const auto evaluate = [sf, kappa = lc.kappa](OperatorTag tag) {
        return [sf, kappa, tag](double h, std::size_t n) {
          const FrenetCurve fc = synthesize_legendre_curve(sf, kappa, h, n);
          const OperatorValue H = mean_curvature_vector(fc.frenet);
          OperatorValue closed, oracle;
          Relation relation = Relation::eigen;
          switch (tag) {
            case OperatorTag::laplacian:
              closed = laplacian_H_closed(fc.frenet);
              oracle = laplacian_H_oracle(sf, fc.curve, fc.frenet);
              break;
            case OperatorTag::normal_laplacian:
              closed = normal_laplacian_H(fc.frenet);
              oracle = normal_laplacian_H_oracle(sf, fc.curve, fc.frenet);
              break;
            default:
              closed = bitension_curve(sf, fc.frenet);
              oracle = bitension_curve_oracle(sf, fc.curve, fc.frenet);
              relation = Relation::zero;
              break;
          }
          Measurement m = measure(closed, H, relation);
          m.oracle_gap = max_difference(closed, oracle);
          return m;
        };
      };

      Case lap;
      lap.subject = lc.name;
      lap.kind = "legendre";
      lap.c = c;
      lap.op = OperatorTag::laplacian;
      lap.evaluate = evaluate(OperatorTag::laplacian);
      lap.theorem_tag = "legendre.laplacian: geodesic or helix with lambda = kappa^2 + 1";
      Case normal = lap;
      normal.op = OperatorTag::normal_laplacian;
      normal.evaluate = evaluate(OperatorTag::normal_laplacian);
      normal.theorem_tag = "legendre.normal_laplacian: geodesic or helix with lambda = 1";
      Case bitension = lap;
      bitension.op = OperatorTag::bitension;
      bitension.relation = Relation::zero;
      bitension.evaluate = evaluate(OperatorTag::bitension);
      bitension.theorem_tag = c > 1.0 ? "legendre.bitension: geodesic or helix of curvature sqrt(c-1)"
                                      : "legendre.bitension: only geodesics when c <= 1";

      if (geodesic) {
        for (Case* item : {&lap, &normal, &bitension}) {
          item->expected = Verdict::degenerate;
          item->direction = "witness";
        }
        lap.expected_lambda = 0.0;
        normal.expected_lambda = 0.0;
      } else if (lc.constant) {
        lap.expected = Verdict::eigen;
        lap.expected_lambda = lc.kappa0 * lc.kappa0 + 1.0;
        lap.direction = "witness";
        normal.expected = Verdict::eigen;
        normal.expected_lambda = 1.0;
        normal.direction = "witness";
        const bool root = is_root(c, lc.kappa0);
        bitension.expected = root ? Verdict::polyharmonic : Verdict::non_eigen;
        bitension.direction = root ? "witness" : "counterexample";
      } else {
        for (Case* item : {&lap, &normal, &bitension}) {
          item->expected = Verdict::non_eigen;
          item->direction = "counterexample";
        }
      }
      for (const Case* item : {&lap, &normal, &bitension}) reports.push_back(run_case(*item, options));
    }
  }
  return reports;
}

std::vector<EigenReport> verify_hopf_theorems(std::span<const double> c_list, const VerifyOptions& options) {
  std::vector<EigenReport> reports;
  for (const double c : c_list) {
    const SpaceForm sf = build_space_form(c);

    struct CylinderCase {
      std::string name;
      ScalarFunction kappa_bar;
      bool constant = false;
      double kappa0 = 0.0;
      std::optional<double> natural_lambda;  // kbar'' + lambda kbar = 0
    };
    std::vector<CylinderCase> cases;
    for (double k : constant_grid(c)) {
      cases.push_back({fmt::format("circle kbar={:g}", k), constant(k), true, k, 0.0});
    }
    cases.push_back({"clothoid kbar=s", natural_equation_profile(0.0, 1.0, 0.0), false, 0.0, 0.0});
    cases.push_back({"clothoid kbar=0.5s+1", natural_equation_profile(0.0, 0.5, 1.0), false, 0.0, 0.0});
    cases.push_back({"trig kbar=cos(2s)", natural_equation_profile(4.0, 1.0, 0.0), false, 0.0, 4.0});
    cases.push_back({"exp kbar=exp(s)", natural_equation_profile(-1.0, 1.0, 0.0), false, 0.0, -1.0});
    cases.push_back({"non-affine kbar=s^2", [](double s) { return s * s; }, false, 0.0, std::nullopt});

    for (const CylinderCase& cc : cases) {
      const bool minimal = cc.constant && cc.kappa0 == 0.0;
      const double H0 = cc.kappa0 / 2.0;
      const auto evaluate = [sf, kbar = cc.kappa_bar](OperatorTag tag, Relation relation) {
        return [sf, kbar, tag, relation](double h, std::size_t n) {
          const HopfCylinder cyl = build_cylinder(sf, kbar, h, n);
          const SurfaceOperatorValue H = cylinder_mean_curvature(cyl);
          SurfaceOperatorValue closed;
          std::optional<CylinderOperator> oracle;
          switch (tag) {
            case OperatorTag::laplacian:
              closed = cylinder_laplacian_H(cyl);
              oracle = CylinderOperator::laplacian;
              break;
            case OperatorTag::normal_laplacian:
              closed = cylinder_normal_laplacian_H(cyl);
              oracle = CylinderOperator::normal_laplacian;
              break;
            case OperatorTag::jacobi:
              closed = cylinder_jacobi_H(cyl);
              oracle = CylinderOperator::jacobi;
              break;
            case OperatorTag::bitension:
              closed = cylinder_bitension(cyl);
              break;
          }
          Measurement m = measure(closed, H, relation);
          if (oracle) m.oracle_gap = max_difference(closed, cylinder_frame_oracle(cyl, *oracle));
          return m;
        };
      };

      Case lap;
      lap.subject = cc.name;
      lap.kind = "cylinder";
      lap.c = c;
      lap.op = OperatorTag::laplacian;
      lap.evaluate = evaluate(OperatorTag::laplacian, Relation::eigen);
      lap.theorem_tag = "hopf.laplacian: base geodesic or circle with lambda = 4H^2 + 2";

      Case normal = lap;
      normal.op = OperatorTag::normal_laplacian;
      normal.evaluate = evaluate(OperatorTag::normal_laplacian, Relation::eigen);
      normal.theorem_tag = cc.natural_lambda && *cc.natural_lambda == 0.0
                               ? "hopf.normal_laplacian: zero iff base is geodesic, circle or clothoid"
                               : "hopf.normal_laplacian: eigen iff kbar'' + lambda kbar = 0";

      Case jacobi = lap;
      jacobi.op = OperatorTag::jacobi;
      jacobi.evaluate = evaluate(OperatorTag::jacobi, Relation::eigen);
      jacobi.theorem_tag = "hopf.jacobi: base geodesic or circle with lambda = 4H^2 + 1 - c";

      Case bitension = lap;
      bitension.op = OperatorTag::bitension;
      bitension.relation = Relation::zero;
      bitension.evaluate = evaluate(OperatorTag::bitension, Relation::zero);
      bitension.theorem_tag = c > 1.0 ? "hopf.bitension: minimal or circle with kbar = sqrt(c-1)"
                                      : "hopf.bitension: only minimal cylinders when c <= 1";

      if (minimal) {
        for (Case* item : {&lap, &normal, &jacobi, &bitension}) {
          item->expected = Verdict::degenerate;
          item->direction = "witness";
        }
        lap.expected_lambda = 0.0;
        normal.expected_lambda = 0.0;
        jacobi.expected_lambda = 0.0;
      } else if (cc.constant) {
        lap.expected = Verdict::eigen;
        lap.expected_lambda = 4.0 * H0 * H0 + 2.0;
        normal.expected = Verdict::eigen;
        normal.expected_lambda = 0.0;
        jacobi.expected = Verdict::eigen;
        jacobi.expected_lambda = 4.0 * H0 * H0 + 1.0 - c;
        for (Case* item : {&lap, &normal, &jacobi}) item->direction = "witness";
        const bool root = is_root(c, cc.kappa0);
        bitension.expected = root ? Verdict::polyharmonic : Verdict::non_eigen;
        bitension.direction = root ? "witness" : "counterexample";
      } else {
        lap.expected = Verdict::non_eigen;
        jacobi.expected = Verdict::non_eigen;
        bitension.expected = Verdict::non_eigen;
        for (Case* item : {&lap, &jacobi, &bitension}) item->direction = "counterexample";
        if (cc.natural_lambda) {
          normal.expected = Verdict::eigen;
          normal.expected_lambda = *cc.natural_lambda;
          normal.direction = "witness";
        } else {
          normal.expected = Verdict::non_eigen;
          normal.direction = "counterexample";
        }
      }
      for (const Case* item : {&lap, &normal, &jacobi, &bitension}) reports.push_back(run_case(*item, options));
    }
  }
  return reports;
}

}  // namespace sasaki
