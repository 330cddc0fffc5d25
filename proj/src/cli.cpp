// SPDX-License-Identifier: Apache-2.0

#include "sasaki/cli.hpp"

#include "sasaki/charts.hpp"
#include "sasaki/operators.hpp"
#include "sasaki/spaceform.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>

namespace sasaki::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kSchema = "1";

std::string quote_csv(std::string_view text) {
  std::string out = "\"";
  for (const char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string number(double v) { return fmt::format("{:.17g}", v); }
std::string number(const std::optional<double>& v) { return v ? number(*v) : std::string(); }
std::string coord(double v) { return fmt::format("{:.12g}", v); }

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }
Json vector_json(const FrameVector& v) { return Json::array({v.x(), v.y(), v.z()}); }

Suite parse_suite(std::string_view name) {
  if (name == "spaceform") return Suite::spaceform;
  if (name == "curves") return Suite::curves;
  if (name == "legendre") return Suite::legendre;
  if (name == "hopf") return Suite::hopf;
  if (name == "all") return Suite::all;
  throw UsageError(fmt::format("unknown suite '{}' (spaceform, curves, legendre, hopf, all)", name));
}

std::string_view suite_name(Suite suite) {
  switch (suite) {
    case Suite::spaceform: return "spaceform";
    case Suite::curves: return "curves";
    case Suite::legendre: return "legendre";
    case Suite::hopf: return "hopf";
    case Suite::all: return "all";
  }
  return "?";
}

OutputFormat parse_format(std::string_view name) {
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  if (name == "obj") return OutputFormat::obj;
  throw UsageError(fmt::format("unknown format '{}' (json, csv, obj)", name));
}

std::string joined(const std::vector<std::string_view>& names) {
  std::string out;
  for (const auto name : names) {
    if (!out.empty()) out += ", ";
    out += name;
  }
  return out;
}

double parse_real(std::string_view text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw UsageError(fmt::format("'{}' is not a real number", text));
  }
  return v;
}

ScalarFunction constant_fn(double v) {
  return [v](double) { return v; };
}

ScalarFunction affine_fn(double a, double b) {
  return [a, b](double s) { return a * s + b; };
}

FrenetCurve build_curve(const SpaceForm& sf, const FamilySpec& spec, double h, std::size_t n) {
  const std::string& f = spec.family;
  if (f == "geodesic") return synthesize_frenet_curve(sf, constant_fn(0), constant_fn(0), oblique_initial_frame(), h, n);
  if (f == "fiber-geodesic") {
    const InitialFrame along_fiber{xi(), frame_vector(0), frame_vector(1)};
    return synthesize_frenet_curve(sf, constant_fn(0), constant_fn(0), along_fiber, h, n);
  }
  if (f == "helix") {
    return synthesize_frenet_curve(sf, constant_fn(spec.kappa), constant_fn(spec.tau), oblique_initial_frame(), h, n);
  }
  if (f == "curve-affine") {
    return synthesize_frenet_curve(sf, affine_fn(spec.a, spec.b), constant_fn(spec.tau), oblique_initial_frame(), h, n);
  }
  if (f == "legendre-helix") return synthesize_legendre_curve(sf, constant_fn(spec.kappa), h, n);
  if (f == "legendre-affine") return synthesize_legendre_curve(sf, affine_fn(spec.a, spec.b), h, n);
  throw UsageError(fmt::format("'{}' is not a curve family", f));
}

ScalarFunction base_curvature(const FamilySpec& spec) {
  const std::string& f = spec.family;
  if (f == "hopf-circle") return constant_fn(spec.kappa);
  if (f == "hopf-clothoid") return affine_fn(spec.a, spec.b);
  if (f == "hopf-natural") return natural_equation_profile(spec.lambda, spec.a, spec.b);
  throw UsageError(fmt::format("'{}' is not a cylinder family", f));
}

Json family_parameters(const FamilySpec& spec) {
  const std::string& f = spec.family;
  Json p = Json::object();
  if (f == "helix") {
    p["kappa"] = spec.kappa;
    p["tau"] = spec.tau;
  } else if (f == "curve-affine") {
    p["a"] = spec.a;
    p["b"] = spec.b;
    p["tau"] = spec.tau;
  } else if (f == "legendre-helix" || f == "hopf-circle") {
    p["kappa"] = spec.kappa;
  } else if (f == "legendre-affine" || f == "hopf-clothoid") {
    p["a"] = spec.a;
    p["b"] = spec.b;
  } else if (f == "hopf-natural") {
    p["lambda"] = spec.lambda;
    p["a"] = spec.a;
    p["b"] = spec.b;
  }
  return p;
}

std::string family_line(const RunConfig& config) {
  std::string params;
  const Json parameters = family_parameters(config.spec);
  for (const auto& item : parameters.items()) {
    params += fmt::format(" {}={}", item.key(), item.value().get<double>());
  }
  return fmt::format("{}{} c={} h={} n={}", config.spec.family, params, config.c.front(), config.h, config.n);
}

double single_c(const RunConfig& config) {
  if (config.c.size() != 1) throw UsageError("this command takes exactly one value of --c");
  return config.c.front();
}

// ---------------------------------------------------------------- verify

// Frenet extraction uses fourth-order stencils; its error bound follows h^4.
double extraction_tolerance(double h) { return std::max(1e-6, 1e4 * h * h * h * h); }

std::vector<CheckRecord> curve_checks(double c, const VerifyOptions& opts) {
  const SpaceForm sf = build_space_form(c);
  const std::size_t n = opts.samples();
  const FrenetCurve fc = synthesize_frenet_curve(sf, constant_fn(2.0), constant_fn(1.0), oblique_initial_frame(), opts.h, n);
  const FrenetData fd = extract_frenet(sf, fc.curve);
  double err = 0.0;
  for (std::size_t j = 0; j < fd.size(); ++j) {
    err = std::max({err, std::abs(fd.kappa[j] - 2.0), std::abs(fd.tau[j] - 1.0)});
  }
  return {
      {"curves.extraction_roundtrip", c, err, extraction_tolerance(opts.h)},
      {"curves.frame_orthonormality", c, frame_orthonormality_defect(fc.frenet), 1e-10},
  };
}

std::vector<CheckRecord> legendre_checks(double c, const VerifyOptions& opts) {
  const SpaceForm sf = build_space_form(c);
  const FrenetCurve fc = synthesize_legendre_curve(sf, constant_fn(2.0), opts.h, std::max<std::size_t>(opts.samples(), 10001));
  double horizontal = 0.0;
  for (const auto& u : fc.curve.velocity) horizontal = std::max(horizontal, std::abs(eta(u)));
  const FrenetData fd = extract_frenet(sf, fc.curve);
  double torsion = 0.0;
  for (const double t : fd.tau) torsion = std::max(torsion, std::abs(t - 1.0));
  return {
      {"legendre.horizontality", c, horizontal, 1e-8},
      {"legendre.extracted_torsion", c, torsion, extraction_tolerance(opts.h)},
  };
}

std::vector<CheckRecord> hopf_checks(double c, const VerifyOptions& opts) {
  const SpaceForm sf = build_space_form(c);
  const double tol = opts.tolerance_at(opts.h);

  const HopfCylinder circle = build_cylinder(sf, constant_fn(1.0), opts.h, opts.samples());
  const SurfaceOperatorValue term = cylinder_curvature_term(circle);
  double curvature = 0.0;
  for (std::size_t j = 0; j < term.size(); ++j) {
    curvature = std::max(curvature, std::hypot(term.along_t[j], term.along_n[j] - (c + 1.0) * circle.H[j],
                                               term.along_xi[j]));
  }

  const HopfCylinder clothoid = build_cylinder(sf, affine_fn(0.5, 1.0), opts.h, opts.samples());
  const FrenetCurve lift = synthesize_horizontal_curve(sf, clothoid.kappa_bar_fn, opts.h, opts.samples());
  return {
      {"hopf.oneill_base_curvature", c, std::abs(oneill_base_curvature(sf) - (c + 3.0)), 1e-12},
      {"hopf.curvature_term", c, curvature, 1e-12},
      {"hopf.flatness", c, cylinder_flatness_residual(clothoid), tol},
      {"hopf.horizontal_lift", c, horizontal_lift_check(sf, lift.curve), tol},
  };
}

Json report_json(const EigenReport& r) {
  Json j;
  j["subject"] = r.subject;
  j["kind"] = r.kind;
  j["c"] = r.c;
  j["operator"] = std::string(to_string(r.op));
  j["lambda_est"] = optional_json(r.lambda_est);
  j["residual"] = r.residual;
  j["residual_refined"] = r.residual_refined;
  j["h"] = r.h;
  j["tolerance"] = r.tolerance;
  j["oracle_gap"] = optional_json(r.oracle_gap);
  j["verdict"] = std::string(to_string(r.verdict));
  j["expected_verdict"] = std::string(to_string(r.expected_verdict));
  j["expected_lambda"] = optional_json(r.expected_lambda);
  j["theorem_tag"] = r.theorem_tag;
  j["direction"] = r.direction;
  j["matches"] = r.matches_expected();
  return j;
}

Json check_json(const CheckRecord& check) {
  Json j;
  j["name"] = check.name;
  j["c"] = check.c;
  j["error"] = check.error;
  j["tolerance"] = check.tolerance;
  j["pass"] = check.pass();
  return j;
}

VerifyOptions verify_options(const RunConfig& config) {
  VerifyOptions opts;
  opts.h = config.h;
  opts.length = config.length;
  opts.tolerance = config.tolerance;
  return opts;
}

// ---------------------------------------------------------------- export

std::string write_polyline_csv(const GroupChart& chart, const RunConfig& config, const SampledCurve& curve) {
  const auto positions = chart_positions(chart, integrate_group_path(chart, curve));
  std::string out = fmt::format("# chart: {}\n# family: {}\ns,x,y,z\n", chart.description(), family_line(config));
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const auto& p = positions[i];
    out += fmt::format("{},{},{},{}\n", coord(curve.arclength(i)), coord(p.x()), coord(p.y()), coord(p.z()));
  }
  return out;
}

std::string write_polyline_obj(const GroupChart& chart, const RunConfig& config, const SampledCurve& curve) {
  const auto positions = chart_positions(chart, integrate_group_path(chart, curve));
  std::string out = fmt::format("# chart: {}\n# family: {}\n", chart.description(), family_line(config));
  for (const auto& p : positions) out += fmt::format("v {} {} {}\n", coord(p.x()), coord(p.y()), coord(p.z()));
  out += "l";
  for (std::size_t i = 1; i <= positions.size(); ++i) out += fmt::format(" {}", i);
  return out + "\n";
}

std::string write_cylinder_obj(const GroupChart& chart, const RunConfig& config, const SampledCurve& lift) {
  const std::size_t m = config.fiber_samples;
  const auto period = chart.fiber_period();
  const bool closed = period.has_value();
  const double dt = closed ? *period / static_cast<double>(m) : config.fiber_extent / static_cast<double>(m - 1);
  const auto steps = fiber_steps(chart, dt, m);
  const auto path = integrate_group_path(chart, lift);

  std::string out = fmt::format("# chart: {}\n# family: {}\n", chart.description(), family_line(config));
  out += closed ? fmt::format("# fibers: closed, period {}, {} samples per fiber\n", coord(*period), m)
                : fmt::format("# fibers: open, extent {}, {} samples per fiber\n", coord(config.fiber_extent), m);
  for (const auto& g : path) {
    for (const auto& p : fiber_orbit(chart, g, steps)) {
      out += fmt::format("v {} {} {}\n", coord(p.x()), coord(p.y()), coord(p.z()));
    }
  }
  const std::size_t ring_faces = closed ? m : m - 1;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    for (std::size_t k = 0; k < ring_faces; ++k) {
      const std::size_t k2 = (k + 1) % m;
      const std::size_t a = i * m + k + 1;
      const std::size_t b = (i + 1) * m + k + 1;
      const std::size_t c = (i + 1) * m + k2 + 1;
      const std::size_t d = i * m + k2 + 1;
      out += fmt::format("f {} {} {} {}\n", a, b, c, d);
    }
  }
  return out;
}

// ---------------------------------------------------------------- sweep

std::vector<double> sweep_grid(const RunConfig& config, double c) {
  std::vector<double> grid = config.kappa_grid;
  if (grid.empty()) {
    for (int k = 0; k <= 12; ++k) grid.push_back(0.25 * k);
    if (c > 1.0) {
      const double root = std::sqrt(c - 1.0);
      if (std::none_of(grid.begin(), grid.end(), [root](double v) { return std::abs(v - root) < 1e-12; })) {
        grid.push_back(root);
      }
    }
    std::sort(grid.begin(), grid.end());
  }
  return grid;
}

struct SweepRow {
  double c = 0.0;
  double kappa = 0.0;
  std::optional<double> first_lambda;   // laplacian
  std::optional<double> second_lambda;  // normal laplacian (legendre) or jacobi (cylinder)
  double residual = 0.0;
  double residual_refined = 0.0;
  double tolerance = 0.0;
  bool vanishes = false;
};

SweepRow sweep_legendre(const SpaceForm& sf, double kappa, const VerifyOptions& opts) {
  SweepRow row;
  row.c = sf.c;
  row.kappa = kappa;
  const auto residual_at = [&](double h, std::size_t n, bool fill) {
    const FrenetCurve fc = synthesize_legendre_curve(sf, constant_fn(kappa), h, n);
    if (fill && kappa >= kKappaFloor) {
      const OperatorValue H = mean_curvature_vector(fc.frenet);
      row.first_lambda = eigen_residual(laplacian_H_closed(fc.frenet), H).lambda;
      row.second_lambda = eigen_residual(normal_laplacian_H(fc.frenet), H).lambda;
    }
    return max_norm(bitension_curve(sf, fc.frenet));
  };
  const std::size_t n = opts.samples();
  row.residual = residual_at(opts.h, n, true);
  row.residual_refined = residual_at(opts.h / 2.0, 2 * (n - 1) + 1, false);
  row.tolerance = opts.tolerance_at(opts.h);
  row.vanishes = row.residual <= row.tolerance && row.residual_refined <= opts.tolerance_at(opts.h / 2.0);
  return row;
}

SweepRow sweep_cylinder(const SpaceForm& sf, double kappa_bar, const VerifyOptions& opts) {
  SweepRow row;
  row.c = sf.c;
  row.kappa = kappa_bar;
  const auto residual_at = [&](double h, std::size_t n, bool fill) {
    const HopfCylinder cyl = build_cylinder(sf, constant_fn(kappa_bar), h, n);
    if (fill && std::abs(kappa_bar) >= kKappaFloor) {
      const SurfaceOperatorValue H = cylinder_mean_curvature(cyl);
      row.first_lambda = surface_eigen_residual(cylinder_laplacian_H(cyl), H).lambda;
      row.second_lambda = surface_eigen_residual(cylinder_jacobi_H(cyl), H).lambda;
    }
    return max_norm(cylinder_bitension(cyl));
  };
  const std::size_t n = opts.samples();
  row.residual = residual_at(opts.h, n, true);
  row.residual_refined = residual_at(opts.h / 2.0, 2 * (n - 1) + 1, false);
  row.tolerance = opts.tolerance_at(opts.h);
  row.vanishes = row.residual <= row.tolerance && row.residual_refined <= opts.tolerance_at(opts.h / 2.0);
  return row;
}

void write_output(const RunConfig& config, const std::string& text, std::ostream& out) {
  if (!config.output) {
    out << text;
    return;
  }
  std::ofstream file(*config.output, std::ios::binary);
  if (!file) throw std::runtime_error(fmt::format("cannot open '{}' for writing", *config.output));
  file << text;
  if (!file) throw std::runtime_error(fmt::format("failed writing '{}'", *config.output));
}

}  // namespace

std::vector<std::string_view> curve_families() {
  return {"geodesic", "fiber-geodesic", "helix", "curve-affine", "legendre-helix", "legendre-affine"};
}

std::vector<std::string_view> cylinder_families() { return {"hopf-circle", "hopf-clothoid", "hopf-natural"}; }

bool is_cylinder_family(std::string_view name) {
  const auto names = cylinder_families();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view item = text.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item.empty()) throw UsageError(fmt::format("empty entry in list '{}'", text));
    out.push_back(parse_real(item));
    pos = comma + 1;
  }
  return out;
}

std::optional<RunConfig> parse_arguments(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Mean curvature operators on Sasakian space forms", "sasaki"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");

  RunConfig config;
  std::string c_text, format_text, suite_text = "all", kappa_grid_text;
  std::optional<std::string> chart;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--c", c_text, "Value or comma-separated list of c");
    sub->add_option("--h", config.h, "Arclength step");
    sub->add_option("--out", config.output, "Output path (stdout when absent)");
    sub->add_option("--format", format_text, "json, csv or obj");
  };
  const auto add_family = [&](CLI::App* sub) {
    sub->add_option("--family", config.spec.family, "Curve or cylinder family")->required();
    sub->add_option("--kappa", config.spec.kappa, "Constant curvature (helices, circles)");
    sub->add_option("--tau", config.spec.tau, "Constant torsion");
    sub->add_option("--a", config.spec.a, "Slope or first coefficient");
    sub->add_option("--b", config.spec.b, "Offset or second coefficient");
    sub->add_option("--lambda", config.spec.lambda, "Natural-equation eigenvalue");
    sub->add_option("--n", config.n, "Number of samples");
  };

  auto* verify = app.add_subcommand("verify", "Run a verification suite and write the report");
  add_common(verify);
  verify->add_option("--suite", suite_text, "spaceform, curves, legendre, hopf or all");
  verify->add_option("--length", config.length, "Arclength of every test curve");

  auto* synthesize = app.add_subcommand("synthesize", "Sample a named curve or cylinder");
  add_common(synthesize);
  add_family(synthesize);

  auto* exporter = app.add_subcommand("export", "Write chart positions as CSV or an OBJ mesh");
  add_common(exporter);
  add_family(exporter);
  exporter->add_option("--chart", chart, "Expected chart name");
  exporter->add_option("--fiber-samples", config.fiber_samples, "Vertices per fiber in OBJ meshes");
  exporter->add_option("--fiber-extent", config.fiber_extent, "Fiber parameter range when fibers are open");

  auto* sweep = app.add_subcommand("sweep", "Tabulate eigenvalues and bitension over a curvature grid");
  add_common(sweep);
  sweep->add_option("--kind", config.sweep_kind, "legendre or cylinder");
  sweep->add_option("--kappa", kappa_grid_text, "Comma-separated curvature grid");
  sweep->add_option("--length", config.length, "Arclength of every test curve");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (verify->parsed()) config.command = Command::verify;
  if (synthesize->parsed()) config.command = Command::synthesize;
  if (exporter->parsed()) config.command = Command::export_geometry;
  if (sweep->parsed()) config.command = Command::sweep;

  if (!c_text.empty()) config.c = parse_real_list(c_text);
  if (!kappa_grid_text.empty()) config.kappa_grid = parse_real_list(kappa_grid_text);
  config.chart = chart;
  config.suite = parse_suite(suite_text);

  if (!(config.h > 0.0) || !std::isfinite(config.h)) throw UsageError("--h must be positive");
  if (config.n < 5) throw UsageError("--n must be at least 5");
  if (!(config.length > 0.0) || !std::isfinite(config.length)) throw UsageError("--length must be positive");
  if (config.length / config.h < 8.0) throw UsageError("--length must span at least 8 steps of --h");

  switch (config.command) {
    case Command::verify:
    case Command::sweep:
      if (config.c.empty()) config.c = default_c_list();
      config.format = format_text.empty() ? OutputFormat::json : parse_format(format_text);
      if (config.format == OutputFormat::obj) throw UsageError("obj output is only available for export");
      if (config.command == Command::sweep && config.sweep_kind != "legendre" && config.sweep_kind != "cylinder") {
        throw UsageError(fmt::format("unknown sweep kind '{}' (legendre, cylinder)", config.sweep_kind));
      }
      break;
    case Command::synthesize:
    case Command::export_geometry: {
      const auto curves = curve_families();
      const bool known = is_cylinder_family(config.spec.family) ||
                         std::find(curves.begin(), curves.end(), config.spec.family) != curves.end();
      if (!known) {
        throw UsageError(fmt::format("unknown family '{}' (curves: {}; cylinders: {})", config.spec.family,
                                     joined(curve_families()), joined(cylinder_families())));
      }
      if (config.c.size() != 1) throw UsageError("--c must name exactly one value for this command");
      const OutputFormat fallback = config.command == Command::synthesize ? OutputFormat::json : OutputFormat::csv;
      config.format = format_text.empty() ? fallback : parse_format(format_text);
      if (config.command == Command::synthesize && config.format == OutputFormat::obj) {
        throw UsageError("synthesize writes json or csv");
      }
      if (config.command == Command::export_geometry && config.format == OutputFormat::json) {
        throw UsageError("export writes csv or obj");
      }
      if (config.fiber_samples < 3) throw UsageError("--fiber-samples must be at least 3");
      if (!(config.fiber_extent > 0.0)) throw UsageError("--fiber-extent must be positive");
      break;
    }
  }
  return config;
}

void apply_environment(RunConfig& config) {
  const char* value = std::getenv("SASAKI_TOL");
  if (value == nullptr || *value == '\0') return;
  const double tol = parse_real(value);
  if (!(tol > 0.0)) throw UsageError("SASAKI_TOL must be positive");
  config.tolerance = tol;
}

std::vector<CheckRecord> spaceform_checks(double c) {
  const SpaceForm sf = build_space_form(c);
  std::vector<CheckRecord> checks;

  double cross_check = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t k = 0; k < 3; ++k) {
        const FrameVector a = curvature_from_frame(sf, i, j, k);
        const FrameVector b = curvature_formula(sf, frame_vector(i), frame_vector(j), frame_vector(k));
        cross_check = std::max(cross_check, (a - b).norm());
      }
    }
  }
  checks.push_back({"spaceform.curvature_cross_check", c, cross_check, 1e-12});

  // Planes containing xi are spanned by xi and a horizontal unit vector.
  double xi_planes = 0.0;
  for (int step = 0; step < 12; ++step) {
    const double angle = 0.5235987755982988 * step;
    const FrameVector x(std::cos(angle), std::sin(angle), 0.0);
    xi_planes = std::max(xi_planes, std::abs(sectional_curvature(sf, x, xi()) - 1.0));
  }
  checks.push_back({"spaceform.sectional_xi_planes", c, xi_planes, 1e-12});
  checks.push_back({"spaceform.holomorphic_sectional",
                    c, std::abs(sectional_curvature(sf, frame_vector(0), frame_vector(1)) - c), 1e-12});

  double phi_sq = 0.0, deta = 0.0, nabla_xi = 0.0, sasaki = 0.0, killing = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const FrameVector x = frame_vector(i);
    phi_sq = std::max(phi_sq, (phi(phi(x)) - (-x + eta(x) * xi())).norm());
    nabla_xi = std::max(nabla_xi, (sf.connection(x, xi()) + phi(x)).norm());
    for (std::size_t j = 0; j < 3; ++j) {
      const FrameVector y = frame_vector(j);
      deta = std::max(deta, std::abs(d_eta(sf, x, y) - 2.0 * metric(x, phi(y))));
      const FrameVector expected = metric(x, y) * xi() - eta(y) * x;
      sasaki = std::max(sasaki, (nabla_phi(sf, x, y) - expected).norm());
      killing = std::max(killing, std::abs(metric(sf.connection(x, xi()), y) + metric(sf.connection(y, xi()), x)));
    }
  }
  checks.push_back({"spaceform.phi_squared", c, phi_sq, 1e-12});
  checks.push_back({"spaceform.d_eta", c, deta, 1e-12});
  checks.push_back({"spaceform.nabla_xi", c, nabla_xi, 1e-12});
  checks.push_back({"spaceform.sasaki_identity", c, sasaki, 1e-12});
  checks.push_back({"spaceform.xi_killing", c, killing, 1e-12});
  return checks;
}

std::size_t VerifyResult::mismatches() const {
  const auto failed = std::count_if(checks.begin(), checks.end(), [](const CheckRecord& r) { return !r.pass(); });
  const auto wrong =
      std::count_if(reports.begin(), reports.end(), [](const EigenReport& r) { return !r.matches_expected(); });
  return static_cast<std::size_t>(failed + wrong);
}

VerifyResult run_verify(const RunConfig& config) {
  const VerifyOptions opts = verify_options(config);
  const bool all = config.suite == Suite::all;
  VerifyResult result;
  const auto append = [](auto& into, auto&& from) { into.insert(into.end(), from.begin(), from.end()); };

  if (all || config.suite == Suite::spaceform) {
    for (const double c : config.c) append(result.checks, spaceform_checks(c));
  }
  if (all || config.suite == Suite::curves) {
    for (const double c : config.c) {
      append(result.checks, curve_checks(c, opts));
      const auto corpus = default_curve_corpus(c);
      append(result.reports, verify_curve_eigen_theorem(build_space_form(c), corpus, opts));
    }
  }
  if (all || config.suite == Suite::legendre) {
    for (const double c : config.c) append(result.checks, legendre_checks(c, opts));
    append(result.reports, verify_legendre_theorems(config.c, opts));
  }
  if (all || config.suite == Suite::hopf) {
    for (const double c : config.c) append(result.checks, hopf_checks(c, opts));
    append(result.reports, verify_hopf_theorems(config.c, opts));
  }
  return result;
}

std::string render_verify(const RunConfig& config, const VerifyResult& result) {
  if (config.format == OutputFormat::csv) {
    std::string out =
        "record,kind,c,subject,operator,lambda_est,residual,residual_refined,tolerance,oracle_gap,verdict,"
        "expected_verdict,expected_lambda,theorem_tag,pass\n";
    for (const auto& check : result.checks) {
      out += fmt::format("check,,{},{},,,{},,{},,,,,,{}\n", number(check.c), quote_csv(check.name),
                         number(check.error), number(check.tolerance), check.pass() ? "true" : "false");
    }
    for (const auto& r : result.reports) {
      out += fmt::format("report,{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.kind, number(r.c),
                         quote_csv(r.subject), to_string(r.op), number(r.lambda_est), number(r.residual),
                         number(r.residual_refined), number(r.tolerance), number(r.oracle_gap),
                         quote_csv(to_string(r.verdict)), quote_csv(to_string(r.expected_verdict)),
                         number(r.expected_lambda), quote_csv(r.theorem_tag),
                         r.matches_expected() ? "true" : "false");
    }
    return out;
  }

  Json j;
  j["schema"] = kSchema;
  j["command"] = "verify";
  j["suite"] = std::string(suite_name(config.suite));
  j["c"] = config.c;
  j["h"] = config.h;
  j["length"] = config.length;
  j["tolerance"] = VerifyOptions{config.h, config.length, config.tolerance}.tolerance_at(config.h);
  j["tolerance_override"] = optional_json(config.tolerance);
  Json checks = Json::array();
  for (const auto& check : result.checks) checks.push_back(check_json(check));
  j["checks"] = std::move(checks);
  Json reports = Json::array();
  for (const auto& r : result.reports) reports.push_back(report_json(r));
  j["reports"] = std::move(reports);
  j["summary"] = {{"checks", result.checks.size()},
                  {"reports", result.reports.size()},
                  {"mismatches", result.mismatches()}};
  return j.dump(2) + "\n";
}

std::string diff_summary(const VerifyResult& result) {
  std::string out;
  for (const auto& check : result.checks) {
    if (check.pass()) continue;
    out += fmt::format("check failed: {} c={} error {:.3e} > tolerance {:.3e}\n", check.name, check.c, check.error,
                       check.tolerance);
  }
  for (const auto& r : result.reports) {
    if (r.matches_expected()) continue;
    out += fmt::format("mismatch: {} c={} [{}] {}: got {} (lambda {}), expected {} (lambda {}); residual {:.3e} / {:.3e}\n",
                       r.kind, r.c, r.subject, to_string(r.op), to_string(r.verdict),
                       r.lambda_est ? fmt::format("{:.6g}", *r.lambda_est) : "-", to_string(r.expected_verdict),
                       r.expected_lambda ? fmt::format("{:.6g}", *r.expected_lambda) : "-", r.residual,
                       r.residual_refined);
  }
  return out;
}

std::string run_synthesize(const RunConfig& config) {
  const double c = single_c(config);
  const SpaceForm sf = build_space_form(c);
  const bool cylinder = is_cylinder_family(config.spec.family);
  const bool csv = config.format == OutputFormat::csv;

  if (cylinder) {
    const HopfCylinder cyl = build_cylinder(sf, base_curvature(config.spec), config.h, config.n);
    const FrenetCurve lift = synthesize_horizontal_curve(sf, cyl.kappa_bar_fn, config.h, config.n);
    if (csv) {
      std::string out = "s,kappa_bar,H,t1,t2,t3\n";
      for (std::size_t i = 0; i < cyl.size(); ++i) {
        const FrameVector& t = lift.curve.velocity[i];
        out += fmt::format("{},{},{},{},{},{}\n", number(cyl.arclength(i)), number(cyl.kappa_bar[i]),
                           number(cyl.H[i]), number(t.x()), number(t.y()), number(t.z()));
      }
      return out;
    }
    Json j;
    j["schema"] = kSchema;
    j["command"] = "synthesize";
    j["family"] = config.spec.family;
    j["kind"] = "cylinder";
    j["c"] = c;
    j["h"] = config.h;
    j["n"] = config.n;
    j["parameters"] = family_parameters(config.spec);
    Json samples = Json::array();
    for (std::size_t i = 0; i < cyl.size(); ++i) {
      samples.push_back({{"s", cyl.arclength(i)},
                         {"kappa_bar", cyl.kappa_bar[i]},
                         {"H", cyl.H[i]},
                         {"lift_tangent", vector_json(lift.curve.velocity[i])}});
    }
    j["samples"] = std::move(samples);
    return j.dump(2) + "\n";
  }

  const FrenetCurve fc = build_curve(sf, config.spec, config.h, config.n);
  const FrenetData& fd = fc.frenet;
  if (csv) {
    std::string out = "s,kappa,tau,u1,u2,u3,p2_1,p2_2,p2_3,p3_1,p3_2,p3_3\n";
    for (std::size_t i = 0; i < fd.size(); ++i) {
      const FrameVector& u = fd.p1[i];
      out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", number(fd.arclength(i)), number(fd.kappa[i]),
                         number(fd.tau[i]), number(u.x()), number(u.y()), number(u.z()), number(fd.p2[i].x()),
                         number(fd.p2[i].y()), number(fd.p2[i].z()), number(fd.p3[i].x()), number(fd.p3[i].y()),
                         number(fd.p3[i].z()));
    }
    return out;
  }
  Json j;
  j["schema"] = kSchema;
  j["command"] = "synthesize";
  j["family"] = config.spec.family;
  j["kind"] = "curve";
  j["legendre"] = fc.curve.legendre;
  j["c"] = c;
  j["h"] = config.h;
  j["n"] = config.n;
  j["parameters"] = family_parameters(config.spec);
  Json samples = Json::array();
  for (std::size_t i = 0; i < fd.size(); ++i) {
    samples.push_back({{"s", fd.arclength(i)},
                       {"kappa", fd.kappa[i]},
                       {"tau", fd.tau[i]},
                       {"p1", vector_json(fd.p1[i])},
                       {"p2", vector_json(fd.p2[i])},
                       {"p3", vector_json(fd.p3[i])}});
  }
  j["samples"] = std::move(samples);
  return j.dump(2) + "\n";
}

std::string run_export(const RunConfig& config) {
  const double c = single_c(config);
  const GroupChart chart = GroupChart::for_curvature(c, config.chart);
  const SpaceForm sf = build_space_form(c);

  if (is_cylinder_family(config.spec.family)) {
    const FrenetCurve lift = synthesize_horizontal_curve(sf, base_curvature(config.spec), config.h, config.n);
    if (config.format == OutputFormat::obj) return write_cylinder_obj(chart, config, lift.curve);
    return write_polyline_csv(chart, config, lift.curve);
  }
  const FrenetCurve fc = build_curve(sf, config.spec, config.h, config.n);
  if (config.format == OutputFormat::obj) return write_polyline_obj(chart, config, fc.curve);
  return write_polyline_csv(chart, config, fc.curve);
}

std::string run_sweep(const RunConfig& config) {
  const VerifyOptions opts = verify_options(config);
  const bool legendre = config.sweep_kind == "legendre";
  std::vector<SweepRow> rows;
  for (const double c : config.c) {
    const SpaceForm sf = build_space_form(c);
    for (const double k : sweep_grid(config, c)) {
      if (legendre && k < 0.0) throw UsageError("Legendre curvature must be non-negative");
      rows.push_back(legendre ? sweep_legendre(sf, k, opts) : sweep_cylinder(sf, k, opts));
    }
  }

  const char* curvature = legendre ? "kappa" : "kappa_bar";
  const char* second = legendre ? "normal_laplacian_lambda" : "jacobi_lambda";
  if (config.format == OutputFormat::csv) {
    std::string out = fmt::format("c,{},laplacian_lambda,{},bitension_residual,bitension_residual_refined,tolerance,"
                                  "polyharmonic\n",
                                  curvature, second);
    for (const auto& r : rows) {
      out += fmt::format("{},{},{},{},{},{},{},{}\n", number(r.c), number(r.kappa), number(r.first_lambda),
                         number(r.second_lambda), number(r.residual), number(r.residual_refined), number(r.tolerance),
                         r.vanishes ? "true" : "false");
    }
    return out;
  }
  Json j;
  j["schema"] = kSchema;
  j["command"] = "sweep";
  j["kind"] = config.sweep_kind;
  j["c"] = config.c;
  j["h"] = config.h;
  j["length"] = config.length;
  Json table = Json::array();
  for (const auto& r : rows) {
    Json row;
    row["c"] = r.c;
    row[curvature] = r.kappa;
    row["laplacian_lambda"] = optional_json(r.first_lambda);
    row[second] = optional_json(r.second_lambda);
    row["bitension_residual"] = r.residual;
    row["bitension_residual_refined"] = r.residual_refined;
    row["tolerance"] = r.tolerance;
    row["polyharmonic"] = r.vanishes;
    table.push_back(std::move(row));
  }
  j["rows"] = std::move(table);
  return j.dump(2) + "\n";
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.command) {
      case Command::verify: {
        const VerifyResult result = run_verify(config);
        write_output(config, render_verify(config, result), out);
        if (result.mismatches() == 0) return 0;
        err << fmt::format("{} of {} records differ from the predicted verdicts\n", result.mismatches(),
                           result.checks.size() + result.reports.size())
            << diff_summary(result);
        return 1;
      }
      case Command::synthesize:
        write_output(config, run_synthesize(config), out);
        return 0;
      case Command::export_geometry:
        write_output(config, run_export(config), out);
        return 0;
      case Command::sweep:
        write_output(config, run_sweep(config), out);
        return 0;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> config;
  try {
    config = parse_arguments(args, out);
    if (!config) return 0;
    apply_environment(*config);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nRun 'sasaki --help' for usage.\n";
    return 2;
  }
  return run(*config, out, err);
}

}  // namespace sasaki::cli
