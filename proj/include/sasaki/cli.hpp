// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end.  Every command renders its whole output into a
// string first, so a fixed configuration always produces the same bytes.
//
//   sasaki verify     --suite {spaceform,curves,legendre,hopf,all} [--c LIST] [--h H] [--length L]
//   sasaki synthesize --family NAME [params] --c C [--h H] [--n N]
//   sasaki export     --family NAME [params] --c C [--h H] [--n N] [--format csv|obj] [--chart NAME]
//   sasaki sweep      --kind {legendre,cylinder} [--c LIST] [--kappa LIST]
//
// Shared: --out PATH (stdout when absent), --format json|csv.  SASAKI_TOL
// overrides the verdict tolerance.  Exit codes: 0 success, 1 a verdict
// differs from the predicted one, 2 usage or configuration error.

#pragma once

#include "sasaki/classify.hpp"
#include "sasaki/curves.hpp"
#include "sasaki/hopf.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sasaki::cli {

enum class Command { verify, synthesize, export_geometry, sweep };
enum class Suite { spaceform, curves, legendre, hopf, all };
enum class OutputFormat { json, csv, obj };

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Curve families: geodesic, fiber-geodesic, helix, curve-affine,
/// legendre-helix, legendre-affine.  Cylinder families: hopf-circle,
/// hopf-clothoid, hopf-natural.
std::vector<std::string_view> curve_families();
std::vector<std::string_view> cylinder_families();
bool is_cylinder_family(std::string_view name);

/// A named family with its parameters.  Which parameters apply:
///   helix: kappa, tau            curve-affine: kappa = a s + b, tau
///   legendre-helix: kappa        legendre-affine: kappa = a s + b
///   hopf-circle: kbar = kappa    hopf-clothoid: kbar = a s + b
///   hopf-natural: kbar'' + lambda kbar = 0 with coefficients a, b
struct FamilySpec {
  std::string family;
  double kappa = 1.0;
  double tau = 1.0;
  double a = 1.0;
  double b = 0.0;
  double lambda = 0.0;
};

struct RunConfig {
  Command command = Command::verify;
  Suite suite = Suite::all;
  std::vector<double> c;  // verify/sweep: defaults to default_c_list(); synthesize/export: exactly one
  FamilySpec spec;
  double h = 1e-3;
  std::size_t n = 1001;
  double length = 2.0;
  std::optional<double> tolerance;
  std::optional<std::string> output;
  OutputFormat format = OutputFormat::json;
  std::optional<std::string> chart;
  std::size_t fiber_samples = 64;
  double fiber_extent = 2.0;  // fiber parameter range when fibers do not close
  std::string sweep_kind = "legendre";
  std::vector<double> kappa_grid;
};

/// Parses "a,b,c" into reals; throws UsageError.
std::vector<double> parse_real_list(std::string_view text);

/// Parses argv (without the program name).  Returns std::nullopt after
/// printing help to `out`.  Throws UsageError for anything invalid,
/// including unknown families.
std::optional<RunConfig> parse_arguments(const std::vector<std::string>& args, std::ostream& out);

/// Applies SASAKI_TOL when set; throws UsageError when it is not a positive real.
void apply_environment(RunConfig& config);

/// Pass/fail record for an exact identity of the space form or a frame invariant.
struct CheckRecord {
  std::string name;
  double c = 0.0;
  double error = 0.0;
  double tolerance = 0.0;
  bool pass() const { return error <= tolerance; }
};

std::vector<CheckRecord> spaceform_checks(double c);

struct VerifyResult {
  std::vector<CheckRecord> checks;
  std::vector<EigenReport> reports;

  std::size_t mismatches() const;
};

VerifyResult run_verify(const RunConfig& config);
std::string render_verify(const RunConfig& config, const VerifyResult& result);
/// One line per failed check or mismatched report.
std::string diff_summary(const VerifyResult& result);

std::string run_synthesize(const RunConfig& config);
std::string run_export(const RunConfig& config);
std::string run_sweep(const RunConfig& config);

/// Executes a parsed configuration; returns the exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full entry point: parse, environment, run.  Never throws.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sasaki::cli
