#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frax/functionals.hpp"
#include "frax/grid.hpp"
#include "frax/kernel.hpp"
#include "frax/params.hpp"

namespace frax {

enum class Status { pass, fail, warn };

const char* status_name(Status s);

/// Outcome of one check. `ratio` is lhs / rhs (1 when both vanish).
struct Report {
  std::string name;
  Params params;
  double lhs = 0.0;
  double rhs = 0.0;
  std::optional<double> predicted_constant;
  double ratio = 0.0;
  double tolerance = 0.0;
  Status status = Status::pass;
  // Additional named numbers and labels, emitted in insertion order.
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::pair<std::string, std::string>> notes;
};

/// lhs / rhs with 0 / 0 = 1 and x / 0 = infinity.
double safe_ratio(double lhs, double rhs);

struct CheckOptions {
  LambdaRule rule;
  double tolerance = 0.02;  // identities
  int directions = 64;      // affine energy
  BesovOptions besov;
};

enum class Variant { grad, dt, frac };
const char* variant_name(Variant v);
Variant parse_variant(const std::string& name);

// Exact identities: pass when |ratio - 1| < tolerance; warn when a t-tail
// could not be estimated.
Report check_identity_gradient(const GridFunction& f, const Params& prm, const CheckOptions& opt = {});
Report check_identity_dt(const GridFunction& f, const Params& prm, const CheckOptions& opt = {});
Report check_identity_frac(const GridFunction& f, const Params& prm, const CheckOptions& opt = {});

/// The variant's weighted energy of the extension of f (p = 2).
EnergyResult variant_energy(const GridFunction& f, const Params& prm, Variant v, const LambdaRule& rule);

// Trace inequalities: ratio = lhs / energy, pass when finite and positive.
Report check_trace_sobolev(const GridFunction& f, const Params& prm, Variant v, const CheckOptions& opt = {});
Report check_trace_logsobolev(const GridFunction& f, const Params& prm, Variant v, const CheckOptions& opt = {});
Report check_trace_hardy(const GridFunction& f, const Params& prm, Variant v, const CheckOptions& opt = {});

/// Affine trace inequality with p = 2(n+beta)/(n+beta+2), weight t^{beta-1};
/// f is projected to mean zero first.
Report check_affine_trace(const GridFunction& f, const Params& prm, const CheckOptions& opt = {});

enum class GeneralP { spatial_gradient, time_derivative, fractional, negative_order };
const char* general_p_name(GeneralP w);
GeneralP parse_general_p(const std::string& name);

/// Weighted L^p space-time integral against besov_seminorm(., beta/2, p, p)^p.
/// negative_order compares |u|^p t^{p beta/2 - 1} with the seminorm of the order -beta/2
/// realised as the order beta/2 seminorm of (-Delta)^{-beta/2} f.
Report check_general_p(const GridFunction& f, const Params& prm, GeneralP which, const CheckOptions& opt = {});

/// Ratio of a check across dilates f(lambda x): passes when
/// max ratio / min ratio - 1 < tolerance.
struct SweepResult {
  std::vector<double> lambdas;
  std::vector<double> ratios;
  double spread = 0.0;
  Report summary;
};

using CheckFn = std::function<Report(const GridFunction&)>;

SweepResult dilation_sweep(const std::string& name, const CheckFn& check, const PointFunction& base,
                           const GridSpec& grid, const std::vector<double>& lambdas, double tolerance,
                           bool normalize_l2 = false);

/// Scales f to unit L^2 norm.
GridFunction normalize_l2(const GridFunction& f);

/// Runs independent checks in parallel and returns them sorted by name.
std::vector<Report> run_checks(const std::vector<std::function<Report()>>& jobs);

}  // namespace frax
