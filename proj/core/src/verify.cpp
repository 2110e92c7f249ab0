#include "frax/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "frax/catalog.hpp"
#include "frax/errors.hpp"
#include "frax/field.hpp"
#include "frax/parallel.hpp"

namespace frax {
namespace {

Status identity_status(double ratio, double tol, bool tail_warning) {
  if (!(std::abs(ratio - 1.0) < tol)) return Status::fail;
  return tail_warning ? Status::warn : Status::pass;
}

Status inequality_status(double lhs, double rhs, bool tail_warning) {
  const double r = safe_ratio(lhs, rhs);
  if (!std::isfinite(r) || (r <= 0.0 && lhs != 0.0)) return Status::fail;
  return tail_warning ? Status::warn : Status::pass;
}

void require_same_dimension(const GridFunction& f, const Params& prm) {
  prm.validate();
  f.check();
  if (f.spec.n != prm.n) throw_parameter("grid dimension does not match n");
}

void add_energy(Report& r, const EnergyResult& e) {
  r.values.emplace_back("energy_interior", e.interior);
  r.values.emplace_back("energy_tail_low", e.tail_low);
  r.values.emplace_back("energy_tail_high", e.tail_high);
  if (e.tail_warning) r.notes.emplace_back("tail", "power-law tail fit failed; tail omitted");
}

Report identity(const std::string& name, const GridFunction& f, const Params& prm, const CheckOptions& opt,
                double constant, const EnergyResult& e) {
  Report r;
  r.name = name;
  r.params = prm;
  r.lhs = e.value;
  const double spectral = std::pow(sobolev_dot_norm(f, 0.5 * prm.beta), 2.0);
  r.rhs = constant * spectral;
  r.predicted_constant = constant;
  r.ratio = safe_ratio(r.lhs, r.rhs);
  r.tolerance = opt.tolerance;
  r.status = identity_status(r.ratio, opt.tolerance, e.tail_warning);
  r.values.emplace_back("spectral_sum", spectral);
  add_energy(r, e);
  return r;
}

void require_trace_window(const Params& prm, Variant v) {
  if (!(prm.beta > 0.0)) throw_parameter("beta must be positive");
  if (!(prm.beta < prm.n)) throw_parameter("trace inequalities need beta < n");
  switch (v) {
    case Variant::grad:
    case Variant::dt:
      if (!(prm.beta < 2.0 * prm.s)) throw DivergentMomentError("trace inequalities need beta < 2s");
      break;
    case Variant::frac:
      if (!(prm.gamma > 0.5 * prm.beta)) throw DivergentMomentError("fractional variant needs gamma > beta/2");
      break;
  }
}

Report trace(const std::string& name, const Params& prm, Variant v, double lhs, const EnergyResult& e) {
  Report r;
  r.name = name + "/" + variant_name(v);
  r.params = prm;
  r.lhs = lhs;
  r.rhs = e.value;
  r.ratio = safe_ratio(lhs, e.value);
  r.status = inequality_status(lhs, e.value, e.tail_warning);
  r.notes.emplace_back("constant", "empirical");
  add_energy(r, e);
  return r;
}

}  // namespace

const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::warn: return "warn";
  }
  return "fail";
}

double safe_ratio(double lhs, double rhs) {
  if (rhs == 0.0) return lhs == 0.0 ? 1.0 : kInfinity;
  return lhs / rhs;
}

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::grad: return "grad";
    case Variant::dt: return "dt";
    case Variant::frac: return "frac";
  }
  return "grad";
}

Variant parse_variant(const std::string& name) {
  if (name == "grad") return Variant::grad;
  if (name == "dt") return Variant::dt;
  if (name == "frac") return Variant::frac;
  throw ParameterError("unknown variant '" + name + "' (expected grad, dt or frac)");
}

const char* general_p_name(GeneralP w) {
  switch (w) {
    case GeneralP::spatial_gradient: return "spatial-gradient";
    case GeneralP::time_derivative: return "time-derivative";
    case GeneralP::fractional: return "fractional";
    case GeneralP::negative_order: return "negative-order";
  }
  return "spatial-gradient";
}

GeneralP parse_general_p(const std::string& name) {
  if (name == "spatial-gradient") return GeneralP::spatial_gradient;
  if (name == "time-derivative") return GeneralP::time_derivative;
  if (name == "fractional") return GeneralP::fractional;
  if (name == "negative-order") return GeneralP::negative_order;
  throw ParameterError("unknown general-p display '" + name + "'");
}

Report check_identity_gradient(const GridFunction& f, const Params& prm, const CheckOptions& opt) {
  require_same_dimension(f, prm);
  const double c = energy_constant_grad(prm, opt.rule);
  const auto e = weighted_energy(grad_field(f, prm, opt.rule), 1.0 - prm.beta, 2.0);
  return identity("identity-gradient", f, prm, opt, c, e);
}

Report check_identity_dt(const GridFunction& f, const Params& prm, const CheckOptions& opt) {
  require_same_dimension(f, prm);
  const double c = energy_constant_dt(prm, opt.rule);
  const std::vector<ExtensionField> comps{dt_field(f, prm, opt.rule)};
  const auto e = weighted_energy(comps, 1.0 - prm.beta, 2.0);
  return identity("identity-dt", f, prm, opt, c, e);
}

Report check_identity_frac(const GridFunction& f, const Params& prm, const CheckOptions& opt) {
  require_same_dimension(f, prm);
  const double c = energy_constant_frac(prm, opt.rule);
  const std::vector<ExtensionField> comps{frac_field(f, prm, opt.rule)};
  const auto e = weighted_energy(comps, 2.0 * prm.gamma - prm.beta - 1.0, 2.0);
  return identity("identity-frac", f, prm, opt, c, e);
}

EnergyResult variant_energy(const GridFunction& f, const Params& prm, Variant v, const LambdaRule& rule) {
  switch (v) {
    case Variant::grad:
      return weighted_energy(grad_field(f, prm, rule), 1.0 - prm.beta, 2.0);
    case Variant::dt: {
      const std::vector<ExtensionField> comps{dt_field(f, prm, rule)};
      return weighted_energy(comps, 1.0 - prm.beta, 2.0);
    }
    case Variant::frac: {
      const std::vector<ExtensionField> comps{frac_field(f, prm, rule)};
      return weighted_energy(comps, 2.0 * prm.gamma - prm.beta - 1.0, 2.0);
    }
  }
  throw_parameter("unknown variant");
}

Report check_trace_sobolev(const GridFunction& f, const Params& prm, Variant v, const CheckOptions& opt) {
  require_same_dimension(f, prm);
  require_trace_window(prm, v);
  const double q = 2.0 * prm.n / (prm.n - prm.beta);
  const double lhs = std::pow(lp_norm(f, q), 2.0);
  return trace("trace-sobolev", prm, v, lhs, variant_energy(f, prm, v, opt.rule));
}

Report check_trace_logsobolev(const GridFunction& f, const Params& prm, Variant v, const CheckOptions& opt) {
  require_same_dimension(f, prm);
  require_trace_window(prm, v);
  const double ent = entropy(f);
  const double lhs = std::exp(prm.beta / prm.n * ent);
  Report r = trace("trace-logsobolev", prm, v, lhs, variant_energy(f, prm, v, opt.rule));
  r.values.emplace_back("entropy", ent);
  return r;
}

Report check_trace_hardy(const GridFunction& f, const Params& prm, Variant v, const CheckOptions& opt) {
  require_same_dimension(f, prm);
  require_trace_window(prm, v);
  const double lhs = hardy_functional(f, prm.beta);
  return trace("trace-hardy", prm, v, lhs, variant_energy(f, prm, v, opt.rule));
}

Report check_affine_trace(const GridFunction& f, const Params& prm, const CheckOptions& opt) {
  require_same_dimension(f, prm);
  if (!(prm.beta >= 1.0)) throw_parameter("affine trace needs beta >= 1");
  const int n = prm.n;
  Params q = prm;
  q.p = 2.0 * (n + prm.beta) / (n + prm.beta + 2.0);
  q.alpha = prm.beta - 1.0;

  const double mean = grid_mean(f);
  const GridFunction g = project_mean_zero(f);
  const double lhs = sobolev_dot_norm(g, -0.5 * prm.beta);
  const ExtensionField u = extend(g, q, opt.rule);
  const AffineResult aff = affine_energy(u, q, opt.directions);
  const std::vector<ExtensionField> dt{dt_field(g, q, opt.rule)};
  const EnergyResult e = weighted_energy(dt, q.alpha, q.p);
  const double dt_norm = std::pow(e.value, 1.0 / q.p);
  const double rhs = std::pow(aff.value, n / (n + prm.beta)) * std::pow(dt_norm, prm.beta / (n + prm.beta));

  Report r;
  r.name = "affine-trace";
  r.params = q;
  r.lhs = lhs;
  r.rhs = rhs;
  r.ratio = safe_ratio(lhs, rhs);
  r.status = aff.infinite ? Status::fail : inequality_status(lhs, rhs, e.tail_warning);
  r.values.emplace_back("affine_energy", aff.value);
  r.values.emplace_back("dt_norm", dt_norm);
  r.values.emplace_back("removed_mean", mean);
  r.values.emplace_back("directions", static_cast<double>(aff.directional_norms.size()));
  r.notes.emplace_back("projection", "grid mean subtracted");
  r.notes.emplace_back("constant", "empirical");
  if (aff.infinite) r.notes.emplace_back("affine", "a directional norm vanished; energy infinite");
  add_energy(r, e);
  return r;
}

Report check_general_p(const GridFunction& f, const Params& prm, GeneralP which, const CheckOptions& opt) {
  require_same_dimension(f, prm);
  const double p = prm.p;
  const double b = prm.beta;
  if (!(p > 1.0) || std::isinf(p)) throw_parameter("general-p checks need 1 < p < infinity");
  if (!(b > 0.0)) throw_parameter("beta must be positive");

  std::vector<ExtensionField> comps;
  double w = p - 1.0 - 0.5 * p * b;
  GridFunction datum = f;
  switch (which) {
    case GeneralP::spatial_gradient: {
      if (!(b < 2.0)) throw_parameter("spatial-gradient display needs beta < 2");
      auto all = grad_field(f, prm, opt.rule);
      all.pop_back();
      comps = std::move(all);
      break;
    }
    case GeneralP::time_derivative:
      if (!(b < 2.0 * prm.s)) throw DivergentMomentError("time-derivative display needs beta < 2s");
      comps.push_back(dt_field(f, prm, opt.rule));
      break;
    case GeneralP::fractional:
      if (!(prm.gamma > 0.5 * b)) throw DivergentMomentError("fractional display needs gamma > beta/2");
      comps.push_back(frac_field(f, prm, opt.rule));
      w = p * (prm.gamma - 0.5 * b) - 1.0;
      break;
    case GeneralP::negative_order:
      if (!(b < 2.0 * prm.n)) throw_parameter("negative-order display needs beta < 2n");
      if (!(b < 4.0)) throw_parameter("negative-order display supports beta < 4 (Besov order beta/2 < 2)");
      if (!is_mean_zero(f)) throw SingularSymbolError("negative-order display needs mean-zero data");
      comps.push_back(extend(f, prm, opt.rule));
      w = 0.5 * p * b - 1.0;
      datum = frac_laplacian(f, -b);
      break;
  }
  const EnergyResult e = weighted_energy(comps, w, p);
  const double besov = besov_seminorm(datum, 0.5 * b, p, p, opt.besov);

  Report r;
  r.name = std::string("general-p/") + general_p_name(which);
  r.params = prm;
  r.lhs = e.value;
  r.rhs = std::pow(besov, p);
  r.ratio = safe_ratio(r.lhs, r.rhs);
  r.status = inequality_status(r.lhs, r.rhs, e.tail_warning);
  r.values.emplace_back("weight_exponent", w);
  r.notes.emplace_back("constant", "empirical");
  if (which == GeneralP::negative_order) r.notes.emplace_back("besov", "order -beta/2 via (-Delta)^{-beta/2} lift");
  add_energy(r, e);
  return r;
}

GridFunction normalize_l2(const GridFunction& f) {
  const double norm = lp_norm(f, 2.0);
  if (!(norm > 0.0)) throw NormalizationError("cannot normalize the zero function");
  GridFunction out = f;
  for (double& v : out.values) v /= norm;
  return out;
}

SweepResult dilation_sweep(const std::string& name, const CheckFn& check, const PointFunction& base,
                           const GridSpec& grid, const std::vector<double>& lambdas, double tolerance,
                           bool normalize) {
  if (lambdas.empty()) throw_parameter("dilation sweep needs at least one lambda");
  SweepResult out;
  out.lambdas = lambdas;
  out.ratios.resize(lambdas.size());
  std::vector<Report> reports(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    GridFunction f = GridFunction::sample(grid, dilate(base, lambdas[i]));
    if (normalize) f = normalize_l2(f);
    reports[i] = check(f);
    out.ratios[i] = reports[i].ratio;
  }
  const auto [lo, hi] = std::minmax_element(out.ratios.begin(), out.ratios.end());
  out.spread = *lo > 0.0 ? *hi / *lo - 1.0 : kInfinity;

  Report& r = out.summary;
  r = reports.front();
  r.name = name;
  r.lhs = *hi;
  r.rhs = *lo;
  r.ratio = safe_ratio(*hi, *lo);
  r.tolerance = tolerance;
  const bool any_fail = std::any_of(reports.begin(), reports.end(), [](const Report& x) { return x.status == Status::fail; });
  const bool any_warn = std::any_of(reports.begin(), reports.end(), [](const Report& x) { return x.status == Status::warn; });
  r.status = (any_fail || !(out.spread < tolerance)) ? Status::fail : (any_warn ? Status::warn : Status::pass);
  r.values.clear();
  r.notes.clear();
  r.values.emplace_back("spread", out.spread);
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    std::ostringstream key;
    key << "ratio@" << lambdas[i];
    r.values.emplace_back(key.str(), out.ratios[i]);
  }
  r.notes.emplace_back("sweep", "lhs = max ratio, rhs = min ratio");
  return out;
}

std::vector<Report> run_checks(const std::vector<std::function<Report()>>& jobs) {
  std::vector<Report> out(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) { out[i] = jobs[i](); });
  std::stable_sort(out.begin(), out.end(), [](const Report& a, const Report& b) { return a.name < b.name; });
  return out;
}

}  // namespace frax
