#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "frax/carleson.hpp"
#include "frax/catalog.hpp"
#include "frax/errors.hpp"
#include "frax/field.hpp"
#include "frax/functionals.hpp"
#include "frax/io.hpp"
#include "frax/kernel.hpp"
#include "frax/report.hpp"
#include "frax/verify.hpp"

namespace frax::cli {
namespace {

const std::vector<std::string> kCommands{"kernel", "constants", "extend", "verify", "carleson", "capacity"};
const std::vector<std::string> kChecks{"identity-gradient", "identity-dt", "identity-frac", "trace-sobolev",
                                       "trace-logsobolev", "trace-hardy", "affine-trace", "general-p"};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

LambdaRule rule_of(const RunConfig& c) {
  LambdaRule rule{c.quad_count};
  rule.validate();
  return rule;
}

GridSpec grid_of(const RunConfig& c) {
  GridSpec g = c.grid;
  g.n = c.params.n;
  g.validate();
  return g;
}

GridFunction load_datum(const RunConfig& c) {
  if (!c.input.empty()) {
    const std::string text = read_file(c.input);
    GridFunction f = ends_with(c.input, ".json") ? grid_from_json(text) : grid_from_csv(text);
    if (f.spec.n != c.params.n) throw ParameterError("input grid dimension does not match --n");
    f.spec.t_min = c.grid.t_min;
    f.spec.t_max = c.grid.t_max;
    f.spec.t_count = c.grid.t_count;
    f.spec.validate();
    return f;
  }
  return sample_catalog(c.function, grid_of(c));
}

DiscreteMeasure load_measure(const RunConfig& c) {
  if (c.measure.empty()) throw ParameterError("this command needs --measure");
  DiscreteMeasure mu = measure_from_csv(read_file(c.measure), c.params.n);
  mu.validate();
  return mu;
}

std::vector<OpenSet> load_family(const RunConfig& c) {
  if (c.family.empty()) throw ParameterError("this command needs --family");
  return open_sets_from_json(read_file(c.family), c.params.n);
}

Point point_of(const std::vector<double>& v, int n) {
  if (!v.empty() && v.size() != static_cast<std::size_t>(n)) throw ParameterError("--x needs exactly n coordinates");
  Point p{0.0, 0.0, 0.0};
  for (std::size_t d = 0; d < v.size(); ++d) p[d] = v[d];
  return p;
}

void add_ball(Report& r, const std::string& prefix, const Ball& b, int n) {
  for (int d = 0; d < n; ++d) r.values.emplace_back(prefix + "_x" + std::to_string(d + 1), b.center[static_cast<std::size_t>(d)]);
  r.values.emplace_back(prefix + "_radius", b.radius);
}

// ---------------------------------------------------------------------------

std::vector<Report> cmd_kernel(const RunConfig& c) {
  const Params& prm = c.params;
  prm.validate();
  const LambdaRule rule = rule_of(c);
  const Point x = point_of(c.x, prm.n);
  if (!(c.r >= 0.0)) throw ParameterError("--r must be nonnegative");

  Report rep;
  rep.name = "kernel";
  rep.params = prm;
  rep.values.emplace_back("r", c.r);
  rep.values.emplace_back("t", c.t);
  rep.values.emplace_back("G", eval_G(prm.s, c.r, rule));
  if (c.r > 0.0) rep.values.emplace_back("G_prime", eval_G_prime(prm.s, c.r, rule));
  rep.values.emplace_back("poisson_kernel", poisson_kernel(prm, std::span<const double>(x.data(), static_cast<std::size_t>(prm.n)), c.t));
  rep.values.emplace_back("symbol", fourier_symbol(prm, c.t, c.r, rule));
  rep.ratio = 1.0;
  return {rep};
}

std::vector<Report> cmd_constants(const RunConfig& c) {
  const Params& prm = c.params;
  prm.validate();
  const LambdaRule rule = rule_of(c);
  const KernelConstants kc = kernel_constants(prm.n, prm.s);

  Report rep;
  rep.name = "constants";
  rep.params = prm;
  rep.ratio = 1.0;
  rep.values.emplace_back("c_ns", kc.c_ns);
  rep.values.emplace_back("C_ns", kc.C_ns);
  rep.values.emplace_back("gamma_s_half", kc.gamma_s_half);
  rep.values.emplace_back("c_s", kc.c_s);

  bool converged = true;
  auto record = [&](const std::string& name, const std::function<double(const LambdaRule&)>& fn) {
    try {
      const ConvergenceCheck cc = check_convergence(fn, rule);
      rep.values.emplace_back(name, cc.value);
      rep.values.emplace_back(name + "_relative_change", cc.relative_change);
      converged = converged && cc.converged;
    } catch (const DivergentMomentError& e) {
      rep.notes.emplace_back(name, std::string("inadmissible: ") + e.what());
    }
  };
  if (c.a) record("moment_constant", [&](const LambdaRule& r) { return moment_constant(prm, *c.a, r); });
  record("energy_constant_dt", [&](const LambdaRule& r) { return energy_constant_dt(prm, r); });
  record("energy_constant_grad", [&](const LambdaRule& r) { return energy_constant_grad(prm, r); });
  record("energy_constant_frac", [&](const LambdaRule& r) { return energy_constant_frac(prm, r); });
  if (!converged) {
    rep.status = Status::warn;
    rep.notes.emplace_back("quadrature", "relative change under rule doubling exceeds 1e-8");
  }
  return {rep};
}

std::vector<Report> cmd_extend(const RunConfig& c) {
  const Params& prm = c.params;
  prm.validate();
  const GridFunction f = load_datum(c);
  if (!c.export_path.empty()) {
    write_file(c.export_path, ends_with(c.export_path, ".json") ? grid_to_json(f) : grid_to_csv(f));
  }
  const ExtensionField u = extend(f, prm, rule_of(c));
  const auto levels = f.spec.levels();

  Report rep;
  rep.name = "extend";
  rep.params = prm;
  const double f_inf = lp_norm(f, kInfinity);
  double boundary_error = 0.0;
  {
    const auto u0 = u.level(0);
    for (std::size_t i = 0; i < u0.size(); ++i) boundary_error = std::max(boundary_error, std::abs(u0[i] - f.values[i]));
  }
  rep.lhs = boundary_error;
  rep.rhs = f_inf;
  rep.ratio = safe_ratio(boundary_error, f_inf);
  rep.values.emplace_back("datum_l2", lp_norm(f, 2.0));
  rep.values.emplace_back("datum_mean", grid_mean(f));
  for (std::size_t j = 0; j < levels.size(); ++j) {
    GridFunction level(f.spec);
    const auto src = u.level(static_cast<int>(j));
    std::copy(src.begin(), src.end(), level.values.begin());
    rep.values.emplace_back("t[" + std::to_string(j) + "]", levels[j]);
    rep.values.emplace_back("l2[" + std::to_string(j) + "]", lp_norm(level, 2.0));
  }
  rep.notes.emplace_back("ratio", "max |u(t_min) - f| / max |f|");
  return {rep};
}

std::function<Report(const GridFunction&)> check_of(const RunConfig& c, const std::string& name) {
  const Params prm = c.params;
  CheckOptions opt;
  opt.rule = rule_of(c);
  opt.directions = c.directions;
  if (c.tolerance && (name.rfind("identity", 0) == 0)) opt.tolerance = *c.tolerance;
  const Variant v = parse_variant(c.variant);
  if (name == "identity-gradient") return [=](const GridFunction& f) { return check_identity_gradient(f, prm, opt); };
  if (name == "identity-dt") return [=](const GridFunction& f) { return check_identity_dt(f, prm, opt); };
  if (name == "identity-frac") return [=](const GridFunction& f) { return check_identity_frac(f, prm, opt); };
  if (name == "trace-sobolev") return [=](const GridFunction& f) { return check_trace_sobolev(f, prm, v, opt); };
  if (name == "trace-logsobolev") {
    return [=](const GridFunction& f) {
      Report r = check_trace_logsobolev(normalize_l2(f), prm, v, opt);
      r.notes.emplace_back("normalization", "datum scaled to unit L^2 norm");
      return r;
    };
  }
  if (name == "trace-hardy") return [=](const GridFunction& f) { return check_trace_hardy(f, prm, v, opt); };
  if (name == "affine-trace") return [=](const GridFunction& f) { return check_affine_trace(f, prm, opt); };
  if (name == "general-p") {
    const GeneralP w = parse_general_p(c.which);
    return [=](const GridFunction& f) { return check_general_p(f, prm, w, opt); };
  }
  throw ParameterError("unknown check '" + name + "' (expected one of: " + join(kChecks) + ", all)");
}

std::vector<std::string> selected_checks(const RunConfig& c) {
  if (c.check == "all") {
    return {"identity-gradient", "identity-dt", "identity-frac", "trace-sobolev", "trace-logsobolev", "trace-hardy"};
  }
  std::vector<std::string> out;
  std::stringstream ss(c.check);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

std::vector<Report> cmd_verify(const RunConfig& c) {
  c.params.validate();
  const auto names = selected_checks(c);
  std::vector<std::function<Report(const GridFunction&)>> checks;
  for (const auto& name : names) checks.push_back(check_of(c, name));

  if (!c.lambdas.empty()) {
    if (!c.input.empty()) throw ParameterError("dilation sweeps need a catalog function, not --input");
    const PointFunction base = catalog_function(c.function, c.params.n);
    const GridSpec grid = grid_of(c);
    const double tol = c.tolerance.value_or(0.05);
    std::vector<std::function<Report()>> jobs;
    for (std::size_t i = 0; i < names.size(); ++i) {
      jobs.emplace_back([&, i] {
        const bool normalize = names[i] == "trace-logsobolev";
        return dilation_sweep(names[i], checks[i], base, grid, c.lambdas, tol, normalize).summary;
      });
    }
    return run_checks(jobs);
  }

  const GridFunction f = load_datum(c);
  std::vector<std::function<Report()>> jobs;
  for (const auto& check : checks) jobs.emplace_back([&f, check] { return check(f); });
  return run_checks(jobs);
}

CapacityCase case_of(const RunConfig& c) { return parse_case(c.capacity_case); }

std::vector<Report> cmd_carleson(const RunConfig& c) {
  const Params& prm = c.params;
  prm.validate();
  const int n = prm.n;
  const DiscreteMeasure mu = load_measure(c);
  const CapacityParams cp = CapacityParams::from(prm);

  Report rep;
  rep.params = prm;
  if (c.condition == "vi") {
    ConditionSearch search;
    if (c.max_radius) search.max_radius = *c.max_radius;
    if (!c.family.empty()) {
      for (const auto& o : load_family(c)) {
        if (o.kind != SetKind::ball) throw ParameterError("condition vi accepts only single balls in --family");
        search.extra.push_back(o.balls.front());
      }
    }
    const ConditionResult res = condition_vi(mu, cp, search);
    rep.name = "condition-vi";
    rep.lhs = res.sup;
    rep.rhs = 1.0;
    rep.ratio = res.sup;
    rep.status = std::isfinite(res.sup) ? Status::pass : Status::fail;
    rep.values.emplace_back("sup", res.sup);
    rep.values.emplace_back("candidates", static_cast<double>(res.candidates));
    if (res.witness) add_ball(rep, "witness", *res.witness, n);
  } else if (c.condition == "v") {
    const auto family = load_family(c);
    const ConditionResult res = condition_v(mu, cp, family);
    rep.name = "condition-v";
    rep.lhs = res.sup;
    rep.rhs = 1.0;
    rep.ratio = res.sup;
    rep.status = std::isfinite(res.sup) ? Status::pass : Status::fail;
    rep.values.emplace_back("sup", res.sup);
    rep.values.emplace_back("candidates", static_cast<double>(res.candidates));
    if (res.witness_index) rep.values.emplace_back("witness_index", static_cast<double>(*res.witness_index));
    if (res.witness) add_ball(rep, "witness_enclosing", *res.witness, n);
    rep.notes.emplace_back("capacity", "surrogate: Hausdorff content of order n - p beta");
  } else if (c.condition == "minimizing") {
    const auto family = load_family(c);
    if (c.lambdas.empty()) throw ParameterError("minimizing function needs --lambdas");
    std::vector<double> lambdas = c.lambdas;
    const MinimizingFunction mf = minimizing_function(mu, cp, lambdas, family);
    rep.name = "minimizing-function";
    bool monotone = true;
    for (std::size_t i = 0; i < mf.values.size(); ++i) {
      rep.values.emplace_back("lambda[" + std::to_string(i) + "]", mf.lambdas[i]);
      rep.values.emplace_back("value[" + std::to_string(i) + "]", mf.values[i]);
      if (i > 0 && mf.lambdas[i] >= mf.lambdas[i - 1] && mf.values[i] < mf.values[i - 1]) monotone = false;
    }
    rep.ratio = 1.0;
    rep.status = monotone ? Status::pass : Status::fail;
    rep.notes.emplace_back("capacity", "surrogate: r^{n - p beta} for balls, Hausdorff content otherwise");
    rep.notes.emplace_back("infinite", "null values mean no family member carries mass above lambda");
  } else if (c.condition == "embedding") {
    const PointFunction base = catalog_function(c.function, n);
    const GridSpec grid = grid_of(c);
    std::vector<GridFunction> catalog;
    const std::vector<double> dil = c.lambdas.empty() ? std::vector<double>{1.0} : c.lambdas;
    for (double lam : dil) catalog.push_back(GridFunction::sample(grid, dilate(base, 1.0 / lam)));
    EmbeddingOptions opt;
    opt.rule = rule_of(c);
    if (c.max_radius) opt.search.max_radius = *c.max_radius;
    rep = embedding_test(mu, prm, catalog, case_of(c), opt);
    rep.notes.emplace_back("catalog", "f(x / lambda) for each --lambdas entry");
  } else {
    throw ParameterError("unknown condition '" + c.condition + "' (expected vi, v, minimizing or embedding)");
  }
  rep.values.emplace_back("atoms", static_cast<double>(mu.atoms.size()));
  rep.values.emplace_back("total_mass", mu.total_mass());
  return {rep};
}

std::vector<Report> cmd_capacity(const RunConfig& c) {
  const Params& prm = c.params;
  prm.validate();
  const int n = prm.n;
  const double d = n - prm.p * prm.beta;
  if (!(d > 0.0)) throw DegenerateExponentError("capacity needs n - p beta > 0");
  std::vector<Report> out;
  if (c.family.empty()) {
    Report rep;
    rep.name = "capacity-ball";
    rep.params = prm;
    const double surrogate = ball_capacity_surrogate(c.r, n, prm.p, prm.beta);
    const HausdorffResult content = hausdorff_content(OpenSet::single(Ball{{0.0, 0.0, 0.0}, c.r}), n, d);
    rep.lhs = content.value;
    rep.rhs = surrogate;
    rep.ratio = safe_ratio(content.value, surrogate);
    rep.values.emplace_back("radius", c.r);
    rep.values.emplace_back("order", d);
    rep.values.emplace_back("ball_surrogate", surrogate);
    rep.values.emplace_back("hausdorff_content", content.value);
    rep.notes.emplace_back("ratio", "Hausdorff content / r^{n - p beta}");
    out.push_back(rep);
    return out;
  }
  const auto family = load_family(c);
  for (std::size_t i = 0; i < family.size(); ++i) {
    Report rep;
    char name[32];
    std::snprintf(name, sizeof(name), "capacity#%04zu", i);
    rep.name = name;
    rep.params = prm;
    const HausdorffResult content = hausdorff_content(family[i], n, d);
    const double surrogate = capacity_surrogate(family[i], n, prm.p, prm.beta);
    rep.lhs = content.value;
    rep.rhs = surrogate;
    rep.ratio = safe_ratio(content.value, surrogate);
    rep.values.emplace_back("order", d);
    rep.values.emplace_back("hausdorff_content", content.value);
    rep.values.emplace_back("capacity_surrogate", surrogate);
    for (std::size_t k = 0; k < content.trend.size(); ++k) {
      rep.values.emplace_back("trend[" + std::to_string(k) + "]", content.trend[k]);
    }
    out.push_back(rep);
  }
  return out;
}

std::string serialize(const std::vector<Report>& reports, const std::string& format) {
  if (format == "json") return reports_to_jsonl(reports);
  if (format == "csv") return reports_to_csv(reports);
  throw ParameterError("unknown format '" + format + "' (expected json or csv)");
}

}  // namespace

RunConfig parse_args(int argc, const char* const* argv, std::string* help_text) {
  RunConfig c;
  CLI::App app{"frax: fractional Poisson extension toolkit", "frax"};
  app.require_subcommand(1);
  app.allow_extras(false);

  app.add_option("--n", c.params.n, "spatial dimension (1-3)");
  app.add_option("--s", c.params.s, "extension order, 0 < s < 2");
  app.add_option("--beta", c.params.beta, "derivative order");
  app.add_option("--gamma", c.params.gamma, "order of (-Delta)^{gamma/2} in the fractional variant");
  app.add_option("--p", c.params.p, "integrability exponent p");
  app.add_option("--q", c.params.q, "integrability exponent q");
  app.add_option("--q0", c.params.q0, "Lorentz exponent q0");
  app.add_option("--alpha", c.params.alpha, "weight exponent of t^alpha");
  app.add_option("--grid-N", c.grid.points, "points per axis (power of two)");
  app.add_option("--grid-L", c.grid.half_width, "box half-width L");
  app.add_option("--t-min", c.grid.t_min, "smallest t level");
  app.add_option("--t-max", c.grid.t_max, "largest t level");
  app.add_option("--t-count", c.grid.t_count, "number of geometric t levels");
  app.add_option("--quad-count", c.quad_count, "resolution of the lambda quadrature");
  app.add_option("--tol", c.tolerance, "tolerance override (identities; sweep spread)");
  app.add_option("--f", c.function, "catalog function: " + join(catalog_names()));
  app.add_option("--input", c.input, "grid function file (.csv or .json) used instead of --f");
  app.add_option("--measure", c.measure, "discrete measure CSV (x1,...,xn,t,w)");
  app.add_option("--family", c.family, "open-set family JSON");
  app.add_option("--out", c.out, "write reports here instead of stdout");
  app.add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--export", c.export_path, "extend: write the sampled datum (.csv or .json)");
  app.add_option("--check", c.check, "verify: " + join(kChecks) + ", all, or a comma list");
  app.add_option("--variant", c.variant, "trace variant: grad, dt or frac")->check(CLI::IsMember({"grad", "dt", "frac"}));
  app.add_option("--which", c.which, "general-p display: spatial-gradient, time-derivative, fractional, negative-order")
      ->check(CLI::IsMember({"spatial-gradient", "time-derivative", "fractional", "negative-order"}));
  app.add_option("--condition", c.condition, "carleson: vi, v, minimizing or embedding")
      ->check(CLI::IsMember({"vi", "v", "minimizing", "embedding"}));
  app.add_option("--case", c.capacity_case, "embedding case: case1, case2 or case3")
      ->check(CLI::IsMember({"case1", "case2", "case3"}));
  app.add_option("--a", c.a, "constants: moment exponent a");
  app.add_option("--r", c.r, "kernel: radius / frequency; capacity: ball radius");
  app.add_option("--t", c.t, "kernel: height t");
  app.add_option("--x", c.x, "kernel: spatial point (comma separated)")->delimiter(',');
  app.add_option("--lambdas", c.lambdas, "dilation factors or capacity levels (comma separated)")->delimiter(',');
  app.add_option("--directions", c.directions, "affine energy direction count");
  app.add_option("--max-radius", c.max_radius, "condition vi: largest search radius");

  const std::map<std::string, std::string> about{
      {"kernel", "evaluate G_s, G_s', p_t^s and the symbol"},
      {"constants", "kernel normalisations and moment constants"},
      {"extend", "extend a datum and report level norms"},
      {"verify", "run identity and inequality checks"},
      {"carleson", "Carleson conditions and embedding tests for a measure"},
      {"capacity", "capacity surrogates and Hausdorff content"}};
  for (const auto& name : kCommands) {
    app.add_subcommand(name, about.at(name))->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      if (help_text) *help_text = app.help();
      throw UsageError{app.help(), 0};
    }
    throw UsageError{e.what(), 1};
  }
  for (const auto* sub : app.get_subcommands()) c.command = sub->get_name();
  return c;
}

RunResult execute(const RunConfig& config) {
  RunResult result;
  try {
    std::vector<Report> reports;
    if (config.command == "kernel") {
      reports = cmd_kernel(config);
    } else if (config.command == "constants") {
      reports = cmd_constants(config);
    } else if (config.command == "extend") {
      reports = cmd_extend(config);
    } else if (config.command == "verify") {
      reports = cmd_verify(config);
    } else if (config.command == "carleson") {
      reports = cmd_carleson(config);
    } else if (config.command == "capacity") {
      reports = cmd_capacity(config);
    } else {
      throw ParameterError("unknown command '" + config.command + "' (expected one of: " + join(kCommands) + ")");
    }
    result.output = serialize(reports, config.format);
    const bool failed = std::any_of(reports.begin(), reports.end(), [](const Report& r) { return r.status == Status::fail; });
    result.exit_code = failed ? 2 : 0;
  } catch (const Error& e) {
    result.exit_code = 1;
    result.error = e.what();
  }
  return result;
}

int run(const RunConfig& config) {
  RunResult result = execute(config);
  if (result.exit_code == 1) {
    std::cerr << "frax: " << result.error << "\n";
    return 1;
  }
  if (config.out.empty()) {
    std::cout << result.output;
    std::cout.flush();
  } else {
    try {
      write_file(config.out, result.output);
    } catch (const Error& e) {
      std::cerr << "frax: " << e.what() << "\n";
      return 1;
    }
  }
  return result.exit_code;
}

int main(int argc, const char* const* argv) {
  RunConfig config;
  try {
    config = parse_args(argc, argv);
  } catch (const UsageError& e) {
    (e.exit_code == 0 ? std::cout : std::cerr) << e.message << (e.exit_code == 0 ? "" : "\n");
    return e.exit_code;
  }
  return run(config);
}

}  // namespace frax::cli
