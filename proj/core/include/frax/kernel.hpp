#pragma once

#include <span>

#include "frax/params.hpp"

namespace frax {

/// Quadrature for integrals of the form
///
///   I(mu, a, b) = \int_0^\infty lambda^{mu-1} exp(-a lambda - b / lambda) d lambda,
///
/// evaluated as a trapezoidal sum in v = ln(lambda). The integrand in v is
/// log-concave and analytic in the strip |Im v| < pi/2, so the sum converges
/// exponentially in 1/step. Nodes are aligned on the integrand's maximum and
/// the range is truncated where the integrand has fallen by e^{-40}.
///
/// `count` is the resolution knob: step = 40 / count, i.e. about `count`
/// nodes for a window of width 40 in ln(lambda). Doubling it halves the step.
struct LambdaRule {
  int count = 200;

  double step() const;
  LambdaRule doubled() const { return LambdaRule{2 * count}; }

  // Throws ParameterError for count < 8.
  void validate() const;

  // Self-test: \int_0^\infty e^{-lambda} d lambda with this rule, minus one.
  double self_test_error() const;
};

/// Evaluates I(mu, a, b) above. Requires a > 0, b >= 0, and mu > 0 when b == 0.
double lambda_integral(double mu, double a, double b, const LambdaRule& rule);

/// Scalar constants attached to (n, s).
struct KernelConstants {
  double c_ns = 0.0;          // Gamma((n+s)/2) / (pi^{n/2} Gamma(s/2))
  double C_ns = 0.0;          // 1 / Gamma(s/2): symbol normalisation
  double gamma_s_half = 0.0;  // Gamma(s/2)
  double c_s = 0.0;           // Gamma(s/2) / (2^{1-s} Gamma(1 - s/2))
};

KernelConstants kernel_constants(int n, double s);

/// G_s(r) = \int_0^\infty lambda^{s/2-1} e^{-lambda - r^2/(4 lambda)} d lambda.
double eval_G(double s, double r, const LambdaRule& rule = {});

/// G_s'(r) = -(r/2) \int_0^\infty lambda^{s/2-2} e^{-lambda - r^2/(4 lambda)} d lambda, r > 0.
double eval_G_prime(double s, double r, const LambdaRule& rule = {});

/// p_t^s(x) = c(n,s) t^s (|x|^2 + t^2)^{-(n+s)/2}.
double poisson_kernel(const Params& prm, std::span<const double> x, double t);

/// Fourier transform of p_t^s at |xi| = xi_norm: C_{n,s} G_s(t |xi|), equal to 1 at xi = 0.
double fourier_symbol(const Params& prm, double t, double xi_norm, const LambdaRule& rule = {});

/// C(n,s,a) = Gamma(s/2)^{-2} \int_0^\infty G_s(r)^2 r^a dr, a > -1.
double moment_constant(const Params& prm, double a, const LambdaRule& rule = {});

/// a(n,s,beta) = Gamma(s/2)^{-2} \int_0^\infty G_s'(r)^2 r^{1-beta} dr, 0 < beta < 2s.
double energy_constant_dt(const Params& prm, const LambdaRule& rule = {});

/// Constant of the full-gradient identity: the G and G' moments with weight r^{1-beta}.
/// Requires 0 < beta < min(2, 2s).
double energy_constant_grad(const Params& prm, const LambdaRule& rule = {});

/// Gamma(s/2)^{-2} \int_0^\infty G_s(r)^2 r^{2 gamma - beta - 1} dr; requires gamma > beta/2.
double energy_constant_frac(const Params& prm, const LambdaRule& rule = {});

/// Result of recomputing a constant with the doubled rule.
struct ConvergenceCheck {
  double value = 0.0;
  double refined = 0.0;
  double relative_change = 0.0;
  bool converged = false;
};

/// Evaluates `constant` with `rule` and `rule.doubled()`; converged when the
/// relative change is below `tolerance`.
template <class Fn>
ConvergenceCheck check_convergence(Fn&& constant, const LambdaRule& rule, double tolerance = 1e-8);

namespace detail {
double relative_change(double a, double b);
}

template <class Fn>
ConvergenceCheck check_convergence(Fn&& constant, const LambdaRule& rule, double tolerance) {
  ConvergenceCheck out;
  out.value = constant(rule);
  out.refined = constant(rule.doubled());
  out.relative_change = detail::relative_change(out.value, out.refined);
  out.converged = out.relative_change < tolerance;
  return out;
}

}  // namespace frax
