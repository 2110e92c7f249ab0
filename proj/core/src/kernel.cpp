#include "frax/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "frax/errors.hpp"

namespace frax {
namespace {

constexpr double kWindow = 40.0;     // ln-lambda width covered by `count` nodes
constexpr double kDropoff = 40.0;    // truncate once the integrand fell by e^{-40}
constexpr double kTailDecay = 30.0;  // lower radial cutoff: r_lo^kappa <= e^{-30}
constexpr double kSmallestRadius = 1e-150;

// phi(v) = mu v - a e^v - b e^{-v}; concave for a > 0, b >= 0.
struct LogIntegrand {
  double mu, a, b;
  double operator()(double v) const { return mu * v - a * std::exp(v) - b * std::exp(-v); }
};

double argmax(const LogIntegrand& phi) {
  // Root of a e^{2v} - mu e^v - b = 0, written to avoid cancellation.
  const double disc = std::sqrt(phi.mu * phi.mu + 4.0 * phi.a * phi.b);
  if (phi.mu >= 0.0) return std::log((phi.mu + disc) / (2.0 * phi.a));
  return std::log(2.0 * phi.b / (disc - phi.mu));
}

// Distance from `peak` (in direction `dir`) at which phi has dropped by kDropoff.
double reach(const LogIntegrand& phi, double peak, double peak_value, double dir) {
  const double target = peak_value - kDropoff;
  double inner = 0.0;
  double outer = 1.0;
  while (phi(peak + dir * outer) > target) {
    inner = outer;
    outer *= 2.0;
    if (outer > 1e6) break;
  }
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (inner + outer);
    if (phi(peak + dir * mid) > target) {
      inner = mid;
    } else {
      outer = mid;
    }
  }
  return outer;
}

void require_rule(const LambdaRule& rule) { rule.validate(); }

double gamma_half(double s) { return std::tgamma(0.5 * s); }

// Integrand of the radial moments in y = ln r: F(e^y)^2 e^{(a+1) y}.
enum class Profile { value, derivative };

double profile(Profile which, double s, double r, const LambdaRule& rule) {
  return which == Profile::value ? eval_G(s, r, rule) : eval_G_prime(s, r, rule);
}

// \int_0^\infty F(r)^2 r^a dr with F = G_s or G_s'. `kappa` is the leading
// exponent of F(r)^2 r^{a+1} as r -> 0; the range below r_lo is added as a
// pure power-law tail.
double radial_moment(Profile which, double s, double a, double kappa, const LambdaRule& rule) {
  const double r_lo =
      std::max(kSmallestRadius, std::min(1e-8, std::exp(-kTailDecay / kappa)));
  const double r_hi = std::max(60.0, 60.0 + 2.0 * std::abs(a));
  const double y_lo = std::log(r_lo);
  const double y_hi = std::log(r_hi);
  // Half the lambda step: the y-integrand is analytic in |Im y| < pi/2 as well.
  const double hy = 0.5 * rule.step();
  const auto steps = static_cast<long>(std::ceil((y_hi - y_lo) / hy));
  const double h = (y_hi - y_lo) / static_cast<double>(steps);

  auto integrand = [&](double y) {
    const double r = std::exp(y);
    const double f = profile(which, s, r, rule);
    return f * f * std::exp((a + 1.0) * y);
  };

  double sum = 0.5 * (integrand(y_lo) + integrand(y_hi));
  for (long k = 1; k < steps; ++k) sum += integrand(y_lo + h * static_cast<double>(k));
  sum *= h;
  const double tail = integrand(y_lo) / kappa;
  return sum + tail;
}

void require_moment_window(double a, double s) {
  if (!(a > -(s + 1.0))) {
    std::ostringstream os;
    os << "moment exponent a = " << a << " violates a > -(s+1) = " << -(s + 1.0);
    throw DivergentMomentError(os.str());
  }
  if (!(a > -1.0)) {
    std::ostringstream os;
    os << "moment exponent a = " << a
       << " diverges at r = 0 since G_s(0) = Gamma(s/2) > 0; need a > -1";
    throw DivergentMomentError(os.str());
  }
}

void require_derivative_window(double a, double s) {
  if (!(a > 1.0 - 2.0 * s)) {
    std::ostringstream os;
    os << "derivative moment exponent a = " << a << " violates a > 1 - 2s = " << 1.0 - 2.0 * s;
    throw DivergentMomentError(os.str());
  }
}

}  // namespace

namespace detail {
double relative_change(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return 0.0;
  return std::abs(a - b) / scale;
}
}  // namespace detail

double LambdaRule::step() const { return kWindow / static_cast<double>(count); }

void LambdaRule::validate() const {
  if (count < 8) throw ParameterError("quadrature count must be at least 8");
}

double LambdaRule::self_test_error() const { return lambda_integral(1.0, 1.0, 0.0, *this) - 1.0; }

double lambda_integral(double mu, double a, double b, const LambdaRule& rule) {
  require_rule(rule);
  if (!(a > 0.0) || !(b >= 0.0)) throw ParameterError("lambda_integral needs a > 0 and b >= 0");
  if (b == 0.0 && !(mu > 0.0)) {
    throw DivergentMomentError("lambda_integral diverges at 0 for mu <= 0 and b = 0");
  }
  const LogIntegrand phi{mu, a, b};
  const double peak = argmax(phi);
  const double peak_value = phi(peak);
  // The peak narrows like (a e^v + b e^{-v})^{-1/2}; shrink the step with it.
  const double width = 1.0 / std::sqrt(phi.a * std::exp(peak) + phi.b * std::exp(-peak));
  const double h = rule.step() * std::min(1.0, 3.0 * width);
  const double right = reach(phi, peak, peak_value, +1.0);
  const double left = reach(phi, peak, peak_value, -1.0);
  const auto k_hi = static_cast<long>(std::ceil(right / h));
  const auto k_lo = static_cast<long>(std::ceil(left / h));

  // Accumulate from the outside in so the small terms are not swamped.
  double sum_left = 0.0;
  for (long k = k_lo; k >= 1; --k) sum_left += std::exp(phi(peak - h * k) - peak_value);
  double sum_right = 0.0;
  for (long k = k_hi; k >= 1; --k) sum_right += std::exp(phi(peak + h * k) - peak_value);
  const double sum = 1.0 + sum_left + sum_right;
  return h * sum * std::exp(peak_value);
}

KernelConstants kernel_constants(int n, double s) {
  require_dimension(n);
  require_order(s);
  KernelConstants k;
  const double nd = static_cast<double>(n);
  k.gamma_s_half = gamma_half(s);
  k.c_ns = std::exp(std::lgamma(0.5 * (nd + s)) - 0.5 * nd * std::log(std::numbers::pi) -
                    std::lgamma(0.5 * s));
  k.C_ns = 1.0 / k.gamma_s_half;
  k.c_s = k.gamma_s_half / (std::pow(2.0, 1.0 - s) * std::tgamma(1.0 - 0.5 * s));
  return k;
}

double eval_G(double s, double r, const LambdaRule& rule) {
  require_order(s);
  if (!(r >= 0.0)) throw ParameterError("eval_G needs r >= 0");
  if (r > 2000.0) return 0.0;  // below the smallest subnormal
  return lambda_integral(0.5 * s, 1.0, 0.25 * r * r, rule);
}

double eval_G_prime(double s, double r, const LambdaRule& rule) {
  require_order(s);
  if (!(r > 0.0)) {
    throw ParameterError("eval_G_prime is defined for r > 0 only; use r^{1-s} G_s'(r) near 0");
  }
  if (r > 2000.0) return 0.0;
  return -0.5 * r * lambda_integral(0.5 * s - 1.0, 1.0, 0.25 * r * r, rule);
}

double poisson_kernel(const Params& prm, std::span<const double> x, double t) {
  prm.validate();
  if (!(t > 0.0)) throw ParameterError("poisson_kernel needs t > 0");
  if (x.size() != static_cast<std::size_t>(prm.n)) {
    throw ParameterError("poisson_kernel: point dimension does not match n");
  }
  double r2 = 0.0;
  for (double xi : x) r2 += xi * xi;
  const double nd = static_cast<double>(prm.n);
  const KernelConstants k = kernel_constants(prm.n, prm.s);
  // t^s (r^2 + t^2)^{-(n+s)/2} = t^{-n} (1 + r^2/t^2)^{-(n+s)/2}
  return k.c_ns * std::pow(t, -nd) * std::pow(1.0 + r2 / (t * t), -0.5 * (nd + prm.s));
}

double fourier_symbol(const Params& prm, double t, double xi_norm, const LambdaRule& rule) {
  prm.validate();
  if (!(t > 0.0)) throw ParameterError("fourier_symbol needs t > 0");
  if (!(xi_norm >= 0.0)) throw ParameterError("fourier_symbol needs |xi| >= 0");
  if (xi_norm == 0.0) return 1.0;
  return eval_G(prm.s, t * xi_norm, rule) / gamma_half(prm.s);
}

double moment_constant(const Params& prm, double a, const LambdaRule& rule) {
  prm.validate();
  require_moment_window(a, prm.s);
  const double g = gamma_half(prm.s);
  return radial_moment(Profile::value, prm.s, a, a + 1.0, rule) / (g * g);
}

double energy_constant_dt(const Params& prm, const LambdaRule& rule) {
  prm.validate();
  if (!(prm.beta > 0.0)) throw ParameterError("beta must be positive");
  if (!(prm.beta < 2.0 * prm.s)) {
    std::ostringstream os;
    os << "beta = " << prm.beta << " must be < 2s = " << 2.0 * prm.s;
    throw DivergentMomentError(os.str());
  }
  const double a = 1.0 - prm.beta;
  require_derivative_window(a, prm.s);
  const double g = gamma_half(prm.s);
  return radial_moment(Profile::derivative, prm.s, a, 2.0 * prm.s - prm.beta, rule) / (g * g);
}

double energy_constant_grad(const Params& prm, const LambdaRule& rule) {
  prm.validate();
  if (!(prm.beta > 0.0)) throw ParameterError("beta must be positive");
  if (!(prm.beta < 2.0 * prm.s)) {
    std::ostringstream os;
    os << "beta = " << prm.beta << " must be < 2s = " << 2.0 * prm.s;
    throw DivergentMomentError(os.str());
  }
  const double a = 1.0 - prm.beta;
  require_moment_window(a, prm.s);  // beta < 2 for the spatial part
  const double g = gamma_half(prm.s);
  const double spatial = radial_moment(Profile::value, prm.s, a, a + 1.0, rule);
  const double vertical = radial_moment(Profile::derivative, prm.s, a, 2.0 * prm.s - prm.beta, rule);
  return (spatial + vertical) / (g * g);
}

double energy_constant_frac(const Params& prm, const LambdaRule& rule) {
  prm.validate();
  if (!(prm.gamma >= 0.0)) throw ParameterError("gamma must be nonnegative");
  const double a = 2.0 * prm.gamma - prm.beta - 1.0;
  require_moment_window(a, prm.s);
  const double g = gamma_half(prm.s);
  return radial_moment(Profile::value, prm.s, a, a + 1.0, rule) / (g * g);
}

}  // namespace frax
