#include "frax/functionals.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "frax/errors.hpp"
#include "frax/fft.hpp"
#include "frax/parallel.hpp"

namespace frax {
namespace {

// Index of the first level at or beyond t_from * factor (searching up) or at
// or below t_from / factor (searching down); clamps to the far end.
int decade_partner(const GridSpec& spec, int from, int dir) {
  const double target = dir > 0 ? spec.level(from) * 10.0 : spec.level(from) / 10.0;
  int j = from;
  while (j + dir >= 0 && j + dir < spec.t_count) {
    j += dir;
    if (dir > 0 ? spec.level(j) >= target : spec.level(j) <= target) break;
  }
  return j;
}

double power_fit(double f0, double t0, double f1, double t1) {
  return std::log(f1 / f0) / std::log(t1 / t0);
}

}  // namespace

double lp_norm(const GridFunction& f, double p) {
  f.check();
  if (!(p > 0.0)) throw_parameter("lp_norm needs p > 0");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
  }
  double sum = 0.0;
  for (double v : f.values) sum += std::pow(std::abs(v), p);
  return std::pow(sum * f.spec.cell_volume(), 1.0 / p);
}

std::vector<double> level_sums(std::span<const ExtensionField> components, double p) {
  if (components.empty()) throw_parameter("weighted energy needs at least one component");
  if (!(p > 0.0)) throw_parameter("energy exponent must be positive");
  const GridSpec& spec = components.front().spec;
  for (const auto& c : components) {
    if (!same_space(c.spec, spec) || c.spec.t_count != spec.t_count || c.spec.t_min != spec.t_min ||
        c.spec.t_max != spec.t_max) {
      throw_parameter("energy components live on different grids");
    }
  }
  std::vector<double> sums(static_cast<std::size_t>(spec.t_count), 0.0);
  const double vol = spec.cell_volume();
  parallel_for(sums.size(), [&](std::size_t j) {
    double acc = 0.0;
    const std::size_t m = spec.size();
    for (std::size_t i = 0; i < m; ++i) {
      double sq = 0.0;
      for (const auto& c : components) {
        const double v = c.values[j * m + i];
        sq += v * v;
      }
      acc += p == 2.0 ? sq : std::pow(sq, 0.5 * p);
    }
    sums[j] = acc * vol;
  });
  return sums;
}

EnergyResult integrate_levels(const GridSpec& spec, std::span<const double> sums, double w) {
  const int M = spec.t_count;
  if (static_cast<int>(sums.size()) != M) throw_parameter("one level sum per t-level expected");
  // In ln t the integrand is F_j = e_j t_j^{w+1}.
  std::vector<double> F(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) F[static_cast<std::size_t>(j)] = sums[static_cast<std::size_t>(j)] * std::pow(spec.level(j), w + 1.0);
  const double step = std::log(spec.t_max / spec.t_min) / (M - 1);

  EnergyResult out;
  double acc = 0.5 * (F.front() + F.back());
  for (int j = 1; j < M - 1; ++j) acc += F[static_cast<std::size_t>(j)];
  out.interior = acc * step;

  // Below t_min: F ~ F_0 (t / t_0)^kappa with kappa > 0.
  if (F.front() > 0.0) {
    const int k = decade_partner(spec, 0, +1);
    const double f1 = F[static_cast<std::size_t>(k)];
    const double kappa = f1 > 0.0 ? power_fit(F.front(), spec.level(0), f1, spec.level(k)) : -1.0;
    if (kappa > 0.0) {
      out.tail_low = F.front() / kappa;
    } else {
      out.tail_warning = true;
    }
  }
  // Above t_max: F ~ F_last (t / t_last)^kappa with kappa < 0.
  if (F.back() > 0.0) {
    const int k = decade_partner(spec, M - 1, -1);
    const double f0 = F[static_cast<std::size_t>(k)];
    const double kappa = f0 > 0.0 ? power_fit(f0, spec.level(k), F.back(), spec.level(M - 1)) : 1.0;
    if (kappa < 0.0) {
      out.tail_high = F.back() / -kappa;
    } else {
      out.tail_warning = true;
    }
  }
  out.value = out.interior + out.tail_low + out.tail_high;
  return out;
}

EnergyResult weighted_energy(std::span<const ExtensionField> components, double w, double p) {
  const auto sums = level_sums(components, p);
  return integrate_levels(components.front().spec, sums, w);
}

EnergyResult weighted_energy(const GridFunction& f, const Params& prm, const WeightedEnergySpec& spec,
                             const LambdaRule& rule) {
  switch (spec.integrand) {
    case Integrand::gradient: {
      const auto comps = grad_field(f, prm, rule);
      return weighted_energy(comps, spec.weight_exponent, spec.exponent);
    }
    case Integrand::time_derivative: {
      const std::vector<ExtensionField> comps{dt_field(f, prm, rule)};
      return weighted_energy(comps, spec.weight_exponent, spec.exponent);
    }
    case Integrand::frac_laplacian: {
      const std::vector<ExtensionField> comps{frac_field(f, prm, rule)};
      return weighted_energy(comps, spec.weight_exponent, spec.exponent);
    }
  }
  throw_parameter("unknown integrand");
}

double sobolev_dot_norm(const GridFunction& f, double sigma) {
  f.check();
  if (sigma < 0.0 && !is_mean_zero(f)) {
    throw SingularSymbolError("negative-order Sobolev norm of data with nonzero mean");
  }
  const SpectralFunction F = transform(f);
  const double dxi = f.spec.frequency_step();
  double sum = 0.0;
  for (std::size_t i = 0; i < F.coeffs.size(); ++i) {
    const int k2 = mode_norm2(f.spec, unflatten(f.spec, i));
    double weight;
    if (k2 == 0) {
      weight = sigma == 0.0 ? 1.0 : 0.0;
    } else {
      weight = std::pow(dxi * dxi * k2, sigma);
    }
    sum += weight * std::norm(F.coeffs[i]);
  }
  const double scale = std::pow(dxi / (2.0 * std::numbers::pi), f.spec.n);
  return std::sqrt(sum * scale);
}

double besov_seminorm(const GridFunction& f, double beta, double p, double q, const BesovOptions& opt) {
  f.check();
  if (!(beta > 0.0) || !(beta < 2.0)) throw_parameter("besov_seminorm supports 0 < beta < 2");
  if (!(p > 0.0) || !(q > 0.0)) throw_parameter("besov_seminorm needs p, q > 0");
  if (opt.radii_per_octave < 1 || !(opt.h_min_factor > 0.0)) throw_parameter("invalid Besov h-grid");
  const GridSpec& spec = f.spec;
  const int n = spec.n;
  const int k = 1 + static_cast<int>(std::floor(beta));

  int D = opt.directions;
  if (n == 1) {
    D = 2;
  } else if (D <= 0) {
    D = n == 2 ? 32 : 64;
  }
  const auto dirs = sphere_directions(n, D);
  const double dir_weight = sphere_area(n) / D;

  const double rho_min = opt.h_min_factor * spec.spacing();
  const double rho_max = 0.25 * spec.half_width;
  if (!(rho_max > rho_min)) throw_parameter("Besov radius range is empty");
  const int R = static_cast<int>(std::ceil(std::log2(rho_max / rho_min) * opt.radii_per_octave)) + 1;
  const double dlog = std::log(rho_max / rho_min) / (R - 1);

  const HalfSpectrum F = forward_half(f);
  const double dxi = spec.frequency_step();
  std::vector<double> norms(static_cast<std::size_t>(D * R));
  parallel_for(norms.size(), [&](std::size_t job) {
    const auto& dir = dirs[job / static_cast<std::size_t>(R)];
    const int r = static_cast<int>(job % static_cast<std::size_t>(R));
    const double rho = r == R - 1 ? rho_max : rho_min * std::exp(dlog * r);
    HalfSpectrum S{spec, F.coeffs};
    for (std::size_t i = 0; i < S.coeffs.size(); ++i) {
      const Index3 idx = S.index(i);
      double phase = 0.0;
      bool nyquist = false;
      for (int d = 0; d < n; ++d) {
        const int j = idx[static_cast<std::size_t>(d)];
        nyquist = nyquist || j == spec.points / 2;
        phase += dxi * signed_mode(j, spec.points) * rho * dir[static_cast<std::size_t>(d)];
      }
      Complex m = std::pow(Complex(std::cos(phase) - 1.0, std::sin(phase)), k);
      if (nyquist) m = Complex(m.real(), 0.0);
      S.coeffs[i] *= m;
    }
    norms[job] = lp_norm(inverse_half(S), p);
  });

  if (std::isinf(q)) {
    double best = 0.0;
    for (int d = 0; d < D; ++d) {
      for (int r = 0; r < R; ++r) {
        const double rho = r == R - 1 ? rho_max : rho_min * std::exp(dlog * r);
        best = std::max(best, norms[static_cast<std::size_t>(d * R + r)] * std::pow(rho, -beta));
      }
    }
    return best;
  }

  double total = 0.0;
  for (int d = 0; d < D; ++d) {
    auto integrand = [&](int r) {
      const double rho = r == R - 1 ? rho_max : rho_min * std::exp(dlog * r);
      return std::pow(norms[static_cast<std::size_t>(d * R + r)], q) * std::pow(rho, -beta * q);
    };
    double acc = 0.5 * (integrand(0) + integrand(R - 1));
    for (int r = 1; r < R - 1; ++r) acc += integrand(r);
    acc *= dlog;
    acc += integrand(0) / ((k - beta) * q);  // ||Delta^k|| ~ rho^k near 0
    acc += integrand(R - 1) / (beta * q);     // ||Delta^k|| ~ const at large rho
    total += dir_weight * acc;
  }
  return std::pow(total, 1.0 / q);
}

double besov_spectral_constant(int n, double beta) {
  require_dimension(n);
  if (!(beta > 0.0) || !(beta < 2.0)) throw_parameter("besov_spectral_constant supports 0 < beta < 2");
  const int k = 1 + static_cast<int>(std::floor(beta));
  // \int_0^\infty (1 - cos u) u^{-1-a} du = pi / (2 Gamma(a+1) sin(pi a / 2)).
  auto J = [](double a) { return std::numbers::pi / (2.0 * std::tgamma(a + 1.0) * std::sin(0.5 * std::numbers::pi * a)); };
  auto radial = [&](double a) {
    // |e^{iu} - 1|^2 = 2 (1 - cos u); |e^{iu} - 1|^4 = 8 (1 - cos u) - 2 (1 - cos 2u).
    return k == 1 ? 2.0 * J(a) : (8.0 - std::pow(2.0, 1.0 + a)) * J(a);
  };
  const double a = 2.0 * beta;
  double I;
  if (k == 2 && std::abs(a - 2.0) < 1e-6) {
    I = 0.5 * (radial(a - 1e-4) + radial(a + 1e-4));  // removable singularity at a = 2
  } else {
    I = radial(a);
  }
  // \int_{S^{n-1}} |theta_1|^{2 beta} d theta.
  const double nd = static_cast<double>(n);
  const double S = 2.0 * std::pow(std::numbers::pi, 0.5 * (nd - 1.0)) * std::tgamma(beta + 0.5) / std::tgamma(beta + 0.5 * nd);
  return S * I;
}

double lattice_zeta(int n, double beta) {
  require_dimension(n);
  if (!(beta > 0.0) || !(beta < n)) throw_parameter("lattice_zeta needs 0 < beta < n");
  const double a = 0.5 * beta;
  const double b = 0.5 * (n - beta);
  // Theta-function splitting at |m|^2 = 1/pi; terms fall off like e^{-pi |m|^2}.
  const int M = 5;
  int span[3] = {0, 0, 0};
  for (int d = 0; d < n; ++d) span[d] = M;
  double sum = -1.0 / a - 1.0 / b;
  for (int i = -span[0]; i <= span[0]; ++i) {
    for (int j = -span[1]; j <= span[1]; ++j) {
      for (int k = -span[2]; k <= span[2]; ++k) {
        const int r2 = i * i + j * j + k * k;
        if (r2 == 0) continue;
        const double x = std::numbers::pi * r2;
        sum += std::pow(x, -a) * boost::math::tgamma(a, x) + std::pow(x, -b) * boost::math::tgamma(b, x);
      }
    }
  }
  return sum * std::pow(std::numbers::pi, a) / std::tgamma(a);
}

double hardy_functional(const GridFunction& f, double beta) {
  f.check();
  const int n = f.spec.n;
  if (!(beta > 0.0) || !(beta < n)) throw_parameter("hardy_functional needs 0 < beta < n");
  const double h = f.spec.spacing();
  Index3 origin{0, 0, 0};
  for (int d = 0; d < n; ++d) origin[static_cast<std::size_t>(d)] = f.spec.points / 2;
  const std::size_t o = flatten(f.spec, origin);
  double sum = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (i == o || f.values[i] == 0.0) continue;
    const auto x = coordinate(f.spec, i);
    double r2 = 0.0;
    for (int d = 0; d < n; ++d) r2 += x[static_cast<std::size_t>(d)] * x[static_cast<std::size_t>(d)];
    sum += f.values[i] * f.values[i] * std::pow(r2, -0.5 * beta);
  }
  sum *= f.spec.cell_volume();
  const double origin_weight = -lattice_zeta(n, beta) * std::pow(h, n - beta);
  return sum + origin_weight * f.values[o] * f.values[o];
}

double entropy(const GridFunction& f) {
  const double norm = lp_norm(f, 2.0);
  if (std::abs(norm - 1.0) > 1e-8) {
    std::ostringstream os;
    os << "entropy needs unit L^2 norm, got " << norm;
    throw NormalizationError(os.str());
  }
  double sum = 0.0;
  for (double v : f.values) {
    const double a = v * v;
    if (a > 0.0) sum += a * std::log(a);
  }
  return sum * f.spec.cell_volume();
}

void DiscreteMeasure::validate() const {
  require_dimension(n);
  for (const auto& a : atoms) {
    if (!(a.t > 0.0) || !std::isfinite(a.t)) throw_parameter("measure atom needs t > 0");
    if (!(a.w > 0.0) || !std::isfinite(a.w)) throw_parameter("measure atom needs w > 0");
    for (int d = 0; d < n; ++d) {
      if (!std::isfinite(a.x[static_cast<std::size_t>(d)])) throw_parameter("measure atom has a non-finite coordinate");
    }
  }
}

double DiscreteMeasure::total_mass() const {
  double m = 0.0;
  for (const auto& a : atoms) m += a.w;
  return m;
}

}  // namespace frax
