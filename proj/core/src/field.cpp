#include "frax/field.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <functional>
#include <map>

#include "frax/errors.hpp"
#include "frax/parallel.hpp"

namespace frax {
namespace {

// Each half-spectrum entry refers to one of the distinct integer |k|^2 values,
// so radial symbols are evaluated once per shell and level.
struct Shells {
  std::vector<int> norm2;             // distinct |k|^2, ascending
  std::vector<std::size_t> shell_of;  // half-spectrum entry -> shell
};

Shells build_shells(const HalfSpectrum& F) {
  Shells sh;
  std::map<int, std::size_t> lookup;
  std::vector<int> raw(F.coeffs.size());
  for (std::size_t i = 0; i < F.coeffs.size(); ++i) {
    raw[i] = mode_norm2(F.spec, F.index(i));
    lookup.emplace(raw[i], 0);
  }
  for (auto& [k2, slot] : lookup) {
    slot = sh.norm2.size();
    sh.norm2.push_back(k2);
  }
  sh.shell_of.resize(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) sh.shell_of[i] = lookup[raw[i]];
  return sh;
}

using RadialSymbol = std::function<double(double t, double xi)>;

// Applies symbol(t_j, |xi|) (times i xi_axis when axis >= 0) to f^ and inverts per level.
ExtensionField level_field(const GridFunction& f, const RadialSymbol& symbol, int axis) {
  const HalfSpectrum F = forward_half(f);
  const Shells sh = build_shells(F);
  const GridSpec& spec = f.spec;
  const double dxi = spec.frequency_step();
  ExtensionField out(spec);
  parallel_for(static_cast<std::size_t>(spec.t_count), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    const double t = spec.level(j);
    std::vector<double> per_shell(sh.norm2.size());
    for (std::size_t k = 0; k < per_shell.size(); ++k) {
      per_shell[k] = symbol(t, dxi * std::sqrt(static_cast<double>(sh.norm2[k])));
    }
    HalfSpectrum U{spec, F.coeffs};
    for (std::size_t i = 0; i < U.coeffs.size(); ++i) {
      U.coeffs[i] *= per_shell[sh.shell_of[i]];
      if (axis >= 0) {
        const int idx = U.index(i)[static_cast<std::size_t>(axis)];
        if (idx == spec.points / 2) {
          U.coeffs[i] = 0.0;  // i xi is odd; the Nyquist mode has no real partner
        } else {
          U.coeffs[i] *= Complex(0.0, dxi * signed_mode(idx, spec.points));
        }
      }
    }
    const GridFunction level = inverse_half(U);
    std::copy(level.values.begin(), level.values.end(), out.level(j).begin());
  });
  return out;
}

double mass(const GridFunction& f) {
  double sum = 0.0;
  for (double v : f.values) sum += std::abs(v);
  return sum * f.spec.cell_volume();
}

}  // namespace

double grid_mean(const GridFunction& f) {
  double sum = 0.0;
  for (double v : f.values) sum += v;
  return sum / static_cast<double>(f.values.size());
}

GridFunction project_mean_zero(const GridFunction& f) {
  GridFunction out = f;
  const double m = grid_mean(f);
  for (double& v : out.values) v -= m;
  return out;
}

bool is_mean_zero(const GridFunction& f, double tol) {
  double sum = 0.0;
  for (double v : f.values) sum += v;
  const double zero_mode = std::abs(sum) * f.spec.cell_volume();
  return zero_mode <= tol * mass(f);
}

GridFunction frac_laplacian(const GridFunction& f, double sigma) {
  f.check();
  if (sigma < 0.0 && !is_mean_zero(f)) {
    throw SingularSymbolError("negative-order symbol on data with nonzero mean");
  }
  if (sigma == 0.0) return f;
  HalfSpectrum F = forward_half(f);
  const double dxi = f.spec.frequency_step();
  for (std::size_t i = 0; i < F.coeffs.size(); ++i) {
    const int k2 = mode_norm2(F.spec, F.index(i));
    F.coeffs[i] *= k2 == 0 ? 0.0 : std::pow(dxi * dxi * k2, 0.5 * sigma);
  }
  return inverse_half(F);
}

ExtensionField extend(const GridFunction& f, const Params& prm, const LambdaRule& rule) {
  prm.validate();
  return level_field(f, [&](double t, double xi) { return fourier_symbol(prm, t, xi, rule); }, -1);
}

ExtensionField dt_field(const GridFunction& f, const Params& prm, const LambdaRule& rule) {
  prm.validate();
  const double C = kernel_constants(prm.n, prm.s).C_ns;
  return level_field(
      f,
      [&](double t, double xi) { return xi == 0.0 ? 0.0 : C * xi * eval_G_prime(prm.s, t * xi, rule); },
      -1);
}

std::vector<ExtensionField> grad_field(const GridFunction& f, const Params& prm, const LambdaRule& rule) {
  prm.validate();
  if (f.spec.n != prm.n) throw_parameter("grid dimension does not match n");
  std::vector<ExtensionField> out;
  for (int d = 0; d < prm.n; ++d) {
    out.push_back(level_field(
        f, [&](double t, double xi) { return fourier_symbol(prm, t, xi, rule); }, d));
  }
  out.push_back(dt_field(f, prm, rule));
  return out;
}

ExtensionField frac_field(const GridFunction& f, const Params& prm, const LambdaRule& rule) {
  prm.validate();
  if (!(prm.gamma >= 0.0)) throw_parameter("gamma must be nonnegative");
  const double g = prm.gamma;
  return level_field(
      f,
      [&](double t, double xi) {
        if (xi == 0.0) return g == 0.0 ? 1.0 : 0.0;
        return std::pow(xi, g) * fourier_symbol(prm, t, xi, rule);
      },
      -1);
}

std::vector<ExtensionField> spatial_gradient(const ExtensionField& u) {
  const GridSpec& spec = u.spec;
  std::vector<ExtensionField> out(static_cast<std::size_t>(spec.n), ExtensionField(spec));
  const double dxi = spec.frequency_step();
  parallel_for(static_cast<std::size_t>(spec.t_count), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    GridFunction level(spec);
    std::copy(u.level(j).begin(), u.level(j).end(), level.values.begin());
    const HalfSpectrum F = forward_half(level);
    for (int d = 0; d < spec.n; ++d) {
      HalfSpectrum D{spec, F.coeffs};
      for (std::size_t i = 0; i < D.coeffs.size(); ++i) {
        const int idx = D.index(i)[static_cast<std::size_t>(d)];
        D.coeffs[i] *= idx == spec.points / 2 ? Complex(0.0, 0.0)
                                              : Complex(0.0, dxi * signed_mode(idx, spec.points));
      }
      const GridFunction g = inverse_half(D);
      std::copy(g.values.begin(), g.values.end(), out[static_cast<std::size_t>(d)].level(j).begin());
    }
  });
  return out;
}

double cube_face_integral(int m, double e) {
  if (m == 0) return 1.0;
  using Rule = boost::math::quadrature::gauss<double, 40>;
  // [-1, 1] split at 0 keeps each piece smooth.
  auto axis = [](const std::function<double(double)>& g) {
    return 2.0 * Rule::integrate(g, 0.0, 1.0);
  };
  if (m == 1) return axis([&](double w) { return std::pow(1.0 + w * w, -0.5 * e); });
  if (m == 2) {
    return axis([&](double w1) {
      return axis([&](double w2) { return std::pow(1.0 + w1 * w1 + w2 * w2, -0.5 * e); });
    });
  }
  throw_parameter("cube_face_integral supports m <= 2");
}

GridFunction sample_periodized_kernel(const GridSpec& spec, const Params& prm, double t, int images) {
  prm.validate();
  spec.validate();
  if (spec.n != prm.n) throw_parameter("grid dimension does not match n");
  if (!(t > 0.0)) throw_parameter("kernel sampling needs t > 0");
  if (images < 0) throw_parameter("image count must be nonnegative");
  const int n = prm.n;
  const double period = 2.0 * spec.half_width;
  const KernelConstants kc = kernel_constants(n, prm.s);

  // Far field: p ~ c t^s |y|^{-(n+s)}. Outside the cube of half-side R,
  // \int |y|^{-(n+s)} dy = 2n R^{-s} / s * \int_{[-1,1]^{n-1}} (1+|w|^2)^{-(n+s)/2} dw,
  // spread over cells of volume (2L)^n.
  const double R = (2.0 * images + 1.0) * spec.half_width;
  const double far = kc.c_ns * std::pow(t, prm.s) * 2.0 * n * std::pow(R, -prm.s) / prm.s *
                     cube_face_integral(n - 1, n + prm.s) / std::pow(period, n);

  const int width = 2 * images + 1;
  int combos = 1;
  for (int d = 0; d < n; ++d) combos *= width;

  GridFunction out(spec);
  parallel_for(out.values.size(), [&](std::size_t i) {
    const auto x = coordinate(spec, i);
    double sum = 0.0;
    for (int c = 0; c < combos; ++c) {
      int rest = c;
      double r2 = 0.0;
      for (int d = 0; d < n; ++d) {
        const int m = rest % width - images;
        rest /= width;
        const double y = x[static_cast<std::size_t>(d)] + period * m;
        r2 += y * y;
      }
      sum += std::pow(t, -n) * std::pow(1.0 + r2 / (t * t), -0.5 * (n + prm.s));
    }
    out.values[i] = kc.c_ns * sum + far;
  });
  return out;
}

}  // namespace frax
