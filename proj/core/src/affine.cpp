#include <cmath>
#include <numbers>

#include "frax/errors.hpp"
#include "frax/functionals.hpp"

namespace frax {
namespace {

// Unit-ball volume, continued to real k through the Gamma function.
double omega(double k) { return std::pow(std::numbers::pi, 0.5 * k) / std::tgamma(1.0 + 0.5 * k); }

}  // namespace

double affine_constant(int n, double p) {
  require_dimension(n);
  if (!(p >= 1.0)) throw_parameter("affine energy needs p >= 1");
  const double nd = static_cast<double>(n);
  const double wn = omega(nd);
  return std::pow(nd * wn, 1.0 / nd) * std::pow(nd * wn * omega(p - 1.0) / (2.0 * omega(nd + p - 2.0)), 1.0 / p);
}

double sphere_area(int n) {
  require_dimension(n);
  return n * omega(static_cast<double>(n));
}

std::vector<std::array<double, 3>> sphere_directions(int n, int count) {
  require_dimension(n);
  if (n == 1) return {{1.0, 0.0, 0.0}, {-1.0, 0.0, 0.0}};
  if (count < 1) throw_parameter("direction count must be positive");
  std::vector<std::array<double, 3>> out(static_cast<std::size_t>(count));
  if (n == 2) {
    for (int i = 0; i < count; ++i) {
      const double a = 2.0 * std::numbers::pi * (i + 0.5) / count;
      out[static_cast<std::size_t>(i)] = {std::cos(a), std::sin(a), 0.0};
    }
    return out;
  }
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / count;
    const double r = std::sqrt(1.0 - z * z);
    const double a = golden * i;
    out[static_cast<std::size_t>(i)] = {r * std::cos(a), r * std::sin(a), z};
  }
  return out;
}

AffineResult affine_energy(const ExtensionField& u, const Params& prm, int direction_count) {
  prm.validate();
  const int n = u.spec.n;
  if (n != prm.n) throw_parameter("field dimension does not match n");
  if (!(prm.alpha >= 0.0)) throw_parameter("affine energy needs alpha >= 0");
  const double p = prm.p;
  const double c = affine_constant(n, p);
  const auto grad = spatial_gradient(u);
  const auto dirs = sphere_directions(n, direction_count);

  AffineResult out;
  double integral = 0.0;
  const double weight = sphere_area(n) / static_cast<double>(dirs.size());
  for (const auto& dir : dirs) {
    std::vector<ExtensionField> comp{ExtensionField(u.spec)};
    auto& values = comp.front().values;
    for (int d = 0; d < n; ++d) {
      const auto& g = grad[static_cast<std::size_t>(d)].values;
      const double a = dir[static_cast<std::size_t>(d)];
      for (std::size_t i = 0; i < values.size(); ++i) values[i] += a * g[i];
    }
    const EnergyResult e = weighted_energy(comp, prm.alpha, p);
    const double norm = std::pow(e.value, 1.0 / p);
    out.directional_norms.push_back(norm);
    if (norm == 0.0) {
      out.infinite = true;
      continue;
    }
    integral += weight * std::pow(norm, -n);
  }
  out.value = out.infinite ? kInfinity : c * std::pow(integral, -1.0 / n);
  return out;
}

}  // namespace frax
