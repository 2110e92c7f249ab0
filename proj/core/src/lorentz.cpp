#include <algorithm>
#include <cmath>
#include <vector>

#include "frax/errors.hpp"
#include "frax/functionals.hpp"

namespace frax {

double lorentz_norm(std::span<const std::pair<double, double>> values, double q, double p) {
  if (!(q > 0.0) || !(p > 0.0)) throw_parameter("lorentz_norm needs p, q > 0");
  std::vector<std::pair<double, double>> steps;
  steps.reserve(values.size());
  for (const auto& [v, m] : values) {
    if (!(m >= 0.0) || !std::isfinite(v)) throw_parameter("lorentz_norm needs finite values and nonnegative masses");
    if (v != 0.0 && m > 0.0) steps.emplace_back(std::abs(v), m);
  }
  if (steps.empty()) return 0.0;
  std::sort(steps.begin(), steps.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

  // mu(|g| > lambda) = M_k on [v_{k+1}, v_k), with M_k the mass of the k largest values.
  double mass = 0.0;
  if (std::isinf(p)) {
    double best = 0.0;
    for (const auto& [v, m] : steps) {
      mass += m;
      best = std::max(best, v * std::pow(mass, 1.0 / q));
    }
    return best;
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    mass += steps[k].second;
    const double next = k + 1 < steps.size() ? steps[k + 1].first : 0.0;
    sum += std::pow(mass, p / q) * (std::pow(steps[k].first, p) - std::pow(next, p));
  }
  return std::pow(sum, 1.0 / p);
}

}  // namespace frax
