#include "frax/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "frax/errors.hpp"
#include "frax/params.hpp"

namespace frax {

void GridSpec::validate() const {
  require_dimension(n);
  if (points < 4 || (points & (points - 1)) != 0) {
    throw_parameter("grid points per axis must be a power of two >= 4, got " + std::to_string(points));
  }
  if (!(half_width > 0.0) || !std::isfinite(half_width)) throw_parameter("grid half-width must be positive");
  if (!(t_min > 0.0) || !(t_max > t_min) || !std::isfinite(t_max)) {
    throw_parameter("t-grid needs 0 < t_min < t_max");
  }
  if (t_count < 2) throw_parameter("t-grid needs at least two levels");
}

double GridSpec::cell_volume() const { return std::pow(spacing(), n); }

double GridSpec::frequency_step() const { return std::numbers::pi / half_width; }

std::size_t GridSpec::size() const {
  std::size_t total = 1;
  for (int d = 0; d < n; ++d) total *= static_cast<std::size_t>(points);
  return total;
}

double GridSpec::level(int j) const {
  if (j == 0) return t_min;
  if (j == t_count - 1) return t_max;
  const double frac = static_cast<double>(j) / static_cast<double>(t_count - 1);
  return t_min * std::exp(frac * std::log(t_max / t_min));
}

std::vector<double> GridSpec::levels() const {
  std::vector<double> out(static_cast<std::size_t>(t_count));
  for (int j = 0; j < t_count; ++j) out[static_cast<std::size_t>(j)] = level(j);
  return out;
}

bool same_space(const GridSpec& a, const GridSpec& b) {
  return a.n == b.n && a.points == b.points && a.half_width == b.half_width;
}

Index3 unflatten(const GridSpec& spec, std::size_t flat) {
  Index3 idx{0, 0, 0};
  const auto N = static_cast<std::size_t>(spec.points);
  for (int d = spec.n - 1; d >= 0; --d) {
    idx[static_cast<std::size_t>(d)] = static_cast<int>(flat % N);
    flat /= N;
  }
  return idx;
}

std::size_t flatten(const GridSpec& spec, const Index3& idx) {
  std::size_t flat = 0;
  const auto N = static_cast<std::size_t>(spec.points);
  for (int d = 0; d < spec.n; ++d) flat = flat * N + static_cast<std::size_t>(idx[static_cast<std::size_t>(d)]);
  return flat;
}

std::array<double, 3> coordinate(const GridSpec& spec, std::size_t flat) {
  const Index3 idx = unflatten(spec, flat);
  const double h = spec.spacing();
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (int d = 0; d < spec.n; ++d) {
    x[static_cast<std::size_t>(d)] = -spec.half_width + h * idx[static_cast<std::size_t>(d)];
  }
  return x;
}

GridFunction::GridFunction(const GridSpec& s) : spec(s), values(s.size(), 0.0) { spec.validate(); }

GridFunction GridFunction::sample(const GridSpec& spec, const PointFunction& fn) {
  GridFunction out(spec);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const auto x = coordinate(spec, i);
    out.values[i] = fn(std::span<const double>(x.data(), static_cast<std::size_t>(spec.n)));
  }
  out.check();
  return out;
}

void GridFunction::check() const {
  spec.validate();
  if (values.size() != spec.size()) {
    std::ostringstream os;
    os << "grid function has " << values.size() << " values, expected " << spec.size();
    throw ParameterError(os.str());
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw ParameterError("grid function contains a non-finite value");
  }
}

ExtensionField::ExtensionField(const GridSpec& s)
    : spec(s), values(s.size() * static_cast<std::size_t>(s.t_count), 0.0) {
  spec.validate();
}

std::span<double> ExtensionField::level(int j) {
  const std::size_t m = spec.size();
  return {values.data() + static_cast<std::size_t>(j) * m, m};
}

std::span<const double> ExtensionField::level(int j) const {
  const std::size_t m = spec.size();
  return {values.data() + static_cast<std::size_t>(j) * m, m};
}

}  // namespace frax
