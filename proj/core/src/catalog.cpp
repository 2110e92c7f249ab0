#include "frax/catalog.hpp"

#include <cmath>
#include <utility>

#include "frax/errors.hpp"

namespace frax {
namespace {

double norm2(std::span<const double> x) {
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  return r2;
}

}  // namespace

PointFunction gaussian(double sigma, std::array<double, 3> center) {
  if (!(sigma > 0.0)) throw_parameter("gaussian width must be positive");
  return [sigma, center](std::span<const double> x) {
    double r2 = 0.0;
    for (std::size_t d = 0; d < x.size(); ++d) {
      const double y = x[d] - center[d];
      r2 += y * y;
    }
    return std::exp(-0.5 * r2 / (sigma * sigma));
  };
}

PointFunction gaussian_difference(int n, double sigma1, double sigma2) {
  if (!(sigma1 > 0.0) || !(sigma2 > 0.0)) throw_parameter("gaussian widths must be positive");
  const double a1 = std::pow(sigma1, -n);
  const double a2 = std::pow(sigma2, -n);
  return [=](std::span<const double> x) {
    const double r2 = norm2(x);
    return a1 * std::exp(-0.5 * r2 / (sigma1 * sigma1)) - a2 * std::exp(-0.5 * r2 / (sigma2 * sigma2));
  };
}

PointFunction bump(double radius) {
  if (!(radius > 0.0)) throw_parameter("bump radius must be positive");
  return [radius](std::span<const double> x) {
    const double u = norm2(x) / (radius * radius);
    return u < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - u)) : 0.0;
  };
}

PointFunction plateau(double radius, double steepness) {
  return [radius, steepness](std::span<const double> x) {
    return 0.5 * (1.0 - std::tanh(steepness * (std::sqrt(norm2(x)) - radius)));
  };
}

PointFunction extremizer_trace(int n, double p, double alpha, std::array<double, 3> diag_B) {
  if (!(p > 1.0)) throw_parameter("extremal profile needs p > 1");
  const double expo = (1.0 + n + alpha - p) / p;
  const double power = 1.0 + 1.0 / p;
  return [=](std::span<const double> x) {
    double r2 = 0.0;
    for (std::size_t d = 0; d < x.size(); ++d) {
      const double y = diag_B[d] * x[d];
      r2 += y * y;
    }
    return std::pow(1.0 + std::pow(r2, 0.5 * power), -expo);
  };
}

PointFunction cosine_mode(double k, int axis) {
  return [k, axis](std::span<const double> x) { return std::cos(k * x[static_cast<std::size_t>(axis)]); };
}

PointFunction gaussian_mixture(std::vector<MixtureTerm> terms) {
  return [terms = std::move(terms)](std::span<const double> x) {
    double sum = 0.0;
    for (const auto& term : terms) {
      double r2 = 0.0;
      for (std::size_t d = 0; d < x.size(); ++d) {
        const double y = x[d] - term.center[d];
        r2 += y * y;
      }
      sum += term.weight * std::exp(-0.5 * r2 / (term.sigma * term.sigma));
    }
    return sum;
  };
}

PointFunction dilate(PointFunction g, double lambda) {
  return [g = std::move(g), lambda](std::span<const double> x) {
    std::array<double, 3> y{0.0, 0.0, 0.0};
    for (std::size_t d = 0; d < x.size(); ++d) y[d] = lambda * x[d];
    return g(std::span<const double>(y.data(), x.size()));
  };
}

PointFunction stretch(PointFunction g, std::array<double, 3> diag) {
  return [g = std::move(g), diag](std::span<const double> x) {
    std::array<double, 3> y{0.0, 0.0, 0.0};
    for (std::size_t d = 0; d < x.size(); ++d) y[d] = diag[d] * x[d];
    return g(std::span<const double>(y.data(), x.size()));
  };
}

PointFunction translate(PointFunction g, std::array<double, 3> shift) {
  return [g = std::move(g), shift](std::span<const double> x) {
    std::array<double, 3> y{0.0, 0.0, 0.0};
    for (std::size_t d = 0; d < x.size(); ++d) y[d] = x[d] - shift[d];
    return g(std::span<const double>(y.data(), x.size()));
  };
}

std::vector<std::string> catalog_names() {
  return {"gaussian", "gaussian-narrow", "gaussian-wide", "shifted-gaussian", "bump",
          "plateau",  "extremizer",      "dipole",        "mixture"};
}

PointFunction catalog_function(const std::string& name, int n) {
  if (name == "gaussian") return gaussian(1.0);
  if (name == "gaussian-narrow") return gaussian(0.5);
  if (name == "gaussian-wide") return gaussian(2.0);
  if (name == "shifted-gaussian") return gaussian(1.0, {5.0, 0.0, 0.0});
  if (name == "bump") return bump(2.0);
  if (name == "plateau") return plateau(2.0, 4.0);
  if (name == "extremizer") return extremizer_trace(n, 1.5, 8.0);
  if (name == "dipole") return gaussian_difference(n, 1.0, 1.5);
  if (name == "mixture") {
    return gaussian_mixture({{1.0, 0.8, {-1.5, 0.5, 0.0}}, {0.6, 1.2, {1.0, -0.5, 0.5}}, {0.3, 0.5, {0.0, 1.0, -1.0}}});
  }
  throw ParameterError("unknown catalog function '" + name + "'");
}

bool catalog_mean_zero(const std::string& name) { return name == "dipole"; }

GridFunction sample_catalog(const std::string& name, const GridSpec& spec) {
  return GridFunction::sample(spec, catalog_function(name, spec.n));
}

}  // namespace frax
