#pragma once

#include <array>
#include <string>
#include <vector>

#include "frax/grid.hpp"

namespace frax {

/// Analytic boundary data used by checks and tests. All of them decay at
/// least like a Gaussian or are compactly supported.
PointFunction gaussian(double sigma, std::array<double, 3> center = {0.0, 0.0, 0.0});

/// e^{-|x|^2 / (2 s1^2)} / s1^n - e^{-|x|^2 / (2 s2^2)} / s2^n: integral zero.
PointFunction gaussian_difference(int n, double sigma1, double sigma2);

/// exp(1 - 1 / (1 - |x|^2 / r^2)) inside B(0, r), zero outside; equals 1 at 0.
PointFunction bump(double radius);

/// (1 - tanh(k (|x| - r))) / 2: a smoothed indicator of B(0, r).
PointFunction plateau(double radius, double steepness);

/// Boundary trace c (1 + |B (x - x0)|^{1+1/p})^{-(1+n+alpha-p)/p} of the
/// affine Sobolev extremal profile (p > 1), with B diagonal.
PointFunction extremizer_trace(int n, double p, double alpha, std::array<double, 3> diag_B = {1.0, 1.0, 1.0});

/// cos(k x_axis).
PointFunction cosine_mode(double k, int axis = 0);

struct MixtureTerm {
  double weight;
  double sigma;
  std::array<double, 3> center;
};
PointFunction gaussian_mixture(std::vector<MixtureTerm> terms);

/// g(lambda x).
PointFunction dilate(PointFunction g, double lambda);

/// g(A x) for a diagonal A.
PointFunction stretch(PointFunction g, std::array<double, 3> diag);

/// g(x - a).
PointFunction translate(PointFunction g, std::array<double, 3> shift);

/// Named entries selectable from the command line.
std::vector<std::string> catalog_names();
PointFunction catalog_function(const std::string& name, int n);
bool catalog_mean_zero(const std::string& name);

GridFunction sample_catalog(const std::string& name, const GridSpec& spec);

}  // namespace frax
