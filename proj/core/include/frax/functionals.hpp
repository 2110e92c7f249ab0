#pragma once

#include <array>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "frax/field.hpp"
#include "frax/grid.hpp"
#include "frax/kernel.hpp"
#include "frax/params.hpp"

namespace frax {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// (h^n sum |f|^p)^{1/p}; p = infinity gives max |f|.
double lp_norm(const GridFunction& f, double p);

// ---------------------------------------------------------------------------
// Weighted space-time energies

enum class Integrand { gradient, time_derivative, frac_laplacian };

struct WeightedEnergySpec {
  double weight_exponent = 0.0;  // w in t^w
  Integrand integrand = Integrand::gradient;
  double exponent = 2.0;  // p
};

/// \int_0^\infty \int |V(x,t)|^p t^w dx dt, split into the part covered by
/// the t-grid and power-law tail estimates below t_min and above t_max.
struct EnergyResult {
  double value = 0.0;
  double interior = 0.0;
  double tail_low = 0.0;
  double tail_high = 0.0;
  bool tail_warning = false;
};

/// Per-level sums e_j = h^n sum_x (sum_c |c(x, t_j)|^2)^{p/2}.
std::vector<double> level_sums(std::span<const ExtensionField> components, double p);

/// Integrates e_j t_j^w over t by the trapezoid rule in ln t plus tails.
EnergyResult integrate_levels(const GridSpec& spec, std::span<const double> sums, double w);

EnergyResult weighted_energy(std::span<const ExtensionField> components, double w, double p = 2.0);

/// Builds the field named by `spec.integrand` from f and integrates it.
EnergyResult weighted_energy(const GridFunction& f, const Params& prm, const WeightedEnergySpec& spec,
                             const LambdaRule& rule = {});

// ---------------------------------------------------------------------------
// Spectral and difference norms

/// ((2 pi)^{-n} sum |xi|^{2 sigma} |f^|^2 dxi^n)^{1/2}. The zero mode enters
/// only for sigma = 0 (so that sigma = 0 is the L^2 norm); sigma < 0 needs
/// mean-zero data.
double sobolev_dot_norm(const GridFunction& f, double sigma);

struct BesovOptions {
  int radii_per_octave = 8;
  int directions = 0;          // 0: 2 for n = 1, 32 for n = 2, 64 for n = 3
  double h_min_factor = 0.125; // smallest |h| as a multiple of the grid spacing
};

/// Homogeneous Besov seminorm with k = 1 + floor(beta) differences, 0 < beta < 2.
/// The h-integral runs over directions x log-spaced radii in [h_min, L/4]
/// with power-law tails; q = infinity takes the max over the same h-grid.
double besov_seminorm(const GridFunction& f, double beta, double p, double q, const BesovOptions& opt = {});

/// c with ||f||_{Besov(beta,2,2)}^2 = c (2 pi)^{-n} \int |xi|^{2 beta} |f^|^2,
/// i.e. \int_{R^n} |e^{i h_1} - 1|^{2k} |h|^{-(n + 2 beta)} dh.
double besov_spectral_constant(int n, double beta);

/// Z_n(beta) = sum_{m in Z^n, m != 0} |m|^{-beta}, continued analytically to
/// 0 < beta < n (negative there; Z_1 = 2 zeta(beta)).
double lattice_zeta(int n, double beta);

/// h^n sum_{x != 0} |f|^2 |x|^{-beta} - Z_n(beta) h^{n-beta} |f(0)|^2. The
/// origin weight is the lattice-zeta correction, which makes the rule
/// accurate to O(h^{n+2-beta}) for smooth f. Requires 0 < beta < n.
double hardy_functional(const GridFunction& f, double beta);

/// h^n sum |f|^2 ln |f|^2 with 0 ln 0 = 0. Requires | ||f||_2 - 1 | <= 1e-8.
double entropy(const GridFunction& f);

// ---------------------------------------------------------------------------
// Discrete measures and Lorentz norms

struct Atom {
  std::array<double, 3> x{0.0, 0.0, 0.0};
  double t = 1.0;
  double w = 1.0;
};

struct DiscreteMeasure {
  int n = 1;
  std::vector<Atom> atoms;

  void validate() const;
  double total_mass() const;
};

/// ||g||_{L^{q,p}} of the step distribution given by (value, mass) pairs:
/// (\int_0^\infty mu(|g| > lambda)^{p/q} d lambda^p)^{1/p}, or
/// sup_lambda lambda mu(|g| > lambda)^{1/q} for p = infinity.
double lorentz_norm(std::span<const std::pair<double, double>> values, double q, double p);

// ---------------------------------------------------------------------------
// Maximal functions

/// sup over r in {h, 2h, 4h, ..., <= L} of r^{-n} h^n sum_{|y - x| <= r} |f(y)|,
/// periodic distances.
GridFunction maximal_function(const GridFunction& f);

/// max over levels j and grid points y with |y - x| < t_j of |u(y, t_j)|.
GridFunction nontangential_max(const ExtensionField& u);

// ---------------------------------------------------------------------------
// Affine energy

/// c_{n,p} = (n w_n)^{1/n} (n w_n w_{p-1} / (2 w_{n+p-2}))^{1/p}, w_k = pi^{k/2} / Gamma(1 + k/2).
double affine_constant(int n, double p);

/// Equal-weight direction set: +-1 (n = 1), uniform circle (n = 2),
/// Fibonacci sphere (n = 3).
std::vector<std::array<double, 3>> sphere_directions(int n, int count);

/// Surface measure of S^{n-1}.
double sphere_area(int n);

struct AffineResult {
  double value = 0.0;
  bool infinite = false;
  std::vector<double> directional_norms;  // ||xi . grad_x u||_{L^p(t^alpha)}
};

/// c_{n,p} (\int_{S^{n-1}} ||xi . grad_x u||^{-n}_{L^p(t^alpha)} d xi)^{-1/n},
/// with p = prm.p and alpha = prm.alpha.
AffineResult affine_energy(const ExtensionField& u, const Params& prm, int direction_count);

}  // namespace frax
