#pragma once

#include <vector>

#include "frax/fft.hpp"
#include "frax/grid.hpp"
#include "frax/kernel.hpp"
#include "frax/params.hpp"

namespace frax {

/// Multiplies f^ by |xi|^sigma. The zero mode maps to zero; sigma < 0 needs
/// mean-zero data (|f^(0)| <= 1e-10 * h^n sum |f|) and raises
/// SingularSymbolError otherwise.
GridFunction frac_laplacian(const GridFunction& f, double sigma);

/// u(., t_j) with u^(xi, t) = C_{n,s} G_s(t |xi|) f^(xi).
ExtensionField extend(const GridFunction& f, const Params& prm, const LambdaRule& rule = {});

/// d_t u: coefficients C_{n,s} |xi| G_s'(t |xi|) f^(xi).
ExtensionField dt_field(const GridFunction& f, const Params& prm, const LambdaRule& rule = {});

/// The n spatial derivatives i xi_k u^ followed by d_t u.
std::vector<ExtensionField> grad_field(const GridFunction& f, const Params& prm,
                                       const LambdaRule& rule = {});

/// (-Delta)^{gamma/2} u, using prm.gamma.
ExtensionField frac_field(const GridFunction& f, const Params& prm, const LambdaRule& rule = {});

/// Spatial gradient of an arbitrary field, level by level, spectrally.
std::vector<ExtensionField> spatial_gradient(const ExtensionField& u);

/// Grid mean (1 / N^n) sum f.
double grid_mean(const GridFunction& f);

/// f minus its grid mean.
GridFunction project_mean_zero(const GridFunction& f);

/// true when |f^(0)| <= tol * h^n sum |f|.
bool is_mean_zero(const GridFunction& f, double tol = 1e-10);

/// Samples the periodization sum_m p_t^s(x + 2 L m) of the kernel. Images
/// with |m|_inf <= images are summed directly; the rest is replaced by its
/// far-field integral, which is x-independent to leading order.
GridFunction sample_periodized_kernel(const GridSpec& spec, const Params& prm, double t, int images = 8);

/// \int_{[-1,1]^{m}} (1 + |w|^2)^{-e/2} dw by tensor Gauss-Legendre; m = 0 gives 1.
double cube_face_integral(int m, double e);

}  // namespace frax
