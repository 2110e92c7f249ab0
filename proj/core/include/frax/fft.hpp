#pragma once

#include <complex>
#include <vector>

#include "frax/grid.hpp"

namespace frax {

using Complex = std::complex<double>;

/// Full discrete spectrum, f^(xi_k) ~ h^n sum_x e^{-i x.xi_k} f(x), with
/// xi_k = pi k / L. Same layout as GridFunction; along each axis the index
/// is in FFT order (see signed_mode).
struct SpectralFunction {
  GridSpec spec;
  std::vector<Complex> coeffs;
};

/// Non-redundant half of the spectrum of a real function: the last axis keeps
/// indices 0..N/2 only. This is what the field operations work on.
struct HalfSpectrum {
  GridSpec spec;
  std::vector<Complex> coeffs;

  std::size_t last_extent() const { return static_cast<std::size_t>(spec.points / 2 + 1); }
  Index3 index(std::size_t flat) const;  // FFT-order indices
};

SpectralFunction transform(const GridFunction& f);

/// Exact discrete inverse for conjugate-symmetric input (as produced by
/// `transform`); only the non-redundant half of `F` is read.
GridFunction inverse_transform(const SpectralFunction& F);

HalfSpectrum forward_half(const GridFunction& f);
GridFunction inverse_half(const HalfSpectrum& F);

SpectralFunction expand(const HalfSpectrum& F);
HalfSpectrum restrict_half(const SpectralFunction& F);

/// Integer |k|^2 of a half-spectrum entry.
int mode_norm2(const GridSpec& spec, const Index3& idx);

}  // namespace frax
