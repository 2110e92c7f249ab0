#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace frax {

/// Uniform periodic box [-L, L)^n with N points per axis, plus a geometric
/// t-grid t_j = t_min (t_max / t_min)^{j / (M - 1)}, j = 0..M-1.
struct GridSpec {
  int n = 1;
  double half_width = 20.0;
  int points = 256;
  double t_min = 1e-3;
  double t_max = 1e3;
  int t_count = 49;

  void validate() const;

  double spacing() const { return 2.0 * half_width / points; }
  double cell_volume() const;
  double frequency_step() const;  // pi / L
  std::size_t size() const;       // N^n

  double level(int j) const;
  std::vector<double> levels() const;
};

bool same_space(const GridSpec& a, const GridSpec& b);

using Index3 = std::array<int, 3>;

// Row-major, axis 0 slowest. Unused axes are zero.
Index3 unflatten(const GridSpec& spec, std::size_t flat);
std::size_t flatten(const GridSpec& spec, const Index3& idx);

// x_d = -L + j_d h.
std::array<double, 3> coordinate(const GridSpec& spec, std::size_t flat);

// FFT-order index j in [0, N) to signed mode k in [-N/2, N/2).
inline int signed_mode(int j, int N) { return j < N / 2 ? j : j - N; }

using PointFunction = std::function<double(std::span<const double>)>;

struct GridFunction {
  GridSpec spec;
  std::vector<double> values;

  GridFunction() = default;
  explicit GridFunction(const GridSpec& s);

  static GridFunction sample(const GridSpec& spec, const PointFunction& fn);

  // Size and finiteness of the value array.
  void check() const;
};

/// u(x_i, t_j): level j occupies values[j * N^n, (j + 1) * N^n).
struct ExtensionField {
  GridSpec spec;
  std::vector<double> values;

  ExtensionField() = default;
  explicit ExtensionField(const GridSpec& s);

  std::span<double> level(int j);
  std::span<const double> level(int j) const;
};

}  // namespace frax
