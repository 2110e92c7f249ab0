#include "frax/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

#include "frax/errors.hpp"

namespace frax {
namespace {

// Plans are made once per shape and executed through the new-array interface,
// which FFTW documents as thread safe. Only planning needs the lock.
enum class Direction { forward, backward };

class PlanCache {
 public:
  fftw_plan get(int n, int N, Direction dir) {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto key = std::make_tuple(n, N, dir);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    fftw_plan plan = make(n, N, dir);
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  static fftw_plan make(int n, int N, Direction dir) {
    int dims[3] = {N, N, N};
    std::size_t real_size = 1;
    for (int d = 0; d < n; ++d) real_size *= static_cast<std::size_t>(N);
    const std::size_t half_size = real_size / static_cast<std::size_t>(N) * static_cast<std::size_t>(N / 2 + 1);
    std::vector<double> re(real_size);
    std::vector<Complex> co(half_size);
    auto* cp = reinterpret_cast<fftw_complex*>(co.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = dir == Direction::forward ? fftw_plan_dft_r2c(n, dims, re.data(), cp, flags)
                                               : fftw_plan_dft_c2r(n, dims, cp, re.data(), flags);
    if (plan == nullptr) throw Error("FFTW failed to create a plan");
    return plan;
  }

  std::mutex mutex_;
  std::map<std::tuple<int, int, Direction>, fftw_plan> plans_;
};

PlanCache& plans() {
  static PlanCache cache;
  return cache;
}

int parity(const Index3& idx) { return (idx[0] + idx[1] + idx[2]) & 1; }

std::size_t half_flat(const GridSpec& spec, const Index3& idx) {
  std::size_t flat = 0;
  const auto N = static_cast<std::size_t>(spec.points);
  for (int d = 0; d < spec.n; ++d) {
    const std::size_t extent = d == spec.n - 1 ? N / 2 + 1 : N;
    flat = flat * extent + static_cast<std::size_t>(idx[static_cast<std::size_t>(d)]);
  }
  return flat;
}

Index3 mirror(const GridSpec& spec, const Index3& idx) {
  Index3 out{0, 0, 0};
  for (int d = 0; d < spec.n; ++d) {
    const auto k = static_cast<std::size_t>(d);
    out[k] = (spec.points - idx[k]) % spec.points;
  }
  return out;
}

}  // namespace

Index3 HalfSpectrum::index(std::size_t flat) const {
  Index3 idx{0, 0, 0};
  const auto N = static_cast<std::size_t>(spec.points);
  for (int d = spec.n - 1; d >= 0; --d) {
    const std::size_t extent = d == spec.n - 1 ? N / 2 + 1 : N;
    idx[static_cast<std::size_t>(d)] = static_cast<int>(flat % extent);
    flat /= extent;
  }
  return idx;
}

int mode_norm2(const GridSpec& spec, const Index3& idx) {
  int sum = 0;
  for (int d = 0; d < spec.n; ++d) {
    const int k = signed_mode(idx[static_cast<std::size_t>(d)], spec.points);
    sum += k * k;
  }
  return sum;
}

HalfSpectrum forward_half(const GridFunction& f) {
  f.check();
  HalfSpectrum out;
  out.spec = f.spec;
  const std::size_t half_size = f.spec.size() / static_cast<std::size_t>(f.spec.points) * out.last_extent();
  out.coeffs.assign(half_size, Complex(0.0, 0.0));
  fftw_plan plan = plans().get(f.spec.n, f.spec.points, Direction::forward);
  std::vector<double> input(f.values);
  fftw_execute_dft_r2c(plan, input.data(), reinterpret_cast<fftw_complex*>(out.coeffs.data()));
  // x_j = -L + j h contributes e^{i L xi_k} = (-1)^k to every mode.
  const double vol = f.spec.cell_volume();
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
    out.coeffs[i] *= parity(out.index(i)) ? -vol : vol;
  }
  return out;
}

GridFunction inverse_half(const HalfSpectrum& F) {
  F.spec.validate();
  GridFunction out(F.spec);
  std::vector<Complex> work(F.coeffs);
  const double scale = 1.0 / (F.spec.cell_volume() * static_cast<double>(F.spec.size()));
  for (std::size_t i = 0; i < work.size(); ++i) work[i] *= parity(F.index(i)) ? -scale : scale;
  fftw_plan plan = plans().get(F.spec.n, F.spec.points, Direction::backward);
  fftw_execute_dft_c2r(plan, reinterpret_cast<fftw_complex*>(work.data()), out.values.data());
  return out;
}

SpectralFunction expand(const HalfSpectrum& F) {
  SpectralFunction out;
  out.spec = F.spec;
  out.coeffs.resize(F.spec.size());
  const int N = F.spec.points;
  const auto last = static_cast<std::size_t>(F.spec.n - 1);
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
    const Index3 idx = unflatten(F.spec, i);
    const Index3 partner = mirror(F.spec, idx);
    const std::size_t j = flatten(F.spec, partner);
    const bool edge = idx[last] == 0 || idx[last] == N / 2;
    Complex value;
    if (idx[last] < N / 2 && !edge) {
      value = F.coeffs[half_flat(F.spec, idx)];
    } else if (idx[last] > N / 2) {
      value = std::conj(F.coeffs[half_flat(F.spec, partner)]);
    } else if (i < j) {
      // Both members of the pair live in the half spectrum; pick one so the
      // expanded spectrum is exactly conjugate symmetric.
      value = F.coeffs[half_flat(F.spec, idx)];
    } else if (i > j) {
      value = std::conj(F.coeffs[half_flat(F.spec, partner)]);
    } else {
      value = Complex(F.coeffs[half_flat(F.spec, idx)].real(), 0.0);
    }
    out.coeffs[i] = value;
  }
  return out;
}

HalfSpectrum restrict_half(const SpectralFunction& F) {
  F.spec.validate();
  if (F.coeffs.size() != F.spec.size()) throw ParameterError("spectrum size does not match its grid");
  HalfSpectrum out;
  out.spec = F.spec;
  out.coeffs.resize(F.spec.size() / static_cast<std::size_t>(F.spec.points) * out.last_extent());
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
    out.coeffs[i] = F.coeffs[flatten(F.spec, out.index(i))];
  }
  return out;
}

SpectralFunction transform(const GridFunction& f) { return expand(forward_half(f)); }

GridFunction inverse_transform(const SpectralFunction& F) { return inverse_half(restrict_half(F)); }

}  // namespace frax
