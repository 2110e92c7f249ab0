#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "frax/functionals.hpp"
#include "frax/parallel.hpp"

namespace frax {
namespace {

// Offsets o with o_d in [-N/2, N/2), sorted by length; periodic minimum image.
struct Offset {
  Index3 o;
  double dist2;  // in units of h^2
};

std::vector<Offset> sorted_offsets(const GridSpec& spec, double max_dist2) {
  const int N = spec.points;
  std::vector<Offset> out;
  Index3 o{0, 0, 0};
  const int lo = -N / 2;
  const int hi = N / 2;
  std::function<void(int, double)> rec = [&](int d, double acc) {
    if (d == spec.n) {
      out.push_back({o, acc});
      return;
    }
    for (int k = lo; k < hi; ++k) {
      const double a = acc + static_cast<double>(k) * k;
      if (a > max_dist2) continue;
      o[static_cast<std::size_t>(d)] = k;
      rec(d + 1, a);
    }
    o[static_cast<std::size_t>(d)] = 0;
  };
  rec(0, 0.0);
  std::stable_sort(out.begin(), out.end(), [](const Offset& a, const Offset& b) { return a.dist2 < b.dist2; });
  return out;
}

std::size_t shifted(const GridSpec& spec, const Index3& base, const Index3& off) {
  Index3 idx{0, 0, 0};
  const int N = spec.points;
  for (int d = 0; d < spec.n; ++d) {
    const auto k = static_cast<std::size_t>(d);
    idx[k] = ((base[k] + off[k]) % N + N) % N;
  }
  return flatten(spec, idx);
}

}  // namespace

GridFunction maximal_function(const GridFunction& f) {
  f.check();
  const GridSpec& spec = f.spec;
  const double h = spec.spacing();
  // Radii h 2^m <= L, in grid units 2^m <= N/2.
  std::vector<double> radii;
  for (double r = 1.0; r <= 0.5 * spec.points; r *= 2.0) radii.push_back(r);
  const double rmax = radii.back();
  const auto offsets = sorted_offsets(spec, rmax * rmax);
  const double vol = spec.cell_volume();

  GridFunction out(spec);
  parallel_for(f.values.size(), [&](std::size_t i) {
    const Index3 base = unflatten(spec, i);
    double acc = 0.0;
    double best = 0.0;
    std::size_t next = 0;
    for (double r : radii) {
      const double r2 = r * r;
      while (next < offsets.size() && offsets[next].dist2 <= r2) {
        acc += std::abs(f.values[shifted(spec, base, offsets[next].o)]);
        ++next;
      }
      best = std::max(best, acc * vol / std::pow(r * h, spec.n));
    }
    out.values[i] = best;
  });
  return out;
}

GridFunction nontangential_max(const ExtensionField& u) {
  const GridSpec& spec = u.spec;
  spec.validate();
  const double h = spec.spacing();
  const int M = spec.t_count;
  // Largest strict radius (in grid units) that still excludes some offsets.
  const double box2 = static_cast<double>(spec.n) * 0.25 * spec.points * spec.points;
  const double tmax_units = spec.level(M - 1) / h;
  const auto offsets = sorted_offsets(spec, std::min(box2, tmax_units * tmax_units));

  GridFunction out(spec);
  std::vector<double> level_max(static_cast<std::size_t>(M), 0.0);
  for (int j = 0; j < M; ++j) {
    for (double v : u.level(j)) level_max[static_cast<std::size_t>(j)] = std::max(level_max[static_cast<std::size_t>(j)], std::abs(v));
  }
  parallel_for(out.values.size(), [&](std::size_t i) {
    const Index3 base = unflatten(spec, i);
    double best = 0.0;
    for (int j = 0; j < M; ++j) {
      const double r = spec.level(j) / h;
      const auto lvl = u.level(j);
      if (r * r > box2) {
        best = std::max(best, level_max[static_cast<std::size_t>(j)]);
        continue;
      }
      for (const auto& off : offsets) {
        if (off.dist2 >= r * r) break;  // |y - x| < t strictly
        best = std::max(best, std::abs(lvl[shifted(spec, base, off.o)]));
      }
    }
    out.values[i] = best;
  });
  return out;
}

}  // namespace frax
