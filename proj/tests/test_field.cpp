#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "frax/catalog.hpp"
#include "frax/errors.hpp"
#include "frax/fft.hpp"
#include "frax/field.hpp"
#include "frax/functionals.hpp"
#include "frax/kernel.hpp"
#include "support/generators.hpp"

namespace frax {
namespace {

using testing::small_grid;

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::size_t index_of(const GridSpec& g, double x) {
  return static_cast<std::size_t>(std::lround((x + g.half_width) / g.spacing()));
}

// Poisson integrals of e^{-x^2/2} on the line (mpmath), with the periodic
// images added back as point masses sqrt(2 pi) at x0 - 2 L k.
struct ExtCase {
  double s, x0, t, value;
};

TEST(Extend, MatchesPoissonIntegralOnTheLine) {
  const std::vector<ExtCase> table{{1.0, 0.0, 1.0, 0.52315658373024674},
                                   {1.0, 1.0, 0.5, 0.50177593959058411},
                                   {0.5, 0.0, 1.0, 0.34209885410974287},
                                   {1.5, 0.5, 2.0, 0.40925984590777901}};
  const GridSpec g = small_grid(1, 64.0, 2048, 2, 0.5, 2.0);
  const GridFunction f = GridFunction::sample(g, gaussian(1.0));
  for (const auto& c : table) {
    Params prm;
    prm.s = c.s;
    GridSpec gt = g;
    gt.t_min = c.t;
    gt.t_max = 2.0 * c.t;
    gt.t_count = 2;
    GridFunction ft = f;
    ft.spec = gt;
    const ExtensionField u = extend(ft, prm);
    const double cns = kernel_constants(1, c.s).c_ns;
    double images = 0.0;
    for (int k = 1; k <= 200000; ++k) {
      for (int sign : {-1, 1}) {
        const double d = c.x0 - sign * 2.0 * g.half_width * k;
        images += cns * std::pow(c.t, c.s) * std::pow(d * d + c.t * c.t, -(1.0 + c.s) / 2.0) * std::sqrt(2.0 * M_PI);
      }
    }
    const double got = u.level(0)[index_of(g, c.x0)];
    EXPECT_NEAR(got, c.value + images, 2e-5) << "s=" << c.s;
  }
}

TEST(Extend, LevelsAreGeometric) {
  const GridSpec g = small_grid(1, 10.0, 64, 5, 1e-2, 1e2);
  const auto t = g.levels();
  ASSERT_EQ(t.size(), 5u);
  EXPECT_NEAR(t[0], 1e-2, 1e-15);
  EXPECT_NEAR(t[2], 1.0, 1e-14);
  EXPECT_NEAR(t[4], 1e2, 1e-12);
}

TEST(FracLaplacian, SecondOrderIsMinusLaplacian) {
  const GridSpec g = small_grid(1, 20.0, 512);
  const GridFunction f = GridFunction::sample(g, gaussian(1.0));
  const GridFunction lap = frac_laplacian(f, 2.0);
  const GridFunction exact =
      GridFunction::sample(g, [](std::span<const double> x) { return (1.0 - x[0] * x[0]) * std::exp(-x[0] * x[0] / 2.0); });
  EXPECT_LT(max_abs_diff(lap.values, exact.values), 1e-10);
}

TEST(FracLaplacian, NegativeOrderNeedsMeanZero) {
  const GridSpec g = small_grid(2, 10.0, 32);
  const GridFunction f = GridFunction::sample(g, gaussian(1.0));
  EXPECT_THROW(frac_laplacian(f, -0.5), SingularSymbolError);
  EXPECT_NO_THROW(frac_laplacian(project_mean_zero(f), -0.5));
}

TEST(FracLaplacian, ZeroModeIsRemoved) {
  const GridSpec g = small_grid(1, 10.0, 64);
  const GridFunction f = GridFunction::sample(g, gaussian(1.0));
  EXPECT_TRUE(is_mean_zero(frac_laplacian(f, 0.7)));
  EXPECT_FALSE(is_mean_zero(f));
}

TEST(Field, TimeDerivativeOfHalfOrderIsMinusHalfLaplacian) {
  Params prm;
  prm.n = 2;
  const GridSpec g = small_grid(2, 10.0, 32, 4, 0.1, 10.0);
  const GridFunction f = GridFunction::sample(g, gaussian(1.2));
  const ExtensionField u = extend(f, prm);
  const ExtensionField du = dt_field(f, prm);
  for (int j = 0; j < g.t_count; ++j) {
    GridFunction level(g);
    const auto src = u.level(j);
    std::copy(src.begin(), src.end(), level.values.begin());
    const GridFunction half = frac_laplacian(level, 1.0);
    const auto d = du.level(j);
    for (std::size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(d[i], -half.values[i], 1e-12);
  }
}

TEST(Field, SpatialGradientOfThinLevelApproachesDatumGradient) {
  Params prm;
  const GridSpec g = small_grid(1, 20.0, 512, 2, 1e-6, 1.0);
  const GridFunction f = GridFunction::sample(g, gaussian(1.0));
  const auto grads = spatial_gradient(extend(f, prm));
  ASSERT_EQ(grads.size(), 1u);
  const GridFunction exact =
      GridFunction::sample(g, [](std::span<const double> x) { return -x[0] * std::exp(-x[0] * x[0] / 2.0); });
  EXPECT_LT(max_abs_diff(grads[0].level(0), exact.values), 1e-5);
}

TEST(Field, GradFieldHasSpatialComponentsThenTime) {
  Params prm;
  prm.n = 2;
  const GridSpec g = small_grid(2, 8.0, 16, 3);
  const GridFunction f = GridFunction::sample(g, gaussian(1.0));
  const auto comps = grad_field(f, prm);
  ASSERT_EQ(comps.size(), 3u);
  const ExtensionField dt = dt_field(f, prm);
  EXPECT_EQ(max_abs_diff(comps[2].values, dt.values), 0.0);
}

TEST(Field, PeriodizedKernelHasUnitMass) {
  for (int n : {1, 2}) {
    for (double s : {0.5, 1.0, 1.5}) {
      Params prm;
      prm.n = n;
      prm.s = s;
      const GridSpec g = small_grid(n, 20.0, n == 1 ? 1024 : 128);
      const GridFunction k = sample_periodized_kernel(g, prm, 1.0);
      double mass = 0.0;
      for (double v : k.values) mass += v;
      EXPECT_NEAR(mass * g.cell_volume(), 1.0, 1e-6) << "n=" << n << " s=" << s;
    }
  }
}

TEST(Field, CubeFaceIntegral) {
  EXPECT_DOUBLE_EQ(cube_face_integral(0, 3.0), 1.0);
  EXPECT_NEAR(cube_face_integral(1, 2.0), M_PI / 2.0, 1e-12);
  // mpmath: \int_{[-1,1]^2} (1 + |w|^2)^{-1} dw
  EXPECT_NEAR(cube_face_integral(2, 2.0), 4.0 * 0.639510351870311, 1e-9);
}

TEST(Field, MeanProjection) {
  const GridSpec g = small_grid(1, 5.0, 64);
  const GridFunction f = GridFunction::sample(g, gaussian(1.0));
  const GridFunction z = project_mean_zero(f);
  EXPECT_NEAR(grid_mean(z), 0.0, 1e-15);
  EXPECT_TRUE(is_mean_zero(z));
}

// Properties

TEST(FieldProperty, ExtensionPreservesMass) {
  testing::Gen gen(21);
  for (int trial = 0; trial < 12; ++trial) {
    Params prm;
    prm.n = gen.integer(1, 2);
    prm.s = gen.order();
    const GridSpec g = small_grid(prm.n, 12.0, prm.n == 1 ? 128 : 32, 5, 1e-2, 1e2);
    const GridFunction f = GridFunction::sample(g, gen.smooth_datum(prm.n));
    double mass0 = 0.0;
    for (double v : f.values) mass0 += v;
    const ExtensionField u = extend(f, prm);
    for (int j = 0; j < g.t_count; ++j) {
      double m = 0.0;
      for (double v : u.level(j)) m += v;
      EXPECT_NEAR(m, mass0, 1e-10 * std::abs(mass0) + 1e-10);
    }
  }
}

TEST(FieldProperty, ExtensionContractsL2AndIsMonotoneInT) {
  testing::Gen gen(22);
  for (int trial = 0; trial < 12; ++trial) {
    Params prm;
    prm.n = gen.integer(1, 2);
    prm.s = gen.order();
    const GridSpec g = small_grid(prm.n, 12.0, prm.n == 1 ? 128 : 32, 7, 1e-2, 1e2);
    const GridFunction f = GridFunction::sample(g, gen.smooth_datum(prm.n));
    const ExtensionField u = extend(f, prm);
    double prev = lp_norm(f, 2.0);
    for (int j = 0; j < g.t_count; ++j) {
      GridFunction level(g);
      const auto src = u.level(j);
      std::copy(src.begin(), src.end(), level.values.begin());
      const double norm = lp_norm(level, 2.0);
      EXPECT_LE(norm, prev * (1.0 + 1e-12)) << "s=" << prm.s;
      prev = norm;
    }
  }
}

TEST(FieldProperty, FractionalLaplacianComposes) {
  testing::Gen gen(23);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = gen.integer(1, 3);
    const GridSpec g = small_grid(n, 8.0, n == 3 ? 16 : 32);
    const GridFunction f = GridFunction::sample(g, gen.smooth_datum(n));
    const double a = gen.uniform(0.1, 1.5), b = gen.uniform(0.1, 1.5);
    const GridFunction lhs = frac_laplacian(frac_laplacian(f, a), b);
    const GridFunction rhs = frac_laplacian(f, a + b);
    const double scale = lp_norm(rhs, kInfinity);
    EXPECT_LT(max_abs_diff(lhs.values, rhs.values), 1e-11 * (1.0 + scale));
  }
}

TEST(FieldProperty, ExtensionIsLinear) {
  testing::Gen gen(24);
  for (int trial = 0; trial < 8; ++trial) {
    Params prm;
    prm.s = gen.order();
    const GridSpec g = small_grid(1, 10.0, 64, 4);
    const GridFunction f1 = GridFunction::sample(g, gen.smooth_datum(1));
    const GridFunction f2 = GridFunction::sample(g, gen.smooth_datum(1));
    const double c = gen.uniform(-2.0, 2.0);
    GridFunction sum(g);
    for (std::size_t i = 0; i < sum.values.size(); ++i) sum.values[i] = f1.values[i] + c * f2.values[i];
    const ExtensionField u1 = extend(f1, prm), u2 = extend(f2, prm), us = extend(sum, prm);
    for (std::size_t i = 0; i < us.values.size(); ++i) {
      EXPECT_NEAR(us.values[i], u1.values[i] + c * u2.values[i], 1e-12);
    }
  }
}

// Documented sample points

TEST(FieldCases, TransformRoundTripAndSymmetry) {
  const GridSpec g = small_grid(2, 6.0, 16);
  testing::Gen gen(25);
  GridFunction f(g);
  for (double& v : f.values) v = gen.uniform(-1.0, 1.0);
  const SpectralFunction F = transform(f);
  const SpectralFunction back = transform(inverse_transform(F));
  double scale = 0.0, worst = 0.0;
  for (std::size_t i = 0; i < F.coeffs.size(); ++i) {
    scale = std::max(scale, std::abs(F.coeffs[i]));
    worst = std::max(worst, std::abs(F.coeffs[i] - back.coeffs[i]));
  }
  EXPECT_LT(worst, 1e-12 * scale);
  const int N = g.points;
  for (int a = 0; a < N; ++a) {
    for (int b = 0; b < N; ++b) {
      const auto i = static_cast<std::size_t>(a * N + b);
      const auto j = static_cast<std::size_t>(((N - a) % N) * N + (N - b) % N);
      EXPECT_EQ(F.coeffs[i], std::conj(F.coeffs[j]));
    }
  }
}

TEST(FieldCases, GaussianCoefficients) {
  const GridSpec g = small_grid(1, 40.0, 4096);
  const SpectralFunction F = transform(GridFunction::sample(g, gaussian(1.0)));
  double worst = 0.0;
  for (int j = 0; j < g.points; ++j) {
    const double xi = signed_mode(j, g.points) * g.frequency_step();
    if (std::abs(xi) > 10.0) continue;
    worst = std::max(worst, std::abs(F.coeffs[static_cast<std::size_t>(j)] - std::sqrt(2.0 * M_PI) * std::exp(-xi * xi / 2.0)));
  }
  EXPECT_LT(worst, 1e-8);
}

TEST(FieldCases, FractionalLaplacianOnModes) {
  const GridSpec g = small_grid(1, 4.0 * M_PI, 64);
  const GridFunction f = GridFunction::sample(g, gaussian(1.0));
  EXPECT_EQ(frac_laplacian(f, 0.0).values, f.values);
  const GridFunction sine = GridFunction::sample(g, [](std::span<const double> x) { return std::sin(x[0]); });
  EXPECT_LT(max_abs_diff(frac_laplacian(sine, 2.0).values, sine.values), 1e-12);
  const GridSpec wide = small_grid(1, 20.0, 512);
  const GridFunction h = GridFunction::sample(wide, gaussian(1.0));
  EXPECT_LT(max_abs_diff(frac_laplacian(frac_laplacian(h, 1.0), 1.0).values, frac_laplacian(h, 2.0).values), 1e-10);
}

TEST(FieldCases, BoundaryLimitAndMeans) {
  Params prm;
  prm.s = 0.7;
  const GridSpec g = small_grid(1, 20.0, 256, 9, 1e-3, 1e2);
  const GridFunction f = GridFunction::sample(g, gaussian(1.0));
  const ExtensionField u = extend(f, prm);
  EXPECT_LT(max_abs_diff(u.level(0), f.values) / lp_norm(f, kInfinity), 0.01);
  for (int j = 0; j < g.t_count; ++j) {
    double m = 0.0;
    for (double v : u.level(j)) m += v;
    EXPECT_NEAR(m / static_cast<double>(g.size()), grid_mean(f), 1e-14);
  }
}

TEST(FieldCases, HalfOrderIsThePoissonSemigroup) {
  Params prm;
  const GridSpec g = small_grid(1, 20.0, 256, 5, 0.1, 10.0);
  const GridFunction f = GridFunction::sample(g, gaussian(1.0, {0.5, 0.0, 0.0}));
  const ExtensionField u = extend(f, prm);
  const SpectralFunction F = transform(f);
  const auto t = g.levels();
  for (int j = 0; j < g.t_count; ++j) {
    SpectralFunction P = F;
    for (int k = 0; k < g.points; ++k) P.coeffs[static_cast<std::size_t>(k)] *= std::exp(-t[static_cast<std::size_t>(j)] * std::abs(signed_mode(k, g.points) * g.frequency_step()));
    EXPECT_LT(max_abs_diff(u.level(j), inverse_transform(P).values), 1e-10);
  }
  const ExtensionField du = dt_field(f, prm);
  for (int j = 0; j < g.t_count; ++j) {
    GridFunction level(g);
    const auto src = u.level(j);
    std::copy(src.begin(), src.end(), level.values.begin());
    const GridFunction half = frac_laplacian(level, 1.0);
    for (std::size_t i = 0; i < half.values.size(); ++i) EXPECT_NEAR(du.level(j)[i], -half.values[i], 1e-10);
  }
}

TEST(FieldCases, TimeDerivativeMatchesCentredDifferences) {
  // Richardson: halving delta divides the centred-difference error by about 4
  Params prm;
  prm.s = 0.6;
  const double t0 = 0.8;
  const GridSpec base = small_grid(1, 16.0, 128);
  const GridFunction f = GridFunction::sample(base, gaussian(1.0));
  auto field_at = [&](double t, bool derivative) {
    GridSpec g = base;
    g.t_min = t;
    g.t_max = 2.0 * t;
    g.t_count = 2;
    GridFunction ft = f;
    ft.spec = g;
    const ExtensionField e = derivative ? dt_field(ft, prm) : extend(ft, prm);
    const auto lv = e.level(0);
    return std::vector<double>(lv.begin(), lv.end());
  };
  const auto exact = field_at(t0, true);
  double err[2];
  for (int k = 0; k < 2; ++k) {
    const double d = 0.1 / (1 << k);
    const auto up = field_at(t0 + d, false), dn = field_at(t0 - d, false);
    double e = 0.0;
    for (std::size_t i = 0; i < exact.size(); ++i) e = std::max(e, std::abs((up[i] - dn[i]) / (2.0 * d) - exact[i]));
    err[k] = e;
  }
  EXPECT_NEAR(std::log2(err[0] / err[1]), 2.0, 0.1);
}

TEST(FieldCases, GradientOfASingleMode) {
  Params prm;
  prm.s = 1.3;
  const GridSpec g = small_grid(1, 2.0 * M_PI, 64, 3, 0.5, 2.0);
  const GridFunction f = GridFunction::sample(g, [](std::span<const double> x) { return std::sin(x[0]); });
  const ExtensionField u = extend(f, prm);
  const auto grads = spatial_gradient(u);
  const auto t = g.levels();
  for (int j = 0; j < g.t_count; ++j) {
    const double sym = fourier_symbol(prm, t[static_cast<std::size_t>(j)], 1.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double x = coordinate(g, i)[0];
      EXPECT_NEAR(grads[0].level(j)[i], std::cos(x) * sym, 1e-12);
    }
  }
}

}  // namespace
}  // namespace frax
