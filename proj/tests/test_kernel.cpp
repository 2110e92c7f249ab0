#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "frax/errors.hpp"
#include "frax/kernel.hpp"
#include "support/generators.hpp"

namespace frax {
namespace {

// Reference values from 2 (r/2)^{s/2} K_{s/2}(r) and its derivative,
// evaluated with mpmath at 30 digits.
struct GCase {
  double s, r, G, G_prime;
};

const std::vector<GCase> kGTable{
    {0.5, 0.1, 2.5394645804339987, -5.2930344381188375},
    {0.5, 1.0, 0.72441506448201823, -0.86742720286320935},
    {0.5, 3.0, 0.077594020264147152, -0.083435900441414392},
    {1.0, 0.1, 1.6037825660412408, -1.6037825660412408},
    {1.0, 1.0, 0.65204933217329218, -0.65204933217329218},
    {1.0, 3.0, 0.08824528105391665, -0.08824528105391665},
    {1.5, 0.1, 1.1835584810881125, -0.56784154283034036},
    {1.5, 1.0, 0.61336365733025434, -0.51223880448892518},
    {1.5, 3.0, 0.1021876911555615, -0.095032878369169258},
};

TEST(LambdaRule, SelfTestIsTiny) {
  EXPECT_LT(std::abs(LambdaRule{}.self_test_error()), 1e-13);
  EXPECT_THROW(LambdaRule{4}.validate(), ParameterError);
}

TEST(LambdaRule, ExponentialMoments) {
  // \int lambda^{mu-1} e^{-a lambda} = Gamma(mu) a^{-mu}
  EXPECT_NEAR(lambda_integral(1.0, 1.0, 0.0, {}), 1.0, 1e-13);
  EXPECT_NEAR(lambda_integral(2.5, 2.0, 0.0, {}), std::tgamma(2.5) * std::pow(2.0, -2.5), 1e-13);
  // mu = 1/2: sqrt(pi / a) e^{-2 sqrt(ab)}
  EXPECT_NEAR(lambda_integral(0.5, 1.0, 0.25, {}), std::sqrt(M_PI) * std::exp(-1.0), 1e-13);
}

TEST(LambdaRule, RejectsBadArguments) {
  EXPECT_THROW(lambda_integral(1.0, 0.0, 1.0, {}), ParameterError);
  EXPECT_THROW(lambda_integral(-1.0, 1.0, 0.0, {}), DivergentMomentError);
}

TEST(Kernel, GMatchesBesselTable) {
  for (const auto& c : kGTable) {
    EXPECT_NEAR(eval_G(c.s, c.r), c.G, 1e-12 * std::abs(c.G)) << "s=" << c.s << " r=" << c.r;
    EXPECT_NEAR(eval_G_prime(c.s, c.r), c.G_prime, 1e-12 * std::abs(c.G_prime)) << "s=" << c.s << " r=" << c.r;
  }
}

TEST(Kernel, GAtOriginIsGammaHalf) {
  for (double s : {0.3, 1.0, 1.7}) EXPECT_NEAR(eval_G(s, 0.0), std::tgamma(s / 2.0), 1e-12);
}

TEST(Kernel, HalfOrderClosedForm) {
  for (double r : {0.0, 0.01, 0.5, 2.0, 10.0, 30.0}) {
    EXPECT_NEAR(eval_G(1.0, r), std::sqrt(M_PI) * std::exp(-r), 1e-14 + 1e-12 * std::exp(-r));
  }
}

TEST(Kernel, Constants) {
  const KernelConstants a = kernel_constants(1, 1.0);
  EXPECT_NEAR(a.c_ns, 0.31830988618379067, 1e-15);
  EXPECT_NEAR(a.C_ns, 1.0 / std::sqrt(M_PI), 1e-15);
  EXPECT_NEAR(a.c_s, 1.0, 1e-15);
  const KernelConstants b = kernel_constants(2, 0.5);
  EXPECT_NEAR(b.c_ns, 0.079577471545947668, 1e-15);
  EXPECT_NEAR(b.c_s, 2.0920992401062033, 1e-14);
  const KernelConstants c = kernel_constants(3, 1.5);
  EXPECT_NEAR(c.c_ns, 0.16604373436200682, 1e-15);
  EXPECT_NEAR(c.c_s, 0.477988797486125, 1e-14);
}

TEST(Kernel, PoissonKernelCauchyCase) {
  Params prm;
  const double x[1] = {0.7};
  EXPECT_NEAR(poisson_kernel(prm, x, 2.0), 2.0 / (M_PI * (0.49 + 4.0)), 1e-15);
}

TEST(Kernel, SymbolIsOneAtZeroAndExponentialForHalfOrder) {
  Params prm;
  prm.n = 2;
  for (double t : {0.1, 1.0, 5.0}) {
    EXPECT_NEAR(fourier_symbol(prm, t, 0.0), 1.0, 1e-13);
    EXPECT_NEAR(fourier_symbol(prm, t, 1.3), std::exp(-1.3 * t), 1e-13);
  }
}

TEST(Kernel, MomentConstants) {
  struct Case {
    double s, a, value;
  };
  for (const Case& c : std::vector<Case>{{1.0, 1.0, 0.25},
                                         {0.5, 0.5, 0.11949719937153125},
                                         {1.5, 2.0, 0.5210570512443992},
                                         {1.2, -0.5, 1.3945315576371874}}) {
    Params prm;
    prm.s = c.s;
    EXPECT_NEAR(moment_constant(prm, c.a), c.value, 1e-9 * c.value) << "s=" << c.s << " a=" << c.a;
  }
}

TEST(Kernel, EnergyConstants) {
  struct Case {
    double s, beta, gamma, dt, grad, frac;
  };
  const std::vector<Case> table{
      {1.0, 1.0, 1.0, 0.5, 1.0, 0.5},
      {0.5, 0.5, 0.75, 0.35849159811459374, 0.47798879748612499, 0.22847329052223181},
      {1.5, 1.0, 1.25, 0.36473993587107944, 1.0942198076132383, 0.51347840650769041},
  };
  for (const auto& c : table) {
    Params prm;
    prm.s = c.s;
    prm.beta = c.beta;
    prm.gamma = c.gamma;
    EXPECT_NEAR(energy_constant_dt(prm), c.dt, 1e-9 * c.dt);
    EXPECT_NEAR(energy_constant_grad(prm), c.grad, 1e-9 * c.grad);
    EXPECT_NEAR(energy_constant_frac(prm), c.frac, 1e-9 * c.frac);
  }
  Params wide;
  wide.s = 1.5;
  wide.beta = 2.5;
  EXPECT_NEAR(energy_constant_dt(wide), 3.2862618016492185, 1e-8);
}

TEST(Kernel, DivergentWindowsThrow) {
  Params prm;
  prm.s = 0.5;
  prm.beta = 1.2;  // beta >= 2s
  EXPECT_THROW(energy_constant_dt(prm), DivergentMomentError);
  EXPECT_THROW(moment_constant(prm, -1.5), DivergentMomentError);
  prm.s = 2.0;
  EXPECT_THROW(eval_G(prm.s, 1.0), ParameterError);
}

TEST(Kernel, ConvergenceCheckReportsRelativeChange) {
  Params prm;
  const auto cc = check_convergence([&](const LambdaRule& r) { return moment_constant(prm, 1.0, r); }, LambdaRule{});
  EXPECT_TRUE(cc.converged);
  EXPECT_NEAR(cc.value, 0.25, 1e-12);
}

// Properties over random orders.

TEST(KernelProperty, GIsPositiveDecreasing) {
  testing::Gen gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const double s = gen.order();
    const double r1 = gen.log_uniform(1e-3, 20.0);
    const double r2 = r1 * gen.uniform(1.01, 3.0);
    const double g1 = eval_G(s, r1), g2 = eval_G(s, r2);
    EXPECT_GT(g1, 0.0);
    EXPECT_GT(g1, g2) << "s=" << s;
    EXPECT_LT(eval_G_prime(s, r1), 0.0);
  }
}

TEST(KernelProperty, DerivativeMatchesFiniteDifference) {
  testing::Gen gen(12);
  for (int trial = 0; trial < 30; ++trial) {
    const double s = gen.order();
    const double r = gen.uniform(0.2, 8.0);
    const double h = 1e-4 * r;
    const double fd = (eval_G(s, r + h) - eval_G(s, r - h)) / (2.0 * h);
    EXPECT_NEAR(eval_G_prime(s, r), fd, 1e-6 * std::abs(fd) + 1e-10) << "s=" << s << " r=" << r;
  }
}

TEST(KernelProperty, SymbolBetweenZeroAndOne) {
  testing::Gen gen(13);
  for (int trial = 0; trial < 50; ++trial) {
    Params prm;
    prm.n = gen.integer(1, 3);
    prm.s = gen.order();
    const double v = fourier_symbol(prm, gen.log_uniform(1e-2, 10.0), gen.log_uniform(1e-2, 10.0));
    EXPECT_GT(v, 0.0);
    EXPECT_LE(v, 1.0 + 1e-13);
  }
}

TEST(KernelProperty, PoissonKernelHasUnitMassInOneDimension) {
  testing::Gen gen(14);
  boost::math::quadrature::tanh_sinh<double> ts;
  for (int trial = 0; trial < 10; ++trial) {
    Params prm;
    prm.s = gen.order();
    const double t = gen.log_uniform(0.1, 2.0);
    // x = t tan(theta); the integrand behaves like cos(theta)^{s-1} at the ends
    const double mass = ts.integrate(
        [&](double th, double th_c) {
          // th_c is the distance to the nearer endpoint, exact near +-pi/2
          const double c = std::abs(th_c) < 0.5 ? std::sin(std::abs(th_c)) : std::cos(th);
          if (c < 1e-100) return 0.0;  // omitted mass is O(c^s)
          const double x[1] = {t * std::sin(th) / c};
          return poisson_kernel(prm, x, t) * t / (c * c);
        },
        -M_PI / 2, M_PI / 2);
    EXPECT_NEAR(mass, 1.0, 1e-8) << "s=" << prm.s;
  }
}

TEST(KernelProperty, ScalingOfPoissonKernel) {
  testing::Gen gen(15);
  for (int trial = 0; trial < 40; ++trial) {
    Params prm;
    prm.n = gen.integer(1, 3);
    prm.s = gen.order();
    const auto x = gen.point(prm.n, 3.0);
    const double t = gen.log_uniform(0.1, 3.0);
    const double lam = gen.log_uniform(0.2, 5.0);
    std::array<double, 3> y{};
    for (int d = 0; d < 3; ++d) y[static_cast<std::size_t>(d)] = lam * x[static_cast<std::size_t>(d)];
    const std::span<const double> xs(x.data(), static_cast<std::size_t>(prm.n));
    const std::span<const double> ys(y.data(), static_cast<std::size_t>(prm.n));
    const double lhs = poisson_kernel(prm, ys, lam * t);
    const double rhs = std::pow(lam, -prm.n) * poisson_kernel(prm, xs, t);
    EXPECT_NEAR(lhs, rhs, 1e-12 * rhs);
  }
}

// Documented sample points

TEST(KernelCases, DecayAndSmallRadiusBehaviour) {
  EXPECT_LT(eval_G(1.5, 10.0), 1e-3);
  for (double s : {0.5, 1.0, 1.5}) {
    double worst = 0.0;
    for (int k = 1; k <= 20; ++k) {
      const double r = std::ldexp(1.0, -k);
      worst = std::max(worst, std::abs(std::pow(r, 1.0 - s) * eval_G_prime(s, r)));
    }
    EXPECT_LT(worst, 10.0) << "s=" << s;
  }
}

TEST(KernelCases, PoissonMassOnTruncatedLine) {
  // p_1^{1/2} over [-200, 200] plus the analytic tail 2 c \int_R^\infty x^{-3/2} dx
  Params prm;
  prm.s = 0.5;
  boost::math::quadrature::tanh_sinh<double> ts;
  const double inner = ts.integrate(
      [&](double x) {
        const double xs[1] = {x};
        return poisson_kernel(prm, xs, 1.0);
      },
      -200.0, 200.0);
  const double tail = 2.0 * kernel_constants(1, 0.5).c_ns * 2.0 / std::sqrt(200.0);
  EXPECT_NEAR(inner + tail, 1.0, 1e-3);
}

TEST(KernelCases, ClosedFormConstantsAtHalfOrder) {
  Params prm;
  EXPECT_NEAR(moment_constant(prm, 0.0), 0.5, 1e-10);
  EXPECT_THROW(moment_constant(prm, -2.0), DivergentMomentError);
  prm.beta = 1.9;
  EXPECT_NEAR(energy_constant_dt(prm), std::tgamma(0.1) * std::pow(2.0, -0.1), 1e-8);
  prm.beta = 2.0;
  EXPECT_THROW(energy_constant_dt(prm), DivergentMomentError);
  prm.beta = 1.0;
  EXPECT_GT(energy_constant_grad(prm), energy_constant_dt(prm));
  prm.beta = 0.5;
  EXPECT_NEAR(energy_constant_frac(prm), std::tgamma(1.5) * std::pow(2.0, -1.5), 1e-10);
  prm.gamma = (prm.beta - prm.s) / 2.0;
  EXPECT_THROW(energy_constant_frac(prm), Error);
}

TEST(KernelCases, GradientConstantConvergesUnderDoubling) {
  Params prm;
  prm.s = 1.5;
  prm.beta = 1.0;
  const auto cc = check_convergence([&](const LambdaRule& r) { return energy_constant_grad(prm, r); }, LambdaRule{}, 1e-6);
  EXPECT_TRUE(cc.converged);
  EXPECT_GT(cc.value, 0.0);
}

}  // namespace
}  // namespace frax
