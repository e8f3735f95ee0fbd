#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "sphereqmc/error.hpp"
#include "sphereqmc/specfun.hpp"
#include "support/generators.hpp"

using namespace sphereqmc;
using namespace sphereqmc::specfun;

namespace {

// Explicit-sum oracle for Jacobi polynomials:
// P_n^{(a,b)}(x) = Σ_k binom(n+a, n-k) binom(n+b, k) ((x-1)/2)^k ((x+1)/2)^{n-k}.
double jacobi_sum(int n, double a, double b, double x) {
  auto gbinom = [](double top, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= (top - k + i) / i;
    return r;
  };
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    sum += gbinom(n + a, n - k) * gbinom(n + b, k) * std::pow((x - 1) / 2, k) *
           std::pow((x + 1) / 2, n - k);
  }
  return sum;
}

}  // namespace

TEST(Specfun, LogGammaMatchesStd) {
  for (double x : {1e-6, 0.1, 0.5, 1.0, 1.5, 2.0, 3.7, 10.0, 57.25, 1e3, 1e6}) {
    EXPECT_NEAR(log_gamma(x), std::lgamma(x), 2e-14 * std::max(1.0, std::abs(std::lgamma(x))))
        << x;
  }
}

TEST(Specfun, GammaKnownValues) {
  const double rp = std::sqrt(std::numbers::pi);
  EXPECT_NEAR(specfun::gamma(0.5), rp, 1e-14 * rp);
  EXPECT_NEAR(specfun::gamma(5.0), 24.0, 1e-14 * 24);
  EXPECT_NEAR(specfun::gamma(-0.5), -2.0 * rp, 2e-14 * rp);
  EXPECT_NEAR(specfun::gamma(-1.5), 4.0 * rp / 3.0, 2e-14 * rp);
  EXPECT_THROW(specfun::gamma(-2.0), DomainError);
  EXPECT_THROW(specfun::gamma(0.0), DomainError);
  EXPECT_THROW(log_gamma(-1.0), DomainError);
}

TEST(Specfun, GammaRatioLargeArguments) {
  // Moderate x: differences of std::lgamma are good to about 1e-12.
  for (double x : {1.0, 10.0, 1e3}) {
    for (double a : {-0.75, 0.5, 1.5, 2.25}) {
      const double expect = std::exp(std::lgamma(x) - std::lgamma(x + a));
      EXPECT_NEAR(gamma_ratio(x, a) / expect, 1.0, 1e-11) << x << " " << a;
    }
  }
  // Large x: Γ(x)/Γ(x+a) = x^{-a} (1 - a(a-1)/(2x) + O(x^{-2})).
  for (double x : {1e7, 1e8, 1e12}) {
    for (double a : {-0.75, 0.5, 1.5, 2.25}) {
      const double expect = std::pow(x, -a) * (1 - a * (a - 1) / (2 * x));
      EXPECT_NEAR(gamma_ratio(x, a) / expect, 1.0, 1e-12) << x << " " << a;
    }
  }
}

TEST(Specfun, PochhammerAndBinomial) {
  EXPECT_DOUBLE_EQ(pochhammer(-1.5, 2), 0.75);
  EXPECT_DOUBLE_EQ(pochhammer(-1.5, 3), 0.375);
  EXPECT_DOUBLE_EQ(pochhammer(-1.5, 4), 0.5625);
  EXPECT_DOUBLE_EQ(pochhammer(3.0, 0), 1.0);
  EXPECT_DOUBLE_EQ(binomial(10.0, 3), 120.0);
  EXPECT_DOUBLE_EQ(binomial(0.5, 2), -0.125);
}

TEST(Specfun, JacobiMatchesExplicitSum) {
  gen::for_all(11, 200, [](Rng& rng, std::size_t) {
    const int n = static_cast<int>(gen::pick_count(rng, 0, 12));
    const double a = -0.9 + 3.0 * rng.uniform();
    const double b = -0.9 + 3.0 * rng.uniform();
    const double x = rng.uniform(-1.0, 1.0);
    const double expect = jacobi_sum(n, a, b, x);
    EXPECT_NEAR(jacobi_eval({a, b}, n, x), expect, 1e-11 * std::max(1.0, std::abs(expect)));
  });
}

TEST(Specfun, JacobiEndpointAndDerivative) {
  for (int n : {0, 1, 5, 50, 400}) {
    EXPECT_NEAR(jacobi_eval({1.0, 0.0}, n, 1.0), n + 1.0, 1e-9 * (n + 1));
  }
  const JacobiParams p{0.5, 1.25};
  for (double t : {-0.9, -0.2, 0.3, 0.95}) {
    const double h = 1e-6;
    const auto v = jacobi_eval_with_derivative(p, 7, t);
    const double fd = (jacobi_eval(p, 7, t + h) - jacobi_eval(p, 7, t - h)) / (2 * h);
    EXPECT_NEAR(v.value, jacobi_eval(p, 7, t), 1e-14);
    EXPECT_NEAR(v.derivative, fd, 1e-6 * std::max(1.0, std::abs(fd)));
  }
  EXPECT_THROW(jacobi_eval(p, 3, 1.5), DomainError);
  EXPECT_THROW(jacobi_eval({-1.0, 0.0}, 3, 0.0), DomainError);
  EXPECT_THROW(jacobi_eval(p, kMaxDegree + 1, 0.0), DomainError);
}

TEST(Specfun, GegenbauerOnS2IsLegendre) {
  for (int l = 0; l <= 40; ++l) {
    for (double t : {-1.0, -0.73, 0.0, 0.31, 0.999, 1.0}) {
      EXPECT_NEAR(gegenbauer_eval(2, l, t), std::legendre(l, t), 1e-12) << l << " " << t;
    }
  }
}

TEST(Specfun, GegenbauerOnS3IsNormalizedChebyshevU) {
  for (int l = 0; l <= 30; ++l) {
    for (double theta : {0.1, 0.7, 1.9, 3.0}) {
      const double expect = std::sin((l + 1) * theta) / ((l + 1) * std::sin(theta));
      EXPECT_NEAR(gegenbauer_eval(3, l, std::cos(theta)), expect, 1e-12);
    }
  }
}

TEST(Specfun, GegenbauerBatchAgreesAndIsBounded) {
  gen::for_all(12, 100, [](Rng& rng, std::size_t) {
    const int d = static_cast<int>(gen::pick_count(rng, 1, 6));
    const double t = rng.uniform(-1.0, 1.0);
    std::vector<double> all(60);
    gegenbauer_all(d, t, all);
    for (int l = 0; l < 60; ++l) {
      EXPECT_NEAR(all[l], gegenbauer_eval(d, l, t), 1e-12);
      EXPECT_LE(std::abs(all[l]), 1.0 + 1e-12);
    }
    EXPECT_DOUBLE_EQ(all[0], 1.0);
  });
}

TEST(Specfun, BesselMatchesStd) {
  for (double nu : {0.0, 0.5, 1.0, 1.5, 2.5}) {
    for (double t : {0.0, 1e-3, 0.5, 2.0, 7.3, 25.0, 120.0, 900.0}) {
      EXPECT_NEAR(bessel_j(nu, t), std::cyl_bessel_j(nu, t), 1e-12) << nu << " " << t;
    }
  }
}

TEST(Specfun, ZetaValues) {
  EXPECT_NEAR(zeta(2.0), std::numbers::pi * std::numbers::pi / 6.0, 1e-14);
  EXPECT_NEAR(zeta(3.0), 1.2020569031595942, 1e-14);
  for (double s : {1.1, 1.5, 2.5, 4.0, 9.0}) {
    EXPECT_NEAR(zeta(s), std::riemann_zeta(s), 1e-12 * std::riemann_zeta(s));
  }
  EXPECT_THROW(zeta(1.0), DomainError);
}

TEST(Specfun, Dimensions) {
  for (int l = 0; l < 20; ++l) EXPECT_EQ(harmonic_dimension(2, l), 2u * l + 1);
  for (int l = 0; l < 20; ++l) EXPECT_EQ(harmonic_dimension(3, l), (l + 1u) * (l + 1u));
  for (int L = 0; L < 20; ++L) {
    EXPECT_EQ(polynomial_space_dimension(2, L), (L + 1u) * (L + 1u));
    std::uint64_t sum = 0;
    for (int l = 0; l <= L; ++l) sum += harmonic_dimension(4, l);
    EXPECT_EQ(polynomial_space_dimension(4, L), sum);
  }
  EXPECT_THROW(polynomial_space_dimension(60, 4000), DomainError);
}
