#include <gtest/gtest.h>

#include <cmath>

#include "sphereqmc/quadrature.hpp"
#include "sphereqmc/specfun.hpp"
#include "support/generators.hpp"

using namespace sphereqmc;
using namespace sphereqmc::specfun;

namespace {

// ∫ (1-t)^a (1+t)^{b+k} dt = 2^{a+b+k+1} B(a+1, b+k+1); no cancellation.
double shifted_moment(double a, double b, int k) {
  return std::exp((a + b + k + 1) * std::log(2.0) + std::lgamma(a + 1) + std::lgamma(b + k + 1) -
                  std::lgamma(a + b + k + 2));
}

}  // namespace

TEST(Quadrature, GaussLegendreExactness) {
  const auto rule = gauss_legendre(5);
  EXPECT_NEAR(rule.integrate([](double t) { return std::pow(t, 8); }), 2.0 / 9.0, 1e-15);
  EXPECT_NEAR(rule.integrate([](double t) { return std::pow(t, 9); }), 0.0, 1e-15);
}

TEST(Quadrature, GaussJacobiMomentsProperty) {
  gen::for_all(21, 60, [](Rng& rng, std::size_t) {
    const int n = static_cast<int>(gen::pick_count(rng, 1, 40));
    const double a = -0.95 + 4.0 * rng.uniform();
    const double b = -0.95 + 4.0 * rng.uniform();
    const auto rule = gauss_jacobi(n, a, b);
    ASSERT_EQ(rule.nodes.size(), static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      EXPECT_GT(rule.weights[i], 0.0);
      EXPECT_GT(rule.nodes[i], -1.0);
      EXPECT_LT(rule.nodes[i], 1.0);
      if (i) {
        EXPECT_LT(rule.nodes[i - 1], rule.nodes[i]);
      }
    }
    for (int k : {0, n - 1, 2 * n - 1}) {
      const double expect = shifted_moment(a, b, k);
      const double got = rule.integrate([k](double t) { return std::pow(1 + t, k); });
      EXPECT_NEAR(got / expect, 1.0, 1e-11) << "n=" << n << " k=" << k;
    }
  });
}

TEST(Quadrature, HighOrderJacobiIntegratesSquaredPolynomial) {
  // ∫ P_n^{(a,b)}(t)² (1-t)^a (1+t)^b dt
  //   = 2^{a+b+1} Γ(n+a+1) Γ(n+b+1) / ((2n+a+b+1) Γ(n+a+b+1) n!).
  for (double a : {1.0, 0.5}) {
    const double b = 0.0;
    const int n = 150;
    const auto rule = gauss_jacobi(n + 2, a, b);
    const double got =
        rule.integrate([&](double t) { return std::pow(jacobi_eval({a, b}, n, t), 2); });
    const double expect =
        std::exp((a + b + 1) * std::log(2.0) + std::lgamma(n + a + 1) + std::lgamma(n + b + 1) -
                 std::log(2 * n + a + b + 1) - std::lgamma(n + a + b + 1) - std::lgamma(n + 1.0));
    EXPECT_NEAR(got / expect, 1.0, 1e-11);
  }
}
