#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "sphereqmc/closedforms.hpp"
#include "sphereqmc/detproc.hpp"
#include "sphereqmc/energy.hpp"
#include "sphereqmc/error.hpp"
#include "sphereqmc/quadrature.hpp"
#include "support/generators.hpp"

using namespace sphereqmc;
using namespace sphereqmc::detproc;
using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

namespace {

// Spherical-ensemble kernel from the planar orthonormal basis
// ψ_k(z) = √(n binom(n-1,k) / π) z^k / (1+|z|²)^{(n+1)/2}, pushed to σ_2
// with the Jacobian π (1+|z|²)(1+|w|²).
cplx spherical_oracle(std::size_t n, std::span<const double> x, std::span<const double> y) {
  const cplx z = stereographic(x), w = stereographic(y);
  const double lz = std::log(std::abs(z)), lw = std::log(std::abs(w));
  const double az = std::arg(z), aw = std::arg(w);
  const double damp = -0.5 * (n - 1.0) * (std::log1p(std::norm(z)) + std::log1p(std::norm(w)));
  cplx sum = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double lb = std::lgamma(static_cast<double>(n)) - std::lgamma(k + 1.0) -
                      std::lgamma(static_cast<double>(n - k));
    const double mag = std::exp(std::log(static_cast<double>(n)) + lb + k * (lz + lw) + damp);
    sum += std::polar(mag, k * (az - aw));
  }
  return sum;
}

cplx det3(const cplx m[3][3]) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Product rule on S² exact for polynomials of degree < 2·nt in x_3 and < nphi in φ.
struct SphereRule {
  std::vector<std::vector<double>> points;
  std::vector<double> weights;
};

SphereRule product_rule(int nt, int nphi) {
  const auto gl = specfun::gauss_legendre(nt);
  SphereRule rule;
  for (int i = 0; i < nt; ++i) {
    const double c = gl.nodes[i], sn = std::sqrt(1 - c * c);
    for (int j = 0; j < nphi; ++j) {
      const double phi = 2 * kPi * (j + 0.5) / nphi;
      rule.points.push_back({sn * std::cos(phi), sn * std::sin(phi), c});
      rule.weights.push_back(gl.weights[i] / 2 / nphi);
    }
  }
  return rule;
}

// True when the Hermitian Gram matrix plus a small shift admits a Cholesky factor.
bool gram_is_psd(const ProjectionKernel& k, const Configuration& cfg, double shift) {
  const std::size_t n = cfg.size();
  std::vector<cplx> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = k.evaluate(cfg[i], cfg[j]);
  for (std::size_t i = 0; i < n; ++i) a[i * n + i] += shift;
  for (std::size_t j = 0; j < n; ++j) {
    double d = a[j * n + j].real();
    for (std::size_t p = 0; p < j; ++p) d -= std::norm(a[j * n + p]);
    if (d <= 0) return false;
    const double l = std::sqrt(d);
    a[j * n + j] = l;
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx v = a[i * n + j];
      for (std::size_t p = 0; p < j; ++p) v -= a[i * n + p] * std::conj(a[j * n + p]);
      a[i * n + j] = v / l;
    }
  }
  return true;
}

double mean_nearest_distance(const Configuration& cfg) {
  double total = 0;
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    double best = 4;
    for (std::size_t j = 0; j < cfg.size(); ++j)
      if (i != j) best = std::min(best, chordal_distance(cfg[i], cfg[j]));
    total += best;
  }
  return total / cfg.size();
}

}  // namespace

TEST(HarmonicKernel, DiagonalAndZonalValues) {
  for (int L = 0; L <= 10; ++L) {
    HarmonicKernel k(2, L);
    EXPECT_EQ(k.rank(), static_cast<std::size_t>((L + 1) * (L + 1)));
    EXPECT_NEAR(k.zonal(1.0), (L + 1.0) * (L + 1.0), 1e-10 * (L + 1) * (L + 1));
    // K_L(t) = Σ_{ℓ≤L} (2ℓ+1) P_ℓ(t).
    for (double t : {-0.8, 0.1, 0.6}) {
      double expect = 0;
      for (int l = 0; l <= L; ++l) expect += (2 * l + 1) * std::legendre(l, t);
      EXPECT_NEAR(k.zonal(t), expect, 1e-11 * (L + 1) * (L + 1));
    }
  }
  HarmonicKernel k3(3, 4);
  EXPECT_EQ(k3.rank(), specfun::polynomial_space_dimension(3, 4));
  EXPECT_NEAR(k3.zonal(1.0), static_cast<double>(k3.rank()), 1e-10);
  EXPECT_THROW(HarmonicKernel(2, -1), DomainError);
}

TEST(HarmonicKernel, ReproducingProperty) {
  const HarmonicKernel k(2, 3);
  const auto rule = product_rule(8, 16);
  Rng rng(71);
  const auto pts = sample_uniform(2, 4, rng);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      double integral = 0;
      for (std::size_t q = 0; q < rule.points.size(); ++q)
        integral += rule.weights[q] * k.evaluate(pts[a], rule.points[q]).real() *
                    k.evaluate(rule.points[q], pts[b]).real();
      EXPECT_NEAR(integral, k.evaluate(pts[a], pts[b]).real(), 1e-11);
    }
}

TEST(SphericalKernel, MatchesBasisSumUpToGauge) {
  gen::for_all(72, 30, [](Rng& rng, std::size_t) {
    const std::size_t n = gen::pick_count(rng, 1, 40);
    const SphericalKernel k(n);
    const auto pts = sample_uniform(2, 3, rng);
    cplx closed[3][3], oracle[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        closed[i][j] = k.evaluate(pts[i], pts[j]);
        oracle[i][j] = spherical_oracle(n, pts[i], pts[j]);
        EXPECT_NEAR(std::abs(closed[i][j]), std::abs(oracle[i][j]),
                    1e-10 * static_cast<double>(n));
        EXPECT_NEAR(std::abs(closed[i][j] - std::conj(k.evaluate(pts[j], pts[i]))), 0.0,
                    1e-12 * static_cast<double>(n));
      }
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(oracle[i][i].real(), static_cast<double>(n), 1e-9 * n);
    const double scale = std::pow(static_cast<double>(n), 3);
    EXPECT_NEAR(std::abs(det3(closed) - det3(oracle)), 0.0, 1e-9 * scale);
  });
  EXPECT_THROW(SphericalKernel(0), DomainError);
  EXPECT_THROW(SphericalKernel(SphericalKernel::kMaxPoints + 1), DomainError);
}

TEST(Hkpv, ReturnsRankManyPointsDeterministically) {
  const HarmonicKernel hk(2, 4);
  const SphericalKernel sk(20);
  for (const ProjectionKernel* k : {static_cast<const ProjectionKernel*>(&hk),
                                    static_cast<const ProjectionKernel*>(&sk)}) {
    HkpvStats stats;
    const auto a = hkpv_sample(*k, 99, &stats);
    const auto b = hkpv_sample(*k, 99);
    ASSERT_EQ(a.size(), k->rank());
    EXPECT_EQ(a.label(), k->name());
    EXPECT_EQ(stats.accepted, k->rank());
    EXPECT_GE(stats.acceptance_rate(), 1.0 / static_cast<double>(k->rank()));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(a[i][c], b[i][c]);
  }
}

TEST(Hkpv, SampledGramIsPositiveSemidefinite) {
  Rng rng(73);
  for (int rep = 0; rep < 5; ++rep) {
    const HarmonicKernel hk(2, 6);
    const auto cfg = hkpv_sample(hk, rng);
    EXPECT_TRUE(gram_is_psd(hk, cfg, 1e-8 * hk.rank()));
    const SphericalKernel sk(64);
    const auto scfg = hkpv_sample(sk, rng);
    EXPECT_TRUE(gram_is_psd(sk, scfg, 1e-8 * sk.rank()));
  }
}

TEST(Hkpv, ConditionalDensityIntegratesToOne) {
  const HarmonicKernel hk(2, 3);
  const SphericalKernel sk(12);
  const auto rule = product_rule(24, 48);
  for (const ProjectionKernel* k : {static_cast<const ProjectionKernel*>(&hk),
                                    static_cast<const ProjectionKernel*>(&sk)}) {
    const auto full = hkpv_sample(*k, 5);
    for (std::size_t m : {std::size_t{0}, k->rank() / 2, k->rank() - 1}) {
      Configuration chosen(2);
      for (std::size_t i = 0; i < m; ++i) chosen.add(full[i]);
      double integral = 0;
      for (std::size_t q = 0; q < rule.points.size(); ++q) {
        const double p = conditional_density(*k, chosen, rule.points[q]);
        EXPECT_GE(p, -1e-10);
        integral += rule.weights[q] * p;
      }
      EXPECT_NEAR(integral, 1.0, 1e-9) << k->name() << " k=" << m;
    }
  }
}

TEST(Hkpv, IntensityIsUniform) {
  const HarmonicKernel hk(2, 2);
  const int bands = 10, samples = 10000;
  std::vector<int> counts(bands, 0);
  Rng rng(74);
  for (int r = 0; r < samples; ++r) {
    const auto cfg = hkpv_sample(hk, rng);
    for (std::size_t i = 0; i < cfg.size(); ++i) {
      const int b = std::min(bands - 1, static_cast<int>((cfg[i][2] + 1) / 2 * bands));
      ++counts[b];
    }
  }
  const double total = samples * 9.0, p = 1.0 / bands;
  for (int b = 0; b < bands; ++b)
    EXPECT_NEAR(counts[b], total * p, 3 * std::sqrt(total * p * (1 - p))) << b;
}

TEST(Hkpv, PointsRepelComparedWithUniform) {
  const HarmonicKernel hk(2, 1);
  const int samples = 5000;
  Rng rng(75);
  double dpp = 0, dpp2 = 0, uni = 0, uni2 = 0;
  for (int r = 0; r < samples; ++r) {
    const double a = mean_nearest_distance(hkpv_sample(hk, rng));
    const double b = mean_nearest_distance(sample_uniform(2, 4, rng));
    dpp += a;
    dpp2 += a * a;
    uni += b;
    uni2 += b * b;
  }
  const double ma = dpp / samples, mb = uni / samples;
  const double se = std::sqrt((dpp2 / samples - ma * ma + uni2 / samples - mb * mb) / samples);
  EXPECT_GT(ma - mb, 5 * se);
}

TEST(Hkpv, SphericalEnsembleEnergyMatchesClosedForm) {
  const SphericalKernel sk(16);
  const int samples = 5000;
  Rng rng(76);
  double sum = 0, sum2 = 0;
  for (int r = 0; r < samples; ++r) {
    const double e = energy::riesz_energy(hkpv_sample(sk, rng), 1.0);
    sum += e;
    sum2 += e * e;
  }
  const double mean = sum / samples;
  const double se = std::sqrt((sum2 / samples - mean * mean) / (samples - 1));
  EXPECT_NEAR(mean, closedforms::expected_energy_spherical(16, 1.0).value, 3 * se);
}
