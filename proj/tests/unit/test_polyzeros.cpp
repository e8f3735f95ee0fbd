#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "sphereqmc/closedforms.hpp"
#include "sphereqmc/energy.hpp"
#include "sphereqmc/error.hpp"
#include "sphereqmc/polyzeros.hpp"
#include "support/generators.hpp"

using namespace sphereqmc;
using namespace sphereqmc::polyzeros;
using cplx = std::complex<double>;

namespace {

// Coefficients of Π (z - r_k), increasing powers.
std::vector<cplx> expand(const std::vector<cplx>& roots) {
  std::vector<cplx> c{1.0};
  for (const cplx& r : roots) {
    std::vector<cplx> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return c;
}

double chordal(cplx a, cplx b) {
  return chordal_distance(inverse_stereographic(a).coords(), inverse_stereographic(b).coords());
}

// Upper χ² quantile by Wilson-Hilferty.
double chi2_quantile(double k, double z) {
  const double h = 2.0 / (9.0 * k);
  return k * std::pow(1 - h + z * std::sqrt(h), 3);
}

}  // namespace

TEST(Polyzeros, QuadraticRoots) {
  const std::vector<cplx> c{-1.0, 0.0, 1.0};
  auto rs = find_roots(c).roots;
  std::sort(rs.begin(), rs.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  ASSERT_EQ(rs.size(), 2u);
  EXPECT_NEAR(std::abs(rs[0] + 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(rs[1] - 1.0), 0.0, 1e-12);
}

TEST(Polyzeros, RootsAtZeroAndLeadingCoefficient) {
  const std::vector<cplx> c{0.0, 0.0, 2.0, 2.0};  // 2z²(z+1)
  const auto rs = find_roots(c).roots;
  ASSERT_EQ(rs.size(), 3u);
  int zeros = 0;
  for (const cplx& r : rs) zeros += std::abs(r) < 1e-14;
  EXPECT_EQ(zeros, 2);
  EXPECT_THROW(find_roots(std::vector<cplx>{1.0, 0.0}), DomainError);
  EXPECT_THROW(find_roots(std::vector<cplx>{1.0}), DomainError);
}

TEST(Polyzeros, VietaIdentities) {
  const auto p = sample_elliptic(32, 81);
  const auto rs = find_roots(p);
  ASSERT_EQ(rs.roots.size(), 32u);
  EXPECT_LT(rs.residual, 1e-8);
  cplx sum = 0, prod = 1;
  for (const cplx& r : rs.roots) {
    sum += r;
    prod *= r;
  }
  const cplx esum = -p.coeffs[31] / p.coeffs[32];
  const cplx eprod = p.coeffs[0] / p.coeffs[32];  // (-1)^32 = 1
  EXPECT_NEAR(std::abs(sum - esum) / std::abs(esum), 0.0, 1e-6);
  EXPECT_NEAR(std::abs(prod - eprod) / std::abs(eprod), 0.0, 1e-6);
}

// Planted roots are jittered (one per equal-area cell) so they stay separated;
// i.i.d. roots occasionally nearly collide and the expanded coefficients then
// fix the roots only to about 1e-7.
TEST(Polyzeros, RecoversPlantedRootsProperty) {
  gen::for_all(82, 30, [](Rng& rng, std::size_t) {
    const std::size_t n = gen::pick_count(rng, 2, 128);
    const auto pts = sample_jittered(build_equal_area_partition(n), rng);
    std::vector<cplx> planted;
    for (std::size_t i = 0; i < n; ++i) planted.push_back(stereographic(pts[i]));
    const auto found = find_roots(expand(planted)).roots;
    ASSERT_EQ(found.size(), n);
    std::vector<bool> used(n, false);
    for (const cplx& r : planted) {
      double best = 4;
      std::size_t arg = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (!used[j] && chordal(r, found[j]) < best) best = chordal(r, found[j]), arg = j;
      used[arg] = true;
      EXPECT_LT(best, 1e-8) << "N=" << n;
    }
  });
}

TEST(Polyzeros, SamplingIsDeterministic) {
  const auto a = zeros_on_sphere(40, 7), b = zeros_on_sphere(40, 7), c = zeros_on_sphere(40, 8);
  ASSERT_EQ(a.size(), 40u);
  EXPECT_EQ(a.label(), "elliptic");
  bool differs = false;
  for (std::size_t i = 0; i < 40; ++i) {
    for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(a[i][k], b[i][k]);
    differs |= a[i][0] != c[i][0];
  }
  EXPECT_TRUE(differs);
  EXPECT_EQ(sample_elliptic(1, 3).coeffs.size(), 2u);
  EXPECT_THROW(sample_elliptic(0, 3), DomainError);
  EXPECT_THROW(sample_elliptic(kMaxDegree + 1, 3), DomainError);
  const auto two = zeros_on_sphere(2, 11);
  EXPECT_GT(chordal_distance(two[0], two[1]), 0.0);
}

TEST(Polyzeros, CoefficientVariancesMatchBinomials) {
  const std::size_t n = 64, draws = 2000;
  std::vector<double> mean(n + 1, 0.0);
  for (std::size_t r = 0; r < draws; ++r) {
    const auto p = sample_elliptic(n, derive_seed(83, {r}));
    for (std::size_t k = 0; k <= n; ++k) {
      const double binom = std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                                    std::lgamma(n - k + 1.0));
      mean[k] += std::norm(p.coeffs[k]) / binom / draws;
    }
  }
  // |a_k|² ~ Exp(1): each mean has variance 1/draws.
  double stat = 0;
  for (double m : mean) stat += draws * (m - 1) * (m - 1);
  EXPECT_LT(stat, chi2_quantile(n + 1.0, 2.326));
}

TEST(Polyzeros, IntensityIsUniform) {
  const int bands = 10, reps = 2000;
  const std::size_t n = 16;
  std::vector<int> counts(bands, 0);
  for (int r = 0; r < reps; ++r) {
    const auto cfg = zeros_on_sphere(n, derive_seed(84, {static_cast<std::uint64_t>(r)}));
    for (std::size_t i = 0; i < n; ++i)
      ++counts[std::min(bands - 1, static_cast<int>((cfg[i][2] + 1) / 2 * bands))];
  }
  const double total = reps * static_cast<double>(n), p = 1.0 / bands;
  for (int b = 0; b < bands; ++b)
    EXPECT_NEAR(counts[b], total * p, 3 * std::sqrt(total * p * (1 - p))) << b;
}

TEST(Polyzeros, ExpectedEnergies) {
  struct Case {
    std::size_t n;
    double s;
    int reps;
  };
  for (const Case c : {Case{16, 0.0, 1000}, Case{64, -2.0, 2000}}) {
    double sum = 0, sum2 = 0;
    for (int r = 0; r < c.reps; ++r) {
      const auto cfg = zeros_on_sphere(c.n, derive_seed(85, {c.n, static_cast<std::uint64_t>(r)}));
      const double e = energy::riesz_energy(cfg, c.s);
      sum += e;
      sum2 += e * e;
    }
    const double mean = sum / c.reps;
    const double se = std::sqrt((sum2 / c.reps - mean * mean) / (c.reps - 1));
    const double expect = closedforms::expected_energy_elliptic(c.n, c.s).value;
    // The s = -2 reference drops an o(1/N) term; allow for it on top of 3 SE.
    const double slack = c.s == 0.0 ? 0.0 : 1.0 / c.n;
    EXPECT_NEAR(mean, expect, 3 * se + slack) << "s=" << c.s;
  }
}
