#pragma once

// Projection determinantal point processes on the sphere and their exact
// sequential sampler.

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <string>

#include "sphereqmc/sphere.hpp"
#include "sphereqmc/specfun.hpp"

namespace sphereqmc {
class Rng;
}

namespace sphereqmc::detproc {

/// Hermitian rank-N projection kernel with respect to σ_d.
class ProjectionKernel {
 public:
  virtual ~ProjectionKernel() = default;

  virtual int dim() const = 0;
  virtual std::size_t rank() const = 0;
  virtual std::complex<double> evaluate(std::span<const double> x,
                                        std::span<const double> y) const = 0;
  virtual double diagonal(std::span<const double> x) const { return evaluate(x, x).real(); }
  /// sup_x K(x, x).
  virtual double diagonal_bound() const = 0;
  /// Provenance label given to sampled configurations.
  virtual std::string name() const = 0;
};

/// Reproducing kernel of polynomials of degree ≤ L on S^d:
/// K_L(x,y) = d(L) / binom(L + d/2, L) · P_L^{(1+λ,λ)}(⟨x,y⟩), λ = (d-2)/2.
class HarmonicKernel final : public ProjectionKernel {
 public:
  HarmonicKernel(int d, int degree);

  int dim() const override { return d_; }
  int degree() const { return degree_; }
  std::size_t rank() const override { return rank_; }
  std::complex<double> evaluate(std::span<const double> x,
                                std::span<const double> y) const override;
  double diagonal(std::span<const double>) const override { return static_cast<double>(rank_); }
  double diagonal_bound() const override { return static_cast<double>(rank_); }
  std::string name() const override { return "harmonic"; }

  /// Kernel as a function of the inner product t = ⟨x, y⟩.
  double zonal(double t) const;

 private:
  int d_;
  int degree_;
  std::size_t rank_;
  specfun::JacobiParams params_;
  double scale_;
};

/// Spherical ensemble with n points on S²: the planar kernel (1 + z w̄)^{n-1}
/// against n / (π (1+|z|²)^{n+1}) dm(z), carried to the sphere through the
/// inverse stereographic map Φ. On the sphere
///   K(x, y) = n · (a(x)ᴴ a(y))^{n-1},  a(x) = (1, z) / √(1+|z|²),
/// up to a unimodular gauge factor that leaves every determinant unchanged.
/// The diagonal is the constant n.
class SphericalKernel final : public ProjectionKernel {
 public:
  static constexpr std::size_t kMaxPoints = 2048;

  explicit SphericalKernel(std::size_t n);

  int dim() const override { return 2; }
  std::size_t rank() const override { return n_; }
  std::complex<double> evaluate(std::span<const double> x,
                                std::span<const double> y) const override;
  double diagonal(std::span<const double>) const override { return static_cast<double>(n_); }
  double diagonal_bound() const override { return static_cast<double>(n_); }
  std::string name() const override { return "spherical"; }

  /// Unit spinor a(x) with a gauge chosen for stability in each hemisphere.
  static std::array<std::complex<double>, 2> spinor(std::span<const double> x);

 private:
  std::size_t n_;
};

std::unique_ptr<ProjectionKernel> harmonic_kernel(int d, int degree);
std::unique_ptr<ProjectionKernel> spherical_kernel(std::size_t n);

struct HkpvStats {
  std::size_t proposals = 0;
  std::size_t accepted = 0;
  std::size_t resamples = 0;          // accepted points rejected for ill-conditioning
  std::size_t refactorizations = 0;

  double acceptance_rate() const {
    return proposals ? static_cast<double>(accepted) / static_cast<double>(proposals) : 0.0;
  }
};

/// Exact sample of the projection DPP with kernel K. Point k+1 is drawn from
///   p_k(x) = [K(x,x) - v(x)ᴴ G_k⁻¹ v(x)] / (N - k)
/// by rejection from σ_d with envelope diagonal_bound / (N - k). G_k is kept
/// as an incrementally extended Cholesky factor, refactorized every 32 points.
Configuration hkpv_sample(const ProjectionKernel& kernel, Rng& rng, HkpvStats* stats = nullptr);
Configuration hkpv_sample(const ProjectionKernel& kernel, std::uint64_t seed,
                          HkpvStats* stats = nullptr);

/// Conditional density p_k(x) given the points already in `chosen`
/// (normalized to integrate to one against σ_d). Exposed for testing.
double conditional_density(const ProjectionKernel& kernel, const Configuration& chosen,
                           std::span<const double> x);

}  // namespace sphereqmc::detproc
