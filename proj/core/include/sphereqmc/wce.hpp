#pragma once

// Worst-case integration error in the Sobolev space H^s(S^d), evaluated from
// Riesz energies or from a truncated spectral sum, and spherical-cap
// discrepancies.

#include <cstdint>
#include <vector>

#include "sphereqmc/energy.hpp"
#include "sphereqmc/sphere.hpp"

namespace sphereqmc::wce {

/// Smoothness s > d/2 with M = ⌊s - d/2⌋. Values with s - d/2 within 1e-9 of
/// an integer are rejected, as are M ≥ 3.
class SobolevOrder {
 public:
  static constexpr double kBoundaryTolerance = 1e-9;
  static constexpr int kMaxM = 2;

  SobolevOrder(int d, double s);

  int d() const { return d_; }
  double s() const { return s_; }
  int M() const { return m_; }
  /// Riesz exponent d - 2s of the energy that carries the wce (negative).
  double riesz_exponent() const { return d_ - 2.0 * s_; }

  /// True when (d, s) can be used to build an order.
  static bool admissible(int d, double s);

 private:
  int d_;
  double s_;
  int m_;
};

/// α_ℓ = V_{d-2s} (-1)^{M+1} (d/2 - s)_ℓ / (d/2 + s)_ℓ for ℓ = 1..ℓmax.
/// For d = 2 this is V_{2-2s} (-1)^{M+1} (1-s)_ℓ / (1+s)_ℓ.
struct AlphaCoefficients {
  int d;
  double s;
  int M;
  std::vector<double> values;  // values[ℓ-1] = α_ℓ

  std::size_t size() const { return values.size(); }
  double operator()(std::size_t l) const { return values.at(l - 1); }
};

AlphaCoefficients alpha_coefficients(const SobolevOrder& so, std::size_t lmax);

/// 𝒬_M(t) = Σ_{ℓ=1}^M ((-1)^{M+1-ℓ} - 1) α_ℓ h_ℓ P_ℓ(t); zero when M = 0.
double q_polynomial(const SobolevOrder& so, double t);
/// Coefficients of 𝒬_M in the P_ℓ basis, ℓ = 1..M.
std::vector<double> q_coefficients(const SobolevOrder& so);

/// wce² = (1/N²) [Σ_{i,j} 𝒬_M(x_i·x_j) + (-1)^{M+1} (E_{d-2s} - V_{d-2s} N²)].
/// Negative results within 1e-10 (1 + |E| + V N²)/N² are clamped to zero;
/// anything more negative raises NumericalError.
double wce_squared(const Configuration& cfg, const SobolevOrder& so);
double wce_squared(const energy::PairwiseDistances& pd, const SobolevOrder& so);

struct SpectralWce {
  double value;
  /// Bound on |value - wce²|: the truncated tail Σ_{ℓ>ℓmax} c_ℓ h_ℓ plus a
  /// rounding allowance for both evaluation routes.
  double tail_bound;
};

/// Σ_{ℓ=1}^{ℓmax} |α_ℓ| h_ℓ (1/N²) Σ_{i,j} P_ℓ(x_i·x_j).
SpectralWce wce_squared_spectral(const Configuration& cfg, const SobolevOrder& so,
                                 std::size_t lmax = 400);

/// d √π Γ(d/2) / Γ((d+1)/2); equals 4 on S².
double stolarsky_constant(int d);

/// D_2 from the invariance principle: wce at s = (d+1)/2 over √stolarsky_constant.
double discrepancy_l2_stolarsky(const Configuration& cfg);

/// Centers: a fixed rotation of the product rule on S² (Gauss-Legendre in
/// cos θ, equispaced φ) with about n_centers nodes. Radii: n_radii Gauss-Legendre nodes in u = cos r,
/// or, when n_radii = 0, the exact integral over r of the piecewise
/// quadratic integrand.
struct CapGrid {
  std::size_t n_centers = 2048;
  std::size_t n_radii = 0;
};

double discrepancy_l2_quadrature(const Configuration& cfg, CapGrid grid = {});

struct SampledDiscrepancy {
  double value;
  bool lower_bound = true;       // a sampled sup never exceeds the true sup
  std::size_t centers = 0;
};

/// max over caps centered at n_caps random points, at every data point and its
/// antipode, of |#(X ∩ D(x, r))/N - σ(D(x, r))|, taken over all radii r.
SampledDiscrepancy discrepancy_linf_sampled(const Configuration& cfg, std::size_t n_caps,
                                            std::uint64_t seed);

}  // namespace sphereqmc::wce
