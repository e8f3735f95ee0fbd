#pragma once

// Exact and asymptotic reference values: expected energies and expected wce²
// for the point processes, the harmonic-ensemble Jacobi integral, and the
// Bessel-integral limit of rescaled Jacobi integrals.

#include <functional>
#include <string>

#include "sphereqmc/wce.hpp"

namespace sphereqmc::closedforms {

enum class Kind { exact, asymptotic };

std::string to_string(Kind kind);

struct ExpectedValue {
  double value = 0.0;
  Kind kind = Kind::exact;
  std::string error_term;  // empty for exact values, e.g. "o(N^0.5)" otherwise
};

// --- spherical ensemble (S², exact) ----------------------------------------

/// E[E_s] = 2^{1-s}/(2-s) N² - Γ(N) Γ(1-s/2) / (2^s Γ(N+1-s/2)) N²
/// for s < 4, s ∉ {0, 2}.
ExpectedValue expected_energy_spherical(std::size_t n, double s);

/// E[wce²] = (2^{2s} Γ(s) / 4) Γ(N) / Γ(N+s) for s ∈ (1, 2).
ExpectedValue expected_wce2_spherical(std::size_t n, double s);

// --- elliptic polynomial zeros (S², asymptotic) ----------------------------

/// C(s) = 2^{-s} (s/2)(1 + s/2) Γ(1 - s/2) ζ(1 - s/2), supported for s < 0 only
/// (ζ is needed at arguments > 1).
double elliptic_energy_constant(double s);

/// E[E_s] = 2^{1-s}/(2-s) N² + C(s) N^{1+s/2} + o(N^{1+s/2}) for s < 0,
/// with s = -2 given as 2N² - 8ζ(3)/N + o(1/N). s = 0 returns the exact
/// logarithmic energy. Other s raise DomainError.
ExpectedValue expected_energy_elliptic(std::size_t n, double s);

/// E[E_0] = (1/2 - log 2) N² - (1/2) N log N - (1/2 - log 2) N.
ExpectedValue expected_log_energy_elliptic(std::size_t n);

// --- i.i.d. uniform points -------------------------------------------------

/// E[E_s] = N(N-1) V_s(S^d).
ExpectedValue expected_energy_uniform(int d, std::size_t n, double s);

/// E[wce²] = (𝒬_M(1) + (-1)^M V_{d-2s}) / N, i.e. Σ_{ℓ≥1} |α_ℓ| h_ℓ / N.
ExpectedValue expected_wce2_uniform(std::size_t n, const wce::SobolevOrder& so);

// --- wce² assembled from expected energies (S²) ----------------------------

/// Expected energy as a function of the Riesz exponent.
using EnergyOracle = std::function<ExpectedValue(double)>;

/// Takes the expectation of the energy form of wce² on S². Uses
///   Σ_{i,j} P_1(x_i·x_j) = N² - E_{-2}/2,
///   Σ_{i,j} P_2(x_i·x_j) = N² - (3/2) E_{-2} + (3/8) E_{-4},
/// so only E_{2-2s}, E_{-2} and E_{-4} are requested. Exact when every input is.
ExpectedValue expected_wce2_assembled(std::size_t n, const wce::SobolevOrder& so,
                                      const EnergyOracle& energy);

ExpectedValue expected_wce2_spherical_assembled(std::size_t n, const wce::SobolevOrder& so);
ExpectedValue expected_wce2_elliptic(std::size_t n, const wce::SobolevOrder& so);

// --- harmonic ensemble -----------------------------------------------------

/// E[wce²] = c_d 2^{s-d/2} / P_L(1)² ∫ P_L(t)² (1-t)^{s-1} (1+t)^{d/2-1} dt,
/// P_L = P_L^{(1+λ,λ)}, c_d = Γ((d+1)/2) / (√π Γ(d/2)), for s ∈ (d/2, d/2+1).
/// Gauss-Jacobi with `nodes` points (0 selects 4L + 64); exact once nodes > L.
ExpectedValue expected_wce2_harmonic_quadrature(int d, int degree, double s, int nodes = 0);

/// L^{-a} ∫ P_L^{(1+λ,λ)}(t)² (1-t)^{λ-a/2} (1+t)^λ dt.
double rescaled_jacobi_integral(int d, double a, int degree);

/// 2^{a/2+d} ∫_0^∞ J_{d/2}(t)² t^{-1-a} dt for -1 < a < d: power series on
/// [0, 1], composite Gauss-Legendre on [1, T], asymptotic tail beyond T.
double rescaled_jacobi_limit(int d, double a);

}  // namespace sphereqmc::closedforms
