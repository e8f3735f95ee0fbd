#pragma once

// Special functions used throughout the library. Everything here is pure and
// thread-safe. Nothing depends on an external math library so that results are
// bit-stable across platforms that share IEEE double semantics.

#include <cstdint>
#include <span>

namespace sphereqmc::specfun {

/// Highest polynomial degree accepted by the recurrences below.
inline constexpr int kMaxDegree = 4096;

/// log Γ(x) for x > 0. Stirling series with upward shift for small x.
double log_gamma(double x);

/// Γ(x) for any real x that is not a non-positive integer.
double gamma(double x);

/// Γ(x) / Γ(x + a); requires x > 0 and x + a > 0.
double gamma_ratio(double x, double a);

/// Rising factorial (x)_n as a literal product, so the sign is exact.
double pochhammer(double x, int n);

/// Generalized binomial coefficient binom(x, k) = Γ(x+1)/(Γ(k+1)Γ(x-k+1)),
/// evaluated as a product for integer k ≥ 0.
double binomial(double x, int k);

struct JacobiParams {
  double alpha;
  double beta;

  /// Throws DomainError unless alpha > -1 and beta > -1.
  void validate() const;

  /// The (1+λ, λ) pair with λ = (d-2)/2 that indexes the harmonic kernel on S^d.
  static JacobiParams for_sphere(int d);
};

/// Jacobi polynomial P_n^{(α,β)}(t) by the three-term recurrence, standard
/// normalization P_n(1) = binom(n+α, n).
double jacobi_eval(const JacobiParams& params, int n, double t);

struct JacobiValue {
  double value;
  double derivative;
};

/// P_n^{(α,β)}(t) together with its derivative in t.
JacobiValue jacobi_eval_with_derivative(const JacobiParams& params, int n, double t);

/// Gegenbauer polynomial on S^d normalized so that P_ℓ^{(d)}(1) = 1.
double gegenbauer_eval(int d, int l, double t);

/// Writes P_0^{(d)}(t), ..., P_{out.size()-1}^{(d)}(t) into out.
void gegenbauer_all(int d, double t, std::span<double> out);

/// Bessel function of the first kind J_ν(t), ν ≥ 0, t ≥ 0.
double bessel_j(double nu, double t);

/// Riemann zeta for real s > 1.
double zeta(double s);

/// Dimension of the space of degree-ℓ spherical harmonics on S^d.
std::uint64_t harmonic_dimension(int d, int l);

/// Dimension d(L) of polynomials of degree ≤ L restricted to S^d.
std::uint64_t polynomial_space_dimension(int d, int L);

}  // namespace sphereqmc::specfun
