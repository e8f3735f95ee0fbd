#pragma once

// Elliptic (Kostlan-Shub-Smale) random polynomials and their zeros on S².

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "sphereqmc/sphere.hpp"

namespace sphereqmc::polyzeros {

inline constexpr std::size_t kMaxDegree = 1024;

/// p(z) = Σ_{n=0}^N a_n √binom(N, n) z^n with a_n i.i.d. standard complex
/// Gaussians. coeffs[n] is the coefficient of z^n.
struct EllipticPolynomial {
  std::size_t degree = 0;
  std::vector<std::complex<double>> coeffs;
  std::uint64_t seed = 0;
};

struct RootSet {
  std::vector<std::complex<double>> roots;
  /// max over roots of |p(z)| / Σ |c_n| |z|^n (evaluated in 1/z for |z| > 1).
  double residual = 0.0;
  int iterations = 0;
  int restarts = 0;
};

EllipticPolynomial sample_elliptic(std::size_t degree, std::uint64_t seed);

/// Aberth-Ehrlich simultaneous iteration followed by one Newton step per root.
/// `coeffs` are ordered by increasing power; the leading one must be nonzero.
/// Throws NumericalError if the residual stays above 1e-8 after restarts.
RootSet find_roots(std::span<const std::complex<double>> coeffs);
inline RootSet find_roots(const EllipticPolynomial& p) { return find_roots(p.coeffs); }

/// Zeros of sample_elliptic(N, seed) mapped to S² by the inverse
/// stereographic projection; labeled "elliptic".
Configuration zeros_on_sphere(std::size_t degree, std::uint64_t seed);

}  // namespace sphereqmc::polyzeros
