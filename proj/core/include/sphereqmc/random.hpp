#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace sphereqmc {

/// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Derives an independent stream seed from a master seed and a key path.
/// Deterministic and order-sensitive: derive_seed(s, {a, b}) != derive_seed(s, {b, a}).
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys) noexcept;

/// Seeded random stream. The engine is std::mt19937_64 (output fixed by the
/// standard); the real-valued transforms are implemented here so that draws
/// are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1].
  double uniform_open_low();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal (Box-Muller, second variate cached).
  double normal();
  /// Standard complex Gaussian: E|z|² = 1.
  std::complex<double> complex_normal();

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace sphereqmc
