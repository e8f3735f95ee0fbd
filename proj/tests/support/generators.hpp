#pragma once

// Seeded generators for property tests.

#include <cmath>
#include <cstdint>
#include <vector>

#include "sphereqmc/random.hpp"
#include "sphereqmc/sphere.hpp"
#include "sphereqmc/wce.hpp"

namespace sphereqmc::gen {

inline std::size_t pick_count(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.uniform() * static_cast<double>(hi - lo + 1));
}

template <class T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[static_cast<std::size_t>(rng.uniform() * static_cast<double>(items.size()))];
}

/// Uniform points, occasionally with a cluster of near-duplicates or an
/// antipodal pair mixed in, to reach the awkward corners of distance sums.
inline Configuration random_configuration(Rng& rng, int d, std::size_t n) {
  Configuration cfg = sample_uniform(d, n, rng);
  const double mode = rng.uniform();
  if (n >= 2 && mode < 0.2) {
    Configuration out(d, "perturbed");
    std::vector<double> x(cfg.ambient());
    for (std::size_t i = 0; i < n; ++i) {
      const auto src = cfg[i < n / 2 ? i : i - n / 2];
      for (std::size_t c = 0; c < x.size(); ++c) x[c] = src[c] + 1e-4 * rng.normal();
      out.add(x);
    }
    return out;
  }
  if (n >= 2 && mode < 0.3) {
    Configuration out(d, "antipodal");
    std::vector<double> x(cfg.ambient());
    for (std::size_t i = 0; i < n; ++i) {
      const auto src = cfg[i / 2];
      const double sign = (i % 2 == 0) ? 1.0 : -1.0;
      for (std::size_t c = 0; c < x.size(); ++c) x[c] = sign * src[c];
      out.add(x);
    }
    return out;
  }
  return cfg;
}

/// Admissible Sobolev order on S^d with M ≤ 2, away from the boundaries.
inline double random_order(Rng& rng, int d) {
  const int m = static_cast<int>(rng.uniform() * 3.0);
  return 0.5 * d + m + 0.05 + 0.9 * rng.uniform();
}

/// Runs `property(rng, case_index)` for `cases` independently seeded cases.
template <class F>
void for_all(std::uint64_t seed, std::size_t cases, F&& property) {
  for (std::size_t k = 0; k < cases; ++k) {
    Rng rng(derive_seed(seed, {k}));
    property(rng, k);
  }
}

}  // namespace sphereqmc::gen
