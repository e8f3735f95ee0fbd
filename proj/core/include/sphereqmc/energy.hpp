#pragma once

// Discrete Riesz and logarithmic energies of point sets and the continuous
// energies of σ_d.

#include <span>
#include <vector>

#include "sphereqmc/sphere.hpp"

namespace sphereqmc::energy {

/// Squared chordal distances |x_i - x_j|² for i < j, packed row by row.
/// Computed once per configuration and shared by every energy evaluation.
class PairwiseDistances {
 public:
  explicit PairwiseDistances(const Configuration& cfg);

  std::size_t size() const { return n_; }
  int dim() const { return d_; }
  std::size_t pairs() const { return sq_.size(); }
  /// Squared distance for i < j.
  double squared(std::size_t i, std::size_t j) const;
  std::span<const double> packed() const { return sq_; }

 private:
  std::size_t n_;
  int d_;
  std::vector<double> sq_;
};

/// E_s(X) = Σ_{i≠j} f_s(|x_i - x_j|), f_s(r) = r^{-s} for s ≠ 0 and
/// f_0(r) = -log r. Coincident points with s ≥ 0 raise NumericalError naming
/// the pair; for s < 0 they contribute zero.
double riesz_energy(const Configuration& cfg, double s);
double riesz_energy(const PairwiseDistances& pd, double s);

/// Σ_{i≠j} -log |x_i - x_j|.
double log_energy(const Configuration& cfg);
double log_energy(const PairwiseDistances& pd);

/// V_s(S^d) = ∬ f_s(|x-y|) dσ_d dσ_d for s < d:
///   V_s = 2^{d-s-1} Γ((d+1)/2) Γ((d-s)/2) / (√π Γ(d - s/2)),
/// and V_0 = ½(ψ(d) - ψ(d/2)) - log 2.
double continuous_energy(int d, double s);

}  // namespace sphereqmc::energy
