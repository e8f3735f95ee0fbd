#include "sphereqmc/energy.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sphereqmc/compensated_sum.hpp"
#include "sphereqmc/error.hpp"
#include "sphereqmc/specfun.hpp"

namespace sphereqmc::energy {
namespace {

[[noreturn]] void coincident(const PairwiseDistances& pd, std::size_t k) {
  // Invert the packed index.
  const std::size_t n = pd.size();
  std::size_t i = 0;
  std::size_t row = n - 1;
  while (k >= row) {
    k -= row;
    ++i;
    --row;
  }
  throw NumericalError("coincident points " + std::to_string(i) + " and " +
                       std::to_string(i + 1 + k) + " give an infinite energy");
}

// ψ(n) - ψ(n/2) for integer n ≥ 1, from ψ(x+1) = ψ(x) + 1/x and ψ(1/2) = ψ(1) - 2 log 2.
double digamma_difference(int n) {
  auto psi = [](double x) {
    // ψ(x) relative to ψ(1) for x ∈ ½ℕ.
    double base = 0.0;
    double start = 1.0;
    if (std::abs(x - std::floor(x)) > 0.25) {
      base = -2.0 * std::numbers::ln2;
      start = 0.5;
    }
    for (double y = start; y < x - 0.25; y += 1.0) base += 1.0 / y;
    return base;
  };
  return psi(n) - psi(0.5 * n);
}

}  // namespace

PairwiseDistances::PairwiseDistances(const Configuration& cfg) : n_(cfg.size()), d_(cfg.dim()) {
  sq_.reserve(n_ * (n_ > 0 ? n_ - 1 : 0) / 2);
  const std::size_t m = cfg.ambient();
  for (std::size_t i = 0; i < n_; ++i) {
    const auto xi = cfg[i];
    for (std::size_t j = i + 1; j < n_; ++j) {
      const auto xj = cfg[j];
      double acc = 0.0;
      for (std::size_t c = 0; c < m; ++c) {
        const double diff = xi[c] - xj[c];
        acc += diff * diff;
      }
      sq_.push_back(acc);
    }
  }
}

double PairwiseDistances::squared(std::size_t i, std::size_t j) const {
  if (i == j) return 0.0;
  if (i > j) std::swap(i, j);
  const std::size_t row_start = i * (2 * n_ - i - 1) / 2;
  return sq_[row_start + (j - i - 1)];
}

double riesz_energy(const PairwiseDistances& pd, double s) {
  if (!std::isfinite(s)) throw DomainError("Riesz exponent must be finite");
  if (s == 0.0) return log_energy(pd);
  const auto sq = pd.packed();
  const double half = -0.5 * s;
  CompensatedSum sum;
  for (std::size_t k = 0; k < sq.size(); ++k) {
    if (sq[k] == 0.0) {
      if (s > 0.0) coincident(pd, k);
      continue;
    }
    sum += std::pow(sq[k], half);
  }
  return 2.0 * sum.value();
}

double riesz_energy(const Configuration& cfg, double s) {
  return riesz_energy(PairwiseDistances(cfg), s);
}

double log_energy(const PairwiseDistances& pd) {
  const auto sq = pd.packed();
  CompensatedSum sum;
  for (std::size_t k = 0; k < sq.size(); ++k) {
    if (sq[k] == 0.0) coincident(pd, k);
    sum += -0.5 * std::log(sq[k]);
  }
  return 2.0 * sum.value();
}

double log_energy(const Configuration& cfg) { return log_energy(PairwiseDistances(cfg)); }

double continuous_energy(int d, double s) {
  if (d < 1) throw DomainError("sphere dimension must be >= 1");
  if (!(s < d)) {
    throw DomainError("continuous Riesz energy diverges for s >= d (s = " + std::to_string(s) +
                      ", d = " + std::to_string(d) + ")");
  }
  if (s == 0.0) return 0.5 * digamma_difference(d) - std::numbers::ln2;
  const double logv = (d - s - 1.0) * std::numbers::ln2 + specfun::log_gamma(0.5 * (d + 1)) -
                      0.5 * std::log(std::numbers::pi) - specfun::log_gamma(d - 0.5 * s);
  // Γ((d-s)/2) > 0 since s < d.
  return std::exp(logv + specfun::log_gamma(0.5 * (d - s)));
}

}  // namespace sphereqmc::energy
