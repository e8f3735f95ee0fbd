#include "sphereqmc/wce.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "sphereqmc/compensated_sum.hpp"
#include "sphereqmc/error.hpp"
#include "sphereqmc/specfun.hpp"

namespace sphereqmc::wce {
namespace {

constexpr double kClampTolerance = 1e-10;
constexpr double kRoundingAllowance = 1e-13;
constexpr std::size_t kTailFactor = 64;

double boundary_distance(int d, double s) {
  const double x = s - 0.5 * d;
  return std::abs(x - std::round(x));
}

double q_eval(const std::vector<double>& q, int d, double t) {
  if (q.empty()) return 0.0;
  double acc = q[0] * t;
  if (q.size() > 1) acc += q[1] * (((d + 1.0) * t * t - 1.0) / d);
  return acc;
}

}  // namespace

SobolevOrder::SobolevOrder(int d, double s) : d_(d), s_(s) {
  if (d < 1) throw DomainError("sphere dimension must be >= 1");
  if (!std::isfinite(s) || !(s > 0.5 * d)) {
    throw DomainError("Sobolev order must satisfy s > d/2 (s = " + std::to_string(s) +
                      ", d = " + std::to_string(d) + ")");
  }
  if (boundary_distance(d, s) < kBoundaryTolerance) {
    throw DomainError("s - d/2 is an integer (s = " + std::to_string(s) +
                      "); the energy formulas are undefined there");
  }
  m_ = static_cast<int>(std::floor(s - 0.5 * d));
  if (m_ > kMaxM) {
    throw DomainError("s - d/2 >= 3 is not supported (M = " + std::to_string(m_) + ")");
  }
}

bool SobolevOrder::admissible(int d, double s) {
  return d >= 1 && std::isfinite(s) && s > 0.5 * d && boundary_distance(d, s) >= kBoundaryTolerance &&
         std::floor(s - 0.5 * d) <= kMaxM;
}

AlphaCoefficients alpha_coefficients(const SobolevOrder& so, std::size_t lmax) {
  if (lmax < 1) throw DomainError("alpha_coefficients needs lmax >= 1");
  AlphaCoefficients out{so.d(), so.s(), so.M(), {}};
  out.values.reserve(lmax);
  const double half_d = 0.5 * so.d();
  const double a = half_d - so.s();
  const double b = half_d + so.s();
  const double sign = (so.M() % 2 == 0) ? -1.0 : 1.0;  // (-1)^{M+1}
  double value = sign * energy::continuous_energy(so.d(), so.riesz_exponent());
  // (a)_ℓ/(b)_ℓ built factor by factor; the direct products overflow long before ℓmax.
  for (std::size_t l = 1; l <= lmax; ++l) {
    const double k = static_cast<double>(l - 1);
    value *= (a + k) / (b + k);
    out.values.push_back(value);
  }
  return out;
}

std::vector<double> q_coefficients(const SobolevOrder& so) {
  const int m = so.M();
  std::vector<double> q;
  if (m == 0) return q;
  const auto alpha = alpha_coefficients(so, static_cast<std::size_t>(m));
  for (int l = 1; l <= m; ++l) {
    const double flip = ((m + 1 - l) % 2 == 0) ? 0.0 : -2.0;  // (-1)^{M+1-ℓ} - 1
    const double h = static_cast<double>(specfun::harmonic_dimension(so.d(), l));
    q.push_back(flip * alpha(static_cast<std::size_t>(l)) * h);
  }
  return q;
}

double q_polynomial(const SobolevOrder& so, double t) {
  return q_eval(q_coefficients(so), so.d(), t);
}

double wce_squared(const energy::PairwiseDistances& pd, const SobolevOrder& so) {
  if (pd.dim() != so.d()) throw DomainError("configuration and Sobolev order differ in dimension");
  const std::size_t n = pd.size();
  if (n == 0) throw DomainError("wce of an empty configuration");
  const double nd = static_cast<double>(n);
  const double n2 = nd * nd;

  const double e = energy::riesz_energy(pd, so.riesz_exponent());
  const double v = energy::continuous_energy(so.d(), so.riesz_exponent());
  const double base = e - v * n2;

  double qsum = 0.0;
  const auto q = q_coefficients(so);
  if (!q.empty()) {
    CompensatedSum off;
    for (double sq : pd.packed()) off += q_eval(q, so.d(), 1.0 - 0.5 * sq);
    qsum = nd * q_eval(q, so.d(), 1.0) + 2.0 * off.value();
  }
  const double sign = (so.M() % 2 == 0) ? -1.0 : 1.0;
  const double raw = qsum + sign * base;
  if (raw >= 0.0) return raw / n2;
  const double scale = 1.0 + std::abs(e) + v * n2 + std::abs(qsum);
  if (-raw <= kClampTolerance * scale) return 0.0;
  throw NumericalError("wce^2 came out negative (" + std::to_string(raw / n2) +
                       ") beyond rounding tolerance at s = " + std::to_string(so.s()));
}

double wce_squared(const Configuration& cfg, const SobolevOrder& so) {
  return wce_squared(energy::PairwiseDistances(cfg), so);
}

SpectralWce wce_squared_spectral(const Configuration& cfg, const SobolevOrder& so,
                                 std::size_t lmax) {
  if (cfg.dim() != so.d()) throw DomainError("configuration and Sobolev order differ in dimension");
  if (lmax < 1 || lmax > static_cast<std::size_t>(specfun::kMaxDegree)) {
    throw DomainError("spectral degree must lie in [1, " + std::to_string(specfun::kMaxDegree) + "]");
  }
  const std::size_t n = cfg.size();
  if (n == 0) throw DomainError("wce of an empty configuration");
  const int d = so.d();

  // S_ℓ = Σ_{i,j} P_ℓ(x_i·x_j).
  std::vector<double> sums(lmax + 1, static_cast<double>(n));
  std::vector<double> p(lmax + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double t = std::clamp(dot(cfg[i], cfg[j]), -1.0, 1.0);
      specfun::gegenbauer_all(d, t, p);
      for (std::size_t l = 1; l <= lmax; ++l) sums[l] += 2.0 * p[l];
    }
  }

  const auto alpha = alpha_coefficients(so, lmax);
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  CompensatedSum value;
  double mass = 0.0;  // Σ_{ℓ≤ℓmax} c_ℓ h_ℓ
  double h = 1.0;
  for (std::size_t l = 1; l <= lmax; ++l) {
    // h_ℓ / h_{ℓ-1} = (2ℓ+d-1)(ℓ+d-2) / ((2ℓ+d-3) ℓ), with h_1 = d + 1.
    const double ld = static_cast<double>(l);
    h = (l == 1) ? d + 1.0 : h * (2.0 * ld + d - 1.0) * (ld + d - 2.0) / ((2.0 * ld + d - 3.0) * ld);
    const double ch = std::abs(alpha(l)) * h;
    mass += ch;
    value += ch * sums[l] / n2;
  }

  // Tail: |S_ℓ| ≤ N², so Σ_{ℓ>ℓmax} c_ℓ h_ℓ bounds the truncation error. Sum it
  // explicitly to kTailFactor·ℓmax, then close with the integral of the
  // ℓ^{-(2s-d+1)} envelope.
  double c = std::abs(alpha(lmax));
  const double a = 0.5 * d - so.s();
  const double b = 0.5 * d + so.s();
  CompensatedSum tail;
  double term = 0.0;
  const std::size_t last = kTailFactor * lmax;
  for (std::size_t l = lmax + 1; l <= last; ++l) {
    const double ld = static_cast<double>(l);
    c *= std::abs((a + ld - 1.0) / (b + ld - 1.0));
    h *= (2.0 * ld + d - 1.0) * (ld + d - 2.0) / ((2.0 * ld + d - 3.0) * ld);
    term = c * h;
    tail += term;
  }
  const double p_decay = 2.0 * so.s() - d + 1.0;
  const double remainder = 1.1 * term * static_cast<double>(last) / (p_decay - 1.0);
  const double rounding =
      kRoundingAllowance * (energy::continuous_energy(d, so.riesz_exponent()) + mass);
  return {value.value(), tail.value() + remainder + rounding};
}

double stolarsky_constant(int d) {
  if (d < 1) throw DomainError("sphere dimension must be >= 1");
  return d * std::sqrt(std::numbers::pi) *
         std::exp(specfun::log_gamma(0.5 * d) - specfun::log_gamma(0.5 * (d + 1)));
}

double discrepancy_l2_stolarsky(const Configuration& cfg) {
  const SobolevOrder so(cfg.dim(), 0.5 * (cfg.dim() + 1));
  return std::sqrt(wce_squared(cfg, so) / stolarsky_constant(cfg.dim()));
}

}  // namespace sphereqmc::wce
