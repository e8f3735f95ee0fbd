#include "sphereqmc/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sphereqmc/error.hpp"
#include "sphereqmc/quadrature.hpp"
#include "sphereqmc/random.hpp"
#include "sphereqmc/specfun.hpp"

namespace sphereqmc {
namespace {

void normalize(std::span<double> v) {
  double nrm2 = 0.0;
  for (double c : v) nrm2 += c * c;
  if (!(nrm2 > 0.0) || !std::isfinite(nrm2)) {
    throw DomainError("cannot normalize a zero or non-finite vector onto the sphere");
  }
  // Leave vectors that are already unit length to rounding alone, so stored
  // points survive a write/read cycle bit for bit.
  if (std::abs(nrm2 - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon()) return;
  const double inv = 1.0 / std::sqrt(nrm2);
  for (double& c : v) c *= inv;
}

}  // namespace

SpherePoint::SpherePoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) throw DomainError("sphere points need at least two coordinates");
  normalize(coords_);
}

SpherePoint SpherePoint::north_pole(int d) {
  std::vector<double> c(static_cast<std::size_t>(d) + 1, 0.0);
  c.back() = 1.0;
  return SpherePoint(std::move(c));
}

SpherePoint SpherePoint::south_pole(int d) {
  std::vector<double> c(static_cast<std::size_t>(d) + 1, 0.0);
  c.back() = -1.0;
  return SpherePoint(std::move(c));
}

Configuration::Configuration(int d, std::string label, std::uint64_t seed)
    : d_(d), label_(std::move(label)), seed_(seed) {
  if (d < 1) throw DomainError("sphere dimension must be >= 1");
}

void Configuration::add(const SpherePoint& p) {
  if (p.dim() != d_) throw DomainError("point dimension does not match configuration");
  data_.insert(data_.end(), p.coords().begin(), p.coords().end());
}

void Configuration::add(std::span<const double> coords) {
  if (coords.size() != ambient()) throw DomainError("point dimension does not match configuration");
  const std::size_t off = data_.size();
  data_.insert(data_.end(), coords.begin(), coords.end());
  normalize(std::span<double>(data_.data() + off, ambient()));
}

Configuration Configuration::transformed(std::span<const double> q) const {
  const std::size_t m = ambient();
  if (q.size() != m * m) throw DomainError("rotation matrix has the wrong size");
  Configuration out(d_, label_, seed_);
  out.reserve(size());
  std::vector<double> y(m);
  for (std::size_t i = 0; i < size(); ++i) {
    const auto x = (*this)[i];
    for (std::size_t r = 0; r < m; ++r) {
      double acc = 0.0;
      for (std::size_t c = 0; c < m; ++c) acc += q[r * m + c] * x[c];
      y[r] = acc;
    }
    out.add(y);
  }
  return out;
}

double dot(std::span<const double> x, std::span<const double> y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

double chordal_distance(std::span<const double> x, std::span<const double> y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double diff = x[i] - y[i];
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

double geodesic_distance(std::span<const double> x, std::span<const double> y) {
  // 2·asin(|x-y|/2) keeps precision for nearby and antipodal points alike.
  return 2.0 * std::asin(std::min(1.0, 0.5 * chordal_distance(x, y)));
}

Cap::Cap(SpherePoint c, double r) : center(std::move(c)), geodesic_radius(r) {
  if (!(r > 0.0) || !(r < std::numbers::pi)) {
    throw DomainError("cap radius must lie in (0, pi)");
  }
}

bool Cap::contains(std::span<const double> y) const {
  return geodesic_distance(center.coords(), y) < geodesic_radius;
}

double cap_measure(double r, int d) {
  if (d < 1) throw DomainError("sphere dimension must be >= 1");
  if (r <= 0.0) return 0.0;
  if (r >= std::numbers::pi) return 1.0;
  switch (d) {
    case 1:
      return r / std::numbers::pi;
    case 2:
      return 0.5 * (1.0 - std::cos(r));
    case 3:
      return (r - std::sin(r) * std::cos(r)) / std::numbers::pi;
    default:
      break;
  }
  // σ_d(cap) = c_d ∫_0^r sin^{d-1}θ dθ with c_d = Γ((d+1)/2) / (√π Γ(d/2)).
  static const auto rule = specfun::gauss_legendre(64);
  const double c = std::exp(specfun::log_gamma(0.5 * (d + 1)) - specfun::log_gamma(0.5 * d)) /
                   std::sqrt(std::numbers::pi);
  const double half = 0.5 * r;
  const double integral = half * rule.integrate([&](double u) {
    return std::pow(std::sin(half * (u + 1.0)), d - 1);
  });
  return c * integral;
}

SpherePoint inverse_stereographic(std::complex<double> z) {
  const double m2 = std::norm(z);
  if (m2 <= 1.0) {
    const double den = 1.0 + m2;
    return SpherePoint({2.0 * z.real() / den, 2.0 * z.imag() / den, (m2 - 1.0) / den});
  }
  const std::complex<double> w = 1.0 / z;
  const double w2 = std::norm(w);
  const double den = 1.0 + w2;
  return SpherePoint({2.0 * w.real() / den, -2.0 * w.imag() / den, (1.0 - w2) / den});
}

std::complex<double> stereographic(std::span<const double> x) {
  if (x.size() != 3) throw DomainError("stereographic projection is defined on S^2 only");
  const double rho2 = x[0] * x[0] + x[1] * x[1];
  if (x[2] <= 0.0) return {x[0] / (1.0 - x[2]), x[1] / (1.0 - x[2])};
  if (rho2 == 0.0) {
    const double inf = std::numeric_limits<double>::infinity();
    return {inf, inf};
  }
  // 1 - x2 = rho² / (1 + x2) avoids cancellation near the north pole.
  const double scale = (1.0 + x[2]) / rho2;
  return {x[0] * scale, x[1] * scale};
}

Configuration sample_uniform(int d, std::size_t n, Rng& rng) {
  Configuration cfg(d, "uniform");
  cfg.reserve(n);
  std::vector<double> v(static_cast<std::size_t>(d) + 1);
  for (std::size_t i = 0; i < n; ++i) {
    double nrm2;
    do {
      nrm2 = 0.0;
      for (double& c : v) {
        c = rng.normal();
        nrm2 += c * c;
      }
    } while (nrm2 < 1e-300);
    cfg.add(v);
  }
  return cfg;
}

Configuration sample_uniform(int d, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw DomainError("sample_uniform requires N >= 1");
  Rng rng(seed);
  auto cfg = sample_uniform(d, n, rng);
  cfg.set_seed(seed);
  return cfg;
}

std::vector<double> random_rotation(int d, Rng& rng) {
  // Gram-Schmidt on a Gaussian matrix: rows are Haar-distributed orthonormal.
  const std::size_t m = static_cast<std::size_t>(d) + 1;
  std::vector<double> q(m * m);
  for (std::size_t r = 0; r < m; ++r) {
    auto row = std::span<double>(q.data() + r * m, m);
    while (true) {
      for (double& c : row) c = rng.normal();
      for (std::size_t p = 0; p < r; ++p) {
        auto prev = std::span<const double>(q.data() + p * m, m);
        const double proj = dot(prev, row);
        for (std::size_t c = 0; c < m; ++c) row[c] -= proj * prev[c];
      }
      if (dot(row, row) > 1e-12) break;
    }
    normalize(row);
  }
  return q;
}

}  // namespace sphereqmc
