#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "sphereqmc/error.hpp"
#include "sphereqmc/quadrature.hpp"
#include "sphereqmc/random.hpp"
#include "sphereqmc/wce.hpp"

namespace sphereqmc::wce {
namespace {

void require_s2(const Configuration& cfg, const char* what) {
  if (cfg.dim() != 2) throw DomainError(std::string(what) + " is implemented on S^2 only");
  if (cfg.empty()) throw DomainError(std::string(what) + " of an empty configuration");
}

// u_i = ⟨center, x_i⟩ sorted in descending order. The cap of geodesic radius r
// around the center holds exactly the points with u_i > cos r.
void sorted_projections(const Configuration& cfg, std::span<const double> center,
                        std::vector<double>& u) {
  u.resize(cfg.size());
  for (std::size_t i = 0; i < cfg.size(); ++i) u[i] = std::clamp(dot(center, cfg[i]), -1.0, 1.0);
  std::sort(u.begin(), u.end(), std::greater<>());
}

// ∫_{-1}^{1} (#{u_i > u}/N - (1-u)/2)² du for descending u.
double radial_exact(const std::vector<double>& u) {
  const std::size_t n = u.size();
  const double nd = static_cast<double>(n);
  auto cube = [](double a, double x) {
    const double y = a + 0.5 * x;
    return (2.0 / 3.0) * y * y * y;
  };
  double sum = 0.0;
  double upper = 1.0;
  for (std::size_t k = 0; k <= n; ++k) {
    const double lower = (k < n) ? u[k] : -1.0;
    const double a = static_cast<double>(k) / nd - 0.5;
    sum += cube(a, upper) - cube(a, lower);
    upper = lower;
  }
  return sum;
}

double radial_gauss(const std::vector<double>& u, const specfun::GaussRule& rule) {
  const double nd = static_cast<double>(u.size());
  return rule.integrate([&](double x) {
    // Entries strictly greater than x.
    const auto c = static_cast<double>(
        std::lower_bound(u.begin(), u.end(), x, std::greater<>()) - u.begin());
    const double dev = c / nd - 0.5 * (1.0 - x);
    return dev * dev;
  });
}

// Fixed tilt of the center grid (Euler angles 0.7, 1.1, 2.3) so that its poles,
// where the product rule is coarsest in φ, avoid the coordinate poles that
// structured inputs tend to occupy.
std::array<double, 9> grid_tilt() {
  const double a = 0.7, b = 1.1, c = 2.3;
  const double ca = std::cos(a), sa = std::sin(a), cb = std::cos(b), sb = std::sin(b);
  const double cc = std::cos(c), sc = std::sin(c);
  return {ca * cc - sa * cb * sc, -ca * sc - sa * cb * cc, sa * sb,
          sa * cc + ca * cb * sc, -sa * sc + ca * cb * cc, -ca * sb,
          sb * sc,                sb * cc,                 cb};
}

}  // namespace

double discrepancy_l2_quadrature(const Configuration& cfg, CapGrid grid) {
  require_s2(cfg, "cap quadrature discrepancy");
  if (grid.n_centers < 64) throw DomainError("cap quadrature needs at least 64 centers");
  if (grid.n_radii != 0 && grid.n_radii < 64) throw DomainError("cap quadrature needs at least 64 radii");

  const auto n_theta = std::max<std::size_t>(
      8, static_cast<std::size_t>(std::lround(std::sqrt(0.5 * static_cast<double>(grid.n_centers)))));
  const std::size_t n_phi = 2 * n_theta;
  const auto zrule = specfun::gauss_legendre(static_cast<int>(n_theta));
  specfun::GaussRule rrule;
  if (grid.n_radii) rrule = specfun::gauss_legendre(static_cast<int>(grid.n_radii));

  const auto q = grid_tilt();
  std::vector<double> u;
  double total = 0.0;
  for (std::size_t a = 0; a < n_theta; ++a) {
    const double z = zrule.nodes[a];
    const double rho = std::sqrt(std::max(0.0, (1.0 - z) * (1.0 + z)));
    double ring = 0.0;
    for (std::size_t b = 0; b < n_phi; ++b) {
      const double phi = 2.0 * std::numbers::pi * (static_cast<double>(b) + 0.5) / static_cast<double>(n_phi);
      const double p[3] = {rho * std::cos(phi), rho * std::sin(phi), z};
      double center[3];
      for (int r = 0; r < 3; ++r) center[r] = q[3 * r] * p[0] + q[3 * r + 1] * p[1] + q[3 * r + 2] * p[2];
      sorted_projections(cfg, center, u);
      ring += grid.n_radii ? radial_gauss(u, rrule) : radial_exact(u);
    }
    total += 0.5 * zrule.weights[a] * ring / static_cast<double>(n_phi);
  }
  return std::sqrt(std::max(0.0, total));
}

SampledDiscrepancy discrepancy_linf_sampled(const Configuration& cfg, std::size_t n_caps,
                                            std::uint64_t seed) {
  require_s2(cfg, "sampled cap discrepancy");
  const std::size_t n = cfg.size();
  const double nd = static_cast<double>(n);
  std::vector<double> u;
  double best = 0.0;
  auto scan = [&](std::span<const double> center) {
    sorted_projections(cfg, center, u);
    // Crossing the breakpoint u_k moves the count from k to k+1 (ties collapse).
    for (std::size_t k = 0; k < n; ++k) {
      const double cap = 0.5 * (1.0 - u[k]);
      best = std::max(best, std::abs(static_cast<double>(k) / nd - cap));
      best = std::max(best, std::abs(static_cast<double>(k + 1) / nd - cap));
    }
  };

  Rng rng(seed);
  const auto random_centers = sample_uniform(2, n_caps == 0 ? 1 : n_caps, rng);
  for (std::size_t i = 0; i < n_caps; ++i) scan(random_centers[i]);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = cfg[i];
    scan(x);
    const double anti[3] = {-x[0], -x[1], -x[2]};
    scan(anti);
  }
  return {best, true, n_caps + 2 * n};
}

}  // namespace sphereqmc::wce
