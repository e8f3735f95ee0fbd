#include <algorithm>
#include <cmath>
#include <numbers>

#include "sphereqmc/error.hpp"
#include "sphereqmc/random.hpp"
#include "sphereqmc/sphere.hpp"

namespace sphereqmc {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double colatitude(std::span<const double> x) {
  return std::atan2(std::hypot(x[0], x[1]), x[2]);
}

double azimuth(std::span<const double> x) {
  double phi = std::atan2(x[1], x[0]);
  if (phi < 0.0) phi += kTwoPi;
  return phi >= kTwoPi ? 0.0 : phi;
}

// Colatitude whose north cap holds `count` of n equal cells.
double edge_for_count(std::size_t count, std::size_t n) {
  const double c = 1.0 - 2.0 * static_cast<double>(count) / static_cast<double>(n);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

}  // namespace

double PartitionCell::area() const {
  return 0.5 * (std::cos(theta_lo) - std::cos(theta_hi)) * (phi_hi - phi_lo) / kTwoPi;
}

bool PartitionCell::contains(std::span<const double> x) const {
  const double theta = colatitude(x);
  const double phi = azimuth(x);
  return theta >= theta_lo && theta <= theta_hi && phi >= phi_lo && phi < phi_hi;
}

std::size_t EqualAreaPartition::locate(std::span<const double> x) const {
  const double theta = colatitude(x);
  auto it = std::upper_bound(edges_.begin() + 1, edges_.end() - 1, theta);
  const auto band = static_cast<std::size_t>(it - (edges_.begin() + 1));
  const std::size_t first = band_start_[band];
  const std::size_t count = band_start_[band + 1] - first;
  const double width = kTwoPi / static_cast<double>(count);
  auto k = static_cast<std::size_t>(azimuth(x) / width);
  return first + std::min(k, count - 1);
}

EqualAreaPartition build_equal_area_partition(std::size_t n) {
  if (n < 2) throw DomainError("equal-area partition needs N >= 2");

  // Cell counts per band: north cap, collars, south cap.
  std::vector<std::size_t> counts{1};
  if (n > 2) {
    const double nd = static_cast<double>(n);
    const double cap = edge_for_count(1, n);
    const double ideal_side = std::sqrt(4.0 * std::numbers::pi / nd);
    const auto collars = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::lround((std::numbers::pi - 2.0 * cap) / ideal_side)));
    const double height = (std::numbers::pi - 2.0 * cap) / static_cast<double>(collars);
    double carry = 0.0;
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < collars; ++i) {
      const double a = cap + static_cast<double>(i) * height;
      const double b = a + height;
      const double ideal = nd * 0.5 * (std::cos(a) - std::cos(b)) + carry;
      auto m = static_cast<std::size_t>(std::max<long>(1, std::lround(ideal)));
      if (i + 1 == collars) {
        if (assigned + 1 > n - 2) throw NumericalError("equal-area partition: collar counts do not balance");
        m = n - 2 - assigned;
      }
      carry = ideal - static_cast<double>(m);
      assigned += m;
      counts.push_back(m);
    }
    if (assigned != n - 2 || counts.back() < 1) {
      throw NumericalError("equal-area partition: collar counts do not balance");
    }
  }
  counts.push_back(1);

  EqualAreaPartition part;
  part.cells_.reserve(n);
  part.edges_.push_back(0.0);
  part.band_start_.push_back(0);
  std::size_t cumulative = 0;
  for (std::size_t band = 0; band < counts.size(); ++band) {
    cumulative += counts[band];
    const double lo = part.edges_.back();
    const double hi = (band + 1 == counts.size()) ? std::numbers::pi : edge_for_count(cumulative, n);
    part.edges_.push_back(hi);
    const double width = kTwoPi / static_cast<double>(counts[band]);
    for (std::size_t k = 0; k < counts[band]; ++k) {
      const double phi_lo = width * static_cast<double>(k);
      const double phi_hi = (k + 1 == counts[band]) ? kTwoPi : width * static_cast<double>(k + 1);
      part.cells_.push_back({static_cast<int>(band), lo, hi, phi_lo, phi_hi});
    }
    part.band_start_.push_back(part.cells_.size());
  }
  return part;
}

Configuration sample_jittered(const EqualAreaPartition& partition, Rng& rng) {
  Configuration cfg(2, "jittered");
  cfg.reserve(partition.size());
  for (const auto& cell : partition.cells()) {
    // Inverse CDF: cos θ uniform between the band limits, φ uniform.
    const double c_hi = std::cos(cell.theta_lo);
    const double c_lo = std::cos(cell.theta_hi);
    const double u = std::clamp(rng.uniform(c_lo, c_hi), -1.0, 1.0);
    const double phi = rng.uniform(cell.phi_lo, cell.phi_hi);
    const double s = std::sqrt(std::max(0.0, (1.0 - u) * (1.0 + u)));
    const double p[3] = {s * std::cos(phi), s * std::sin(phi), u};
    cfg.add(p);
  }
  return cfg;
}

Configuration sample_jittered(std::size_t n, std::uint64_t seed) {
  const auto partition = build_equal_area_partition(n);
  Rng rng(seed);
  auto cfg = sample_jittered(partition, rng);
  cfg.set_seed(seed);
  return cfg;
}

}  // namespace sphereqmc
