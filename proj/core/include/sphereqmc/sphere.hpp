#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace sphereqmc {

class Rng;

/// A unit vector in R^{d+1}. Coordinates are renormalized on construction.
class SpherePoint {
 public:
  explicit SpherePoint(std::vector<double> coords);
  explicit SpherePoint(std::span<const double> coords)
      : SpherePoint(std::vector<double>(coords.begin(), coords.end())) {}

  /// Sphere dimension d (the point lives in R^{d+1}).
  int dim() const { return static_cast<int>(coords_.size()) - 1; }
  std::span<const double> coords() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

  static SpherePoint north_pole(int d);
  static SpherePoint south_pole(int d);

 private:
  std::vector<double> coords_;
};

/// A finite ordered point set on S^d with a provenance tag and the seed it was
/// drawn with. Coordinates are stored contiguously, (d+1) doubles per point.
class Configuration {
 public:
  explicit Configuration(int d, std::string label = {}, std::uint64_t seed = 0);

  int dim() const { return d_; }
  std::size_t ambient() const { return static_cast<std::size_t>(d_) + 1; }
  std::size_t size() const { return data_.size() / ambient(); }
  bool empty() const { return data_.empty(); }

  std::span<const double> operator[](std::size_t i) const {
    return {data_.data() + i * ambient(), ambient()};
  }
  SpherePoint at(std::size_t i) const { return SpherePoint((*this)[i]); }

  void add(const SpherePoint& p);
  /// Appends raw coordinates, renormalizing them.
  void add(std::span<const double> coords);
  void reserve(std::size_t n) { data_.reserve(n * ambient()); }

  const std::string& label() const { return label_; }
  std::uint64_t seed() const { return seed_; }
  void set_label(std::string label) { label_ = std::move(label); }
  void set_seed(std::uint64_t seed) { seed_ = seed; }

  std::span<const double> data() const { return data_; }

  /// Applies x -> Q x for a row-major (d+1)x(d+1) orthogonal Q.
  Configuration transformed(std::span<const double> q) const;

 private:
  int d_;
  std::vector<double> data_;
  std::string label_;
  std::uint64_t seed_;
};

double dot(std::span<const double> x, std::span<const double> y);

/// Euclidean distance |x - y| computed from the difference vector.
double chordal_distance(std::span<const double> x, std::span<const double> y);

/// Geodesic distance arccos⟨x, y⟩ with the inner product clamped to [-1, 1].
double geodesic_distance(std::span<const double> x, std::span<const double> y);

/// Open geodesic ball D(center, r) = {y : dist(center, y) < r}.
struct Cap {
  SpherePoint center;
  double geodesic_radius;

  Cap(SpherePoint c, double r);
  bool contains(std::span<const double> y) const;
};

/// Normalized surface measure σ_d of a cap of geodesic radius r on S^d.
double cap_measure(double geodesic_radius, int d);
inline double cap_measure(const Cap& cap) { return cap_measure(cap.geodesic_radius, cap.center.dim()); }

/// Φ(z) = (2 Re z, 2 Im z, |z|² - 1) / (1 + |z|²): z = 0 maps to the south pole,
/// ∞ to the north pole. Evaluated through w = 1/z when |z| > 1.
SpherePoint inverse_stereographic(std::complex<double> z);

/// Inverse of Φ on S² minus the north pole: z = (x0 + i x1) / (1 - x2).
std::complex<double> stereographic(std::span<const double> x);

/// N i.i.d. points from σ_d via renormalized Gaussian vectors.
Configuration sample_uniform(int d, std::size_t n, std::uint64_t seed);
Configuration sample_uniform(int d, std::size_t n, Rng& rng);

/// Random orthogonal (d+1)x(d+1) matrix, row-major, Haar distributed.
std::vector<double> random_rotation(int d, Rng& rng);

// ---------------------------------------------------------------------------
// Equal-area partition of S² (zonal scheme) and jittered sampling.

struct PartitionCell {
  int band;           // 0 = north cap, increasing southwards
  double theta_lo;    // colatitude interval [theta_lo, theta_hi]
  double theta_hi;
  double phi_lo;      // azimuth interval [phi_lo, phi_hi)
  double phi_hi;

  /// Normalized area (cos θ_lo - cos θ_hi)/2 · (φ_hi - φ_lo)/(2π).
  double area() const;
  bool contains(std::span<const double> x) const;
};

class EqualAreaPartition {
 public:
  std::size_t size() const { return cells_.size(); }
  const std::vector<PartitionCell>& cells() const { return cells_; }
  const PartitionCell& operator[](std::size_t i) const { return cells_[i]; }
  /// Colatitude boundaries of the bands, from 0 to π.
  const std::vector<double>& band_edges() const { return edges_; }
  /// Index of the cell holding x.
  std::size_t locate(std::span<const double> x) const;

 private:
  friend EqualAreaPartition build_equal_area_partition(std::size_t n);
  std::vector<PartitionCell> cells_;
  std::vector<double> edges_;
  std::vector<std::size_t> band_start_;
};

/// Polar caps plus latitude bands of equal-width cells, every cell of
/// normalized area exactly 1/N. Requires N ≥ 2.
EqualAreaPartition build_equal_area_partition(std::size_t n);

/// One uniform point in each cell of build_equal_area_partition(N).
Configuration sample_jittered(std::size_t n, std::uint64_t seed);
Configuration sample_jittered(const EqualAreaPartition& partition, Rng& rng);

// ---------------------------------------------------------------------------
// Configuration CSV: header "x0,x1,...,xd", one point per row, 17 significant
// digits. The reader renormalizes and rejects rows whose norm deviates from 1
// by more than 1e-6.

void write_configuration_csv(std::ostream& out, const Configuration& cfg);
void write_configuration_csv(const std::string& path, const Configuration& cfg);
Configuration read_configuration_csv(std::istream& in);
Configuration read_configuration_csv(const std::string& path);

}  // namespace sphereqmc
