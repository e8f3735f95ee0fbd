#pragma once

// Seeded Monte Carlo scans of mean wce² over (N, s) grids, their CSV/JSON
// persistence, and power-law slope fits.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sphereqmc/sphere.hpp"

namespace sphereqmc::harness {

enum class EnsembleKind { uniform, jittered, harmonic, spherical, elliptic };

std::string to_string(EnsembleKind kind);
/// Throws DomainError for unknown names.
EnsembleKind parse_ensemble(const std::string& name);

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::uniform;
  int d = 2;
  std::uint64_t master_seed = 0;
};

/// Degree L with dL(L) = N on S^d, if N has that form.
std::optional<int> harmonic_degree_for(int d, std::size_t n);

/// One configuration of the ensemble with N points (harmonic: N must be dL(L)).
Configuration sample_ensemble(EnsembleKind kind, int d, std::size_t n, std::uint64_t seed);

/// Seed of replicate r at size N: derive_seed(master, {tag(kind), N, r}).
std::uint64_t replicate_seed(const EnsembleSpec& spec, std::size_t n, std::size_t r);

struct ScanRow {
  std::string ensemble;
  int d = 2;
  std::size_t n = 0;
  double s = 0.0;
  std::size_t reps = 0;
  double mean_wce2 = 0.0;
  double stderr_wce2 = 0.0;  // sample standard deviation / √reps
  double min_wce2 = 0.0;
  double max_wce2 = 0.0;
};

struct ScanMetadata {
  std::uint64_t seed = 0;
  std::string version;
  std::string timestamp;  // left empty by default so reruns are byte-identical
};

struct ScanResult {
  std::vector<ScanRow> rows;  // ordered by N, then s
  ScanMetadata metadata;
  std::vector<std::string> warnings;
};

/// Library version string.
std::string version();

/// Worker count: `requested` if positive, else SPHEREQMC_THREADS, else the
/// hardware concurrency (at least 1).
unsigned resolve_threads(unsigned requested);

/// Mean wce² over `reps` replicates for every (N, s). Each replicate draws one
/// configuration and evaluates all s from a single pairwise-distance pass.
/// s values on formula boundaries are dropped with a warning; replicates that
/// fail numerically are dropped from their rows with a warning. Output does
/// not depend on `threads`.
ScanResult run_scan(const EnsembleSpec& spec, const std::vector<std::size_t>& sizes,
                    const std::vector<double>& s_grid, std::size_t reps, unsigned threads = 0);

struct SlopeFit {
  double s = 0.0;
  double beta = 0.0;      // OLS slope of log mean wce² against log N
  double stderr_beta = 0.0;
  std::size_t points = 0;
  double target = 0.0;    // -2s/d
  bool on_target = false; // |β - target| ≤ tol
};

struct StrengthFit {
  std::string ensemble;
  int d = 2;
  double tol = 0.15;
  std::vector<SlopeFit> slopes;      // ascending s
  std::optional<double> strength;    // largest on-target s
};

/// Per-s slopes and the strength estimate s* = largest s with
/// |β(s) + 2s/d| ≤ tol. Needs at least 4 distinct N for every s.
StrengthFit fit_strength(const ScanResult& result, int d, double tol = 0.15);

std::string format_strength_report(const StrengthFit& fit);

// CSV: '#'-prefixed metadata lines, then the header
// ensemble,d,N,s,reps,mean_wce2,stderr_wce2,min_wce2,max_wce2 and one row per
// (N, s), reals with 17 significant digits.
void write_scan_csv(std::ostream& out, const ScanResult& result);
ScanResult read_scan_csv(std::istream& in);
void write_scan_json(std::ostream& out, const ScanResult& result);
ScanResult read_scan_json(std::istream& in);

}  // namespace sphereqmc::harness
