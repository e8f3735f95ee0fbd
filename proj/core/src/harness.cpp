#include "sphereqmc/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

#include "sphereqmc/compensated_sum.hpp"
#include "sphereqmc/detproc.hpp"
#include "sphereqmc/energy.hpp"
#include "sphereqmc/error.hpp"
#include "sphereqmc/polyzeros.hpp"
#include "sphereqmc/random.hpp"
#include "sphereqmc/specfun.hpp"
#include "sphereqmc/wce.hpp"

#ifndef SPHEREQMC_VERSION_STRING
#define SPHEREQMC_VERSION_STRING "0.0.0"
#endif

namespace sphereqmc::harness {
namespace {

constexpr const char* kNames[] = {"uniform", "jittered", "harmonic", "spherical", "elliptic"};

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

Configuration draw(EnsembleKind kind, int d, std::size_t n, std::uint64_t seed,
                   const detproc::ProjectionKernel* kernel) {
  switch (kind) {
    case EnsembleKind::uniform:
      return sample_uniform(d, n, seed);
    case EnsembleKind::jittered:
      return sample_jittered(n, seed);
    case EnsembleKind::harmonic:
    case EnsembleKind::spherical:
      return detproc::hkpv_sample(*kernel, seed);
    case EnsembleKind::elliptic:
      return polyzeros::zeros_on_sphere(n, seed);
  }
  throw DomainError("unknown ensemble");
}

std::unique_ptr<detproc::ProjectionKernel> kernel_for(EnsembleKind kind, int d, std::size_t n) {
  if (kind == EnsembleKind::harmonic) {
    const auto degree = harmonic_degree_for(d, n);
    if (!degree) {
      throw DomainError("harmonic ensemble size " + std::to_string(n) +
                        " is not the dimension of a polynomial space on S^" + std::to_string(d));
    }
    return detproc::harmonic_kernel(d, *degree);
  }
  if (kind == EnsembleKind::spherical) return detproc::spherical_kernel(n);
  return nullptr;
}

void check_dimension(EnsembleKind kind, int d) {
  if (d < 1) throw DomainError("sphere dimension must be >= 1");
  if (d != 2 && kind != EnsembleKind::uniform && kind != EnsembleKind::harmonic) {
    throw DomainError(to_string(kind) + " ensemble is defined on S^2 only");
  }
}

}  // namespace

std::string to_string(EnsembleKind kind) { return kNames[static_cast<int>(kind)]; }

EnsembleKind parse_ensemble(const std::string& name) {
  for (int i = 0; i < 5; ++i) {
    if (name == kNames[i]) return static_cast<EnsembleKind>(i);
  }
  throw DomainError("unknown ensemble '" + name +
                    "' (expected uniform, jittered, harmonic, spherical or elliptic)");
}

std::optional<int> harmonic_degree_for(int d, std::size_t n) {
  for (int degree = 0; degree <= specfun::kMaxDegree; ++degree) {
    const auto dim = specfun::polynomial_space_dimension(d, degree);
    if (dim == n) return degree;
    if (dim > n) break;
  }
  return std::nullopt;
}

Configuration sample_ensemble(EnsembleKind kind, int d, std::size_t n, std::uint64_t seed) {
  check_dimension(kind, d);
  const auto kernel = kernel_for(kind, d, n);
  return draw(kind, d, n, seed, kernel.get());
}

std::uint64_t replicate_seed(const EnsembleSpec& spec, std::size_t n, std::size_t r) {
  return derive_seed(spec.master_seed,
                     {static_cast<std::uint64_t>(spec.kind) + 1, static_cast<std::uint64_t>(n),
                      static_cast<std::uint64_t>(r)});
}

std::string version() { return SPHEREQMC_VERSION_STRING; }

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SPHEREQMC_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ScanResult run_scan(const EnsembleSpec& spec, const std::vector<std::size_t>& sizes,
                    const std::vector<double>& s_grid, std::size_t reps, unsigned threads) {
  check_dimension(spec.kind, spec.d);
  if (reps < 2) throw DomainError("a scan needs at least 2 replicates");

  ScanResult result;
  result.metadata.seed = spec.master_seed;
  result.metadata.version = version();

  std::vector<wce::SobolevOrder> orders;
  for (double s : s_grid) {
    if (wce::SobolevOrder::admissible(spec.d, s)) {
      orders.emplace_back(spec.d, s);
    } else {
      result.warnings.push_back("s=" + fmt(s) + " excluded: needs s > d/2, s - d/2 not an integer, s - d/2 < 3");
    }
  }

  std::vector<std::size_t> ns;
  std::vector<std::unique_ptr<detproc::ProjectionKernel>> kernels;
  for (std::size_t n : sizes) {
    try {
      if (n < 2) throw DomainError("N must be at least 2");
      kernels.push_back(kernel_for(spec.kind, spec.d, n));
      if (spec.kind == EnsembleKind::jittered) build_equal_area_partition(n);
      ns.push_back(n);
    } catch (const std::exception& e) {
      result.warnings.push_back("N=" + std::to_string(n) + " excluded: " + e.what());
    }
  }

  const std::size_t n_s = orders.size();
  const std::size_t jobs = ns.size() * reps;
  std::vector<double> values(jobs * n_s, std::nan(""));
  std::vector<std::string> failures(jobs);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t job = next.fetch_add(1);
      if (job >= jobs) return;
      const std::size_t ni = job / reps;
      const std::size_t r = job % reps;
      try {
        const auto cfg = draw(spec.kind, spec.d, ns[ni], replicate_seed(spec, ns[ni], r), kernels[ni].get());
        const energy::PairwiseDistances pd(cfg);
        for (std::size_t si = 0; si < n_s; ++si) {
          try {
            values[job * n_s + si] = wce::wce_squared(pd, orders[si]);
          } catch (const std::exception& e) {
            failures[job] += "s=" + fmt(orders[si].s()) + ": " + e.what() + "; ";
          }
        }
      } catch (const std::exception& e) {
        failures[job] = e.what();
      }
    }
  };
  const unsigned workers = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(1, jobs));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (std::size_t job = 0; job < jobs; ++job) {
    if (!failures[job].empty()) {
      result.warnings.push_back("N=" + std::to_string(ns[job / reps]) + " replicate " +
                                std::to_string(job % reps) + " failed: " + failures[job]);
    }
  }

  const std::string label = to_string(spec.kind);
  std::vector<double> xs;
  for (std::size_t ni = 0; ni < ns.size(); ++ni) {
    for (std::size_t si = 0; si < n_s; ++si) {
      xs.clear();
      for (std::size_t r = 0; r < reps; ++r) {
        const double v = values[(ni * reps + r) * n_s + si];
        if (std::isfinite(v)) xs.push_back(v);
      }
      if (xs.size() < 2) {
        result.warnings.push_back("row N=" + std::to_string(ns[ni]) + ", s=" + fmt(orders[si].s()) +
                                  " dropped: fewer than 2 successful replicates");
        continue;
      }
      CompensatedSum sum;
      for (double v : xs) sum += v;
      const double count = static_cast<double>(xs.size());
      const double mean = sum.value() / count;
      CompensatedSum dev;
      double lo = xs.front();
      double hi = xs.front();
      for (double v : xs) {
        dev += (v - mean) * (v - mean);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      const double sd = std::sqrt(dev.value() / (count - 1.0));
      result.rows.push_back({label, spec.d, ns[ni], orders[si].s(), xs.size(), mean,
                             sd / std::sqrt(count), lo, hi});
    }
  }
  return result;
}

StrengthFit fit_strength(const ScanResult& result, int d, double tol) {
  if (d < 1) throw DomainError("sphere dimension must be >= 1");
  if (!(tol > 0.0)) throw DomainError("fit tolerance must be positive");
  StrengthFit fit;
  fit.d = d;
  fit.tol = tol;
  std::map<double, std::map<std::size_t, double>> by_s;
  for (const auto& row : result.rows) {
    if (fit.ensemble.empty()) fit.ensemble = row.ensemble;
    if (row.ensemble != fit.ensemble) {
      throw DomainError("scan mixes ensembles '" + fit.ensemble + "' and '" + row.ensemble + "'");
    }
    if (row.mean_wce2 > 0.0) by_s[row.s][row.n] = row.mean_wce2;
  }
  if (by_s.empty()) throw DomainError("scan has no rows with positive mean wce^2");

  for (const auto& [s, points] : by_s) {
    if (points.size() < 4) {
      throw DomainError("slope fit at s=" + fmt(s) + " needs at least 4 values of N, got " +
                        std::to_string(points.size()));
    }
    double mx = 0.0;
    double my = 0.0;
    for (const auto& [n, m] : points) {
      mx += std::log(static_cast<double>(n));
      my += std::log(m);
    }
    const double k = static_cast<double>(points.size());
    mx /= k;
    my /= k;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& [n, m] : points) {
      const double x = std::log(static_cast<double>(n)) - mx;
      sxx += x * x;
      sxy += x * (std::log(m) - my);
    }
    const double beta = sxy / sxx;
    double ssr = 0.0;
    for (const auto& [n, m] : points) {
      const double x = std::log(static_cast<double>(n)) - mx;
      const double resid = std::log(m) - my - beta * x;
      ssr += resid * resid;
    }
    SlopeFit sf;
    sf.s = s;
    sf.beta = beta;
    sf.stderr_beta = std::sqrt(ssr / (k - 2.0) / sxx);
    sf.points = points.size();
    sf.target = -2.0 * s / d;
    sf.on_target = std::abs(beta - sf.target) <= tol;
    if (sf.on_target) fit.strength = s;
    fit.slopes.push_back(sf);
  }
  return fit;
}

std::string format_strength_report(const StrengthFit& fit) {
  std::ostringstream os;
  os << "# strength estimate: ensemble=" << fit.ensemble << " d=" << fit.d << "\n"
     << "# rule: s* is the largest grid s with |beta(s) + 2s/d| <= " << fit.tol
     << " (empirical slope criterion)\n"
     << "s,beta,stderr_beta,target,points,on_target\n";
  os.precision(6);
  for (const auto& sf : fit.slopes) {
    os << sf.s << ',' << sf.beta << ',' << sf.stderr_beta << ',' << sf.target << ',' << sf.points
       << ',' << (sf.on_target ? "yes" : "no") << "\n";
  }
  os << "s* = ";
  if (fit.strength) {
    os << *fit.strength;
  } else {
    os << "none";
  }
  os << "\n";
  return os.str();
}

}  // namespace sphereqmc::harness
