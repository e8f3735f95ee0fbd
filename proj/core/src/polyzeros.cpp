#include "sphereqmc/polyzeros.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sphereqmc/error.hpp"
#include "sphereqmc/random.hpp"
#include "sphereqmc/specfun.hpp"

namespace sphereqmc::polyzeros {
namespace {

using cplx = std::complex<double>;

constexpr int kMaxIterations = 200;
constexpr int kMaxRestarts = 3;
constexpr double kStepTolerance = 1e-13;
constexpr double kResidualLimit = 1e-8;

struct Eval {
  cplx newton;      // p(z) / p'(z)
  double residual;  // |p(z)| / Σ|c_n||z|^n
};

// Horner in z for |z| ≤ 1; otherwise the reversed polynomial q(w) = w^N p(1/w)
// with p'/p = w (N - w q'(w)/q(w)).
Eval evaluate(const std::vector<cplx>& c, const std::vector<double>& absc, cplx z) {
  const std::size_t n = c.size() - 1;
  if (std::norm(z) <= 1.0) {
    cplx p = c[n];
    cplx dp = 0.0;
    double scale = absc[n];
    const double az = std::abs(z);
    for (std::size_t k = n; k-- > 0;) {
      dp = dp * z + p;
      p = p * z + c[k];
      scale = scale * az + absc[k];
    }
    if (p == cplx(0.0)) return {0.0, 0.0};
    return {p / dp, std::abs(p) / scale};
  }
  const cplx w = 1.0 / z;
  const double aw = std::abs(w);
  cplx q = c[0];
  cplx dq = 0.0;
  double scale = absc[0];
  for (std::size_t k = 1; k <= n; ++k) {
    dq = dq * w + q;
    q = q * w + c[k];
    scale = scale * aw + absc[k];
  }
  if (q == cplx(0.0)) return {0.0, 0.0};
  const cplx ratio = w * (static_cast<double>(n) - w * dq / q);  // p'/p
  return {1.0 / ratio, std::abs(q) / scale};
}

struct Attempt {
  std::vector<cplx> roots;
  int iterations = 0;
  bool converged = false;
};

Attempt aberth(const std::vector<cplx>& c, const std::vector<double>& absc, int restart) {
  const std::size_t n = c.size() - 1;
  Attempt out;
  out.roots.resize(n);
  double radius = std::pow(std::abs(c[0]) / std::abs(c[n]), 1.0 / static_cast<double>(n));
  if (!(radius > 0.0) || !std::isfinite(radius)) radius = 1.0;
  radius *= 1.0 + 0.1 * restart;
  const double twist = 0.4 + 0.37 * restart;
  for (std::size_t k = 0; k < n; ++k) {
    const double kd = static_cast<double>(k);
    const double r = radius * (1.0 + 0.1 * kd / static_cast<double>(n));
    out.roots[k] = std::polar(r, 2.0 * std::numbers::pi * kd / static_cast<double>(n) + twist);
  }
  if (n == 1) {
    out.roots[0] = -c[0] / c[1];
    out.converged = true;
    return out;
  }

  std::vector<char> done(n, 0);
  std::size_t remaining = n;
  for (int it = 1; it <= kMaxIterations && remaining > 0; ++it) {
    out.iterations = it;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      const cplx zi = out.roots[i];
      const Eval e = evaluate(c, absc, zi);
      if (e.newton == cplx(0.0)) {
        done[i] = 1;
        --remaining;
        continue;
      }
      cplx repulsion = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) repulsion += 1.0 / (zi - out.roots[j]);
      }
      const cplx step = e.newton / (1.0 - e.newton * repulsion);
      out.roots[i] = zi - step;
      if (std::abs(step) <= kStepTolerance * std::abs(out.roots[i]) || !std::isfinite(std::abs(step))) {
        done[i] = 1;
        --remaining;
      }
    }
  }
  out.converged = remaining == 0;
  return out;
}

}  // namespace

EllipticPolynomial sample_elliptic(std::size_t degree, std::uint64_t seed) {
  if (degree < 1 || degree > kMaxDegree) {
    throw DomainError("elliptic polynomial degree must lie in [1, " + std::to_string(kMaxDegree) + "]");
  }
  Rng rng(seed);
  EllipticPolynomial p{degree, std::vector<cplx>(degree + 1), seed};
  const double nd = static_cast<double>(degree);
  const double log_nfact = specfun::log_gamma(nd + 1.0);
  for (std::size_t k = 0; k <= degree; ++k) {
    cplx a = rng.complex_normal();
    if (k == degree) {
      while (std::abs(a) < 1e-12) a = rng.complex_normal();
    }
    const double kd = static_cast<double>(k);
    const double log_binom = log_nfact - specfun::log_gamma(kd + 1.0) - specfun::log_gamma(nd - kd + 1.0);
    p.coeffs[k] = a * std::exp(0.5 * log_binom);
  }
  return p;
}

RootSet find_roots(std::span<const std::complex<double>> coeffs) {
  if (coeffs.size() < 2) throw DomainError("find_roots needs a polynomial of degree >= 1");
  const std::size_t n = coeffs.size() - 1;
  double cmax = 0.0;
  for (const auto& x : coeffs) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
      throw DomainError("polynomial coefficients must be finite");
    }
    cmax = std::max(cmax, std::abs(x));
  }
  if (coeffs[n] == cplx(0.0)) throw DomainError("leading coefficient must be nonzero");

  std::vector<cplx> c(coeffs.begin(), coeffs.end());
  for (auto& x : c) x /= cmax;
  std::vector<double> absc(n + 1);
  for (std::size_t k = 0; k <= n; ++k) absc[k] = std::abs(c[k]);

  // Roots at the origin are split off so the starting radius stays positive.
  std::size_t zeros = 0;
  while (zeros < n && c[zeros] == cplx(0.0)) ++zeros;
  std::vector<cplx> reduced(c.begin() + static_cast<long>(zeros), c.end());
  std::vector<double> reduced_abs(absc.begin() + static_cast<long>(zeros), absc.end());

  RootSet out;
  double best_residual = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart <= kMaxRestarts; ++restart) {
    std::vector<cplx> roots;
    int iterations = 0;
    if (reduced.size() > 1) {
      Attempt a = aberth(reduced, reduced_abs, restart);
      roots = std::move(a.roots);
      iterations = a.iterations;
      if (!a.converged && restart < kMaxRestarts) continue;
    }
    roots.insert(roots.end(), zeros, cplx(0.0));

    double residual = 0.0;
    for (auto& z : roots) {
      Eval e = evaluate(c, absc, z);
      if (std::isfinite(std::abs(e.newton))) z -= e.newton;
      e = evaluate(c, absc, z);
      residual = std::max(residual, e.residual);
    }
    if (residual <= kResidualLimit) {
      out.roots = std::move(roots);
      out.residual = residual;
      out.iterations = iterations;
      out.restarts = restart;
      return out;
    }
    best_residual = std::min(best_residual, residual);
  }
  throw NumericalError("root finding failed for degree " + std::to_string(n) + " after " +
                       std::to_string(kMaxRestarts) + " restarts; best residual " +
                       std::to_string(best_residual));
}

Configuration zeros_on_sphere(std::size_t degree, std::uint64_t seed) {
  const auto p = sample_elliptic(degree, seed);
  const auto roots = find_roots(p);
  Configuration cfg(2, "elliptic", seed);
  cfg.reserve(degree);
  for (const auto& z : roots.roots) cfg.add(inverse_stereographic(z));
  return cfg;
}

}  // namespace sphereqmc::polyzeros
