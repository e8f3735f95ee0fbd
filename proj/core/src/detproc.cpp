#include "sphereqmc/detproc.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sphereqmc/error.hpp"
#include "sphereqmc/random.hpp"

namespace sphereqmc::detproc {
namespace {

using cplx = std::complex<double>;

// Plain complex products; avoids the NaN-recovery path of operator*.
inline cplx mul(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}
inline cplx mul_conj(cplx a, cplx b) {  // a · conj(b)
  return {a.real() * b.real() + a.imag() * b.imag(), a.imag() * b.real() - a.real() * b.imag()};
}

constexpr std::size_t kRefactorEvery = 32;
constexpr int kMaxResamples = 100;
constexpr double kPivotFloor = 1e-12;

// Lower-triangular Cholesky factor of the Gram matrix of the chosen points,
// stored row-packed: row i holds i+1 entries.
class GramFactor {
 public:
  std::size_t size() const { return n_; }

  // w = L⁻¹ v; returns ‖w‖².
  double solve(const std::vector<cplx>& v, std::vector<cplx>& w) const {
    double q = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const cplx* row = &l_[offset(i)];
      cplx acc = v[i];
      for (std::size_t j = 0; j < i; ++j) acc -= mul(row[j], w[j]);
      w[i] = acc / row[i].real();
      q += std::norm(w[i]);
    }
    return q;
  }

  void append(const std::vector<cplx>& w, double pivot, const std::vector<cplx>& gram_row) {
    for (std::size_t j = 0; j < n_; ++j) l_.push_back(std::conj(w[j]));
    l_.push_back(std::sqrt(pivot));
    g_.insert(g_.end(), gram_row.begin(), gram_row.begin() + static_cast<long>(n_ + 1));
    ++n_;
  }

  // Recomputes L from the stored Gram matrix; false if a pivot is not positive.
  bool refactor() {
    for (std::size_t i = 0; i < n_; ++i) {
      cplx* li = &l_[offset(i)];
      const cplx* gi = &g_[offset(i)];
      for (std::size_t j = 0; j <= i; ++j) {
        const cplx* lj = &l_[offset(j)];
        cplx acc = gi[j];
        for (std::size_t k = 0; k < j; ++k) acc -= mul_conj(li[k], lj[k]);
        if (j == i) {
          if (!(acc.real() > 0.0)) return false;
          li[i] = std::sqrt(acc.real());
        } else {
          li[j] = acc / lj[j].real();
        }
      }
    }
    return true;
  }

 private:
  static std::size_t offset(std::size_t i) { return i * (i + 1) / 2; }

  std::size_t n_ = 0;
  std::vector<cplx> l_;
  std::vector<cplx> g_;  // G_ij = K(y_i, y_j), j ≤ i, packed like l_
};

}  // namespace

HarmonicKernel::HarmonicKernel(int d, int degree)
    : d_(d), degree_(degree), params_(specfun::JacobiParams::for_sphere(d)) {
  if (degree < 0) throw DomainError("harmonic kernel degree must be >= 0");
  if (degree > specfun::kMaxDegree) throw DomainError("harmonic kernel degree too large");
  rank_ = specfun::polynomial_space_dimension(d, degree);
  // P_L^{(1+λ,λ)}(1) = binom(L + 1 + λ, L) = binom(L + d/2, L).
  scale_ = static_cast<double>(rank_) / specfun::binomial(degree + 0.5 * d, degree);
}

double HarmonicKernel::zonal(double t) const {
  return scale_ * specfun::jacobi_eval(params_, degree_, t);
}

std::complex<double> HarmonicKernel::evaluate(std::span<const double> x,
                                              std::span<const double> y) const {
  return zonal(std::clamp(dot(x, y), -1.0, 1.0));
}

SphericalKernel::SphericalKernel(std::size_t n) : n_(n) {
  if (n < 1 || n > kMaxPoints) {
    throw DomainError("spherical ensemble size must lie in [1, " + std::to_string(kMaxPoints) + "]");
  }
}

std::array<std::complex<double>, 2> SphericalKernel::spinor(std::span<const double> x) {
  if (x[2] <= 0.0) {
    const double den = std::sqrt(2.0 * (1.0 - x[2]));
    return {cplx(std::sqrt(0.5 * (1.0 - x[2])), 0.0), cplx(x[0] / den, x[1] / den)};
  }
  // Same spinor times e^{-iφ}.
  const double den = std::sqrt(2.0 * (1.0 + x[2]));
  return {cplx(x[0] / den, -x[1] / den), cplx(std::sqrt(0.5 * (1.0 + x[2])), 0.0)};
}

std::complex<double> SphericalKernel::evaluate(std::span<const double> x,
                                               std::span<const double> y) const {
  const auto a = spinor(x);
  const auto b = spinor(y);
  const cplx u = mul_conj(a[0], b[0]) + mul_conj(a[1], b[1]);
  if (n_ == 1) return {1.0, 0.0};
  const double mag = std::pow(std::min(1.0, std::abs(u)), static_cast<double>(n_ - 1));
  const double phase = static_cast<double>(n_ - 1) * std::arg(u);
  return static_cast<double>(n_) * std::polar(mag, phase);
}

std::unique_ptr<ProjectionKernel> harmonic_kernel(int d, int degree) {
  return std::make_unique<HarmonicKernel>(d, degree);
}

std::unique_ptr<ProjectionKernel> spherical_kernel(std::size_t n) {
  return std::make_unique<SphericalKernel>(n);
}

Configuration hkpv_sample(const ProjectionKernel& kernel, Rng& rng, HkpvStats* stats) {
  const std::size_t n = kernel.rank();
  const int d = kernel.dim();
  const double bound = kernel.diagonal_bound();
  HkpvStats local;
  HkpvStats& st = stats ? *stats : local;
  st = HkpvStats{};

  Configuration cfg(d, kernel.name());
  cfg.reserve(n);
  GramFactor factor;
  std::vector<cplx> v(n + 1);
  std::vector<cplx> w(n + 1);
  std::vector<double> x(static_cast<std::size_t>(d) + 1);

  for (std::size_t k = 0; k < n; ++k) {
    int resamples = 0;
    while (true) {
      double nrm2;
      do {
        nrm2 = 0.0;
        for (double& c : x) {
          c = rng.normal();
          nrm2 += c * c;
        }
      } while (nrm2 < 1e-300);
      const double inv = 1.0 / std::sqrt(nrm2);
      for (double& c : x) c *= inv;
      ++st.proposals;

      for (std::size_t i = 0; i < k; ++i) v[i] = kernel.evaluate(cfg[i], x);
      const double diag = kernel.diagonal(x);
      const double residual = diag - factor.solve(v, w);
      if (!(rng.uniform() * bound < residual)) continue;

      if (residual < kPivotFloor * diag) {
        ++st.resamples;
        if (++resamples > kMaxResamples) {
          throw NumericalError("HKPV sampler: Gram matrix stayed ill-conditioned at point " +
                               std::to_string(k) + " after " + std::to_string(kMaxResamples) +
                               " resamples");
        }
        continue;
      }
      // Row k of G is K(x, y_j) = conj(v_j); its diagonal is K(x, x).
      for (std::size_t j = 0; j < k; ++j) v[j] = std::conj(v[j]);
      v[k] = diag;
      factor.append(w, residual, v);
      cfg.add(x);
      ++st.accepted;
      break;
    }
    if ((k + 1) % kRefactorEvery == 0 && k + 1 < n) {
      ++st.refactorizations;
      if (!factor.refactor()) {
        throw NumericalError("HKPV sampler: Gram matrix lost positive definiteness after " +
                             std::to_string(k + 1) + " points");
      }
    }
  }
  return cfg;
}

Configuration hkpv_sample(const ProjectionKernel& kernel, std::uint64_t seed, HkpvStats* stats) {
  Rng rng(seed);
  auto cfg = hkpv_sample(kernel, rng, stats);
  cfg.set_seed(seed);
  return cfg;
}

double conditional_density(const ProjectionKernel& kernel, const Configuration& chosen,
                           std::span<const double> x) {
  const std::size_t k = chosen.size();
  const std::size_t n = kernel.rank();
  if (k >= n) throw DomainError("conditional density needs fewer than N chosen points");
  GramFactor factor;
  std::vector<cplx> v(k + 1);
  std::vector<cplx> w(k + 1);
  std::vector<cplx> row(k + 1);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j <= i; ++j) row[j] = kernel.evaluate(chosen[i], chosen[j]);
    for (std::size_t j = 0; j < i; ++j) v[j] = std::conj(row[j]);
    const double pivot = row[i].real() - factor.solve(v, w);
    if (!(pivot > 0.0)) throw NumericalError("chosen points have a singular Gram matrix");
    factor.append(w, pivot, row);
  }
  for (std::size_t i = 0; i < k; ++i) v[i] = kernel.evaluate(chosen[i], x);
  const double residual = kernel.diagonal(x) - factor.solve(v, w);
  return std::max(0.0, residual) / static_cast<double>(n - k);
}

}  // namespace sphereqmc::detproc
