#include "sphereqmc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sphereqmc/error.hpp"
#include "sphereqmc/specfun.hpp"

namespace sphereqmc::specfun {
namespace {

// Implicit QL on a symmetric tridiagonal matrix. On exit diag holds the
// eigenvalues and z has been multiplied by the transposed eigenvector matrix,
// which is all Golub-Welsch needs. sub[i] couples rows i and i+1.
void implicit_ql(std::vector<double>& diag, std::vector<double>& sub, std::vector<double>& z) {
  const std::size_t n = diag.size();
  if (n == 1) return;
  constexpr int kMaxSweeps = 60;
  const double eps = std::numeric_limits<double>::epsilon();
  sub.resize(n);
  sub[n - 1] = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    int sweeps = 0;
    while (true) {
      std::size_t m = l;
      for (; m + 1 < n; ++m) {
        if (std::abs(sub[m]) <= eps * (std::abs(diag[m]) + std::abs(diag[m + 1]))) break;
      }
      if (m == l) break;
      if (++sweeps > kMaxSweeps) throw NumericalError("Golub-Welsch QL iteration did not converge");
      double p = diag[l];
      double g = (diag[l + 1] - p) / (2.0 * sub[l]);
      double r = std::hypot(g, 1.0);
      g = diag[m] - p + sub[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      p = 0.0;
      for (std::size_t i = m; i-- > l;) {
        double f = s * sub[i];
        const double b = c * sub[i];
        if (std::abs(g) <= std::abs(f)) {
          c = g / f;
          r = std::hypot(c, 1.0);
          sub[i + 1] = f * r;
          s = 1.0 / r;
          c *= s;
        } else {
          s = f / g;
          r = std::hypot(s, 1.0);
          sub[i + 1] = g * r;
          c = 1.0 / r;
          s *= c;
        }
        g = diag[i + 1] - p;
        r = (diag[i] - g) * s + 2.0 * c * b;
        p = s * r;
        diag[i + 1] = g + p;
        g = c * r - b;
        f = z[i + 1];
        z[i + 1] = s * z[i] + c * f;
        z[i] = c * z[i] - s * f;
      }
      diag[l] -= p;
      sub[l] = g;
      sub[m] = 0.0;
    }
  }
}

}  // namespace

GaussRule gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1) throw DomainError("Gauss rule needs at least one node");
  if (n > kMaxDegree) throw DomainError("Gauss rule order exceeds the degree cap");
  JacobiParams params{alpha, beta};
  params.validate();

  const double ab = alpha + beta;
  const double log_mu0 = (ab + 1.0) * std::log(2.0) + log_gamma(alpha + 1.0) +
                         log_gamma(beta + 1.0) - log_gamma(ab + 2.0);

  // Jacobi matrix of the monic recurrence.
  std::vector<double> diag(n);
  std::vector<double> sub(n, 0.0);
  diag[0] = (beta - alpha) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + ab;
    diag[k] = (beta * beta - alpha * alpha) / (s * (s + 2.0));
    double b2;
    if (k == 1 && std::abs(ab + 1.0) < 1e-14) {
      b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      b2 = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    sub[k - 1] = std::sqrt(b2);
  }
  std::vector<double> z(n, 0.0);
  z[0] = 1.0;
  implicit_ql(diag, sub, z);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return diag[a] < diag[b]; });

  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // w_i = 2^{α+β+1} Γ(n+α+1) Γ(n+β+1) / (Γ(n+α+β+1) n!) / ((1-x²) P_n'(x)²)
  const double log_c = (ab + 1.0) * std::log(2.0) + log_gamma(n + alpha + 1.0) +
                       log_gamma(n + beta + 1.0) - log_gamma(n + ab + 1.0) -
                       log_gamma(n + 1.0);
  for (int i = 0; i < n; ++i) {
    double x = diag[order[i]];
    for (int it = 0; it < 3; ++it) {
      const auto pv = jacobi_eval_with_derivative(params, n, x);
      const double step = pv.value / pv.derivative;
      const double nx = std::clamp(x - step, -1.0, 1.0);
      if (nx == x) break;
      x = nx;
    }
    const auto pv = jacobi_eval_with_derivative(params, n, x);
    const double one_minus = (1.0 - x) * (1.0 + x);
    double w = std::exp(log_c) / (one_minus * pv.derivative * pv.derivative);
    if (!std::isfinite(w) || one_minus <= 0.0) {
      w = std::exp(log_mu0) * z[order[i]] * z[order[i]];
    }
    rule.nodes[i] = x;
    rule.weights[i] = w;
  }
  return rule;
}

GaussRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

}  // namespace sphereqmc::specfun
