#pragma once

#include <vector>

namespace sphereqmc::specfun {

/// Nodes and weights of an interpolatory rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;    // ascending
  std::vector<double> weights;

  template <class F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

/// n-point Gauss-Jacobi rule for the weight (1-t)^α (1+t)^β; exact for
/// polynomials of degree ≤ 2n-1. Nodes from the Golub-Welsch eigenproblem,
/// polished by Newton steps on P_n^{(α,β)}.
GaussRule gauss_jacobi(int n, double alpha, double beta);

/// n-point Gauss-Legendre rule.
GaussRule gauss_legendre(int n);

}  // namespace sphereqmc::specfun
