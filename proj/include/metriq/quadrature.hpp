#pragma once

#include <vector>

namespace metriq {

/// Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree 2n-1.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int order);

  /// Integrate f over [a, b].
  template <class F>
  double integrate(F&& f, double a, double b) const {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(mid + half * nodes[i]);
    return half * sum;
  }
};

/// Cached rule for a given order. Thread-safe.
const GaussLegendre& gauss_legendre(int order);

}  // namespace metriq
